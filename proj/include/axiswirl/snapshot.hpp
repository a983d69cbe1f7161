#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "axiswirl/field.hpp"

namespace axiswirl {

/*
 * Snapshot file layout, all integers and floats little-endian:
 *
 *   char[9]  "AXISWIRL1"
 *   u8       z_periodic
 *   f64      r_min, r_max, z_min, z_max, unit_length
 *   u32      n_r, n_z
 *   f64      time
 *   u32      field count
 *   per field: u16 name length, name bytes
 *   payload: per field, n_r * n_z f64 values, row-major over (r, z)
 *   u64      FNV-1a hash of the payload bytes
 */
inline constexpr char kSnapshotMagic[] = "AXISWIRL1";

std::vector<std::uint8_t> encode_snapshot(const FlowState& state);
FlowState decode_snapshot(const std::vector<std::uint8_t>& bytes);

void write_snapshot(const std::filesystem::path& path, const FlowState& state);
/// Throws SnapshotError on a bad magic, truncated file, size mismatch,
/// unexpected field list or checksum failure.
FlowState read_snapshot(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size);

/// "snap_000042.axs"
std::string snapshot_name(std::size_t index);

/// Snapshot files of a directory in index order, read and checked for
/// strictly increasing times.
std::vector<FlowState> read_snapshot_dir(const std::filesystem::path& dir);

}  // namespace axiswirl
