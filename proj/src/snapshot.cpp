#include "axiswirl/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "axiswirl/errors.hpp"

namespace axiswirl {

namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(std::begin(raw), std::end(raw));
    }
    out.insert(out.end(), std::begin(raw), std::end(raw));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    template <typename T>
    T get() {
        need(sizeof(T));
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(std::begin(raw), std::end(raw));
        }
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, raw, sizeof(T));
        return value;
    }

    std::string text(std::size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) {
            throw SnapshotError("snapshot truncated");
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t n = 0; n < size; ++n) {
        h ^= data[n];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::uint8_t> encode_snapshot(const FlowState& state) {
    const Grid& g = state.grid();
    std::vector<std::uint8_t> out(kSnapshotMagic, kSnapshotMagic + 9);
    put<std::uint8_t>(out, g.z_periodic() ? 1 : 0);
    for (double v : {g.r_min(), g.r_max(), g.z_min(), g.z_max(), g.unit_length()}) {
        put(out, v);
    }
    put(out, static_cast<std::uint32_t>(g.n_r()));
    put(out, static_cast<std::uint32_t>(g.n_z()));
    put(out, state.t);
    const auto& names = state_field_names();
    put(out, static_cast<std::uint32_t>(names.size()));
    for (const std::string& name : names) {
        put(out, static_cast<std::uint16_t>(name.size()));
        out.insert(out.end(), name.begin(), name.end());
    }
    const std::size_t payload_start = out.size();
    for (const ScalarField* f : state.fields()) {
        for (double v : f->values()) {
            put(out, v);
        }
    }
    const std::uint64_t hash = fnv1a(out.data() + payload_start, out.size() - payload_start);
    put(out, hash);
    return out;
}

FlowState decode_snapshot(const std::vector<std::uint8_t>& bytes) {
    Reader in(bytes);
    if (in.text(9) != std::string(kSnapshotMagic, 9)) {
        throw SnapshotError("not a snapshot file (bad magic)");
    }
    const bool periodic = in.get<std::uint8_t>() != 0;
    const double r_min = in.get<double>();
    const double r_max = in.get<double>();
    const double z_min = in.get<double>();
    const double z_max = in.get<double>();
    const double unit = in.get<double>();
    const std::size_t n_r = in.get<std::uint32_t>();
    const std::size_t n_z = in.get<std::uint32_t>();
    const double t = in.get<double>();
    const std::uint32_t count = in.get<std::uint32_t>();
    const auto& expected = state_field_names();
    if (count != expected.size()) {
        throw SnapshotError("snapshot holds " + std::to_string(count) + " fields, expected " +
                            std::to_string(expected.size()));
    }
    for (const std::string& name : expected) {
        const std::size_t len = in.get<std::uint16_t>();
        const std::string got = in.text(len);
        if (got != name) {
            throw SnapshotError("unexpected field '" + got + "', expected '" + name + "'");
        }
    }
    std::optional<Grid> grid;
    try {
        grid.emplace(r_min, r_max, z_min, z_max, n_r, n_z, periodic, unit);
    } catch (const std::invalid_argument& e) {
        throw SnapshotError(std::string("invalid grid in snapshot header: ") + e.what());
    }
    const std::size_t payload = count * grid->size() * sizeof(double);
    if (in.remaining() != payload + sizeof(std::uint64_t)) {
        throw SnapshotError("snapshot payload size does not match its header");
    }
    const std::uint64_t hash = fnv1a(bytes.data() + in.pos(), payload);

    FlowState s = FlowState::zero(*grid, t);
    for (ScalarField* f : s.fields()) {
        for (double& v : f->values()) {
            v = in.get<double>();
        }
    }
    if (in.get<std::uint64_t>() != hash) {
        throw SnapshotError("snapshot checksum mismatch");
    }
    s.derived_fresh = true;
    return s;
}

void write_snapshot(const std::filesystem::path& path, const FlowState& state) {
    const std::vector<std::uint8_t> bytes = encode_snapshot(state);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SnapshotError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw SnapshotError("write failed for " + path.string());
    }
}

FlowState read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnapshotError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_snapshot(bytes);
    } catch (const SnapshotError& e) {
        throw SnapshotError(path.string() + ": " + e.what());
    }
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.axs", index);
    return buf;
}

std::vector<FlowState> read_snapshot_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("snap_") && name.ends_with(".axs")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw SnapshotError("no snapshot files in " + dir.string());
    }
    std::vector<FlowState> states;
    for (const auto& f : files) {
        states.push_back(read_snapshot(f));
        if (states.size() >= 2 && !(states.back().t > states[states.size() - 2].t)) {
            throw SnapshotError("snapshot times are not increasing at " + f.string());
        }
    }
    return states;
}

}  // namespace axiswirl
