#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "axiswirl/commands.hpp"
#include "axiswirl/errors.hpp"
#include "axiswirl/manufactured.hpp"
#include "axiswirl/monitors.hpp"
#include "axiswirl/snapshot.hpp"

using namespace axiswirl;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"([grid]
r_min = 0.5
r_max = 5.0
z_min = -5.0
z_max = 5.0
n_r = 24
n_z = 48
z_periodic = true

[initial]
family = gaussian-swirl

[run]
t_end = 1.0
max_steps = 40
snapshot_stride = 10
)";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("axiswirl_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const char* exe = std::getenv("AXISWIRL_CLI");
    REQUIRE(exe != nullptr);
    const int status = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config defaults") {
    const RunConfig cfg = parse_config(kBase);
    CHECK(cfg.grid.n_r == 24);
    CHECK(cfg.grid.z_periodic);
    CHECK(cfg.initial_family == "gaussian-swirl");
    CHECK(cfg.amplitude == 1.0);
    CHECK(cfg.cfl_advective == 0.4);
    CHECK(cfg.cfl_diffusive == 0.5);
    CHECK(cfg.forcing.empty());
    CHECK(cfg.monitors.empty());
    CHECK(cfg.grid.build().h_z() == doctest::Approx(10.0 / 48));
}

TEST_CASE("config errors name the key") {
    auto key_of = [](const std::string& text, std::map<std::string, std::string> ov = {}) {
        try {
            parse_config(text, ov);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<none>");
    };
    CHECK(key_of(kBase, {{"grid.n_r", "-4"}}) == "n_r");
    CHECK(key_of(kBase, {{"grid.n_r", "4"}}) == "n_r");
    CHECK(key_of(kBase, {{"grid.r_min", "0"}}) == "r_min");
    CHECK(key_of(kBase, {{"run.viscosity", "0.5"}}) == "viscosity");
    CHECK(key_of(kBase, {{"run.cfl_advective", "1.2"}}) == "cfl_advective");
    CHECK(key_of(kBase, {{"run.bogus", "1"}}) == "run.bogus");
    CHECK(key_of(std::string(kBase) + "colour = red\n") == "run.colour");
    CHECK(key_of(std::string(kBase) + "t_end = 2\n") == "t_end");
    CHECK(key_of(kBase, {{"initial.family", "tornado"}}) == "family");
    CHECK(key_of(kBase, {{"run.t_end", "x"}}) == "t_end");
}

TEST_CASE("overrides replace file values") {
    const RunConfig cfg = parse_config(kBase, {{"grid.n_r", "32"}, {"run.t_end", "0.5"}});
    CHECK(cfg.grid.n_r == 32);
    CHECK(cfg.t_end == 0.5);
}

TEST_CASE("monitor lines") {
    const MonitorSpec m = parse_monitor("thm12 @ r=0.4,z=0");
    CHECK(m.kind == MonitorKind::thm12);
    CHECK(m.r == 0.4);
    CHECK(m.look_back() == doctest::Approx(0.16));
    CHECK(monitor_name(m.kind) == "thm12");

    const MonitorSpec k = parse_monitor("kbar @ sigma1=1,scale=0.5");
    CHECK(k.look_back() == doctest::Approx(0.25));
    CHECK(parse_monitor("vz").kind == MonitorKind::vz);

    CHECK_THROWS_AS(parse_monitor("thm12 @ r=0.6"), ConfigError);
    CHECK_THROWS_AS(parse_monitor("thm11"), ConfigError);
    CHECK_THROWS_AS(parse_monitor("swirl @ r=0.1"), ConfigError);
    CHECK_THROWS_AS(parse_monitor("stream @ r=0.1,q=2"), ConfigError);
}

TEST_CASE("retention shorter than a monitor window is rejected") {
    const std::string text = std::string(kBase) + "retention = 0.1\n[monitors]\nmonitor = thm12 @ r=0.4,z=0\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("thm12") != std::string::npos);
    }
    const RunConfig ok = parse_config(std::string(kBase) + "[monitors]\nmonitor = thm12 @ r=0.4,z=0\n");
    CHECK(ok.retention == doctest::Approx(0.16));
}

TEST_CASE("snapshot round trip is bit exact") {
    const Grid g = make_grid(0.5, 5, -5, 5, 12, 20, true);
    FlowState s = manufactured_state(manufactured("coupled"), g, 0.125);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (double& v : s.omega.values()) {
        v = u(rng);
    }
    const FlowState back = decode_snapshot(encode_snapshot(s));
    CHECK(back.t == s.t);
    CHECK(back.grid() == g);
    const auto a = s.fields();
    const auto b = back.fields();
    REQUIRE(a.size() == b.size());
    for (std::size_t f = 0; f < a.size(); ++f) {
        CHECK(std::memcmp(a[f]->values().data(), b[f]->values().data(), g.size() * sizeof(double)) == 0);
    }

    const fs::path dir = scratch("snap");
    write_snapshot(dir / snapshot_name(0), s);
    CHECK(encode_snapshot(read_snapshot(dir / snapshot_name(0))) == encode_snapshot(s));
}

TEST_CASE("snapshot corruption is detected") {
    const Grid g = make_grid(0.5, 5, -5, 5, 12, 20, false);
    std::vector<std::uint8_t> bytes = encode_snapshot(FlowState::zero(g, 1.0));
    std::vector<std::uint8_t> flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x10;
    CHECK_THROWS_AS(decode_snapshot(flipped), SnapshotError);
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 9);
    CHECK_THROWS_AS(decode_snapshot(cut), SnapshotError);
    std::vector<std::uint8_t> magic = bytes;
    magic[0] = 'X';
    CHECK_THROWS_AS(decode_snapshot(magic), SnapshotError);

    const char text[] = "a";
    CHECK(fnv1a(reinterpret_cast<const std::uint8_t*>(text), 1) == 0xaf63dc4c8601ec8cULL);
    CHECK(snapshot_name(42) == "snap_000042.axs");
}

TEST_CASE("snapshot directories must have increasing times") {
    const Grid g = make_grid(0.5, 5, -5, 5, 12, 20, false);
    const fs::path dir = scratch("order");
    write_snapshot(dir / snapshot_name(0), FlowState::zero(g, 1.0));
    write_snapshot(dir / snapshot_name(1), FlowState::zero(g, 0.5));
    CHECK_THROWS_AS(read_snapshot_dir(dir), SnapshotError);
}

TEST_CASE("output directory resolution") {
    CHECK(output_directory("/tmp/x", "run") == fs::path("/tmp/x"));
    ::setenv("AXISWIRL_OUTPUT", "/tmp/base", 1);
    CHECK(output_directory("", "run") == fs::path("/tmp/base/run"));
    ::unsetenv("AXISWIRL_OUTPUT");
    CHECK(output_directory("", "run") == fs::path("axiswirl_out/run"));
}

TEST_CASE("rigid swirl run is steady") {
    const RunConfig cfg = parse_config(kBase, {{"initial.family", "rigid-swirl"},
                                               {"run.forcing", "rigid-swirl"},
                                               {"grid.z_periodic", "false"},
                                               {"run.max_steps", "100"},
                                               {"run.snapshot_stride", "25"}});
    const fs::path dir = scratch("rigid");
    std::ostringstream log;
    REQUIRE(cmd_run(cfg, dir, log) == kExitOk);
    const auto snaps = read_snapshot_dir(dir);
    REQUIRE(snaps.size() == 5);
    for (const FlowState& s : snaps) {
        CHECK((s.gamma - snaps.front().gamma).max_abs() < 1e-10);
        CHECK(s.omega.max_abs() < 1e-10);
    }
}

TEST_CASE("offline monitors reproduce the in-run series") {
    const std::string spec = "vz;lambda @ sigma1=1,scale=0.25;kbar @ sigma1=1,scale=0.25;oscillation @ sigma1=1";
    std::string text = std::string(kBase) + "[monitors]\n";
    for (const char* m : {"vz", "lambda @ sigma1=1,scale=0.25", "kbar @ sigma1=1,scale=0.25",
                          "oscillation @ sigma1=1"}) {
        text += std::string("monitor = ") + m + "\n";
    }
    const RunConfig cfg = parse_config(text);
    const fs::path dir = scratch("replay");
    std::ostringstream log;
    REQUIRE(cmd_run(cfg, dir, log) == kExitOk);
    std::ostringstream replay;
    cmd_monitor(dir, spec, replay);
    CHECK(replay.str() == slurp(dir / "monitors.csv"));
    CHECK(replay.str().rfind(monitor_csv_header(), 0) == 0);

    // Runs are deterministic.
    const fs::path again = scratch("replay2");
    REQUIRE(cmd_run(cfg, again, log) == kExitOk);
    CHECK(slurp(again / snapshot_name(4)) == slurp(dir / snapshot_name(4)));
}

TEST_CASE("a monitor that can never be evaluated is an error") {
    const Grid g = make_grid(0.05, 1, -1, 1, 20, 40, false);
    const fs::path dir = scratch("single");
    write_snapshot(dir / snapshot_name(0), FlowState::zero(g, 0.0));
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_monitor(dir, "thm12 @ r=0.4,z=0", out), RetentionError);
}

TEST_CASE("scale-check over stored snapshots") {
    const RunConfig cfg = parse_config(kBase, {{"run.max_steps", "20"}});
    const fs::path dir = scratch("scale");
    std::ostringstream log;
    REQUIRE(cmd_run(cfg, dir, log) == kExitOk);
    for (const ScalingIdentity& id : scale_check(dir, 2)) {
        CAPTURE(id.name);
        CHECK(id.relative_error < 1e-12);
    }
    CHECK_THROWS_AS(scale_check(dir, 3), std::invalid_argument);
}

TEST_CASE("grid lists") {
    const auto grids = parse_grid_list("32x64,64x128");
    REQUIRE(grids.size() == 2);
    CHECK(grids[1] == std::pair<std::size_t, std::size_t>{64, 128});
    CHECK_THROWS(parse_grid_list("32by64"));
}

TEST_CASE("command line front end") {
    const fs::path dir = scratch("cli");
    const fs::path cfg = dir / "run.cfg";
    std::ofstream(cfg) << kBase;

    CHECK(run_cli("-o " + (dir / "out").string() + " run " + cfg.string() + " --set run.max_steps=10") == 0);
    CHECK(fs::exists(dir / "out" / snapshot_name(0)));
    CHECK(fs::exists(dir / "out" / "monitors.csv"));

    CHECK(run_cli("-o " + (dir / "bad").string() + " run " + cfg.string() + " --set grid.n_r=-4") == 1);
    CHECK(run_cli("run " + (dir / "missing.cfg").string()) != 0);
    CHECK(run_cli("monitor " + (dir / "out").string() + " 'thm12 @ r=0.9'") == 1);
    CHECK(run_cli("-o " + (dir / "sc").string() + " scale-check " + (dir / "out").string() + " 2") == 0);
    CHECK(run_cli("frobnicate") == 1);

    ::setenv("AXISWIRL_OUTPUT", (dir / "env").c_str(), 1);
    CHECK(run_cli("run " + cfg.string() + " --set run.max_steps=5") == 0);
    ::unsetenv("AXISWIRL_OUTPUT");
    CHECK(fs::exists(dir / "env" / "run" / snapshot_name(0)));
}
