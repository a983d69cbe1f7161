#include "axiswirl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "axiswirl/errors.hpp"
#include "axiswirl/manufactured.hpp"

namespace axiswirl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw ConfigError(key, "expected a real number, got '" + value + "'");
    }
    return out;
}

std::size_t to_count(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
    if (out < 0) {
        throw ConfigError(key, "must be non-negative, got " + value);
    }
    return static_cast<std::size_t>(out);
}

bool to_flag(const std::string& key, const std::string& value) {
    if (value == "true" || value == "yes" || value == "1") {
        return true;
    }
    if (value == "false" || value == "no" || value == "0") {
        return false;
    }
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"grid", {"r_min", "r_max", "z_min", "z_max", "n_r", "n_z", "z_periodic"}},
        {"initial", {"family", "amplitude", "snapshot"}},
        {"run",
         {"t_end", "cfl_advective", "cfl_diffusive", "forcing", "snapshot_stride", "max_steps",
          "retention", "viscosity"}},
        {"monitors", {"monitor"}},
    };
    return keys;
}

using Entries = std::map<std::string, std::vector<std::string>>;

void check_known(const std::string& full_key) {
    const auto dot = full_key.find('.');
    const std::string section = full_key.substr(0, dot);
    const auto it = known_keys().find(section);
    if (dot == std::string::npos || it == known_keys().end()) {
        throw ConfigError(full_key, "unknown section");
    }
    if (!it->second.contains(full_key.substr(dot + 1))) {
        throw ConfigError(full_key, "unknown key");
    }
}

Entries collect(const std::string& text) {
    Entries entries;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no), "malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys().contains(section)) {
                throw ConfigError(section, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError(key, "key outside of any section");
        }
        const std::string full = section + "." + key;
        check_known(full);
        auto& slot = entries[full];
        if (!slot.empty() && key != "monitor") {
            throw ConfigError(key, "given more than once");
        }
        slot.push_back(value);
    }
    return entries;
}

}  // namespace

Grid GridSpec::build() const {
    try {
        return Grid(r_min, r_max, z_min, z_max, n_r, n_z, z_periodic);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

std::string monitor_name(MonitorKind kind) {
    switch (kind) {
        case MonitorKind::thm12: return "thm12";
        case MonitorKind::thm11: return "thm11";
        case MonitorKind::stream: return "stream";
        case MonitorKind::vz: return "vz";
        case MonitorKind::lambda: return "lambda";
        case MonitorKind::kbar: return "kbar";
        case MonitorKind::oscillation: return "oscillation";
        case MonitorKind::biot_savart: return "biot_savart";
    }
    return "?";
}

double MonitorSpec::look_back() const {
    switch (kind) {
        case MonitorKind::thm12: return r * r;
        case MonitorKind::kbar:
        case MonitorKind::lambda: return sigma1 * sigma1 * scale * scale;
        default: return 0.0;
    }
}

MonitorSpec parse_monitor(const std::string& text) {
    MonitorSpec spec;
    spec.text = trim(text);
    const auto at = spec.text.find('@');
    const std::string name = trim(spec.text.substr(0, at));
    static const std::map<std::string, MonitorKind> kinds{
        {"thm12", MonitorKind::thm12},   {"thm11", MonitorKind::thm11},
        {"stream", MonitorKind::stream}, {"vz", MonitorKind::vz},
        {"lambda", MonitorKind::lambda}, {"kbar", MonitorKind::kbar},
        {"oscillation", MonitorKind::oscillation}, {"biot_savart", MonitorKind::biot_savart},
    };
    const auto it = kinds.find(name);
    if (it == kinds.end()) {
        throw ConfigError("monitor", "unknown monitor '" + name + "'");
    }
    spec.kind = it->second;

    std::set<std::string> seen;
    if (at != std::string::npos) {
        std::istringstream args(spec.text.substr(at + 1));
        std::string item;
        while (std::getline(args, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("monitor", "expected key=value in '" + spec.text + "'");
            }
            const std::string key = trim(item.substr(0, eq));
            const double value = to_double("monitor " + key, trim(item.substr(eq + 1)));
            if (key == "r") {
                spec.r = value;
            } else if (key == "z") {
                spec.z = value;
            } else if (key == "sigma1") {
                spec.sigma1 = value;
            } else if (key == "scale") {
                spec.scale = value;
            } else if (key == "p") {
                spec.p = value;
            } else {
                throw ConfigError("monitor", "unknown parameter '" + key + "' in '" + spec.text + "'");
            }
            seen.insert(key);
        }
    }
    const bool pointwise = spec.kind == MonitorKind::thm12 || spec.kind == MonitorKind::thm11 ||
                           spec.kind == MonitorKind::stream || spec.kind == MonitorKind::biot_savart;
    if (pointwise && !(seen.contains("r") && spec.r > 0.0 && spec.r <= 0.5)) {
        throw ConfigError("monitor", "'" + spec.text + "' needs a point with 0 < r <= 1/2");
    }
    if (!(spec.scale > 0.0) || !(spec.p >= 1.0)) {
        throw ConfigError("monitor", "'" + spec.text + "' needs scale > 0 and p >= 1");
    }
    return spec;
}

RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides) {
    Entries entries = collect(text);
    for (const auto& [key, value] : overrides) {
        check_known(key);
        entries[key] = {value};
    }
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = entries.find(key);
        if (it == entries.end()) {
            return std::nullopt;
        }
        return it->second.front();
    };
    auto require = [&](const std::string& key) {
        auto v = get(key);
        if (!v) {
            throw ConfigError(key.substr(key.find('.') + 1), "required key missing");
        }
        return *v;
    };

    RunConfig cfg;
    cfg.grid.r_min = to_double("r_min", require("grid.r_min"));
    cfg.grid.r_max = to_double("r_max", require("grid.r_max"));
    cfg.grid.z_min = to_double("z_min", require("grid.z_min"));
    cfg.grid.z_max = to_double("z_max", require("grid.z_max"));
    cfg.grid.n_r = to_count("n_r", require("grid.n_r"));
    cfg.grid.n_z = to_count("n_z", require("grid.n_z"));
    if (auto v = get("grid.z_periodic")) {
        cfg.grid.z_periodic = to_flag("z_periodic", *v);
    }
    if (!(cfg.grid.r_min > 0.0)) {
        throw ConfigError("r_min", "axis excluded: must be positive");
    }
    if (!(cfg.grid.r_max > cfg.grid.r_min)) {
        throw ConfigError("r_max", "must exceed r_min");
    }
    if (!(cfg.grid.z_max > cfg.grid.z_min)) {
        throw ConfigError("z_max", "must exceed z_min");
    }
    if (cfg.grid.n_r < 8) {
        throw ConfigError("n_r", "needs at least 8 nodes");
    }
    if (cfg.grid.n_z < 8) {
        throw ConfigError("n_z", "needs at least 8 nodes");
    }

    cfg.t_end = to_double("t_end", require("run.t_end"));
    if (!(cfg.t_end > 0.0)) {
        throw ConfigError("t_end", "must be positive");
    }
    if (auto v = get("run.viscosity"); v && to_double("viscosity", *v) != 1.0) {
        throw ConfigError("viscosity", "is fixed at 1");
    }
    if (auto v = get("run.cfl_advective")) {
        cfg.cfl_advective = to_double("cfl_advective", *v);
    }
    if (auto v = get("run.cfl_diffusive")) {
        cfg.cfl_diffusive = to_double("cfl_diffusive", *v);
    }
    for (const auto& [key, value] :
         {std::pair{"cfl_advective", cfg.cfl_advective}, std::pair{"cfl_diffusive", cfg.cfl_diffusive}}) {
        if (!(value > 0.0 && value < 1.0)) {
            throw ConfigError(key, "must lie in (0, 1)");
        }
    }
    if (auto v = get("run.snapshot_stride")) {
        cfg.snapshot_stride = to_count("snapshot_stride", *v);
        if (cfg.snapshot_stride == 0) {
            throw ConfigError("snapshot_stride", "must be positive");
        }
    }
    if (auto v = get("run.max_steps")) {
        cfg.max_steps = to_count("max_steps", *v);
    }
    if (auto v = get("run.forcing")) {
        cfg.forcing = *v;
        const auto tags = manufactured_tags();
        if (std::find(tags.begin(), tags.end(), cfg.forcing) == tags.end()) {
            throw ConfigError("forcing", "unknown manufactured family '" + cfg.forcing + "'");
        }
    }

    if (auto v = get("initial.family")) {
        cfg.initial_family = *v;
    }
    if (auto v = get("initial.snapshot")) {
        cfg.initial_snapshot = *v;
    }
    if (auto v = get("initial.amplitude")) {
        cfg.amplitude = to_double("amplitude", *v);
    }
    if (cfg.initial_family.empty() && cfg.initial_snapshot.empty()) {
        if (cfg.forcing.empty()) {
            throw ConfigError("family", "required key missing (or give snapshot)");
        }
        cfg.initial_family = cfg.forcing;
    }
    if (!cfg.initial_family.empty() && !cfg.initial_snapshot.empty()) {
        throw ConfigError("snapshot", "give either family or snapshot, not both");
    }
    if (!cfg.initial_family.empty()) {
        const auto tags = manufactured_tags();
        const auto names = decay_initial_names();
        const bool is_mms = std::find(tags.begin(), tags.end(), cfg.initial_family) != tags.end();
        const bool is_decay =
            std::find(names.begin(), names.end(), cfg.initial_family) != names.end();
        if (!is_mms && !is_decay) {
            throw ConfigError("family", "unknown initial condition '" + cfg.initial_family + "'");
        }
        if (is_mms && cfg.forcing.empty()) {
            cfg.forcing = cfg.initial_family;
        }
        if (!cfg.forcing.empty() && cfg.forcing != cfg.initial_family) {
            throw ConfigError("forcing", "must match the manufactured initial family");
        }
    }

    if (auto it = entries.find("monitors.monitor"); it != entries.end()) {
        for (const std::string& line : it->second) {
            cfg.monitors.push_back(parse_monitor(line));
        }
    }
    double needed = 0.0;
    for (const MonitorSpec& m : cfg.monitors) {
        needed = std::max(needed, m.look_back());
    }
    if (auto v = get("run.retention")) {
        cfg.retention = to_double("retention", *v);
        if (!(cfg.retention >= 0.0)) {
            throw ConfigError("retention", "must be non-negative");
        }
        for (const MonitorSpec& m : cfg.monitors) {
            if (cfg.retention < m.look_back()) {
                throw ConfigError("monitor " + m.text,
                                  "needs retention >= " + std::to_string(m.look_back()) +
                                      ", configured " + std::to_string(cfg.retention));
            }
        }
    } else {
        cfg.retention = needed;
    }
    return cfg;
}

}  // namespace axiswirl
