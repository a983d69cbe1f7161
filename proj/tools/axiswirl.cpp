#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "axiswirl/commands.hpp"
#include "axiswirl/errors.hpp"

namespace fs = std::filesystem;
using namespace axiswirl;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(item, "override must look like section.key=value");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric swirl simulator and bound monitors"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "output directory (overrides AXISWIRL_OUTPUT)");

    auto* run = app.add_subcommand("run", "run a configured simulation");
    std::string config_path;
    std::vector<std::string> overrides;
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--set", overrides, "override a config key: section.key=value");

    auto* monitor = app.add_subcommand("monitor", "replay monitors over stored snapshots");
    std::string monitor_dir;
    std::string monitor_spec;
    monitor->add_option("dir", monitor_dir, "snapshot directory")->required();
    monitor->add_option("spec", monitor_spec, "monitor lines separated by ';'")->required();

    auto* mms = app.add_subcommand("mms-verify", "manufactured-solution convergence study");
    std::string family;
    std::string grid_list;
    MmsOptions mms_options;
    mms->add_option("family", family, "manufactured family")->required();
    mms->add_option("grids", grid_list, "grids as NRxNZ,NRxNZ,...")->required();
    mms->add_option("--t-end", mms_options.t_end, "final time");
    mms->add_option("--r-min", mms_options.r_min);
    mms->add_option("--r-max", mms_options.r_max);
    mms->add_option("--z-min", mms_options.z_min);
    mms->add_option("--z-max", mms_options.z_max);
    mms->add_flag("--periodic", mms_options.z_periodic, "periodic in z");

    auto* scale = app.add_subcommand("scale-check", "scaling identities of a stored trajectory");
    std::string scale_dir;
    double k = 2.0;
    scale->add_option("dir", scale_dir, "snapshot directory")->required();
    scale->add_option("k", k, "power-of-two rescaling factor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            const RunConfig cfg = parse_config(read_file(config_path), parse_overrides(overrides));
            const fs::path dir = output_directory(output, fs::path(config_path).stem().string());
            return cmd_run(cfg, dir, std::cout);
        }
        if (*monitor) {
            if (output.empty()) {
                cmd_monitor(monitor_dir, monitor_spec, std::cout);
            } else {
                std::ofstream out(output, std::ios::trunc);
                cmd_monitor(monitor_dir, monitor_spec, out);
            }
            return kExitOk;
        }
        if (*mms) {
            const auto rows = mms_verify(family, parse_grid_list(grid_list), mms_options);
            write_convergence_table(std::cout, rows);
            const fs::path dir = output_directory(output, "mms-" + family);
            fs::create_directories(dir);
            std::ofstream table(dir / "convergence.csv", std::ios::trunc);
            write_convergence_table(table, rows);
            return kExitOk;
        }
        if (*scale) {
            write_scaling_table(std::cout, scale_check(scale_dir, k));
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
