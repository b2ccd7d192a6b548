#include "config.hpp"
#include "experiment.hpp"
#include "suites.hpp"

#include "fmcf/singular_kernel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::optional<std::string> s, N, dt, T, seed, out;

    void apply(fmcf::app::ParsedConfig& cfg) const {
        const std::pair<const char*, const std::optional<std::string>*> keys[] = {
            {"s", &s}, {"N", &N}, {"dt", &dt}, {"T", &T}, {"seed", &seed}, {"out", &out}};
        for (const auto& [k, v] : keys) {
            if (!*v) continue;
            cfg.raw.erase(k);
            fmcf::app::apply_key(cfg, k, **v);
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional curvature flow simulator"};
    app.require_subcommand(1);
    Overrides ov;
    double kernel_scale = 1.0;
    const std::pair<std::string, std::optional<std::string>*> flags[] = {
        {"s", &ov.s}, {"N", &ov.N}, {"dt", &ov.dt}, {"T", &ov.T}, {"seed", &ov.seed}, {"out", &ov.out}};
    for (const auto& [key, target] : flags) app.add_option("--" + key, *target, "override config key " + key);
    app.add_option("--kernel-scale", kernel_scale)->group("");

    std::string config_path, suite_name;
    auto* run = app.add_subcommand("run", "run a flow experiment");
    run->add_option("config", config_path, "config file")->required();
    run->fallthrough();
    auto* suite = app.add_subcommand("suite", "run a diagnostic suite");
    suite->add_option("name", suite_name, "identities|inequalities|asymptotics|convergence")->required();
    suite->fallthrough();
    auto* scan = app.add_subcommand("scan-asymptotics", "tabulate s -> 0 and s -> 1 limits");
    scan->add_option("config", config_path, "config file")->required();
    scan->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // thread count: OMP_NUM_THREADS
    fmcf::testing::set_kernel_scale(kernel_scale);

    try {
        if (*suite) {
            const auto results = fmcf::app::run_suite(suite_name);
            return fmcf::app::report_suite(suite_name, results, ov.out.value_or("out"), std::cout);
        }
        auto cfg = fmcf::app::parse_config_file(config_path);
        ov.apply(cfg);
        return *run ? fmcf::app::run_experiment(cfg, std::cerr) : fmcf::app::run_scan(cfg, std::cerr);
    } catch (const fmcf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == fmcf::ErrorKind::ConfigInvalid ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
