#include "experiment.hpp"

#include "output.hpp"

#include "fmcf/diagnostics.hpp"
#include "fmcf/graph_flow.hpp"
#include "fmcf/initial_data.hpp"
#include "fmcf/sphere_flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace fmcf::app {

namespace fs = std::filesystem;

namespace {

ordered_json fit_or_flag(const std::vector<double>& t, const std::vector<double>& v, double floor) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    if (!v.empty() && peak <= floor) {
        ordered_json j;
        j["degenerate"] = true;
        j["reason"] = "series at rounding floor";
        return j;
    }
    try {
        return to_json(fit_rate(t, v));
    } catch (const Error& e) {
        ordered_json j;
        j["degenerate"] = true;
        j["reason"] = e.what();
        return j;
    }
}

ordered_json record_json(const TrajectoryRecord& r, FlowKind kind) {
    ordered_json j;
    j["t"] = r.t;
    if (kind == FlowKind::SphereVPMCF) {
        j["volume"] = number(r.volume);
        j["barycenter"] = {number(r.barycenter_x), number(r.barycenter_y)};
    } else {
        j["mean"] = number(r.volume);
    }
    j["per_s_deficit"] = number(r.per_s_deficit);
    j["seminorm_sq"] = number(r.seminorm_sq);
    j["l2_sq"] = number(r.l2_sq);
    j["curv_deficit_l2_sq"] = number(r.curv_deficit_l2_sq);
    j["curv_deficit_l2_sq_ref"] = number(r.curv_deficit_l2_sq_ref);
    j["sup_grad"] = number(r.sup_grad);
    return j;
}

void check_initial(const FlowConfig& f) {
    try {
        const HeightField u = build_initial(f);
        if (f.kind == FlowKind::SphereVPMCF) SphereFlowState(u, FractionalOrder(f.s));
        else GraphFlowState(u, FractionalOrder(f.s));
        if (f.dt) {
            const Domain d = f.kind == FlowKind::SphereVPMCF ? Domain::Circle : Domain::PeriodicLine;
            const double cap = stability_cap(d, f.N, FractionalOrder(f.s), f.c_cfl);
            if (*f.dt > cap * (1.0 + 1e-12))
                throw Error(ErrorKind::ConfigInvalid, "dt above stability cap " + format_double(cap));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigInvalid) throw;
        throw Error(ErrorKind::ConfigInvalid, std::string("initial data rejected: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::ConfigInvalid, e.what());
    }
}

}  // namespace

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int run_experiment(const ParsedConfig& cfg, std::ostream& log) {
    validate(cfg);
    const FlowConfig& f = cfg.flow;
    check_initial(f);

    fs::create_directories(f.out);
    const fs::path csv_path = fs::path(f.out) / "trajectory.csv";
    const fs::path json_path = fs::path(f.out) / "summary.json";

    RunResult res;
    try {
        res = f.kind == FlowKind::SphereVPMCF ? run_sphere_flow(f) : run_graph_flow(f);
    } catch (const std::exception& e) {
        res.failed = true;
        res.error = e.what();
    }

    {
        std::ofstream csv(csv_path, std::ios::binary);
        write_trajectory_csv(csv, f.kind, f.modes, res.records);
    }

    ordered_json j;
    j["status"] = res.failed ? "failed" : "ok";
    j["error"] = res.failed ? ordered_json(res.error) : ordered_json(nullptr);
    j["partial"] = res.failed;
    j["code_version"] = kCodeVersion;
    j["timestamp"] = utc_timestamp();
    j["seed"] = f.seed;
    ordered_json echo = ordered_json::object();
    for (const auto& [k, v] : cfg.raw) echo[k] = v;
    j["config"] = echo;
    ordered_json resolved;
    resolved["kind"] = f.kind == FlowKind::SphereVPMCF ? "sphere" : "graph";
    resolved["N"] = f.N;
    resolved["s"] = f.s;
    resolved["T"] = f.T;
    resolved["dt"] = res.dt;
    resolved["dt_auto"] = !f.dt.has_value();
    resolved["steps"] = res.steps;
    resolved["cadence"] = f.cadence;
    resolved["c_cfl"] = f.c_cfl;
    resolved["volume_reproject"] = f.volume_reproject;
    resolved["deficit_mode"] = res.deficit_is_proxy ? "dissipation_proxy" : "direct";
    resolved["modes"] = f.modes;
    j["resolved"] = resolved;
    j["records"] = res.records.size();
    j["final"] = res.records.empty() ? ordered_json(nullptr) : record_json(res.records.back(), f.kind);

    ordered_json checks;
    if (!res.records.empty()) {
        double max_rise = 0.0;
        for (std::size_t i = 1; i < res.records.size(); ++i)
            max_rise = std::max(max_rise, res.records[i].per_s_deficit - res.records[i - 1].per_s_deficit);
        checks["deficit_max_rise"] = max_rise;
        checks["deficit_monotone"] = max_rise <= 1e-10;
        if (f.kind == FlowKind::SphereVPMCF) {
            double drift = 0.0;
            for (const auto& r : res.records) drift = std::max(drift, std::abs(r.volume / res.records[0].volume - 1.0));
            checks["volume_drift_rel"] = drift;
        } else {
            bool mono = true;
            for (std::size_t i = 1; i < res.records.size(); ++i)
                mono = mono && res.records[i].sup_grad <= res.records[i - 1].sup_grad * (1.0 + 1e-6);
            checks["sup_grad_monotone"] = mono;
        }
    }
    j["checks"] = checks;

    try {
        const auto d = dissipation_check(res.records);
        j["dissipation_check"] = {{"mismatch", number(d.mismatch)}, {"degenerate", d.degenerate}, {"records_used", d.used}};
    } catch (const Error& e) {
        j["dissipation_check"] = {{"degenerate", true}, {"reason", e.what()}};
    }

    ordered_json fits;
    std::vector<double> t, deficit, l2;
    for (const auto& r : res.records) {
        t.push_back(r.t);
        deficit.push_back(r.per_s_deficit);
        l2.push_back(std::sqrt(r.l2_sq));
    }
    const double floor = 1e-12 * (1.0 + (l2.empty() ? 0.0 : l2.front()));
    fits["per_s_deficit"] = fit_or_flag(t, deficit, floor);
    fits["l2_norm"] = fit_or_flag(t, l2, floor);
    for (std::size_t m = 0; m < f.modes.size(); ++m) {
        std::vector<double> a;
        for (const auto& r : res.records) a.push_back(r.mode_amplitudes[m]);
        fits["amp_" + std::to_string(f.modes[m])] = fit_or_flag(t, a, floor);
    }
    j["rate_fits"] = fits;

    if (f.kind == FlowKind::SphereVPMCF && f.N * f.N <= f.node_cap) {
        ordered_json inq;
        try {
            const SphereFlowState st0 = normalize(SphereFlowState(build_initial(f), FractionalOrder(f.s)));
            inq["alexandrov"] = to_json(alexandrov_check(st0));
            inq["lojasiewicz"] = to_json(lojasiewicz_check(st0));
            inq["fuglede"] = to_json(fuglede_check(st0));
        } catch (const Error& e) {
            inq["error"] = e.what();
        }
        j["inequalities_initial"] = inq;
    }

    std::ofstream(json_path) << j.dump(2) << "\n";
    log << (res.failed ? "run failed: " + res.error : std::string("run ok")) << " (" << res.records.size()
        << " records, dt=" << format_double(res.dt) << ") -> " << f.out << "\n";
    return res.failed ? 3 : 0;
}

int run_scan(const ParsedConfig& cfg, std::ostream& log) {
    validate(cfg);
    FlowConfig f = cfg.flow;
    f.kind = FlowKind::SphereVPMCF;
    f.initial.normalize_volume = false;
    if (!cfg.raw.count("initial") && !cfg.raw.count("fourier")) f.initial.terms = {{1, 1.0, 0.0}};
    const HeightField u = build_initial(f);
    const auto grid = cfg.s_grid.empty() ? default_asymptotic_grid() : cfg.s_grid;
    fs::create_directories(f.out);

    const auto rows = asymptotic_scan(u, grid);
    {
        std::ofstream csv(fs::path(f.out) / "asymptotics.csv", std::ios::binary);
        csv << "s,s_ball_curvature,one_minus_s_ball_curvature,s_seminorm_ratio,one_minus_s_seminorm_ratio,ok,note\r\n";
        for (const auto& r : rows)
            csv << format_double(r.s) << "," << format_double(r.s_ball) << "," << format_double(r.one_minus_s_ball) << ","
                << format_double(r.s_seminorm) << "," << format_double(r.one_minus_s_seminorm) << ","
                << (r.ok ? "true" : "false") << "," << csv_field(r.note) << "\r\n";
    }
    std::vector<double> z_ball, z_semi, o_ball, o_semi;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (it->s <= 0.1 && it->ok) {
            z_ball.push_back(it->s_ball);
            z_semi.push_back(it->s_seminorm);
        }
    for (const auto& r : rows)
        if (r.s >= 0.9 && r.ok) {
            o_ball.push_back(r.one_minus_s_ball);
            o_semi.push_back(r.one_minus_s_seminorm);
        }
    ordered_json j;
    j["code_version"] = kCodeVersion;
    j["timestamp"] = utc_timestamp();
    j["N"] = u.size();
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"s", r.s},
                       {"s_ball_curvature", number(r.s_ball)},
                       {"one_minus_s_ball_curvature", number(r.one_minus_s_ball)},
                       {"s_seminorm_ratio", number(r.s_seminorm)},
                       {"one_minus_s_seminorm_ratio", number(r.one_minus_s_seminorm)},
                       {"ok", r.ok},
                       {"note", r.note}});
    j["rows"] = arr;
    j["cauchy"] = {{"s_ball_curvature_to_0", is_cauchy(z_ball)},
                   {"s_seminorm_ratio_to_0", is_cauchy(z_semi)},
                   {"one_minus_s_ball_curvature_to_1", is_cauchy(o_ball)},
                   {"one_minus_s_seminorm_ratio_to_1", is_cauchy(o_semi)}};
    std::ofstream(fs::path(f.out) / "asymptotics.json") << j.dump(2) << "\n";
    log << "scan wrote " << rows.size() << " rows -> " << f.out << "\n";
    return 0;
}

}  // namespace fmcf::app
