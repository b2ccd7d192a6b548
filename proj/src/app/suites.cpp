#include "suites.hpp"

#include "experiment.hpp"
#include "output.hpp"

#include "fmcf/diagnostics.hpp"
#include "fmcf/graph_flow.hpp"
#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/spectral.hpp"
#include "fmcf/sphere_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

namespace fmcf::app {

namespace {

using Results = std::vector<CheckResult>;

void add(Results& r, std::string name, double value, double threshold, bool pass, std::string detail = {}) {
    r.push_back({std::move(name), value, threshold, pass, std::move(detail)});
}

std::string tag(const char* fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

HeightField graph_field(std::size_t N, std::uint64_t seed, double grad_cap) {
    auto terms = random_coefficients(seed, 8);
    terms = scale_terms(terms, grad_cap / terms_sup_grad(terms, Domain::PeriodicLine));
    return evaluate_terms(Domain::PeriodicLine, N, terms);
}

double l2_sq(const HeightField& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v;
    return acc * u.spacing();
}

double rayleigh(const HeightField& u, FractionalOrder s) {
    return inner_product(u, riesz_apply(u, s)) / inner_product(u, u);
}

Results identities() {
    Results r;
    for (double sv : {0.3, 0.5, 0.7}) {
        const FractionalOrder s(sv);
        const double l1 = eigenvalue(1, s), l2 = eigenvalue(2, s);
        const double e1 = std::abs(l1 / (sv * ball_curvature(s)) - 1.0);
        add(r, "eigenvalue_identity s=" + tag("%.1f", sv), e1, 1e-6, e1 <= 1e-6);
        const double e2 = std::abs((l2 / l1) / (4.0 / (2.0 - sv)) - 1.0);
        add(r, "eigenvalue_ratio s=" + tag("%.1f", sv), e2, 1e-4, e2 <= 1e-4);
        double prev = -1.0;
        bool mono = true;
        for (int k = 0; k <= 8; ++k) {
            const double lk = eigenvalue(k, s);
            mono = mono && lk > prev;
            prev = lk;
        }
        add(r, "eigenvalue_monotone s=" + tag("%.1f", sv), mono ? 1.0 : 0.0, 1.0, mono, "k=0..8");
        double rot = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const auto c = HeightField::sample(Domain::Circle, kEigenGrid, [k](double x) { return std::cos(k * x); });
            const auto sn = HeightField::sample(Domain::Circle, kEigenGrid, [k](double x) { return std::sin(k * x); });
            rot = std::max(rot, std::abs(rayleigh(c, s) / rayleigh(sn, s) - 1.0));
        }
        add(r, "cos_sin_agreement s=" + tag("%.1f", sv), rot, 1e-10, rot <= 1e-10);
    }

    double gap = 0.0;
    const FractionalOrder half(0.5);
    for (int m = 0; m < 50; ++m) {
        const auto u = random_band_limited(Domain::Circle, 256, 100 + m, 0.1);
        const double a = seminorm_sq(u, half), b = inner_product(u, riesz_apply(u, half));
        gap = std::max(gap, std::abs(a - b) / std::abs(a));
    }
    add(r, "fract_identity_gap", gap, 1e-12, gap <= 1e-12, "50 random fields, N=256");

    for (double c : {-0.3, 0.2}) {
        const SphereFlowState st(HeightField::constant(Domain::Circle, 256, c), half);
        const auto H = curvature_nearly_spherical(st);
        const double want = std::pow(1.0 + c, -0.5) * ball_curvature(half);
        double err = 0.0;
        for (double h : H.values) err = std::max(err, std::abs(h - want));
        add(r, "scaling_covariance c=" + tag("%.1f", c), err, 1e-8, err <= 1e-8);
    }

    double poinc = std::numeric_limits<double>::infinity(), pars = 0.0;
    for (int m = 0; m < 10; ++m) {
        const auto u = random_band_limited(Domain::Circle, 256, 300 + m, 0.1);
        const auto sp = decompose(u);
        const double l1 = eigenvalue(1, half, 256);
        const double margin = seminorm_sq(sp.R, half) - (4.0 / 1.5) * l1 * l2_sq(sp.R);
        poinc = std::min(poinc, margin / seminorm_sq(sp.R, half));
        const double rhs = l1 * (sp.b[0] * sp.b[0] + sp.b[1] * sp.b[1]) + seminorm_sq(sp.R, half);
        pars = std::max(pars, std::abs(seminorm_sq(u, half) / rhs - 1.0));
    }
    add(r, "poincare_margin", poinc, -1e-12, poinc >= -1e-12, "relative, s=0.5");
    add(r, "parseval_split", pars, 1e-10, pars <= 1e-10, "s=0.5");
    return r;
}

double ensemble_relative_spread(double a, double b) { return std::abs(a / b - 1.0); }

Results inequalities() {
    Results r;
    const std::pair<InequalityKind, const char*> kinds[] = {{InequalityKind::Alexandrov, "alexandrov"},
                                                            {InequalityKind::Lojasiewicz, "lojasiewicz"},
                                                            {InequalityKind::Fuglede, "fuglede"}};
    for (const auto& [kind, name] : kinds) {
        const auto a = ensemble_check(kind, 128, 0.5, 0.03, 20, 1);
        const auto b = ensemble_check(kind, 256, 0.5, 0.03, 20, 1);
        add(r, std::string(name) + "_min_ratio N=128", a.ensemble_min_ratio, 0.0, a.ensemble_min_ratio > 0.0);
        add(r, std::string(name) + "_min_ratio N=256", b.ensemble_min_ratio, 0.0, b.ensemble_min_ratio > 0.0);
        const double spread = ensemble_relative_spread(b.ensemble_min_ratio, a.ensemble_min_ratio);
        add(r, std::string(name) + "_refinement_spread", spread, 0.2, spread <= 0.2);
    }

    for (double sv : {0.3, 0.7}) {
        const FractionalOrder s(sv);
        int violations = 0;
        for (int m = 0; m < 50; ++m) {
            const auto u = graph_field(128, 500 + m, 0.1);
            const double semi = seminorm_sq(u, s);
            const double g = l2_stats(u).sup_grad;
            const double d = periodic_perimeter_deficit(GraphFlowState(u, s), 0.0);
            const double lo = semi / (2.0 * std::pow(1.0 + 4.0 * g * g, (2.0 + sv) / 2.0));
            if (d < lo || d > semi / 2.0) ++violations;
        }
        add(r, "graph_sandwich_violations s=" + tag("%.1f", sv), violations, 0.0, violations == 0, "50 fields, N=128");
    }

    std::vector<double> poincare_c;
    for (double sv : {0.3, 0.5, 0.7}) {
        double c = std::numeric_limits<double>::infinity();
        for (int m = 0; m < 20; ++m) {
            const auto u = graph_field(128, 700 + m, 0.1);
            c = std::min(c, (1.0 - sv) * seminorm_sq(u, FractionalOrder(sv)) / l2_sq(u));
        }
        poincare_c.push_back(c);
        add(r, "graph_poincare_constant s=" + tag("%.1f", sv), c, 0.0, c > 0.0);
    }
    const auto [pmin, pmax] = std::minmax_element(poincare_c.begin(), poincare_c.end());
    add(r, "graph_poincare_spread", *pmax / *pmin, 2.0, *pmax / *pmin <= 2.0, "max/min over s");

    double lc = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 20; ++m) {
        const GraphFlowState st(graph_field(128, 900 + m, 0.05), FractionalOrder(0.5));
        const auto H = curvature_graph(st);
        lc = std::min(lc, l2_sq(H) / (2.0 * periodic_perimeter_deficit(st, 0.0)));
    }
    add(r, "graph_curvature_deficit_constant", lc, 0.0, lc > 0.0, "20 fields, grad<=0.05");

    double cr[2];
    for (int g = 0; g < 2; ++g) {
        const std::size_t N = g == 0 ? 128 : 256;
        double worst = 0.0;
        for (int m = 0; m < 5; ++m) {
            const GraphFlowState st(graph_field(N, 1100 + m, 0.05), FractionalOrder(0.5));
            const double rr = inner_product(st.u, curvature_graph(st)) / seminorm_sq(st.u, st.s) - 1.0;
            worst = std::max(worst, std::abs(rr) / l2_stats(st.u).sup_grad);
        }
        cr[g] = worst;
    }
    const double cs = ensemble_relative_spread(cr[1], cr[0]);
    add(r, "graph_linearized_remainder_refinement", cs, 0.2, cs <= 0.2, "C at N=128: " + format_double(cr[0]));
    return r;
}

Results asymptotics() {
    Results r;
    const auto u = HeightField::sample(Domain::Circle, 256, [](double x) { return std::cos(x); });
    const auto rows = asymptotic_scan(u, default_asymptotic_grid());
    auto row = [&](double s) {
        for (const auto& x : rows)
            if (std::abs(x.s - s) < 1e-12) return x;
        return AsymptoticRow{};
    };
    const double e0 = std::abs(row(1e-3).s_ball / kTwoPi - 1.0);
    add(r, "s_ball_curvature_to_2pi", e0, 0.01, e0 <= 0.01, "s=1e-3");
    const double t1 = std::abs(row(0.99).one_minus_s_seminorm / row(0.95).one_minus_s_seminorm - 1.0);
    add(r, "one_minus_s_seminorm_trend", t1, 0.1, t1 <= 0.1, "s=0.95 vs 0.99");
    std::vector<double> z, o;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (it->s <= 0.1) z.push_back(it->s_seminorm);
    for (const auto& x : rows)
        if (x.s >= 0.9) o.push_back(x.one_minus_s_seminorm);
    add(r, "s_seminorm_cauchy", is_cauchy(z), 1.0, is_cauchy(z));
    add(r, "one_minus_s_seminorm_cauchy", is_cauchy(o), 1.0, is_cauchy(o));
    bool all_ok = true;
    for (const auto& x : rows) all_ok = all_ok && x.ok;
    add(r, "scan_rows_ok", all_ok, 1.0, all_ok);
    return r;
}

RunResult short_run(FlowKind kind, const std::string& preset, std::size_t N, double T, std::size_t cadence,
                     std::optional<double> dt = std::nullopt) {
    FlowConfig f;
    f.kind = kind;
    f.N = N;
    f.T = T;
    f.dt = dt;
    f.cadence = cadence;
    f.modes = {kind == FlowKind::SphereVPMCF ? 2 : 1};
    f.initial.kind = InitialSpec::Kind::Preset;
    f.initial.preset = preset;
    return kind == FlowKind::SphereVPMCF ? run_sphere_flow(f) : run_graph_flow(f);
}

Results convergence() {
    Results r;
    const auto field = [](std::size_t N) {
        return HeightField::sample(Domain::Circle, N, [](double x) { return std::cos(2 * x) + std::sin(5 * x); });
    };
    const FractionalOrder half(0.5);
    const double d128 = std::abs(divergence_identity_check(field(128), half));
    const double d256 = std::abs(divergence_identity_check(field(256), half));
    add(r, "div2_refinement_ratio", d256 / d128, 0.5, d256 <= 0.5 * d128,
        "|value| " + format_double(d128) + " -> " + format_double(d256));
    const double f128 = divergence_identity_first(field(128), half);
    const double f256 = divergence_identity_first(field(256), half);
    add(r, "div1_refinement_ratio", f256 / f128, 0.5, f256 <= 0.5 * f128);

    const double ref = eigenvalue(2, half, 4096);
    double prev = 0.0, order = std::numeric_limits<double>::infinity();
    for (std::size_t N : {32u, 64u, 128u}) {
        const double e = std::abs(eigenvalue(2, half, N) / ref - 1.0);
        if (prev > 0.0) order = std::min(order, std::log2(prev / e));
        prev = e;
    }
    add(r, "riesz_refinement_order", order, 1.0, order >= 1.0, "mode 2 symbol, N=32..128");

    double worst_lo = std::numeric_limits<double>::infinity(), worst_hi = 0.0;
    ExpansionResiduals last{};
    for (double eps : {0.04, 0.02, 0.01}) {
        const auto u = HeightField::sample(Domain::Circle, 256,
                                           [eps](double x) { return eps * (std::cos(2 * x) + std::cos(4 * x)); });
        const auto res = expansion_check(normalize(SphereFlowState(u, half)));
        if (eps < 0.04) {
            for (double q : {last.second / res.second, last.third / res.third}) {
                worst_lo = std::min(worst_lo, q);
                worst_hi = std::max(worst_hi, q);
            }
        }
        last = res;
    }
    add(r, "expansion_halving_ratio_min", worst_lo, 1.4, worst_lo >= 1.4 && worst_lo <= 2.6);
    add(r, "expansion_halving_ratio_max", worst_hi, 2.6, worst_hi >= 1.4 && worst_hi <= 2.6);

    const auto a = short_run(FlowKind::SphereVPMCF, "sphere-mixed", 128, 0.2, 10);
    const auto b = short_run(FlowKind::SphereVPMCF, "sphere-mixed", 128, 0.2, 10, a.dt / 2.0);
    std::vector<double> t, amp;
    for (const auto& rec : a.records) {
        t.push_back(rec.t);
        amp.push_back(rec.mode_amplitudes[0]);
    }
    const auto fit = fit_rate(t, amp);
    const double want = eigenvalue(2, half) - eigenvalue(1, half);
    const double rerr = std::abs(fit.rate / want - 1.0);
    add(r, "sphere_rate_error", rerr, 0.1, rerr <= 0.1 && fit.r_squared >= 0.99, "N=128");
    const double m1 = dissipation_check(a.records).mismatch, m2 = dissipation_check(b.records).mismatch;
    add(r, "sphere_dissipation_mismatch", m1, 0.03, m1 <= 0.03);
    add(r, "sphere_dissipation_dt_halving", m2 / m1, 1.0, m2 < m1);

    const auto g = short_run(FlowKind::GraphMCF, "graph-cos", 128, 0.02, 50);
    t.clear();
    std::vector<double> l2;
    for (const auto& rec : g.records) {
        t.push_back(rec.t);
        l2.push_back(std::sqrt(rec.l2_sq));
    }
    const auto gfit = fit_rate(t, l2);
    const auto one = HeightField::sample(Domain::PeriodicLine, 512, [](double x) { return std::cos(kTwoPi * x); });
    const double mu = rayleigh(one, half);
    const double gerr = std::abs(gfit.rate / mu - 1.0);
    add(r, "graph_rate_error", gerr, 0.1, gerr <= 0.1 && gfit.r_squared >= 0.99, "N=128");
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "inequalities", "asymptotics", "convergence"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "identities") return identities();
    if (name == "inequalities") return inequalities();
    if (name == "asymptotics") return asymptotics();
    if (name == "convergence") return convergence();
    throw Error(ErrorKind::ConfigInvalid, "unknown suite: " + name);
}

int report_suite(const std::string& name, const std::vector<CheckResult>& results, const std::string& out,
                 std::ostream& table) {
    bool all = true;
    ordered_json checks = ordered_json::array();
    char line[256];
    std::snprintf(line, sizeof line, "%-44s %14s %12s  %s\n", "check", "value", "threshold", "result");
    table << line;
    for (const auto& c : results) {
        all = all && c.pass;
        checks.push_back({{"name", c.name},
                          {"value", number(c.value)},
                          {"threshold", c.threshold},
                          {"pass", c.pass},
                          {"detail", c.detail}});
        std::snprintf(line, sizeof line, "%-44s %14.6g %12.3g  %s", c.name.c_str(), c.value, c.threshold,
                      c.pass ? "PASS" : "FAIL");
        table << line << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    }
    ordered_json j;
    j["suite"] = name;
    j["pass"] = all;
    j["code_version"] = kCodeVersion;
    j["timestamp"] = utc_timestamp();
    j["checks"] = checks;
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / ("suite_" + name + ".json")) << j.dump(2) << "\n";
    table << name << ": " << (all ? "all checks passed" : "some checks failed") << "\n";
    return all ? 0 : 1;
}

}  // namespace fmcf::app
