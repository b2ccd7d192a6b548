#include "fmcf/sphere_flow.hpp"

#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/spectral.hpp"
#include "local_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fmcf {

using detail::cplx;

namespace {

struct TrigTable {
    std::vector<double> c, s, chord2;
    explicit TrigTable(std::size_t N) : c(N), s(N), chord2(N) {
        for (std::size_t k = 0; k < N; ++k) {
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
            c[k] = std::cos(a);
            s[k] = std::sin(a);
            const double hs = 2.0 * std::sin(0.5 * a);
            chord2[k] = hs * hs;
        }
    }
};

// Per-node inner sum of gamma'(i).gamma'(j) |gamma(i)-gamma(j)|^-s, corrected.
double perimeter_row(std::size_t i, const std::vector<double>& u, const Derivatives& D, const TrigTable& tt,
                     double s, double h, const EndpointCorrection& ec) {
    const std::size_t N = u.size();
    const double ri = 1.0 + u[i];
    const double ti_r = D.d1[i], ti_t = ri;  // gamma'(i) in (radial, tangential) frame at angle 0
    double acc = 0.0;
    for (std::size_t k = 1; k < N; ++k) {
        const std::size_t j = (i + k) % N;
        const double rj = 1.0 + u[j];
        const double c = tt.c[k], sn = tt.s[k];
        const double gx = rj * c - ri, gy = rj * sn;
        const double tx = D.d1[j] * c - rj * sn, ty = D.d1[j] * sn + rj * c;
        acc += (ti_r * tx + ti_t * ty) * std::pow(gx * gx + gy * gy, -0.5 * s);
    }
    cplx G[5];
    detail::circle_curve(u[i], D.d1[i], D.d2[i], D.d3[i], D.d4[i], G);
    const auto lc = detail::perimeter_coeffs(G, s);
    return h * acc - ec(lc.g0, lc.g2);
}

std::mutex g_cap_mutex;
std::map<std::tuple<int, std::size_t, double>, double> g_cap_cache;

}  // namespace

SphereFlowState::SphereFlowState(HeightField field, FractionalOrder order, double time)
    : u(std::move(field)), s(order), t(time) {
    validate();
}

void SphereFlowState::validate() const {
    if (u.domain != Domain::Circle) throw std::invalid_argument("sphere state needs a Circle height field");
    u.validate();
    for (double v : u.values)
        if (std::abs(v) >= 1.0) throw Error(ErrorKind::StarShapeViolated, "|u| >= 1");
    const auto D = derivatives(u);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        c0 = std::max(c0, std::abs(u[i]));
        c1 = std::max(c1, std::abs(D.d1[i]));
    }
    if (c0 + c1 >= 1.0) throw Error(ErrorKind::StarShapeViolated, "C1 norm of u reached 1");
}

double ball_curvature(FractionalOrder sf) {
    const double s = sf.value();
    constexpr std::size_t N = 2048;
    const double h = kTwoPi / N;
    double acc = 0.0;
    for (std::size_t k = 1; k < N; ++k) acc += std::pow(2.0 * std::sin(0.5 * h * static_cast<double>(k)), -s);
    const EndpointCorrection ec(s, h);
    const double integral = h * acc - ec(1.0, s / 24.0, s / 2880.0 + s * s / 1152.0);
    return integral / s;
}

HeightField curvature_nearly_spherical(const SphereFlowState& st, Exec exec) {
    st.validate();
    const auto& u = st.u.values;
    const std::size_t N = u.size();
    const double s = st.s.value();
    const double h = st.u.spacing();
    const double p = 1.0 + 0.5 * s;
    const auto D = derivatives(st.u);
    const TrigTable tt(N);
    const EndpointCorrection ec(s, h);
    HeightField H(Domain::Circle, std::vector<double>(N));

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t i = 0; i < N; ++i) {
        const double ux = u[i];
        double acc = 0.0;
        for (std::size_t k = 1; k < N; ++k) {
            const std::size_t j = (i + k) % N;
            const double uy = u[j];
            const double c = tt.c[k], sn = tt.s[k];
            const double dx = (1.0 + uy) * c - (1.0 + ux), dy = (1.0 + uy) * sn;
            const double inv = std::pow(dx * dx + dy * dy, -p);
            // (uno) + (due) + (tre) with (x-y).grad u(y) = -u'(y) sin(k h)
            const double num = 2.0 * (uy - ux) * (1.0 + uy) + (1.0 + ux) * tt.chord2[k] * (1.0 + uy)
                               - 2.0 * (1.0 + ux) * D.d1[j] * sn;
            acc += num * inv;
        }
        cplx G[5];
        detail::circle_curve(ux, D.d1[i], D.d2[i], D.d3[i], D.d4[i], G);
        const auto lc = detail::curvature_coeffs(G, s, 1.0);
        H[i] = (h * acc - 2.0 * ec(lc.g0, lc.g2)) / s;
    }
    return H;
}

std::vector<double> area_element(const HeightField& u) {
    const auto D = derivatives(u);
    std::vector<double> J(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) J[i] = std::hypot(1.0 + u[i], D.d1[i]);
    return J;
}

double average_curvature(const SphereFlowState& st, const HeightField& H) {
    const auto J = area_element(st.u);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < J.size(); ++i) {
        num += H[i] * J[i];
        den += J[i];
    }
    return num / den;
}

double average_curvature(const SphereFlowState& st, Exec exec) {
    return average_curvature(st, curvature_nearly_spherical(st, exec));
}

GeometricMoments moments(const SphereFlowState& st) {
    st.u.validate();
    const std::size_t N = st.u.size();
    const double h = st.u.spacing();
    const auto J = area_element(st.u);
    GeometricMoments m;
    double v = 0.0, bx = 0.0, by = 0.0, per = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double r = 1.0 + st.u[i];
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(N);
        v += r * r;
        bx += std::cos(th) * r * r * r;
        by += std::sin(th) * r * r * r;
        per += J[i];
    }
    m.volume = 0.5 * h * v;
    m.barycenter = {h * bx / (3.0 * m.volume), h * by / (3.0 * m.volume)};
    m.perimeter_classical = h * per;
    return m;
}

double perimeter_s_deficit(const SphereFlowState& st, Exec exec, std::size_t node_cap) {
    st.validate();
    const std::size_t N = st.u.size();
    if (N * N > node_cap)
        throw Error(ErrorKind::QuadratureBudgetExceeded, "N^2 = " + std::to_string(N * N) + " exceeds node cap");
    const double s = st.s.value();
    const double h = st.u.spacing();
    const TrigTable tt(N);
    const EndpointCorrection ec(s, h);
    const auto D = derivatives(st.u);
    const HeightField zero = HeightField::constant(Domain::Circle, N, 0.0);
    const auto Dz = derivatives(zero);
    const double ball_row = perimeter_row(0, zero.values, Dz, tt, s, h, ec);
    std::vector<double> rows(N);

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t i = 0; i < N; ++i) rows[i] = perimeter_row(i, st.u.values, D, tt, s, h, ec) - ball_row;

    double acc = 0.0;
    for (double r : rows) acc += r;
    return h * acc / (s * s);
}

double perimeter_s_ball(std::size_t N, FractionalOrder sf) {
    const double s = sf.value();
    const double h = kTwoPi / static_cast<double>(N);
    const TrigTable tt(N);
    const EndpointCorrection ec(s, h);
    const HeightField zero = HeightField::constant(Domain::Circle, N, 0.0);
    const auto Dz = derivatives(zero);
    return static_cast<double>(N) * h * perimeter_row(0, zero.values, Dz, tt, s, h, ec) / (s * s);
}

double stability_cap(Domain d, std::size_t N, FractionalOrder s, double c_cfl) {
    const auto key = std::make_tuple(static_cast<int>(d), N, s.value());
    double lam = 0.0;
    {
        std::lock_guard<std::mutex> lock(g_cap_mutex);
        auto it = g_cap_cache.find(key);
        if (it != g_cap_cache.end()) lam = it->second;
    }
    if (lam == 0.0) {
        lam = riesz_symbol_max(d, N, s);
        std::lock_guard<std::mutex> lock(g_cap_mutex);
        g_cap_cache[key] = lam;
    }
    return c_cfl / lam;
}

CurvatureDeficit curvature_deficit(const SphereFlowState& st, const HeightField& H) {
    const auto J = area_element(st.u);
    const double Hbar = average_curvature(st, H);
    const double h = st.u.spacing();
    CurvatureDeficit cd;
    for (std::size_t i = 0; i < J.size(); ++i) {
        const double e = H[i] - Hbar;
        cd.on_boundary += e * e * J[i];
        cd.on_reference += e * e;
    }
    cd.on_boundary *= h;
    cd.on_reference *= h;
    return cd;
}

SphereFlowState step_vpmcf(const SphereFlowState& st, double dt, const StepOptions& opt, CurvatureDeficit* info) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const double cap = stability_cap(Domain::Circle, st.u.size(), st.s, opt.c_cfl);
    if (dt > cap * (1.0 + 1e-12))
        throw Error(ErrorKind::StabilityCapExceeded, "dt " + std::to_string(dt) + " above cap " + std::to_string(cap));
    const HeightField H = curvature_nearly_spherical(st, opt.exec);
    const auto J = area_element(st.u);
    const double Hbar = average_curvature(st, H);
    if (info) *info = curvature_deficit(st, H);
    HeightField next = st.u;
    for (std::size_t i = 0; i < next.size(); ++i)
        next[i] = st.u[i] - dt * (H[i] - Hbar) * J[i] / (1.0 + st.u[i]);
    if (opt.volume_reproject) {
        double v = 0.0;
        for (double x : next.values) v += (1.0 + x) * (1.0 + x);
        v *= 0.5 * next.spacing();
        const double lam = std::sqrt(opt.target_volume / v);
        for (auto& x : next.values) x = lam * (1.0 + x) - 1.0;
    }
    return SphereFlowState(std::move(next), st.s, st.t + dt);
}

RunResult run_sphere_flow(const FlowConfig& cfg) {
    RunResult res;
    const FractionalOrder s(cfg.s);
    SphereFlowState st(build_initial(cfg), s, 0.0);
    const double cap = stability_cap(Domain::Circle, cfg.N, s, cfg.c_cfl);
    const double dt_req = cfg.dt.value_or(cap);
    const auto steps = static_cast<std::size_t>(std::ceil(cfg.T / dt_req - 1e-9));
    const double dt = cfg.T / static_cast<double>(std::max<std::size_t>(steps, 1));
    res.dt = dt;
    const bool direct = cfg.deficit_mode == DeficitMode::Direct && cfg.N * cfg.N <= cfg.node_cap;
    res.deficit_is_proxy = !direct;
    StepOptions opt;
    opt.volume_reproject = cfg.volume_reproject;
    opt.target_volume = moments(st).volume;
    opt.c_cfl = cfg.c_cfl;
    double proxy = 0.0;
    if (cfg.N * cfg.N <= cfg.node_cap) proxy = perimeter_s_deficit(st, Exec::Parallel, cfg.node_cap);

    auto record = [&](const SphereFlowState& cur, std::size_t n) {
        TrajectoryRecord r;
        r.t = static_cast<double>(n) * dt;
        const auto m = moments(cur);
        r.volume = m.volume;
        r.barycenter_x = m.barycenter[0];
        r.barycenter_y = m.barycenter[1];
        r.per_s_deficit = direct ? perimeter_s_deficit(cur, Exec::Parallel, cfg.node_cap) : proxy;
        r.seminorm_sq = seminorm_sq(cur.u, s);
        r.l2_sq = l2_stats(cur.u).l2_sq;
        const auto cd = curvature_deficit(cur, curvature_nearly_spherical(cur));
        r.curv_deficit_l2_sq = cd.on_boundary;
        r.curv_deficit_l2_sq_ref = cd.on_reference;
        r.sup_grad = l2_stats(cur.u).sup_grad;
        for (int k : cfg.modes) r.mode_amplitudes.push_back(mode_amplitude(cur.u, k));
        res.records.push_back(std::move(r));
    };

    try {
        for (std::size_t n = 0;; ++n) {
            if (n % static_cast<std::size_t>(cfg.cadence) == 0 || n == steps) record(st, n);
            if (n == steps) break;
            CurvatureDeficit cd;
            st = step_vpmcf(st, dt, opt, &cd);
            st.t = static_cast<double>(n + 1) * dt;
            proxy -= dt * cd.on_boundary;
            ++res.steps;
        }
    } catch (const Error& e) {
        res.failed = true;
        res.error = e.what();
    }
    return res;
}

}  // namespace fmcf
