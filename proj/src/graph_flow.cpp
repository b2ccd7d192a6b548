#include "fmcf/graph_flow.hpp"

#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/spectral.hpp"
#include "fmcf/sphere_flow.hpp"
#include "local_expansion.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace fmcf {

using detail::cplx;

namespace {

// Images |m| >= m0 enter through power sums
//   S_j(delta) = sum |delta+m|^-(2+s+2j),  T_j(delta) = sum (delta+m)|delta+m|^-(2+s+2j)
// over m0 <= |m| <= M, with the (k = N/2, m = M) node at half weight.
struct FarImages {
    std::size_t N;
    int m0, J;
    std::vector<double> S, T;  // [(k + N/2 - 1) * J + j]

    FarImages(std::size_t n, double s, int m0_, int J_) : N(n), m0(m0_), J(J_), S(n * J_, 0.0), T(n * J_, 0.0) {
        const double h = 1.0 / static_cast<double>(N);
        const auto half = static_cast<long>(N / 2);
        for (long k = -half + 1; k <= half; ++k) {
            const double delta = h * static_cast<double>(k);
            double* Sk = &S[static_cast<std::size_t>(k + half - 1) * J];
            double* Tk = &T[static_cast<std::size_t>(k + half - 1) * J];
            for (int m = -kImageCount - 1; m <= kImageCount; ++m) {
                if (std::abs(m) < m0) continue;
                if (m == -kImageCount - 1 && k != half) continue;
                const double t = delta + m;
                const double wt = (k == half && (m == kImageCount || m == -kImageCount - 1)) ? 0.5 : 1.0;
                const double inv2 = 1.0 / (t * t);
                double pw = wt * std::pow(std::abs(t), -(2.0 + s));
                for (int j = 0; j < J; ++j) {
                    Sk[j] += pw;
                    Tk[j] += t * pw;
                    pw *= inv2;
                }
            }
        }
    }
    const double* Sk(long k) const { return &S[static_cast<std::size_t>(k + static_cast<long>(N / 2) - 1) * J]; }
    const double* Tk(long k) const { return &T[static_cast<std::size_t>(k + static_cast<long>(N / 2) - 1) * J]; }
};

// m0 with osc / (m0 - 1/2) <= 1/2, and series length so that (osc / (m0 - 1/2))^(2J) < 1e-17.
void far_parameters(const std::vector<double>& u, int* m0, int* J) {
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    const double osc = *hi - *lo;
    *m0 = std::clamp(static_cast<int>(std::ceil(2.0 * osc + 0.5)), 1, kImageCount);
    if (osc <= 0.0) {
        *J = 2;
        return;
    }
    const double ratio = osc / (*m0 - 0.5);
    *J = std::clamp(static_cast<int>(std::ceil(17.0 * std::log(10.0) / (-2.0 * std::log(ratio)))) + 1, 2, 64);
}

std::vector<double> binom_neg(double p, int J) {
    std::vector<double> b(J);
    b[0] = 1.0;
    for (int j = 1; j < J; ++j) b[j] = b[j - 1] * (-p - (j - 1)) / j;
    return b;
}

inline std::size_t wrap(long i, std::size_t N) {
    const auto n = static_cast<long>(N);
    return static_cast<std::size_t>(((i % n) + n) % n);
}

}  // namespace

GraphFlowState::GraphFlowState(HeightField field, FractionalOrder order, double time)
    : u(std::move(field)), s(order), t(time) {
    validate();
}

void GraphFlowState::validate() const {
    if (u.domain != Domain::PeriodicLine) throw std::invalid_argument("graph state needs a PeriodicLine height field");
    u.validate();
}

HeightField curvature_graph(const GraphFlowState& st, Exec exec) {
    st.validate();
    const auto& u = st.u.values;
    const std::size_t N = u.size();
    const double s = st.s.value();
    const double h = st.u.spacing();
    const double p = 1.0 + 0.5 * s;
    const auto D = derivatives(st.u);
    int m0 = 0, J = 0;
    far_parameters(u, &m0, &J);
    const FarImages far(N, s, m0, J);
    const auto bn = binom_neg(p, J);
    const EndpointCorrection ec(s, h);
    const auto half = static_cast<long>(N / 2);
    const double L = kImageCount + 0.5;
    const double Lpow = 2.0 * std::pow(L, -(1.0 + s));
    HeightField H(Domain::PeriodicLine, std::vector<double>(N));

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t i = 0; i < N; ++i) {
        const auto ii = static_cast<long>(i);
        double acc = 0.0;
        double mean_diff = 0.0;
        for (long k = -half + 1; k <= half; ++k) {
            const std::size_t j = wrap(ii + k, N);
            const double d = u[j] - u[i];
            const double up = D.d1[j];
            const double delta = h * static_cast<double>(k);
            mean_diff += d;
            for (int m = -(m0 - 1); m <= m0 - 1; ++m) {
                if (k == 0 && m == 0) continue;
                const double t = delta + m;
                acc += (d - t * up) * std::pow(t * t + d * d, -p);
            }
            const double* S = far.Sk(k);
            const double* T = far.Tk(k);
            const double d2 = d * d;
            double dp = 1.0;
            double series = 0.0;
            for (int q = 0; q < J; ++q) {
                series += bn[q] * dp * (d * S[q] - up * T[q]);
                dp *= d2;
            }
            acc += series;
        }
        mean_diff /= static_cast<double>(N);
        const double tail = Lpow * (mean_diff / (1.0 + s) - mean_diff + (u[wrap(ii + half, N)] - u[i]));
        cplx G[5];
        detail::graph_curve(u[i], D.d1[i], D.d2[i], D.d3[i], D.d4[i], G);
        const auto lc = detail::curvature_coeffs(G, s, -1.0);
        H[i] = 2.0 / s * (h * acc + tail - ec(lc.g0, lc.g2));
    }
    return H;
}

GraphFlowState step_graph(const GraphFlowState& st, double dt, double c_cfl, Exec exec, double* dissipation) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const double cap = stability_cap(Domain::PeriodicLine, st.u.size(), st.s, c_cfl);
    if (dt > cap * (1.0 + 1e-12))
        throw Error(ErrorKind::StabilityCapExceeded, "dt " + std::to_string(dt) + " above cap " + std::to_string(cap));
    const HeightField H = curvature_graph(st, exec);
    const auto D = derivatives(st.u);
    HeightField next = st.u;
    double diss = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        const double w = std::sqrt(1.0 + D.d1[i] * D.d1[i]);
        next[i] = st.u[i] - dt * H[i] * w;
        diss += H[i] * H[i] * w;
    }
    if (dissipation) *dissipation = st.u.spacing() * diss;
    return GraphFlowState(std::move(next), st.s, st.t + dt);
}

double deficit_profile_derivative(double X, double p) {
    const double ax = std::abs(X);
    double r = 0.0;
    if (ax < 0.5) {
        double b = 1.0, x2k = ax;
        const double x2 = ax * ax;
        for (int k = 0; k < 60; ++k) {
            const double term = b * x2k / (2 * k + 1);
            r += term;
            if (std::abs(term) < 1e-18 * std::abs(r)) break;
            b *= (-p - k) / (k + 1);
            x2k *= x2;
        }
        r *= 2.0;
    } else {
        auto f = [p](double v) { return std::pow(1.0 + v * v, -p); };
        double a = 0.0, bnd = 0.5;
        while (a < ax) {
            const double hi = std::min(bnd, ax);
            r += boost::math::quadrature::gauss<double, 20>::integrate(f, a, hi);
            a = hi;
            bnd *= 2.0;
        }
        r *= 2.0;
    }
    return X < 0 ? -r : r;
}

double deficit_profile(double X, double p) {
    const double ax = std::abs(X);
    if (ax < 0.5) {
        double b = 1.0, x = ax * ax, r = 0.0;
        const double x2 = ax * ax;
        for (int k = 0; k < 60; ++k) {
            const double term = b * x / ((2 * k + 1) * (2 * k + 2));
            r += term;
            if (std::abs(term) < 1e-18 * std::abs(r)) break;
            b *= (-p - k) / (k + 1);
            x *= x2;
        }
        return 2.0 * r;
    }
    return ax * deficit_profile_derivative(ax, p) - (std::pow(1.0 + ax * ax, 1.0 - p) - 1.0) / (1.0 - p);
}

double periodic_perimeter_deficit(const GraphFlowState& st, double c, Exec exec) {
    (void)c;  // the represented quantity carries no c
    st.validate();
    const auto& u = st.u.values;
    const std::size_t N = u.size();
    const double s = st.s.value();
    const double h = st.u.spacing();
    const double p = 1.0 + 0.5 * s;
    const auto D = derivatives(st.u);
    int m0 = 0, J = 0;
    far_parameters(u, &m0, &J);
    const FarImages far(N, s, m0, J);
    // a^-s Phi(d/a) = sum_q coef_q d^(2q+2) a^-(2+s+2q)
    std::vector<double> coef(J);
    {
        const auto bn = binom_neg(p, J);
        for (int q = 0; q < J; ++q) coef[q] = 2.0 * bn[q] / ((2.0 * q + 1.0) * (2.0 * q + 2.0));
    }
    const EndpointCorrection ec(s, h);
    const auto half = static_cast<long>(N / 2);
    const double L = kImageCount + 0.5;
    const double tail_w = 2.0 * std::pow(L, -(1.0 + s)) / (1.0 + s);
    std::vector<double> rows(N);

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t i = 0; i < N; ++i) {
        const auto ii = static_cast<long>(i);
        double acc = 0.0, mean_sq = 0.0;
        for (long k = -half + 1; k <= half; ++k) {
            const std::size_t j = wrap(ii + k, N);
            const double d = u[j] - u[i];
            const double delta = h * static_cast<double>(k);
            mean_sq += d * d;
            if (d == 0.0) continue;
            for (int m = -(m0 - 1); m <= m0 - 1; ++m) {
                if (k == 0 && m == 0) continue;
                const double a = std::abs(delta + m);
                acc += std::pow(a, -s) * deficit_profile(d / a, p);
            }
            const double* S = far.Sk(k);
            const double d2 = d * d;
            double dp = d2;
            double series = 0.0;
            for (int q = 0; q < J; ++q) {
                series += coef[q] * dp * S[q];
                dp *= d2;
            }
            acc += series;
        }
        mean_sq /= static_cast<double>(N);
        const double X = D.d1[i];
        const double g0 = deficit_profile(X, p);
        const double g2 = deficit_profile_derivative(X, p) * D.d3[i] / 6.0
                          + std::pow(1.0 + X * X, -p) * 0.25 * D.d2[i] * D.d2[i];
        rows[i] = h * acc + tail_w * mean_sq - ec(g0, g2);
    }
    double total = 0.0;
    for (double r : rows) total += r;
    return 0.5 * h * total;
}

RunResult run_graph_flow(const FlowConfig& cfg) {
    RunResult res;
    const FractionalOrder s(cfg.s);
    GraphFlowState st(build_initial(cfg), s, 0.0);
    const double cap = stability_cap(Domain::PeriodicLine, cfg.N, s, cfg.c_cfl);
    const double dt_req = cfg.dt.value_or(cap);
    const auto steps = static_cast<std::size_t>(std::ceil(cfg.T / dt_req - 1e-9));
    const double dt = cfg.T / static_cast<double>(std::max<std::size_t>(steps, 1));
    res.dt = dt;
    const bool direct = cfg.deficit_mode == DeficitMode::Direct && cfg.N * cfg.N <= cfg.node_cap;
    res.deficit_is_proxy = !direct;
    double proxy = periodic_perimeter_deficit(st, st.u[0]);

    auto record = [&](const GraphFlowState& cur, std::size_t n) {
        TrajectoryRecord r;
        r.t = static_cast<double>(n) * dt;
        const auto ls = l2_stats(cur.u);
        r.volume = ls.mean;
        r.per_s_deficit = direct ? periodic_perimeter_deficit(cur, ls.mean) : proxy;
        r.seminorm_sq = seminorm_sq(cur.u, s);
        double dev = 0.0;
        for (double v : cur.u.values) dev += (v - ls.mean) * (v - ls.mean);
        r.l2_sq = cur.u.spacing() * dev;
        const HeightField H = curvature_graph(cur);
        const auto D = derivatives(cur.u);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < H.size(); ++i) {
            a += H[i] * H[i] * std::sqrt(1.0 + D.d1[i] * D.d1[i]);
            b += H[i] * H[i];
        }
        r.curv_deficit_l2_sq = cur.u.spacing() * a;
        r.curv_deficit_l2_sq_ref = cur.u.spacing() * b;
        r.sup_grad = ls.sup_grad;
        for (int k : cfg.modes) r.mode_amplitudes.push_back(mode_amplitude(cur.u, k));
        res.records.push_back(std::move(r));
    };

    try {
        for (std::size_t n = 0;; ++n) {
            if (n % static_cast<std::size_t>(cfg.cadence) == 0 || n == steps) record(st, n);
            if (n == steps) break;
            double diss = 0.0;
            st = step_graph(st, dt, cfg.c_cfl, Exec::Parallel, &diss);
            st.t = static_cast<double>(n + 1) * dt;
            proxy -= dt * diss;
            ++res.steps;
        }
    } catch (const Error& e) {
        res.failed = true;
        res.error = e.what();
    }
    return res;
}

}  // namespace fmcf
