#include "fmcf/diagnostics.hpp"

#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fmcf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

HeightField recenter_once(const HeightField& u, double bx, double by) {
    const TrigInterpolant f(u);
    const std::size_t N = u.size();
    HeightField out = u;
    for (std::size_t i = 0; i < N; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(N);
        const double ct = std::cos(th), st = std::sin(th);
        double phi = th;
        double radius = 0.0;
        for (int it = 0; it < 40; ++it) {
            const double r = 1.0 + f.value(phi), dr = f.derivative(phi);
            const double cp = std::cos(phi), sp = std::sin(phi);
            const double px = r * cp - bx, py = r * sp - by;
            const double qx = dr * cp - r * sp, qy = dr * sp + r * cp;
            const double F = std::atan2(ct * py - st * px, ct * px + st * py);
            const double dF = (px * qy - py * qx) / (px * px + py * py);
            radius = std::hypot(px, py);
            phi -= F / dF;
            if (std::abs(F) < 1e-15) break;
        }
        out[i] = radius - 1.0;
    }
    return out;
}

void require_normalized(const SphereFlowState& st) {
    if (!is_normalized(st))
        throw Error(ErrorKind::NotNormalized, "state must have volume pi and barycenter 0 (use normalize)");
}

InequalityReport make_report(double lhs, double rhs, const SphereFlowState& st) {
    InequalityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.N = st.u.size();
    r.s = st.s.value();
    double amp = 0.0;
    for (double v : st.u.values) amp = std::max(amp, std::abs(v));
    r.eps = amp;
    r.degenerate = !(lhs > 1e-24);
    r.ratio = r.degenerate ? kNaN : rhs / lhs;
    r.ensemble_min_ratio = r.ratio;
    return r;
}

}  // namespace

SphereFlowState normalize(const SphereFlowState& st) {
    HeightField u = st.u;
    for (int pass = 0; pass < 8; ++pass) {
        const auto m = moments(SphereFlowState(u, st.s));
        if (std::hypot(m.barycenter[0], m.barycenter[1]) < 1e-14) break;
        u = recenter_once(u, m.barycenter[0], m.barycenter[1]);
    }
    const auto m = moments(SphereFlowState(u, st.s));
    const double lam = std::sqrt(kPi / m.volume);
    for (auto& v : u.values) v = lam * (1.0 + v) - 1.0;
    return SphereFlowState(std::move(u), st.s, st.t);
}

bool is_normalized(const SphereFlowState& st, double tol) {
    const auto m = moments(st);
    return std::abs(m.volume - kPi) <= tol && std::abs(m.barycenter[0]) <= tol && std::abs(m.barycenter[1]) <= tol;
}

InequalityReport inequality_check(InequalityKind kind, const SphereFlowState& st) {
    require_normalized(st);
    switch (kind) {
        case InequalityKind::Alexandrov: {
            const auto cd = curvature_deficit(st, curvature_nearly_spherical(st));
            return make_report(seminorm_sq(st.u, st.s) + l2_stats(st.u).l2_sq, cd.on_boundary, st);
        }
        case InequalityKind::Lojasiewicz: {
            const auto cd = curvature_deficit(st, curvature_nearly_spherical(st));
            return make_report(perimeter_s_deficit(st), cd.on_boundary, st);
        }
        case InequalityKind::Fuglede:
            return make_report(perimeter_s_deficit(st), seminorm_sq(st.u, st.s), st);
    }
    return {};
}

InequalityReport alexandrov_check(const SphereFlowState& st) { return inequality_check(InequalityKind::Alexandrov, st); }
InequalityReport lojasiewicz_check(const SphereFlowState& st) { return inequality_check(InequalityKind::Lojasiewicz, st); }
InequalityReport fuglede_check(const SphereFlowState& st) { return inequality_check(InequalityKind::Fuglede, st); }

InequalityReport ensemble_check(InequalityKind kind, std::size_t N, double s, double eps, int count,
                                std::uint64_t seed) {
    InequalityReport agg;
    agg.N = N;
    agg.s = s;
    agg.eps = eps;
    agg.ensemble_min_ratio = std::numeric_limits<double>::infinity();
    for (int m = 0; m < count; ++m) {
        const HeightField u = random_band_limited(Domain::Circle, N, seed + static_cast<std::uint64_t>(m), eps);
        const SphereFlowState st = normalize(SphereFlowState(u, FractionalOrder(s)));
        const auto r = inequality_check(kind, st);
        if (r.degenerate) {
            agg.degenerate = true;
            continue;
        }
        if (r.ratio < agg.ensemble_min_ratio) {
            agg.ensemble_min_ratio = r.ratio;
            agg.lhs = r.lhs;
            agg.rhs = r.rhs;
            agg.ratio = r.ratio;
        }
    }
    return agg;
}

ExpansionResiduals expansion_check(const SphereFlowState& st) {
    const auto m = moments(st);
    if (std::abs(m.volume - kPi) > 1e-8)
        throw Error(ErrorKind::NotNormalized, "expansion identities need volume pi");
    const double s = st.s.value();
    const double HB = ball_curvature(st.s);
    const double lam1 = s * HB;
    const HeightField H = curvature_nearly_spherical(st);
    const double semi = seminorm_sq(st.u, st.s);
    const double l2 = l2_stats(st.u).l2_sq;
    const double h = st.u.spacing();
    double first = 0.0, zeroth = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
        first += st.u[i] * (H[i] - HB);
        zeroth += H[i] - HB;
    }
    first *= h;
    zeroth *= h;
    const double scale = semi + l2;
    ExpansionResiduals r;
    if (!(scale > 0.0)) return r;
    r.second = std::abs(first - (semi - lam1 * l2)) / scale;
    r.third = std::abs(zeroth + 0.5 * (2.0 + s) * (semi - lam1 * l2)) / scale;
    return r;
}

double divergence_identity_check(const HeightField& u, FractionalOrder sf) {
    u.validate();
    const std::size_t N = u.size();
    const double s = sf.value();
    const double h = u.spacing();
    const auto D = derivatives(u);
    const EndpointCorrection ec(s, h);
    std::vector<double> rows(N);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k < N; ++k) {
            const std::size_t j = (i + k) % N;
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
            const double chord2 = 4.0 * std::sin(0.5 * a) * std::sin(0.5 * a);
            const double d = u[j] - u[i];
            acc += -D.d1[j] * std::sin(a) * d * d * std::pow(chord2, -0.5 * (4.0 + s));
        }
        rows[i] = h * acc - ec(-2.0 * D.d1[i] * D.d1[i] * D.d2[i], 0.0);
    }
    double total = 0.0;
    for (double r : rows) total += r;
    return h * total;
}

double divergence_identity_first(const HeightField& u, FractionalOrder sf) {
    u.validate();
    const std::size_t N = u.size();
    const double s = sf.value();
    const double h = u.spacing();
    const auto D = derivatives(u);
    const EndpointCorrection ec(s, h);
    double lhs = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double a1 = 0.0, a2 = 0.0;
        for (std::size_t k = 1; k < N; ++k) {
            const std::size_t j = (i + k) % N;
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
            const double chord2 = 4.0 * std::sin(0.5 * a) * std::sin(0.5 * a);
            a1 += -std::sin(a) * D.d1[j] * std::pow(chord2, -0.5 * (2.0 + s));
            a2 += u[j] * std::pow(chord2, -0.5 * s);
        }
        lhs += u[i] * (h * a1 - ec(-D.d2[i], 0.0));
        cross += u[i] * (h * a2 - ec(u[i], 0.0));
    }
    lhs *= h;
    cross *= h;
    const double semi = seminorm_sq(u, sf);
    const double lam1 = s * ball_curvature(sf);
    const double l2 = l2_stats(u).l2_sq;
    const double rhs = 0.5 * (s + 1.0) * semi - 0.25 * s * lam1 * l2 + 0.25 * s * cross;
    return std::abs(lhs - rhs) / std::max(std::abs(semi), 1e-300);
}

std::vector<double> default_asymptotic_grid() {
    return {0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999};
}

std::vector<AsymptoticRow> asymptotic_scan(const HeightField& u, const std::vector<double>& s_grid) {
    u.validate();
    const auto ls = l2_stats(u);
    const auto D = derivatives(u);
    double grad_sq = 0.0;
    for (double g : D.d1) grad_sq += g * g;
    grad_sq *= u.spacing();
    std::vector<AsymptoticRow> rows;
    for (double s : s_grid) {
        AsymptoticRow r;
        r.s = s;
        try {
            const FractionalOrder fo(s);
            const double HB = ball_curvature(fo);
            const double semi = seminorm_sq(u, fo);
            r.s_ball = s * HB;
            r.one_minus_s_ball = (1.0 - s) * HB;
            r.s_seminorm = ls.l2_sq > 0.0 ? s * semi / ls.l2_sq : kNaN;
            r.one_minus_s_seminorm = grad_sq > 0.0 ? (1.0 - s) * semi / grad_sq : kNaN;
            r.ok = std::isfinite(r.s_ball) && std::isfinite(r.s_seminorm) && std::isfinite(r.one_minus_s_seminorm);
            if (!r.ok) r.note = "non-finite entry";
        } catch (const std::exception& e) {
            r.ok = false;
            r.note = e.what();
        }
        rows.push_back(r);
    }
    return rows;
}

bool is_cauchy(const std::vector<double>& seq) {
    if (seq.size() < 3) return false;
    double prev = std::abs(seq[1] - seq[0]);
    for (std::size_t i = 2; i < seq.size(); ++i) {
        const double d = std::abs(seq[i] - seq[i - 1]);
        if (!(d < prev)) return false;
        prev = d;
    }
    return true;
}

DissipationResult dissipation_check(const std::vector<TrajectoryRecord>& traj) {
    if (traj.size() < 3) throw Error(ErrorKind::InsufficientRecords, "need at least 3 records");
    double dmax = 0.0;
    for (const auto& r : traj) dmax = std::max(dmax, r.curv_deficit_l2_sq);
    DissipationResult res;
    // curvature rounding floor: (1e-14 * O(10))^2 * 2pi
    if (!(dmax > 1e-20)) {
        res.degenerate = true;
        res.mismatch = kNaN;
        return res;
    }
    for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
        const double D = traj[j].curv_deficit_l2_sq;
        if (D < 1e-8 * dmax) continue;
        // three-point derivative on uneven spacing
        const double h1 = traj[j].t - traj[j - 1].t, h2 = traj[j + 1].t - traj[j].t;
        const double dP = -h2 / (h1 * (h1 + h2)) * traj[j - 1].per_s_deficit +
                          (h2 - h1) / (h1 * h2) * traj[j].per_s_deficit +
                          h1 / (h2 * (h1 + h2)) * traj[j + 1].per_s_deficit;
        res.mismatch = std::max(res.mismatch, std::abs(dP + D) / D);
        ++res.used;
    }
    if (res.used == 0) {
        res.degenerate = true;
        res.mismatch = kNaN;
    }
    return res;
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& v, double t_lo, double t_hi) {
    if (t.size() != v.size()) throw std::invalid_argument("series length mismatch");
    if (!(t_hi > t_lo)) throw Error(ErrorKind::DegenerateWindow, "empty time window");
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t n = 0;
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(v[i] > 0.0)) throw Error(ErrorKind::NonPositiveValues, "series must be positive on the window");
        tw.push_back(t[i]);
        yw.push_back(std::log(v[i]));
    }
    n = tw.size();
    if (n < 3) throw Error(ErrorKind::DegenerateWindow, "fewer than 3 points in window");
    for (std::size_t i = 0; i < n; ++i) {
        st += tw[i];
        sy += yw[i];
    }
    const double tm = st / static_cast<double>(n), ym = sy / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        stt += (tw[i] - tm) * (tw[i] - tm);
        sty += (tw[i] - tm) * (yw[i] - ym);
    }
    if (!(stt > 0.0)) throw Error(ErrorKind::DegenerateWindow, "window has no time spread");
    const double slope = sty / stt;
    RateFit fit;
    fit.rate = std::abs(slope);
    fit.intercept = ym - slope * tm;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = yw[i] - (fit.intercept + slope * tw[i]);
        ss_res += e * e;
        ss_tot += (yw[i] - ym) * (yw[i] - ym);
    }
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    fit.t_lo = tw.front();
    fit.t_hi = tw.back();
    fit.points = n;
    return fit;
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& v) {
    if (t.size() < 3) throw Error(ErrorKind::DegenerateWindow, "fewer than 3 points");
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * vmax;
    const double t_mid = t.front() + 0.5 * (t.back() - t.front());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= t_mid && v[i] > floor) {
            lo = std::min(lo, t[i]);
            hi = std::max(hi, t[i]);
        }
    if (!(hi > lo)) throw Error(ErrorKind::DegenerateWindow, "no usable points above the rounding floor");
    return fit_rate(t, v, lo, hi);
}

}  // namespace fmcf
