#include "fmcf/singular_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace fmcf {

namespace {

std::atomic<double> g_kernel_scale{1.0};

inline std::size_t wrap(std::ptrdiff_t i, std::size_t N) {
    const auto n = static_cast<std::ptrdiff_t>(N);
    return static_cast<std::size_t>(((i % n) + n) % n);
}

void check(const HeightField& u) { u.validate(); }

}  // namespace

namespace testing {
void set_kernel_scale(double scale) { g_kernel_scale.store(scale); }
double kernel_scale() { return g_kernel_scale.load(); }
}  // namespace testing

EndpointCorrection::EndpointCorrection(double s, double h)
    : c0(2.0 * std::riemann_zeta(s) * std::pow(h, 1.0 - s)),
      c2(2.0 * std::riemann_zeta(s - 2.0) * std::pow(h, 3.0 - s)),
      c4(2.0 * std::riemann_zeta(s - 4.0) * std::pow(h, 5.0 - s)) {}

double folded_line_kernel(double delta, double s, int M) {
    double acc = 0.0;
    for (int m = -M; m <= M; ++m) acc += std::pow(std::abs(delta + m), -(2.0 + s));
    const double L = M + 0.5;
    acc += (std::pow(L + delta, -(1.0 + s)) + std::pow(L - delta, -(1.0 + s))) / (1.0 + s);
    return acc;
}

std::vector<double> riesz_weights(Domain d, std::size_t N, double s) {
    std::vector<double> w(N / 2 + 1, 0.0);
    const double h = (d == Domain::Circle ? kTwoPi : 1.0) / static_cast<double>(N);
    for (std::size_t k = 1; k <= N / 2; ++k) {
        const double delta = h * static_cast<double>(k);
        const double K = d == Domain::Circle ? std::pow(2.0 * std::sin(0.5 * delta), -(2.0 + s))
                                             : folded_line_kernel(delta, s);
        w[k] = h * K;
    }
    return w;
}

Derivatives derivatives(const HeightField& u) {
    const std::size_t N = u.size();
    const double h = u.spacing();
    Derivatives D;
    D.d1.resize(N);
    D.d2.resize(N);
    D.d3.resize(N);
    D.d4.resize(N);
    const auto& v = u.values;
    for (std::size_t i = 0; i < N; ++i) {
        const double p1 = v[wrap(static_cast<std::ptrdiff_t>(i) + 1, N)];
        const double p2 = v[wrap(static_cast<std::ptrdiff_t>(i) + 2, N)];
        const double m1 = v[wrap(static_cast<std::ptrdiff_t>(i) - 1, N)];
        const double m2 = v[wrap(static_cast<std::ptrdiff_t>(i) - 2, N)];
        const double c = v[i];
        D.d1[i] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
        D.d2[i] = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
        D.d3[i] = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
        D.d4[i] = (p2 - 4.0 * p1 + 6.0 * c - 4.0 * m1 + m2) / (h * h * h * h);
    }
    return D;
}

// v_i = 2 sum_k w_k (2u_i - u_{i+k} - u_{i-k})  (half weight at N/2)
//       + c0 L2u + c2 (L4u/12 + kappa L2u)
HeightField riesz_apply(const HeightField& u, FractionalOrder sf, Exec exec) {
    check(u);
    const double s = sf.value();
    const std::size_t N = u.size();
    const double h = u.spacing();
    const auto w = riesz_weights(u.domain, N, s);
    const EndpointCorrection ec(s, h);
    const double kappa = u.domain == Domain::Circle ? (2.0 + s) / 24.0 : 0.0;
    const double scale = testing::kernel_scale();
    const auto& x = u.values;
    HeightField v(u.domain, std::vector<double>(N));
    const std::size_t half = N / 2;

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t i = 0; i < N; ++i) {
        const auto ii = static_cast<std::ptrdiff_t>(i);
        double acc = 0.0;
        for (std::size_t k = 1; k < half; ++k) {
            const auto kk = static_cast<std::ptrdiff_t>(k);
            acc += w[k] * (2.0 * x[i] - x[wrap(ii + kk, N)] - x[wrap(ii - kk, N)]);
        }
        acc += w[half] * (x[i] - x[wrap(ii + static_cast<std::ptrdiff_t>(half), N)]);
        acc *= 2.0;
        const double p1 = x[wrap(ii + 1, N)], p2 = x[wrap(ii + 2, N)];
        const double m1 = x[wrap(ii - 1, N)], m2 = x[wrap(ii - 2, N)];
        const double L2 = (-p2 + 16.0 * p1 - 30.0 * x[i] + 16.0 * m1 - m2) / (12.0 * h * h);
        const double L4 = (p2 - 4.0 * p1 + 6.0 * x[i] - 4.0 * m1 + m2) / (h * h * h * h);
        acc += ec.c0 * L2 + ec.c2 * (L4 / 12.0 + kappa * L2);
        v.values[i] = scale * acc;
    }
    return v;
}

// Same weights as riesz_apply written as squared differences, so that
// seminorm_sq(u) == inner_product(u, riesz_apply(u)) up to rounding.
double seminorm_sq(const HeightField& u, FractionalOrder sf, Exec exec) {
    check(u);
    const double s = sf.value();
    const std::size_t N = u.size();
    const double h = u.spacing();
    const auto w = riesz_weights(u.domain, N, s);
    const EndpointCorrection ec(s, h);
    const double kappa = u.domain == Domain::Circle ? (2.0 + s) / 24.0 : 0.0;
    const auto& x = u.values;
    const std::size_t half = N / 2;
    std::vector<double> per_offset(half + 1, 0.0);

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::size_t k = 1; k <= half; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double d = x[i] - x[(i + k) % N];
            acc += d * d;
        }
        per_offset[k] = (k == half ? 1.0 : 2.0) * w[k] * acc;
    }
    double main = 0.0;
    for (std::size_t k = 1; k <= half; ++k) main += per_offset[k];

    double d1sq = 0.0, d2sq = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double a = x[(i + 1) % N] - x[i];
        const double b = x[(i + 2) % N] - x[i];
        const double c = x[(i + 1) % N] - 2.0 * x[i] + x[wrap(static_cast<std::ptrdiff_t>(i) - 1, N)];
        d1sq += a * a;
        d2sq += b * b;
        dd += c * c;
    }
    const double uL2 = -(16.0 * d1sq - d2sq) / (12.0 * h * h);
    const double uL4 = dd / (h * h * h * h);
    const double corr = ec.c0 * uL2 + ec.c2 * (uL4 / 12.0 + kappa * uL2);
    return testing::kernel_scale() * h * (main + corr);
}

L2Stats l2_stats(const HeightField& u) {
    check(u);
    const std::size_t N = u.size();
    const double h = u.spacing();
    L2Stats st;
    double sum = 0.0, sq = 0.0, g = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        sum += u[i];
        sq += u[i] * u[i];
        const double grad = (u[(i + 1) % N] - u[wrap(static_cast<std::ptrdiff_t>(i) - 1, N)]) / (2.0 * h);
        g = std::max(g, std::abs(grad));
    }
    st.mean = sum / static_cast<double>(N);
    st.l2_sq = h * sq;
    st.sup_grad = g;
    return st;
}

double inner_product(const HeightField& u, const HeightField& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return u.spacing() * acc;
}

double riesz_symbol_max(Domain d, std::size_t N, FractionalOrder s) {
    HeightField e = HeightField::constant(d, N, 0.0);
    e[0] = 1.0;
    const HeightField col = riesz_apply(e, s, Exec::Serial);
    double best = 0.0;
    for (std::size_t k = 0; k <= N / 2; ++k) {
        double sym = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            sym += col[j] * std::cos(kTwoPi * static_cast<double>((k * j) % N) / static_cast<double>(N));
        best = std::max(best, sym);
    }
    return best;
}

}  // namespace fmcf
