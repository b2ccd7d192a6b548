#pragma once

#include <complex>

namespace fmcf::detail {

using cplx = std::complex<double>;

inline double cross(cplx a, cplx b) { return std::imag(std::conj(a) * b); }
inline double dot(cplx a, cplx b) { return std::real(std::conj(a) * b); }

constexpr double kFact[6] = {1, 1, 2, 6, 24, 120};

// Curve derivatives G[0..4] at one node. Returns the first two even Taylor
// coefficients of g where the curvature integrand is |delta|^-s g(delta).
struct LocalCoeffs {
    double g0, g2;
};

inline LocalCoeffs curvature_coeffs(const cplx G[5], double s, double sigma) {
    auto n = [&](int k) {
        double acc = 0.0;
        for (int p = 1; p <= k; ++p) acc += cross(G[p], G[k - p + 1]) / (kFact[p] * kFact[k - p]);
        return sigma * acc;
    };
    auto A = [&](int j) {
        double acc = 0.0;
        for (int p = 1; p <= j + 1; ++p) acc += dot(G[p], G[j + 2 - p]) / (kFact[p] * kFact[j + 2 - p]);
        return acc;
    };
    const double p = 1.0 + 0.5 * s;
    const double n2 = n(2), n3 = n(3), n4 = n(4);
    const double A0 = A(0), a1 = A(1) / A0, a2 = A(2) / A0;
    const double w = std::pow(A0, -p);
    return {n2 * w, w * (n4 - p * a1 * n3 + n2 * (-p * a2 + 0.5 * p * (p + 1.0) * a1 * a1))};
}

// Same for gamma'(t).gamma'(t+delta) |gamma(t+delta)-gamma(t)|^-s.
inline LocalCoeffs perimeter_coeffs(const cplx G[5], double s) {
    auto A = [&](int j) {
        double acc = 0.0;
        for (int p = 1; p <= j + 1; ++p) acc += dot(G[p], G[j + 2 - p]) / (kFact[p] * kFact[j + 2 - p]);
        return acc;
    };
    const double p = 0.5 * s;
    const double m0 = dot(G[1], G[1]), m1 = dot(G[1], G[2]), m2 = dot(G[1], G[3]) / 2.0;
    const double A0 = A(0), a1 = A(1) / A0, a2 = A(2) / A0;
    const double w = std::pow(A0, -p);
    return {m0 * w, w * (m2 - p * a1 * m1 + m0 * (-p * a2 + 0.5 * p * (p + 1.0) * a1 * a1))};
}

// gamma = (1+u) e^{i theta} at theta = 0: gamma^(m) = sum_j C(m,j) r^(m-j) i^j.
inline void circle_curve(double u, double d1, double d2, double d3, double d4, cplx G[5]) {
    const double r[5] = {1.0 + u, d1, d2, d3, d4};
    const cplx I(0.0, 1.0);
    for (int m = 0; m < 5; ++m) {
        cplx acc = 0.0;
        cplx ij = 1.0;
        for (int j = 0; j <= m; ++j) {
            acc += (kFact[m] / (kFact[j] * kFact[m - j])) * r[m - j] * ij;
            ij *= I;
        }
        G[m] = acc;
    }
}

// gamma = x + i u(x) at x = 0.
inline void graph_curve(double u, double d1, double d2, double d3, double d4, cplx G[5]) {
    G[0] = cplx(0.0, u);
    G[1] = cplx(1.0, d1);
    G[2] = cplx(0.0, d2);
    G[3] = cplx(0.0, d3);
    G[4] = cplx(0.0, d4);
}

}  // namespace fmcf::detail
