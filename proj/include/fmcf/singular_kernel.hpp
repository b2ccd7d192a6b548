#pragma once

#include "fmcf/core.hpp"

#include <vector>

namespace fmcf {

// Number of periodic images kept on each side for the PeriodicLine kernel.
constexpr int kImageCount = 64;

struct L2Stats {
    double mean = 0.0;
    double l2_sq = 0.0;
    double sup_grad = 0.0;
};

HeightField riesz_apply(const HeightField& u, FractionalOrder s, Exec exec = Exec::Parallel);
double seminorm_sq(const HeightField& u, FractionalOrder s, Exec exec = Exec::Parallel);
L2Stats l2_stats(const HeightField& u);

// h * sum u_i v_i
double inner_product(const HeightField& u, const HeightField& v);

// Largest eigenvalue of the discrete Riesz operator on an N-point grid.
double riesz_symbol_max(Domain d, std::size_t N, FractionalOrder s);

// Quadrature weights w_k = h K(k h), k = 0..N/2 (entry 0 unused).
std::vector<double> riesz_weights(Domain d, std::size_t N, double s);

// Kernel over R folded onto one cell: sum_m |delta+m|^-(2+s) plus the image tail.
double folded_line_kernel(double delta, double s, int M = kImageCount);

// Finite-difference derivatives on a periodic grid: 4th order for the first
// two, 2nd order for the third and fourth.
struct Derivatives {
    std::vector<double> d1, d2, d3, d4;
};
Derivatives derivatives(const HeightField& u);

// Punctured periodic trapezoid minus the integral for |delta|^-s g(delta),
// g(delta) = g0 + g2 delta^2 + g4 delta^4 + odd terms:
// c0 g0 + c2 g2 + c4 g4 with c_{2j} = 2 zeta(s-2j) h^(2j+1-s).
struct EndpointCorrection {
    double c0 = 0.0, c2 = 0.0, c4 = 0.0;
    EndpointCorrection(double s, double h);
    double operator()(double g0, double g2, double g4 = 0.0) const { return c0 * g0 + c2 * g2 + c4 * g4; }
};

namespace testing {
// Multiplies the Riesz operator and the seminorm; used by the mutation check.
void set_kernel_scale(double scale);
double kernel_scale();
}  // namespace testing

}  // namespace fmcf
