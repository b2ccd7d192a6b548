#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/spectral.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace fmcf;

namespace {

HeightField circle(std::size_t N, const std::function<double(double)>& f) {
    return HeightField::sample(Domain::Circle, N, f);
}

// 2 int_0^{2pi} (1 - cos k t) (2 sin(t/2))^-(2+s) dt
double symbol_quadrature(int k, double s) {
    boost::math::quadrature::tanh_sinh<double> q;
    const double half = q.integrate(
        [&](double t) {
            const double r = std::sin(k * t / 2.0) / std::sin(t / 2.0);
            return 0.5 * r * r * std::pow(2.0 * std::sin(t / 2.0), -s);
        },
        0.0, M_PI);
    return 4.0 * half;
}

double l2(const HeightField& u) { return inner_product(u, u); }

}  // namespace

TEST(Spectral, DecomposeConstant) {
    const double c = std::sqrt(kTwoPi);
    const auto sp = decompose(HeightField::constant(Domain::Circle, 64, c));
    // a = int u Y0 = c sqrt(2 pi)
    EXPECT_NEAR(sp.a, kTwoPi, 1e-12);
    EXPECT_NEAR(sp.b[0], 0.0, 1e-13);
    EXPECT_NEAR(sp.b[1], 0.0, 1e-13);
    for (double r : sp.R.values) EXPECT_NEAR(r, 0.0, 1e-13);
}

TEST(Spectral, DecomposeFirstModes) {
    const auto sp = decompose(circle(64, [](double x) { return std::cos(x); }));
    EXPECT_NEAR(sp.a, 0.0, 1e-13);
    EXPECT_NEAR(sp.b[0], std::sqrt(M_PI), 1e-13);
    EXPECT_NEAR(sp.b[1], 0.0, 1e-13);
    for (double r : sp.R.values) EXPECT_NEAR(r, 0.0, 1e-13);

    const auto u = circle(64, [](double x) { return std::cos(2 * x); });
    const auto sq = decompose(u);
    EXPECT_NEAR(sq.a, 0.0, 1e-13);
    EXPECT_NEAR(std::hypot(sq.b[0], sq.b[1]), 0.0, 1e-13);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(sq.R[i], u[i], 1e-13);
}

TEST(Spectral, RemainderOrthogonalAndReconstructs) {
    const auto u = random_band_limited(Domain::Circle, 128, 5, 0.3);
    const auto sp = decompose(u);
    const auto c = circle(128, [](double x) { return std::cos(x); });
    const auto s = circle(128, [](double x) { return std::sin(x); });
    const auto one = HeightField::constant(Domain::Circle, 128, 1.0);
    EXPECT_NEAR(inner_product(sp.R, one), 0.0, 1e-12);
    EXPECT_NEAR(inner_product(sp.R, c), 0.0, 1e-12);
    EXPECT_NEAR(inner_product(sp.R, s), 0.0, 1e-12);
    const auto back = reconstruct(sp);
    for (std::size_t i = 0; i < 128; ++i) EXPECT_NEAR(back[i], u[i], 1e-14);
}

TEST(Spectral, DecomposeRejectsLine) {
    EXPECT_THROW(decompose(HeightField::constant(Domain::PeriodicLine, 16, 0.0)), std::invalid_argument);
}

TEST(Spectral, EigenvalueZeroAndGuard) {
    EXPECT_EQ(eigenvalue(0, FractionalOrder(0.5)), 0.0);
    EXPECT_NO_THROW(eigenvalue(128, FractionalOrder(0.5)));
    EXPECT_THROW(eigenvalue(129, FractionalOrder(0.5)), Error);
    EXPECT_THROW(eigenvalue(5, FractionalOrder(0.5), 16), Error);
}

TEST(Spectral, EigenvaluesMatchQuadrature) {
    for (double s : {0.3, 0.5, 0.7})
        for (int k = 1; k <= 8; ++k)
            EXPECT_LT(std::abs(eigenvalue(k, FractionalOrder(s)) / symbol_quadrature(k, s) - 1.0), 1e-6) << s << " " << k;
}

TEST(Spectral, FrozenEigenvalues) {
    EXPECT_NEAR(eigenvalue(1, FractionalOrder(0.5)), 7.416298709, 1e-8);
    EXPECT_NEAR(eigenvalue(2, FractionalOrder(0.5)), 19.7767966, 1e-6);
}

TEST(Spectral, RatioSecondOverFirst) {
    for (double s : {0.3, 0.5, 0.7}) {
        const double r = eigenvalue(2, FractionalOrder(s)) / eigenvalue(1, FractionalOrder(s));
        EXPECT_NEAR(r, 4.0 / (2.0 - s), 1e-4 * r);
    }
}

TEST(Spectral, MonotoneInK) {
    for (double s : {0.3, 0.5, 0.7}) {
        double prev = -1.0;
        for (int k = 0; k <= 8; ++k) {
            const double l = eigenvalue(k, FractionalOrder(s));
            EXPECT_GT(l, prev);
            prev = l;
        }
    }
}

TEST(Spectral, CosSinAgree) {
    const FractionalOrder s(0.4);
    for (int k = 1; k <= 6; ++k) {
        const auto c = circle(256, [k](double x) { return std::cos(k * x); });
        const auto n = circle(256, [k](double x) { return std::sin(k * x); });
        const double a = inner_product(c, riesz_apply(c, s)) / l2(c);
        const double b = inner_product(n, riesz_apply(n, s)) / l2(n);
        EXPECT_LT(std::abs(a / b - 1.0), 1e-10);
    }
}

TEST(Spectral, PoincareOnRemainder) {
    for (double sv : {0.3, 0.5, 0.7}) {
        const FractionalOrder s(sv);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto R = decompose(random_band_limited(Domain::Circle, 256, seed, 0.1)).R;
            const double bound = 4.0 / (2.0 - sv) * eigenvalue(1, s, 256) * l2(R);
            EXPECT_GE(seminorm_sq(R, s), bound * (1.0 - 1e-12));
        }
    }
}

TEST(Spectral, ParsevalSplit) {
    const FractionalOrder s(0.5);
    const auto u = random_band_limited(Domain::Circle, 256, 21, 0.1);
    const auto sp = decompose(u);
    const double rhs = eigenvalue(1, s, 256) * (sp.b[0] * sp.b[0] + sp.b[1] * sp.b[1]) + seminorm_sq(sp.R, s);
    EXPECT_LT(std::abs(seminorm_sq(u, s) / rhs - 1.0), 1e-12);
}

TEST(Spectral, ModeAmplitudeExamples) {
    const auto u = circle(64, [](double x) { return 3.0 * std::cos(2 * x); });
    EXPECT_NEAR(mode_amplitude(u, 2), 3.0, 1e-12);
    for (int k : {0, 1, 3, 5}) EXPECT_NEAR(mode_amplitude(u, k), 0.0, 1e-12);
    const auto c = HeightField::constant(Domain::PeriodicLine, 64, -0.4);
    EXPECT_NEAR(mode_amplitude(c, 0), 0.4, 1e-14);
    EXPECT_NEAR(mode_amplitude(c, 1), 0.0, 1e-14);
    const auto w = circle(64, [](double x) { return std::cos(x) + std::cos(2 * x); });
    EXPECT_NEAR(mode_amplitude(w, 1), 1.0, 1e-12);
    EXPECT_NEAR(mode_amplitude(w, 2), 1.0, 1e-12);
    const auto q = circle(64, [](double x) { return 0.3 * std::cos(4 * x) + 0.4 * std::sin(4 * x); });
    EXPECT_NEAR(mode_amplitude(q, 4), 0.5, 1e-12);
    EXPECT_THROW(mode_amplitude(q, 33), Error);
}

TEST(Spectral, TrigInterpolantExact) {
    const auto u = circle(32, [](double x) { return 0.2 + std::sin(3 * x) - 0.5 * std::cos(x); });
    const TrigInterpolant p(u);
    for (double x : {0.1, 1.3, 4.0}) {
        EXPECT_NEAR(p.value(x), 0.2 + std::sin(3 * x) - 0.5 * std::cos(x), 1e-13);
        EXPECT_NEAR(p.derivative(x), 3 * std::cos(3 * x) + 0.5 * std::sin(x), 1e-12);
    }
}
