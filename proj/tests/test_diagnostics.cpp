#include "fmcf/diagnostics.hpp"
#include "fmcf/initial_data.hpp"
#include "fmcf/spectral.hpp"
#include "fmcf/sphere_flow.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fmcf;

namespace {

HeightField circle(std::size_t N, const std::function<double(double)>& f) {
    return HeightField::sample(Domain::Circle, N, f);
}

SphereFlowState normalized_mode(double eps, int k, std::size_t N = 256) {
    return normalize(SphereFlowState(circle(N, [=](double x) { return eps * std::cos(k * x); }), FractionalOrder(0.5)));
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::RuntimeFailure;
}

std::vector<TrajectoryRecord> synthetic(double rate, std::size_t n, double dt) {
    std::vector<TrajectoryRecord> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].t = dt * static_cast<double>(i);
        out[i].per_s_deficit = std::exp(-rate * out[i].t);
        out[i].curv_deficit_l2_sq = rate * std::exp(-rate * out[i].t);
    }
    return out;
}

}  // namespace

TEST(Diagnostics, NormalizeRoundTrip) {
    const FractionalOrder s(0.5);
    const auto raw = translated_disk(256, 0.04, -0.03);
    HeightField u = raw;
    for (std::size_t i = 0; i < 256; ++i) u[i] = 1.1 * (1.0 + raw[i]) - 1.0 + 0.02 * std::cos(3 * raw.node(i));
    const auto st = normalize(SphereFlowState(u, s));
    EXPECT_TRUE(is_normalized(st));
    const auto m = moments(st);
    EXPECT_NEAR(m.volume, M_PI, 1e-10);
    EXPECT_NEAR(std::hypot(m.barycenter[0], m.barycenter[1]), 0.0, 1e-10);
    const auto again = normalize(st);
    for (std::size_t i = 0; i < 256; ++i) EXPECT_NEAR(again.u[i], st.u[i], 1e-12);
    EXPECT_FALSE(is_normalized(SphereFlowState(u, s)));
}

TEST(Diagnostics, TranslatedDiskNormalizesToBall) {
    const auto st = normalize(SphereFlowState(translated_disk(256, 0.05, 0.02), FractionalOrder(0.5)));
    for (double v : st.u.values) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Diagnostics, ChecksRequireNormalization) {
    const SphereFlowState st(circle(128, [](double x) { return 0.05 + 0.03 * std::cos(2 * x); }), FractionalOrder(0.5));
    EXPECT_EQ(kind_of([&] { alexandrov_check(st); }), ErrorKind::NotNormalized);
    EXPECT_EQ(kind_of([&] { lojasiewicz_check(st); }), ErrorKind::NotNormalized);
    EXPECT_EQ(kind_of([&] { fuglede_check(st); }), ErrorKind::NotNormalized);
    EXPECT_EQ(kind_of([&] { expansion_check(st); }), ErrorKind::NotNormalized);
}

TEST(Diagnostics, BallIsDegenerate) {
    const SphereFlowState ball(HeightField::constant(Domain::Circle, 128, 0.0), FractionalOrder(0.5));
    for (auto k : {InequalityKind::Alexandrov, InequalityKind::Lojasiewicz, InequalityKind::Fuglede}) {
        const auto r = inequality_check(k, ball);
        EXPECT_TRUE(r.degenerate);
        EXPECT_TRUE(std::isnan(r.ratio));
    }
    const auto e = expansion_check(ball);
    EXPECT_EQ(e.second, 0.0);
    EXPECT_EQ(e.third, 0.0);
}

TEST(Diagnostics, LinearizedRatioPredictions) {
    const FractionalOrder s(0.5);
    const double l1 = eigenvalue(1, s), l2 = eigenvalue(2, s);
    const auto st = normalized_mode(0.03, 2);
    const auto a = alexandrov_check(st);
    EXPECT_NEAR(a.ratio / ((l2 - l1) * (l2 - l1) / (l2 + 1.0)), 1.0, 0.2);
    const auto st5 = normalized_mode(0.05, 2);
    const auto lo = lojasiewicz_check(st5);
    EXPECT_NEAR(lo.ratio / (2.0 * (l2 - l1)), 1.0, 0.25);
    const auto f = fuglede_check(st5);
    EXPECT_NEAR(f.ratio / (2.0 * l2 / (l2 - l1)), 1.0, 0.25);
    EXPECT_EQ(a.N, 256u);
    EXPECT_EQ(a.s, 0.5);
}

TEST(Diagnostics, FugledeStableUnderHalving) {
    const double r1 = fuglede_check(normalized_mode(0.05, 2)).ratio;
    const double r2 = fuglede_check(normalized_mode(0.025, 2)).ratio;
    EXPECT_NEAR(r2 / r1, 1.0, 0.1);
    EXPECT_GT(lojasiewicz_check(normalized_mode(0.05, 3)).ratio, 0.0);
}

TEST(Diagnostics, EnsembleDeterministicAndPositive) {
    const auto a = ensemble_check(InequalityKind::Alexandrov, 128, 0.5, 0.03, 5, 7);
    const auto b = ensemble_check(InequalityKind::Alexandrov, 128, 0.5, 0.03, 5, 7);
    EXPECT_EQ(a.ensemble_min_ratio, b.ensemble_min_ratio);
    EXPECT_GT(a.ensemble_min_ratio, 0.0);
}

TEST(Diagnostics, ExpansionResidualsFirstOrder) {
    const FractionalOrder s(0.5);
    ExpansionResiduals prev{};
    for (double eps : {0.04, 0.02, 0.01}) {
        const auto u = circle(256, [eps](double x) { return eps * (std::cos(2 * x) + std::cos(4 * x)); });
        const auto r = expansion_check(normalize(SphereFlowState(u, s)));
        if (prev.second > 0.0) {
            EXPECT_GE(prev.second / r.second, 1.4);
            EXPECT_LE(prev.second / r.second, 2.6);
            EXPECT_GE(prev.third / r.third, 1.4);
            EXPECT_LE(prev.third / r.third, 2.6);
        }
        prev = r;
    }
}

TEST(Diagnostics, DivergenceIdentities) {
    const FractionalOrder s(0.5);
    EXPECT_NEAR(divergence_identity_check(HeightField::constant(Domain::Circle, 64, 0.3), s), 0.0, 1e-30);
    auto f = [](std::size_t N) { return circle(N, [](double x) { return std::cos(x); }); };
    EXPECT_LT(std::abs(divergence_identity_check(f(128), s)), 1e-10);
    EXPECT_LT(std::abs(divergence_identity_check(f(256), s)), 1e-10);
    auto g = [](std::size_t N) { return circle(N, [](double x) { return std::cos(2 * x) + std::sin(5 * x); }); };
    EXPECT_LE(divergence_identity_first(g(256), s), 0.5 * divergence_identity_first(g(128), s));
}

TEST(Diagnostics, AsymptoticScan) {
    const auto u = circle(256, [](double x) { return std::cos(x); });
    const auto rows = asymptotic_scan(u, {0.001, 0.95, 0.99});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[0].s_ball / kTwoPi, 1.0, 0.01);
    EXPECT_NEAR(rows[2].one_minus_s_seminorm / rows[1].one_minus_s_seminorm, 1.0, 0.1);
    for (const auto& r : rows) EXPECT_TRUE(r.ok);
    EXPECT_EQ(default_asymptotic_grid().front(), 0.001);
    EXPECT_EQ(default_asymptotic_grid().back(), 0.999);
}

TEST(Diagnostics, CauchyContract) {
    EXPECT_TRUE(is_cauchy({1.0, 1.5, 1.7, 1.75}));
    EXPECT_FALSE(is_cauchy({1.0, 1.5, 2.1}));
    EXPECT_FALSE(is_cauchy({1.0, 2.0}));
}

TEST(Diagnostics, DissipationSynthetic) {
    const auto good = dissipation_check(synthetic(3.0, 50, 0.01));
    EXPECT_FALSE(good.degenerate);
    EXPECT_LT(good.mismatch, 1e-3);
    const auto fine = dissipation_check(synthetic(3.0, 100, 0.005));
    EXPECT_LT(fine.mismatch, good.mismatch / 3.5);
    std::vector<TrajectoryRecord> still(5);
    for (std::size_t i = 0; i < 5; ++i) still[i].t = 0.1 * static_cast<double>(i);
    EXPECT_TRUE(dissipation_check(still).degenerate);
    EXPECT_EQ(kind_of([&] { dissipation_check(synthetic(1.0, 2, 0.1)); }), ErrorKind::InsufficientRecords);
}

TEST(Diagnostics, FitRateExactExponential) {
    std::vector<double> t, v, w;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(0.05 * i);
        v.push_back(5.0 * std::exp(-2.0 * t.back()));
        w.push_back(1e-3 * v.back());
    }
    const auto f = fit_rate(t, v, 0.0, 2.0);
    EXPECT_NEAR(f.rate, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(5.0), 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_EQ(f.points, 41u);
    const auto g = fit_rate(t, w);
    EXPECT_NEAR(g.rate, 2.0, 1e-12);
    EXPECT_EQ(g.points, 21u);
    EXPECT_NEAR(g.t_lo, 1.0, 1e-12);
    EXPECT_NEAR(fit_rate(t, v).rate, g.rate, 1e-12);
}

TEST(Diagnostics, FitRateErrors) {
    std::vector<double> t{0, 1, 2, 3}, v{1, 0.5, 0.0, 0.1};
    EXPECT_EQ(kind_of([&] { fit_rate(t, v, 0.0, 3.0); }), ErrorKind::NonPositiveValues);
    EXPECT_EQ(kind_of([&] { fit_rate(t, v, 2.0, 2.0); }), ErrorKind::DegenerateWindow);
    EXPECT_EQ(kind_of([&] { fit_rate(t, {1, 1, 1, 1}, 2.5, 3.0); }), ErrorKind::DegenerateWindow);
}
