#include "fmcf/graph_flow.hpp"
#include "fmcf/initial_data.hpp"
#include "fmcf/singular_kernel.hpp"
#include "fmcf/sphere_flow.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace fmcf;

namespace {

HeightField line(std::size_t N, const std::function<double(double)>& f) {
    return HeightField::sample(Domain::PeriodicLine, N, f);
}

HeightField graph_field(std::size_t N, std::uint64_t seed, double grad_cap) {
    auto terms = random_coefficients(seed, 8);
    terms = scale_terms(terms, grad_cap / terms_sup_grad(terms, Domain::PeriodicLine));
    return evaluate_terms(Domain::PeriodicLine, N, terms);
}

double max_abs(const HeightField& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST(GraphFlow, HalfSpaceHasZeroCurvature) {
    const auto H = curvature_graph(GraphFlowState(HeightField::constant(Domain::PeriodicLine, 128, 0.7), FractionalOrder(0.5)));
    EXPECT_LT(max_abs(H), 1e-12);
}

TEST(GraphFlow, ReflectionAndVerticalTranslation) {
    const FractionalOrder s(0.4);
    const auto u = graph_field(128, 3, 0.1);
    HeightField r = u, lifted = u;
    for (std::size_t i = 0; i < 128; ++i) {
        r[i] = u[(128 - i) % 128];
        lifted[i] = u[i] + 2.5;
    }
    const auto H = curvature_graph(GraphFlowState(u, s));
    const auto Hr = curvature_graph(GraphFlowState(r, s));
    const auto Hl = curvature_graph(GraphFlowState(lifted, s));
    for (std::size_t i = 0; i < 128; ++i) {
        EXPECT_NEAR(Hr[i], H[(128 - i) % 128], 1e-12);
        EXPECT_NEAR(Hl[i], H[i], 1e-10);
    }
}

TEST(GraphFlow, LinearizationAtSmallAmplitude) {
    const FractionalOrder s(0.5);
    double prev = 0.0;
    for (double A : {0.02, 0.01, 0.005}) {
        const auto u = line(256, [A](double x) { return A * std::cos(kTwoPi * x); });
        const auto H = curvature_graph(GraphFlowState(u, s));
        const auto L = riesz_apply(u, s);
        double err = 0.0;
        for (std::size_t i = 0; i < 256; ++i) err = std::max(err, std::abs(H[i] - L[i]));
        const double rel = err / max_abs(L);
        EXPECT_LT(rel, 6e-3);
        if (prev > 0.0) EXPECT_GT(prev / rel, 3.5);
        prev = rel;
    }
}

TEST(GraphFlow, LinearizedIntegralIdentity) {
    const FractionalOrder s(0.5);
    double c[2];
    for (int g = 0; g < 2; ++g) {
        const std::size_t N = g == 0 ? 128 : 256;
        const auto u = graph_field(N, 42, 0.05);
        const double r = inner_product(u, curvature_graph(GraphFlowState(u, s))) / seminorm_sq(u, s) - 1.0;
        c[g] = std::abs(r) / l2_stats(u).sup_grad;
        EXPECT_LT(std::abs(r), 0.05);
    }
    EXPECT_NEAR(c[1] / c[0], 1.0, 0.2);
}

TEST(GraphFlow, DeficitProfileAgainstQuadrature) {
    boost::math::quadrature::tanh_sinh<double> q;
    for (double p : {1.15, 1.25, 1.35})
        for (double X : {0.1, 0.49, 0.51, 1.7, 6.0}) {
            const double want = 2.0 * q.integrate([&](double v) { return (X - v) * std::pow(1.0 + v * v, -p); }, 0.0, X);
            const double dwant = 2.0 * q.integrate([&](double v) { return std::pow(1.0 + v * v, -p); }, 0.0, X);
            EXPECT_NEAR(deficit_profile(X, p), want, 1e-13 * (1.0 + want)) << p << " " << X;
            EXPECT_NEAR(deficit_profile(-X, p), want, 1e-13 * (1.0 + want));
            EXPECT_NEAR(deficit_profile_derivative(X, p), dwant, 1e-13 * (1.0 + dwant));
        }
}

TEST(GraphFlow, DeficitBasics) {
    const FractionalOrder s(0.5);
    EXPECT_EQ(periodic_perimeter_deficit(GraphFlowState(HeightField::constant(Domain::PeriodicLine, 64, 0.0), s), 0.0), 0.0);
    const GraphFlowState st(graph_field(128, 5, 0.1), s);
    EXPECT_EQ(periodic_perimeter_deficit(st, 0.0), periodic_perimeter_deficit(st, 3.0));
}

TEST(GraphFlow, SandwichForSine) {
    const FractionalOrder s(0.5);
    const auto u = line(256, [](double x) { return 0.05 * std::sin(kTwoPi * x); });
    const double semi = seminorm_sq(u, s);
    const double g = 0.05 * kTwoPi;
    const double d = periodic_perimeter_deficit(GraphFlowState(u, s), 0.0);
    EXPECT_LE(d, semi / 2.0);
    EXPECT_GE(d, semi / (2.0 * std::pow(1.0 + 4.0 * g * g, 1.25)));
}

TEST(GraphFlow, DeficitQuadraticAtSmallAmplitude) {
    const FractionalOrder s(0.5);
    const auto a = line(128, [](double x) { return 0.002 * std::cos(kTwoPi * x); });
    const auto b = line(128, [](double x) { return 0.004 * std::cos(kTwoPi * x); });
    const double ratio = periodic_perimeter_deficit(GraphFlowState(b, s), 0.0) / periodic_perimeter_deficit(GraphFlowState(a, s), 0.0);
    EXPECT_NEAR(ratio, 4.0, 0.2);
}

TEST(GraphFlow, SerialMatchesParallelBitwise) {
    const GraphFlowState st(graph_field(128, 9, 0.1), FractionalOrder(0.6));
    EXPECT_EQ(curvature_graph(st, Exec::Serial).values, curvature_graph(st, Exec::Parallel).values);
    EXPECT_EQ(periodic_perimeter_deficit(st, 0.0, Exec::Serial), periodic_perimeter_deficit(st, 0.0, Exec::Parallel));
}

TEST(GraphFlow, StepContract) {
    const FractionalOrder s(0.5);
    EXPECT_NEAR(stability_cap(Domain::PeriodicLine, 256, s), 4.01e-6, 0.01e-6);
    const GraphFlowState flat(HeightField::constant(Domain::PeriodicLine, 64, 0.3), s);
    const auto next = step_graph(flat, 1e-5);
    for (double v : next.u.values) EXPECT_NEAR(v, 0.3, 1e-14);
    try {
        step_graph(flat, 1.0);
        FAIL() << "expected StabilityCapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StabilityCapExceeded);
    }
}

TEST(GraphFlow, ConstantRunIsConstant) {
    FlowConfig cfg;
    cfg.kind = FlowKind::GraphMCF;
    cfg.N = 64;
    cfg.T = 5e-4;
    cfg.cadence = 10;
    cfg.initial.kind = InitialSpec::Kind::Fourier;
    cfg.initial.offset = 5.0;
    const auto r = run_graph_flow(cfg);
    ASSERT_FALSE(r.failed);
    for (const auto& rec : r.records) {
        EXPECT_EQ(rec.volume, r.records[0].volume);
        EXPECT_EQ(rec.l2_sq, r.records[0].l2_sq);
        EXPECT_EQ(rec.sup_grad, 0.0);
    }
}

TEST(GraphFlow, RandomRunDeficitMonotone) {
    FlowConfig cfg;
    cfg.kind = FlowKind::GraphMCF;
    cfg.N = 64;
    cfg.T = 2e-3;
    cfg.cadence = 10;
    cfg.initial.kind = InitialSpec::Kind::Fourier;
    auto terms = random_coefficients(17, 8);
    cfg.initial.terms = scale_terms(terms, 0.1 / terms_sup_grad(terms, Domain::PeriodicLine));
    const auto r = run_graph_flow(cfg);
    ASSERT_FALSE(r.failed) << r.error;
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        EXPECT_LE(r.records[i].per_s_deficit, r.records[i - 1].per_s_deficit + 1e-10);
        EXPECT_LE(r.records[i].sup_grad, r.records[0].sup_grad * (1.0 + 1e-6));
    }
}
