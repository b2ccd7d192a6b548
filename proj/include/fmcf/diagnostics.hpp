#pragma once

#include "fmcf/core.hpp"
#include "fmcf/flow_config.hpp"
#include "fmcf/sphere_flow.hpp"

#include <cstdint>
#include <vector>

namespace fmcf {

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // rhs / lhs, NaN when degenerate
    double ensemble_min_ratio = 0.0;
    bool degenerate = false;
    std::size_t N = 0;
    double s = 0.0;
    double eps = 0.0;
};

struct RateFit {
    double rate = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    std::size_t points = 0;
};

struct ExpansionResiduals {
    double second = 0.0;
    double third = 0.0;
};

struct AsymptoticRow {
    double s = 0.0;
    double s_ball = 0.0;            // s H_B
    double one_minus_s_ball = 0.0;  // (1-s) H_B
    double s_seminorm = 0.0;        // s [u]^2 / ||u||^2
    double one_minus_s_seminorm = 0.0;  // (1-s) [u]^2 / ||u'||^2
    bool ok = true;
    std::string note;
};

struct DissipationResult {
    double mismatch = 0.0;
    bool degenerate = false;
    std::size_t used = 0;
};

enum class InequalityKind { Alexandrov, Lojasiewicz, Fuglede };

// Recenter the set at the origin and dilate it to volume pi.
SphereFlowState normalize(const SphereFlowState& st);
bool is_normalized(const SphereFlowState& st, double tol = 1e-8);

InequalityReport alexandrov_check(const SphereFlowState& st);
InequalityReport lojasiewicz_check(const SphereFlowState& st);
InequalityReport fuglede_check(const SphereFlowState& st);
InequalityReport inequality_check(InequalityKind kind, const SphereFlowState& st);

// Random band-limited members seeded seed, seed+1, ..., normalized before evaluation.
InequalityReport ensemble_check(InequalityKind kind, std::size_t N, double s, double eps, int count,
                                std::uint64_t seed);

ExpansionResiduals expansion_check(const SphereFlowState& st);

// Quadrature value of the double integral that vanishes by the divergence theorem.
double divergence_identity_check(const HeightField& u, FractionalOrder s);
// Relative residual of the first-order divergence identity.
double divergence_identity_first(const HeightField& u, FractionalOrder s);

std::vector<AsymptoticRow> asymptotic_scan(const HeightField& u, const std::vector<double>& s_grid);
std::vector<double> default_asymptotic_grid();
// Successive absolute differences strictly shrink along the sequence.
bool is_cauchy(const std::vector<double>& seq);

DissipationResult dissipation_check(const std::vector<TrajectoryRecord>& traj);

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& v, double t_lo, double t_hi);
// Last half of the series, restricted to values above 100x the rounding floor.
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& v);

}  // namespace fmcf
