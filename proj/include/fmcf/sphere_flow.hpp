#pragma once

#include "fmcf/core.hpp"
#include "fmcf/flow_config.hpp"

#include <array>

namespace fmcf {

struct SphereFlowState {
    HeightField u;
    FractionalOrder s{0.5};
    double t = 0.0;

    SphereFlowState(HeightField field, FractionalOrder order, double time = 0.0);
    void validate() const;
};

struct GeometricMoments {
    double volume = 0.0;
    std::array<double, 2> barycenter{0.0, 0.0};
    double perimeter_classical = 0.0;
};

double ball_curvature(FractionalOrder s);

HeightField curvature_nearly_spherical(const SphereFlowState& st, Exec exec = Exec::Parallel);

// Area element sqrt((1+u)^2 + u'^2) on the reference circle.
std::vector<double> area_element(const HeightField& u);

double average_curvature(const SphereFlowState& st, Exec exec = Exec::Parallel);
double average_curvature(const SphereFlowState& st, const HeightField& H);

GeometricMoments moments(const SphereFlowState& st);

// Per_s(E) - Per_s(B), both on the grid of st.u. Throws QuadratureBudgetExceeded if N^2 > node_cap.
double perimeter_s_deficit(const SphereFlowState& st, Exec exec = Exec::Parallel, std::size_t node_cap = 1u << 22);

// Discrete fractional perimeter of the disk on an N-point grid.
double perimeter_s_ball(std::size_t N, FractionalOrder s);

// Largest stable-safe explicit step: c_cfl / lambda_max(N, s).
double stability_cap(Domain d, std::size_t N, FractionalOrder s, double c_cfl = 0.4);

struct StepOptions {
    bool volume_reproject = false;
    double target_volume = kPi;
    double c_cfl = 0.4;
    Exec exec = Exec::Parallel;
};

struct CurvatureDeficit {
    double on_boundary = 0.0;   // int (H - Hbar)^2 dH^1 on dE
    double on_reference = 0.0;  // int (H - Hbar)^2 dtheta on dB
};

CurvatureDeficit curvature_deficit(const SphereFlowState& st, const HeightField& H);

SphereFlowState step_vpmcf(const SphereFlowState& st, double dt, const StepOptions& opt = {},
                           CurvatureDeficit* info = nullptr);

RunResult run_sphere_flow(const FlowConfig& cfg);

}  // namespace fmcf
