#pragma once

#include "fmcf/core.hpp"
#include "fmcf/flow_config.hpp"

namespace fmcf {

struct GraphFlowState {
    HeightField u;
    FractionalOrder s{0.5};
    double t = 0.0;

    GraphFlowState(HeightField field, FractionalOrder order, double time = 0.0);
    void validate() const;
};

HeightField curvature_graph(const GraphFlowState& st, Exec exec = Exec::Parallel);

GraphFlowState step_graph(const GraphFlowState& st, double dt, double c_cfl = 0.4, Exec exec = Exec::Parallel,
                          double* dissipation = nullptr);

// Per_s^p(E) - Per_s^p(H_c); the value does not depend on c.
double periodic_perimeter_deficit(const GraphFlowState& st, double c, Exec exec = Exec::Parallel);

// Phi(X) = 2 int_0^X (X - v)(1 + v^2)^-p dv and its first derivative.
double deficit_profile(double X, double p);
double deficit_profile_derivative(double X, double p);

RunResult run_graph_flow(const FlowConfig& cfg);

}  // namespace fmcf
