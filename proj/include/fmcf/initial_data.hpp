#pragma once

#include "fmcf/core.hpp"
#include "fmcf/flow_config.hpp"

#include <cstdint>
#include <vector>

namespace fmcf {

// Coefficients for k = 1..kmax drawn from mt19937_64(seed): each raw 64-bit
// draw x maps to (x >> 11) * 2^-53 * 2 - 1, cos then sin per k, scaled by k^-3.
std::vector<FourierTerm> random_coefficients(std::uint64_t seed, int kmax = 8);

HeightField evaluate_terms(Domain d, std::size_t N, const std::vector<FourierTerm>& terms, double offset = 0.0);

// Sup of |sum| and of |derivative| over a fixed 4096-point grid, so scaling is grid independent.
double terms_sup(const std::vector<FourierTerm>& terms, Domain d);
double terms_sup_grad(const std::vector<FourierTerm>& terms, Domain d);
std::vector<FourierTerm> scale_terms(std::vector<FourierTerm> terms, double factor);

// Band-limited field with sup |u| = amplitude.
HeightField random_band_limited(Domain d, std::size_t N, std::uint64_t seed, double amplitude, int kmax = 8);

std::vector<FourierTerm> preset_terms(const std::string& name, double* offset, FlowKind* kind);
HeightField build_initial(const FlowConfig& cfg);

// Height function of the unit disk translated by (bx, by).
HeightField translated_disk(std::size_t N, double bx, double by);

}  // namespace fmcf
