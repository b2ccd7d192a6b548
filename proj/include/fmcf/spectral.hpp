#pragma once

#include "fmcf/core.hpp"

#include <array>
#include <vector>

namespace fmcf {

struct SpectralSplit {
    double a = 0.0;
    std::array<double, 2> b{0.0, 0.0};
    HeightField R;
};

// Projection onto Y0 = 1/sqrt(2 pi) and Y1 = (cos, sin)/sqrt(pi).
SpectralSplit decompose(const HeightField& u);
HeightField reconstruct(const SpectralSplit& split);

constexpr std::size_t kEigenGrid = 512;

double eigenvalue(int k, FractionalOrder s, std::size_t N = kEigenGrid);

double mode_amplitude(const HeightField& u, int k);

// Real Fourier series u = a0 + sum_k (a_k cos k w x + b_k sin k w x), w = 2pi/|cell|.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const HeightField& u);
    double value(double x) const;
    double derivative(double x) const;

private:
    double omega_;
    std::size_t N_;
    std::vector<double> a_, b_;
};

}  // namespace fmcf
