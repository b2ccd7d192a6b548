#include "fmcf/spectral.hpp"

#include "fmcf/singular_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace fmcf {

namespace {

// cos/sin of 2 pi k i / N with exact index reduction
inline double cos_idx(std::size_t k, std::size_t i, std::size_t N) {
    return std::cos(kTwoPi * static_cast<double>((k * i) % N) / static_cast<double>(N));
}
inline double sin_idx(std::size_t k, std::size_t i, std::size_t N) {
    return std::sin(kTwoPi * static_cast<double>((k * i) % N) / static_cast<double>(N));
}

}  // namespace

SpectralSplit decompose(const HeightField& u) {
    u.validate();
    if (u.domain != Domain::Circle) throw std::invalid_argument("decompose expects a Circle field");
    const std::size_t N = u.size();
    const double h = u.spacing();
    const double y0 = 1.0 / std::sqrt(kTwoPi);
    const double y1 = 1.0 / std::sqrt(kPi);
    SpectralSplit sp;
    double a = 0.0, bc = 0.0, bs = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        a += u[i];
        bc += u[i] * cos_idx(1, i, N);
        bs += u[i] * sin_idx(1, i, N);
    }
    sp.a = h * a * y0;
    sp.b = {h * bc * y1, h * bs * y1};
    sp.R = u;
    for (std::size_t i = 0; i < N; ++i)
        sp.R[i] -= sp.a * y0 + (sp.b[0] * cos_idx(1, i, N) + sp.b[1] * sin_idx(1, i, N)) * y1;
    return sp;
}

HeightField reconstruct(const SpectralSplit& sp) {
    HeightField u = sp.R;
    const std::size_t N = u.size();
    const double y0 = 1.0 / std::sqrt(kTwoPi);
    const double y1 = 1.0 / std::sqrt(kPi);
    for (std::size_t i = 0; i < N; ++i)
        u[i] += sp.a * y0 + (sp.b[0] * cos_idx(1, i, N) + sp.b[1] * sin_idx(1, i, N)) * y1;
    return u;
}

double eigenvalue(int k, FractionalOrder s, std::size_t N) {
    if (k < 0 || static_cast<std::size_t>(k) > N / 4)
        throw Error(ErrorKind::ModeUnderResolved, "mode " + std::to_string(k) + " needs a finer grid than N=" + std::to_string(N));
    if (k == 0) return 0.0;
    HeightField c(Domain::Circle, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i) c[i] = cos_idx(static_cast<std::size_t>(k), i, N);
    const HeightField rc = riesz_apply(c, s, Exec::Serial);
    return inner_product(c, rc) / inner_product(c, c);
}

double mode_amplitude(const HeightField& u, int k) {
    u.validate();
    const std::size_t N = u.size();
    if (k < 0 || static_cast<std::size_t>(k) > N / 2)
        throw Error(ErrorKind::ModeUnderResolved, "mode index outside [0, N/2]");
    const auto kk = static_cast<std::size_t>(k);
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        c += u[i] * cos_idx(kk, i, N);
        s += u[i] * sin_idx(kk, i, N);
    }
    const double scale = (kk == 0 || kk == N / 2) ? 1.0 / static_cast<double>(N) : 2.0 / static_cast<double>(N);
    return scale * std::hypot(c, s);
}

TrigInterpolant::TrigInterpolant(const HeightField& u)
    : omega_(kTwoPi / u.cell_length()), N_(u.size()), a_(u.size() / 2 + 1, 0.0), b_(u.size() / 2 + 1, 0.0) {
    for (std::size_t k = 0; k <= N_ / 2; ++k) {
        double c = 0.0, s = 0.0;
        for (std::size_t i = 0; i < N_; ++i) {
            c += u[i] * cos_idx(k, i, N_);
            s += u[i] * sin_idx(k, i, N_);
        }
        const double scale = (k == 0 || k == N_ / 2) ? 1.0 / static_cast<double>(N_) : 2.0 / static_cast<double>(N_);
        a_[k] = scale * c;
        b_[k] = k == N_ / 2 ? 0.0 : scale * s;
    }
}

double TrigInterpolant::value(double x) const {
    double acc = a_[0];
    for (std::size_t k = 1; k <= N_ / 2; ++k) {
        const double t = omega_ * static_cast<double>(k) * x;
        acc += a_[k] * std::cos(t) + b_[k] * std::sin(t);
    }
    return acc;
}

double TrigInterpolant::derivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = 1; k <= N_ / 2; ++k) {
        const double wk = omega_ * static_cast<double>(k);
        const double t = wk * x;
        acc += wk * (-a_[k] * std::sin(t) + b_[k] * std::cos(t));
    }
    return acc;
}

}  // namespace fmcf
