#include "fmcf/core.hpp"

#include <cmath>

namespace fmcf {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidOrder: return "InvalidOrder";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::StarShapeViolated: return "StarShapeViolated";
        case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
        case ErrorKind::StabilityCapExceeded: return "StabilityCapExceeded";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ModeUnderResolved: return "ModeUnderResolved";
        case ErrorKind::InsufficientRecords: return "InsufficientRecords";
        case ErrorKind::NonPositiveValues: return "NonPositiveValues";
        case ErrorKind::DegenerateWindow: return "DegenerateWindow";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::RuntimeFailure: return "RuntimeFailure";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

FractionalOrder::FractionalOrder(double s) : s_(s) {
    if (!(s > 0.0 && s < 1.0)) throw Error(ErrorKind::InvalidOrder, "s must lie in (0,1), got " + std::to_string(s));
}

HeightField::HeightField(Domain d, std::vector<double> v) : domain(d), values(std::move(v)) {}

HeightField HeightField::sample(Domain d, std::size_t N, const std::function<double(double)>& f) {
    HeightField u(d, std::vector<double>(N));
    const double h = u.spacing();
    for (std::size_t i = 0; i < N; ++i) u.values[i] = f(h * static_cast<double>(i));
    return u;
}

HeightField HeightField::constant(Domain d, std::size_t N, double c) {
    return HeightField(d, std::vector<double>(N, c));
}

double HeightField::cell_length() const { return domain == Domain::Circle ? kTwoPi : 1.0; }

double HeightField::spacing() const { return cell_length() / static_cast<double>(values.size()); }

void HeightField::validate() const {
    const std::size_t N = values.size();
    if (N < 8 || N % 2 != 0)
        throw Error(ErrorKind::GridTooCoarse, "N must be even and >= 8, got " + std::to_string(N));
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "height field has non-finite samples");
}

}  // namespace fmcf
