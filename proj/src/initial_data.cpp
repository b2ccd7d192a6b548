#include "fmcf/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fmcf {

namespace {

double unit_draw(std::mt19937_64& g) {
    const std::uint64_t x = g();
    return static_cast<double>(x >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

double omega(Domain d) { return d == Domain::Circle ? 1.0 : kTwoPi; }

double eval(const std::vector<FourierTerm>& terms, double w, double x, bool deriv) {
    double acc = 0.0;
    for (const auto& t : terms) {
        const double a = w * t.k * x;
        acc += deriv ? w * t.k * (-t.cos_coef * std::sin(a) + t.sin_coef * std::cos(a))
                     : t.cos_coef * std::cos(a) + t.sin_coef * std::sin(a);
    }
    return acc;
}

double fine_sup(const std::vector<FourierTerm>& terms, Domain d, bool deriv) {
    constexpr int M = 4096;
    const double cell = d == Domain::Circle ? kTwoPi : 1.0;
    double best = 0.0;
    for (int i = 0; i < M; ++i) best = std::max(best, std::abs(eval(terms, omega(d), cell * i / M, deriv)));
    return best;
}

}  // namespace

std::vector<FourierTerm> random_coefficients(std::uint64_t seed, int kmax) {
    std::mt19937_64 g(seed);
    std::vector<FourierTerm> terms;
    for (int k = 1; k <= kmax; ++k) {
        const double decay = 1.0 / (static_cast<double>(k) * k * k);
        FourierTerm t;
        t.k = k;
        t.cos_coef = unit_draw(g) * decay;
        t.sin_coef = unit_draw(g) * decay;
        terms.push_back(t);
    }
    return terms;
}

HeightField evaluate_terms(Domain d, std::size_t N, const std::vector<FourierTerm>& terms, double offset) {
    const double w = omega(d);
    return HeightField::sample(d, N, [&](double x) { return offset + eval(terms, w, x, false); });
}

double terms_sup(const std::vector<FourierTerm>& terms, Domain d) { return fine_sup(terms, d, false); }
double terms_sup_grad(const std::vector<FourierTerm>& terms, Domain d) { return fine_sup(terms, d, true); }

std::vector<FourierTerm> scale_terms(std::vector<FourierTerm> terms, double factor) {
    for (auto& t : terms) {
        t.cos_coef *= factor;
        t.sin_coef *= factor;
    }
    return terms;
}

HeightField random_band_limited(Domain d, std::size_t N, std::uint64_t seed, double amplitude, int kmax) {
    auto terms = random_coefficients(seed, kmax);
    terms = scale_terms(terms, amplitude / terms_sup(terms, d));
    return evaluate_terms(d, N, terms);
}

std::vector<FourierTerm> preset_terms(const std::string& name, double* offset, FlowKind* kind) {
    *offset = 0.0;
    if (name == "sphere-cos2") {
        *kind = FlowKind::SphereVPMCF;
        return {{2, 0.05, 0.0}};
    }
    if (name == "sphere-mixed") {
        *kind = FlowKind::SphereVPMCF;
        return {{2, 0.05, 0.0}, {3, 0.0, 0.03}};
    }
    if (name == "sphere-round") {
        *kind = FlowKind::SphereVPMCF;
        return {};
    }
    if (name == "graph-flat") {
        *kind = FlowKind::GraphMCF;
        *offset = 0.3;
        return {};
    }
    if (name == "graph-cos") {
        *kind = FlowKind::GraphMCF;
        return {{1, 0.01, 0.0}};
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

namespace {

HeightField build_raw(const FlowConfig& cfg) {
    const Domain d = cfg.kind == FlowKind::SphereVPMCF ? Domain::Circle : Domain::PeriodicLine;
    const auto& in = cfg.initial;
    switch (in.kind) {
        case InitialSpec::Kind::Preset: {
            double off = 0.0;
            FlowKind k{};
            auto terms = preset_terms(in.preset, &off, &k);
            return evaluate_terms(d, cfg.N, terms, off + in.offset);
        }
        case InitialSpec::Kind::Fourier:
            return evaluate_terms(d, cfg.N, in.terms, in.offset);
        case InitialSpec::Kind::Random: {
            HeightField u = random_band_limited(d, cfg.N, cfg.seed, in.amplitude, in.kmax);
            for (auto& v : u.values) v += in.offset;
            return u;
        }
    }
    return {};
}

}  // namespace

HeightField build_initial(const FlowConfig& cfg) {
    HeightField u = build_raw(cfg);
    if (cfg.kind == FlowKind::SphereVPMCF && cfg.initial.normalize_volume) {
        double v = 0.0;
        for (double x : u.values) v += (1.0 + x) * (1.0 + x);
        v *= 0.5 * u.spacing();
        const double lam = std::sqrt(kPi / v);
        for (auto& x : u.values) x = lam * (1.0 + x) - 1.0;
    }
    return u;
}

HeightField translated_disk(std::size_t N, double bx, double by) {
    return HeightField::sample(Domain::Circle, N, [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        const double p = bx * c + by * s;
        const double q = bx * s - by * c;
        return p + std::sqrt(1.0 - q * q) - 1.0;
    });
}

}  // namespace fmcf
