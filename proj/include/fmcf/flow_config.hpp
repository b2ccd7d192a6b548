#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fmcf {

enum class FlowKind { SphereVPMCF, GraphMCF };
enum class DeficitMode { Direct, DissipationProxy };

struct FourierTerm {
    int k = 0;
    double cos_coef = 0.0;
    double sin_coef = 0.0;
};

struct InitialSpec {
    enum class Kind { Preset, Fourier, Random };
    Kind kind = Kind::Fourier;
    std::string preset;
    double offset = 0.0;
    std::vector<FourierTerm> terms;
    double amplitude = 0.03;  // sup-norm cap for Random
    int kmax = 8;
    bool normalize_volume = true;  // sphere runs: dilate u0 to volume pi
};

struct FlowConfig {
    FlowKind kind = FlowKind::SphereVPMCF;
    std::size_t N = 256;
    double s = 0.5;
    std::optional<double> dt;  // empty means auto
    double T = 0.1;
    InitialSpec initial;
    int cadence = 10;  // steps between records
    bool volume_reproject = false;
    DeficitMode deficit_mode = DeficitMode::Direct;
    std::vector<int> modes{1, 2, 3};
    std::uint64_t seed = 1;
    double c_cfl = 0.4;
    std::size_t node_cap = 1u << 20;  // N*N pairs allowed for the direct deficit
    std::string out = "out";
};

struct TrajectoryRecord {
    double t = 0.0;
    double volume = 0.0;        // sphere: |E|; graph: mean of u
    double barycenter_x = 0.0;  // sphere only
    double barycenter_y = 0.0;
    double per_s_deficit = 0.0;
    double seminorm_sq = 0.0;
    double l2_sq = 0.0;                // sphere: ||u||^2; graph: ||u - mean||^2
    double curv_deficit_l2_sq = 0.0;   // on the evolving boundary
    double curv_deficit_l2_sq_ref = 0.0;  // on the reference circle / flat line
    double sup_grad = 0.0;
    std::vector<double> mode_amplitudes;
};

struct RunResult {
    std::vector<TrajectoryRecord> records;
    double dt = 0.0;
    std::size_t steps = 0;
    bool failed = false;
    std::string error;
    bool deficit_is_proxy = false;
};

}  // namespace fmcf
