#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace fmcf::app {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> trajectory_header(FlowKind kind, const std::vector<int>& modes) {
    std::vector<std::string> h{"t"};
    if (kind == FlowKind::SphereVPMCF) {
        h.insert(h.end(), {"volume", "barycenter_x", "barycenter_y"});
    } else {
        h.push_back("mean");
    }
    h.insert(h.end(), {"per_s_deficit", "seminorm_sq", "l2_sq", "curv_deficit_l2_sq", "curv_deficit_l2_sq_ref", "sup_grad"});
    for (int k : modes) h.push_back("amp_" + std::to_string(k));
    return h;
}

void write_trajectory_csv(std::ostream& out, FlowKind kind, const std::vector<int>& modes,
                          const std::vector<TrajectoryRecord>& records) {
    const auto header = trajectory_header(kind, modes);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
    out << "\r\n";
    for (const auto& r : records) {
        std::vector<double> row{r.t};
        if (kind == FlowKind::SphereVPMCF) {
            row.insert(row.end(), {r.volume, r.barycenter_x, r.barycenter_y});
        } else {
            row.push_back(r.volume);
        }
        row.insert(row.end(), {r.per_s_deficit, r.seminorm_sq, r.l2_sq, r.curv_deficit_l2_sq, r.curv_deficit_l2_sq_ref,
                               r.sup_grad});
        row.insert(row.end(), r.mode_amplitudes.begin(), r.mode_amplitudes.end());
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(format_double(row[i]));
        out << "\r\n";
    }
}

ordered_json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

ordered_json to_json(const InequalityReport& r) {
    ordered_json j;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["ratio"] = number(r.ratio);
    j["ensemble_min_ratio"] = number(r.ensemble_min_ratio);
    j["degenerate"] = r.degenerate;
    j["grid_meta"] = {{"N", r.N}, {"s", r.s}, {"eps", r.eps}};
    return j;
}

ordered_json to_json(const RateFit& f) {
    ordered_json j;
    j["rate"] = number(f.rate);
    j["intercept"] = number(f.intercept);
    j["r_squared"] = number(f.r_squared);
    j["window"] = {f.t_lo, f.t_hi};
    j["points"] = f.points;
    return j;
}

}  // namespace fmcf::app
