#include "config.hpp"

#include "fmcf/core.hpp"
#include "fmcf/initial_data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fmcf::app {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        bad(key + ": not a number '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(x)) bad(key + ": not a finite number '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        bad(key + ": not an integer '" + v + "'");
    }
    if (pos != v.size()) bad(key + ": not an integer '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(key + ": expected true/false, got '" + v + "'");
}

}  // namespace

void apply_key(ParsedConfig& cfg, const std::string& key, const std::string& value) {
    auto& f = cfg.flow;
    auto& in = f.initial;
    if (key == "kind") {
        if (value == "sphere") f.kind = FlowKind::SphereVPMCF;
        else if (value == "graph") f.kind = FlowKind::GraphMCF;
        else bad("kind: expected sphere or graph");
    } else if (key == "N") {
        const auto n = to_int(key, value);
        if (n < 8 || n % 2 != 0 || n > 8192) bad("N: must be even, >= 8 and <= 8192");
        f.N = static_cast<std::size_t>(n);
    } else if (key == "s") {
        f.s = to_double(key, value);
    } else if (key == "dt") {
        if (value == "auto") {
            f.dt.reset();
            cfg.dt_auto = true;
        } else {
            f.dt = to_double(key, value);
            cfg.dt_auto = false;
        }
    } else if (key == "T") {
        f.T = to_double(key, value);
    } else if (key == "cadence") {
        f.cadence = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
        const auto x = to_int(key, value);
        if (x < 0) bad("seed: must be non-negative");
        f.seed = static_cast<std::uint64_t>(x);
    } else if (key == "c_cfl") {
        f.c_cfl = to_double(key, value);
    } else if (key == "node_cap") {
        const auto x = to_int(key, value);
        if (x <= 0) bad("node_cap: must be positive");
        f.node_cap = static_cast<std::size_t>(x);
    } else if (key == "initial") {
        if (value.rfind("preset:", 0) == 0) {
            in.kind = InitialSpec::Kind::Preset;
            in.preset = value.substr(7);
            double off = 0.0;
            FlowKind k{};
            try {
                preset_terms(in.preset, &off, &k);
            } catch (const std::invalid_argument& e) {
                bad(std::string("initial: ") + e.what());
            }
            if (!cfg.raw.count("kind")) f.kind = k;
        } else if (value == "fourier") {
            in.kind = InitialSpec::Kind::Fourier;
        } else if (value == "random") {
            in.kind = InitialSpec::Kind::Random;
        } else {
            bad("initial: expected preset:<name>, fourier or random");
        }
    } else if (key == "fourier") {
        in.terms.clear();
        for (const auto& item : split(value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 3) bad("fourier: terms are k:cos:sin, got '" + item + "'");
            FourierTerm t;
            t.k = static_cast<int>(to_int(key, parts[0]));
            if (t.k < 0) bad("fourier: negative mode");
            t.cos_coef = to_double(key, parts[1]);
            t.sin_coef = to_double(key, parts[2]);
            in.terms.push_back(t);
        }
    } else if (key == "offset") {
        in.offset = to_double(key, value);
    } else if (key == "amplitude") {
        in.amplitude = to_double(key, value);
    } else if (key == "kmax") {
        in.kmax = static_cast<int>(to_int(key, value));
    } else if (key == "normalize_volume") {
        in.normalize_volume = to_bool(key, value);
    } else if (key == "volume_reproject") {
        f.volume_reproject = to_bool(key, value);
    } else if (key == "deficit_mode") {
        if (value == "direct") f.deficit_mode = DeficitMode::Direct;
        else if (value == "dissipation_proxy") f.deficit_mode = DeficitMode::DissipationProxy;
        else bad("deficit_mode: expected direct or dissipation_proxy");
    } else if (key == "modes") {
        f.modes.clear();
        for (const auto& m : split(value, ',')) f.modes.push_back(static_cast<int>(to_int(key, m)));
    } else if (key == "out") {
        if (value.empty()) bad("out: empty path");
        f.out = value;
    } else if (key == "s_grid") {
        cfg.s_grid.clear();
        for (const auto& x : split(value, ',')) cfg.s_grid.push_back(to_double(key, x));
    } else {
        bad("unknown key '" + key + "'");
    }
    cfg.raw[key] = value;
}

ParsedConfig parse_config_text(const std::string& text) {
    ParsedConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) bad("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (cfg.raw.count(key)) bad("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        apply_key(cfg, key, value);
    }
    return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const ParsedConfig& cfg) {
    const auto& f = cfg.flow;
    if (!(f.s > 0.0 && f.s < 1.0)) bad("s: must lie in (0,1)");
    if (!(f.T > 0.0)) bad("T: must be positive");
    if (f.dt && !(*f.dt > 0.0)) bad("dt: must be positive or auto");
    if (f.cadence < 1) bad("cadence: must be >= 1");
    if (!(f.c_cfl > 0.0)) bad("c_cfl: must be positive");
    if (f.initial.kmax < 1 || f.initial.kmax > static_cast<int>(f.N / 4)) bad("kmax: must lie in [1, N/4]");
    if (f.initial.kind == InitialSpec::Kind::Random && !(f.initial.amplitude > 0.0)) bad("amplitude: must be positive");
    if (f.kind == FlowKind::SphereVPMCF && f.initial.kind == InitialSpec::Kind::Random && !(f.initial.amplitude < 1.0))
        bad("amplitude: must be < 1 for sphere runs");
    for (const auto& t : f.initial.terms)
        if (static_cast<std::size_t>(t.k) > f.N / 2) bad("fourier: mode above N/2");
    for (int m : f.modes)
        if (m < 0 || static_cast<std::size_t>(m) > f.N / 2) bad("modes: entries must lie in [0, N/2]");
    if (f.initial.kind == InitialSpec::Kind::Preset) {
        double off = 0.0;
        FlowKind k{};
        preset_terms(f.initial.preset, &off, &k);
        if (k != f.kind) bad("initial: preset does not match kind");
    }
    for (double s : cfg.s_grid)
        if (!(s > 0.0 && s < 1.0)) bad("s_grid: entries must lie in (0,1)");
}

}  // namespace fmcf::app
