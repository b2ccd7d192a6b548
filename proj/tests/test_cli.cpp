#include "config.hpp"
#include "output.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace fmcf;
using namespace fmcf::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("fmcf_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int cli(const std::string& args) {
    const char* exe = std::getenv("FMCF_CLI");
    if (!exe) return -1;
    const int rc = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::RuntimeFailure;
}

}  // namespace

TEST(Config, ParsesFlatKeys) {
    const auto c = parse_config_text("# comment\ninitial = preset:sphere-cos2\nN = 128\ns = 0.3\ndt = auto\nT = 0.01\nmodes = 2,3\n");
    EXPECT_EQ(c.flow.kind, FlowKind::SphereVPMCF);
    EXPECT_EQ(c.flow.N, 128u);
    EXPECT_EQ(c.flow.s, 0.3);
    EXPECT_FALSE(c.flow.dt.has_value());
    EXPECT_EQ(c.flow.modes, (std::vector<int>{2, 3}));
    EXPECT_NO_THROW(validate(c));
    const auto g = parse_config_text("initial = preset:graph-cos\n");
    EXPECT_EQ(g.flow.kind, FlowKind::GraphMCF);
}

TEST(Config, RejectsBadInput) {
    EXPECT_EQ(kind_of([] { parse_config_text("bogus = 1\n"); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { parse_config_text("N = 64\nN = 128\n"); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { parse_config_text("N = 63\n"); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { parse_config_text("T = abc\n"); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { validate(parse_config_text("s = 1.5\n")); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { validate(parse_config_text("T = -1\n")); }), ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { validate(parse_config_text("kind = sphere\ninitial = random\namplitude = 1.2\n")); }),
              ErrorKind::ConfigInvalid);
    EXPECT_EQ(kind_of([] { parse_config_file("/nonexistent/cfg"); }), ErrorKind::ConfigInvalid);
}

TEST(Output, DoublesAndQuoting) {
    EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
    EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(number(std::nan("")), nullptr);
}

TEST(Output, HeaderPerKind) {
    const auto s = trajectory_header(FlowKind::SphereVPMCF, {2});
    const auto g = trajectory_header(FlowKind::GraphMCF, {1});
    EXPECT_EQ(s[1], "volume");
    EXPECT_EQ(s[2], "barycenter_x");
    EXPECT_EQ(s.back(), "amp_2");
    EXPECT_EQ(std::count(g.begin(), g.end(), "volume"), 0);
    EXPECT_EQ(std::count(g.begin(), g.end(), "barycenter_x"), 0);
    EXPECT_EQ(g.back(), "amp_1");
}

TEST(Cli, InvalidConfigWritesNothing) {
    const auto dir = scratch("invalid");
    write(dir / "bad.cfg", "initial = preset:sphere-cos2\ns = 1.5\nout = " + (dir / "out").string() + "\n");
    EXPECT_EQ(cli("run " + (dir / "bad.cfg").string()), 2);
    EXPECT_FALSE(fs::exists(dir / "out"));
    EXPECT_EQ(cli("run " + (dir / "missing.cfg").string()), 2);
}

TEST(Cli, FlatGraphIsConstant) {
    const auto dir = scratch("flat");
    write(dir / "flat.cfg", "initial = preset:graph-flat\nN = 64\nT = 0.001\ncadence = 4\nout = " + (dir / "out").string() + "\n");
    ASSERT_EQ(cli("run " + (dir / "flat.cfg").string()), 0);
    std::ifstream csv(dir / "out" / "trajectory.csv");
    std::string header, line, first;
    std::getline(csv, header);
    EXPECT_EQ(header.rfind("t,mean,", 0), 0u);
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        const auto tail = line.substr(line.find(','));
        if (rows++ == 0) first = tail;
        EXPECT_EQ(tail, first);
    }
    EXPECT_GT(rows, 3u);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    EXPECT_EQ(j["status"], "ok");
    EXPECT_TRUE(j["rate_fits"]["l2_norm"]["degenerate"].get<bool>());
    EXPECT_TRUE(j["rate_fits"]["per_s_deficit"]["degenerate"].get<bool>());
}

TEST(Cli, ReproducibleApartFromTimestamp) {
    const auto dir = scratch("repro");
    write(dir / "r.cfg", "kind = sphere\ninitial = random\nseed = 4\nN = 64\nT = 0.002\ncadence = 5\nout = " +
                             (dir / "out").string() + "\n");
    ASSERT_EQ(cli("run " + (dir / "r.cfg").string()), 0);
    const auto csv1 = slurp(dir / "out" / "trajectory.csv");
    auto j1 = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    ASSERT_EQ(cli("run " + (dir / "r.cfg").string()), 0);
    const auto csv2 = slurp(dir / "out" / "trajectory.csv");
    auto j2 = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    EXPECT_EQ(csv1, csv2);
    j1.erase("timestamp");
    j2.erase("timestamp");
    EXPECT_EQ(j1.dump(), j2.dump());
    EXPECT_EQ(j1["seed"], 4);
}

TEST(Cli, FlagsOverrideConfig) {
    const auto dir = scratch("flags");
    write(dir / "f.cfg", "initial = preset:sphere-cos2\nN = 64\nT = 0.001\nout = /nonexistent_never_used\n");
    ASSERT_EQ(cli("run " + (dir / "f.cfg").string() + " --T 0.0005 --s 0.4 --out " + (dir / "o").string()), 0);
    const auto j = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
    EXPECT_EQ(j["resolved"]["T"], 0.0005);
    EXPECT_EQ(j["resolved"]["s"], 0.4);
    EXPECT_EQ(cli("run " + (dir / "f.cfg").string() + " --s 2 --out " + (dir / "o2").string()), 2);
}

TEST(Cli, Suites) {
    const auto dir = scratch("suite");
    EXPECT_EQ(cli("suite identities --out " + dir.string()), 0);
    const auto j = nlohmann::json::parse(slurp(dir / "suite_identities.json"));
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(cli("suite identities --kernel-scale 1.01 --out " + dir.string()), 1);
    EXPECT_EQ(cli("suite nonsense --out " + dir.string()), 2);
}

TEST(Cli, ScanWritesTables) {
    const auto dir = scratch("scan");
    write(dir / "s.cfg", "kind = sphere\nN = 128\nout = " + dir.string() + "\n");
    ASSERT_EQ(cli("scan-asymptotics " + (dir / "s.cfg").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "asymptotics.csv"));
    const auto j = nlohmann::json::parse(slurp(dir / "asymptotics.json"));
    EXPECT_TRUE(j["cauchy"]["s_seminorm_ratio_to_0"].get<bool>());
    EXPECT_TRUE(j["cauchy"]["one_minus_s_seminorm_ratio_to_1"].get<bool>());
}
