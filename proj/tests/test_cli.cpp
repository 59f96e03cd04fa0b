#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

const std::string cli = SUSYSCAT_CLI_PATH;
const std::string tmp = SUSYSCAT_TEST_TMPDIR;

/// Runs the CLI with `args`, stdout to `out_file`, stderr discarded; returns the exit status.
int run(const std::string& args, const std::string& out_file = "/dev/null") {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out_file + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST(Cli, CurvesToStdout) {
    const std::string out = tmp + "/cli_curves.csv";
    ASSERT_EQ(run("curves --n-k 10", out), 0);
    const std::string text = slurp(out);
    EXPECT_EQ(line_count(text), 11u);
    EXPECT_EQ(text.substr(0, text.find('\n')), "k,sigma0,sigma_e,sigma_r,sigma_t,sigma_h,sigmaR,sigmaBW");
}

TEST(Cli, OutFlagAndJson) {
    const std::string out = tmp + "/cli_sweep.json";
    ASSERT_EQ(run("sweep --d -0.5 -0.1 --format json --out \"" + out + "\""), 0);
    const auto j = nlohmann::json::parse(slurp(out));
    ASSERT_EQ(j.at("rows").size(), 2u);
    EXPECT_DOUBLE_EQ(j.at("rows")[0].at("d").get<double>(), -0.5);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("curves --d 0.1"), 2);
    EXPECT_EQ(run("curves --a1 -1"), 2);
    EXPECT_EQ(run("sweep"), 2);
    EXPECT_EQ(run("curves --format xml"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("verify --n-x 10"), 4);
    // Valid but too coarse for the 1e-6 background tolerance: a report, not an exception.
    EXPECT_EQ(run("verify --n-x 2000"), 3);
    EXPECT_EQ(run("curves --n-k 10 --out /nonexistent/dir/out.csv"), 5);
    EXPECT_EQ(run("curves --config /nonexistent/dir/cfg.json"), 5);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, VerifyReport) {
    const std::string out = tmp + "/cli_verify.json";
    ASSERT_EQ(run("verify", out), 0);
    const auto j = nlohmann::json::parse(slurp(out));
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_GE(j.at("items").size(), 15u);
}

TEST(Cli, ByteIdenticalReruns) {
    const std::string a = tmp + "/cli_rerun_a.csv";
    const std::string b = tmp + "/cli_rerun_b.csv";
    ASSERT_EQ(run("phases --n-k 500", a), 0);
    ASSERT_EQ(run("phases --n-k 500", b), 0);
    const std::string ta = slurp(a);
    EXPECT_FALSE(ta.empty());
    EXPECT_EQ(ta, slurp(b));
}

TEST(Cli, ConfigPrecedence) {
    const std::string cfg = tmp + "/cli_config.json";
    {
        std::ofstream f(cfg);
        f << R"({"a1": 2.0, "n_k": 20, "k_max": 2.0})";
    }
    const std::string from_file = tmp + "/cli_cfg_file.csv";
    ASSERT_EQ(run("curves --config \"" + cfg + "\"", from_file), 0);
    const std::string text = slurp(from_file);
    EXPECT_EQ(line_count(text), 21u);
    // sigma0 at the first k reflects a1 = 2: 4 pi / (k^2 + 4).
    std::istringstream rows(text);
    std::string header, first;
    std::getline(rows, header);
    std::getline(rows, first);
    const double k = std::stod(first.substr(0, first.find(',')));
    const std::string rest = first.substr(first.find(',') + 1);
    const double s0 = std::stod(rest.substr(0, rest.find(',')));
    EXPECT_NEAR(s0, 4.0 * 3.14159265358979323846 / (k * k + 4.0), 1e-14);

    const std::string overridden = tmp + "/cli_cfg_flag.csv";
    ASSERT_EQ(run("curves --config \"" + cfg + "\" --n-k 15", overridden), 0);
    EXPECT_EQ(line_count(slurp(overridden)), 16u);
}
