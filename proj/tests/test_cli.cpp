#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "domo/cli.hpp"

using namespace domo;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> read_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("domo_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST(DistSpec, Parses) {
    EXPECT_EQ(spec_of(parse_distribution("exp:2")), "exp:2");
    EXPECT_EQ(spec_of(parse_distribution("gamma:1.13,116.6")), "gamma:1.13,116.6");
    EXPECT_EQ(spec_of(parse_distribution("gammarate:2,4")), "gamma:2,0.25");
    EXPECT_EQ(spec_of(parse_distribution("weibull:2,1")), "weibull:2,1");
    EXPECT_EQ(spec_of(parse_distribution("loglogistic")), "loglogistic");
    EXPECT_EQ(spec_of(parse_distribution("ell:0.5,2,3")), "ell:0.5,2,3");
    EXPECT_EQ(spec_of(parse_distribution("domo:0,4.4324,0.6822@gamma:1.13,116.6")), "domo:0,4.4324,0.6822@gamma:1.13,116.6");
    EXPECT_TRUE(std::holds_alternative<DOMODistribution>(parse_distribution("domo:1,1,2@exp:1")));
}

TEST(DistSpec, ErrorsCarryPosition) {
    auto message = [](const std::string& text) {
        try {
            (void)parse_distribution(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("exp:x").find("column 5"), std::string::npos);
    EXPECT_NE(message("domo:1,1@exp:1").find("column 6"), std::string::npos);
    EXPECT_NE(message("domo:1,1,2@weird:3").find("column 12"), std::string::npos);
    EXPECT_NE(message("domo:1,1,2").find("'@<baseline>'"), std::string::npos);
    EXPECT_NE(message("gamma:0,1").find("shape must be > 0"), std::string::npos);
    EXPECT_NE(message("exp:").find("missing parameters"), std::string::npos);
    EXPECT_NE(message("loglogistic:1").find("expects 0"), std::string::npos);
    EXPECT_THROW((void)parse_distribution(""), ParseError);
}

TEST(Cli, EvalLogLogistic) {
    const auto r = run_cli({"eval", "--dist", "ell:0,1,1", "--points", "3", "--plo", "0.25", "--phi", "0.75"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string header;
    const auto rows = read_csv(r.out, &header);
    EXPECT_EQ(header, "x,cdf,pdf,survival,hazard,odds,odds_rate");
    ASSERT_EQ(rows.size(), 3u);
    const double xs[] = {1.0 / 3.0, 1.0, 3.0};
    const double ps[] = {0.25, 0.5, 0.75};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(rows[i][0], xs[i], 1e-11);
        EXPECT_NEAR(rows[i][1], ps[i], 1e-11);
        EXPECT_NEAR(rows[i][3], 1 - ps[i], 1e-11);
        EXPECT_NEAR(rows[i][6], 1.0, 1e-11);
    }
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, EvalValidation) {
    EXPECT_EQ(run_cli({"eval", "--dist", "exp:1", "--points", "0"}).code, 64);
    EXPECT_EQ(run_cli({"eval", "--dist", "exp:1", "--plo", "0.9", "--phi", "0.1"}).code, 64);
    EXPECT_EQ(run_cli({"eval", "--dist", "exp:-1"}).code, 64);
    EXPECT_EQ(run_cli({"eval"}).code, 64);
    EXPECT_EQ(run_cli({}).code, 64);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 64);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, OrderExitCodes) {
    auto r = run_cli({"order", "--relation", "st", "--left", "exp:2", "--right", "exp:1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("status=holds"), std::string::npos);
    EXPECT_EQ(run_cli({"order", "--relation", "st", "--left", "exp:1", "--right", "exp:2"}).code, 1);
    r = run_cli({"order", "--relation", "st", "--left", "exp:1", "--right", "domo:0,1,2@exp:1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("status=crosses"), std::string::npos);
    EXPECT_EQ(run_cli({"order", "--relation", "c", "--left", "weibull:2,1", "--right", "loglogistic"}).code, 0);
    EXPECT_EQ(run_cli({"order", "--relation", "bogus", "--left", "exp:1", "--right", "exp:2"}).code, 64);
    EXPECT_EQ(run_cli({"order", "--relation", "st", "--left", "exp:1", "--right", "exp:2", "--grid-points", "4"}).code, 64);
}

TEST(Cli, OrderInconclusive) {
    // disjoint bulk: wherever one density is representable the other underflows, so the
    // likelihood ratio has no usable grid point
    const auto r = run_cli({"order", "--relation", "lr", "--left", "exp:10000", "--right", "gamma:500,1"});
    EXPECT_EQ(r.code, 3) << r.out;
    EXPECT_NE(r.out.find("status=inconclusive"), std::string::npos);
}

TEST(Cli, Classify) {
    const auto r = run_cli({"classify", "--dist", "weibull:2,1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("ihr=true\ndhr=false\n"), std::string::npos);
    const auto e = run_cli({"classify", "--dist", "exp:1"});
    EXPECT_NE(e.out.find("note=constant hazard"), std::string::npos);
}

TEST(Cli, StabilityNeedsDomo) {
    EXPECT_EQ(run_cli({"stability", "--dist", "exp:1", "--p", "0.5"}).code, 65);
    EXPECT_EQ(run_cli({"stability", "--dist", "domo:1,1,2@exp:1", "--p", "0", "--n", "1000"}).code, 64);
    const auto r = run_cli({"stability", "--dist", "domo:1,1,2@exp:1", "--p", "0.5", "--n", "100000", "--seed", "7"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pass_min=true"), std::string::npos);
    EXPECT_NE(r.out.find("pass_max=true"), std::string::npos);
    EXPECT_EQ(r.out, run_cli({"stability", "--dist", "domo:1,1,2@exp:1", "--p", "0.5", "--n", "100000", "--seed", "7"}).out);
}

TEST(Cli, VerifyJson) {
    const auto path = temp_file("verify.json");
    const auto r = run_cli({"verify", "--trials", "4", "--seed", "42", "--case", "DOMO-ST-1", "--case", "CROSS-DISP-1",
                            "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["trials"], 4);
    ASSERT_EQ(j["cases"].size(), 2u);
    EXPECT_EQ(j["cases"][0]["id"], "DOMO-ST-1");
    EXPECT_TRUE(j["cases"][0].contains("trials_applicable"));
    EXPECT_TRUE(j["cases"][0]["disagreements"].is_array());
    EXPECT_EQ(j["cases"][1]["flagged"], true);
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, 64);
    EXPECT_EQ(run_cli({"verify", "--case", "NOPE", "--trials", "1"}).code, 64);
    EXPECT_NE(run_cli({"verify", "--list"}).out.find("GEOM-STABILITY"), std::string::npos);
}

TEST(Cli, IoError) {
    EXPECT_EQ(run_cli({"eval", "--dist", "exp:1", "--out", "/nonexistent-dir/x.csv"}).code, 74);
    EXPECT_EQ(run_cli({"prentice", "--out", "/nonexistent-dir/p.csv"}).code, 74);
}

TEST(Cli, PrenticeDensities) {
    const auto r = run_cli({"prentice"});
    ASSERT_EQ(r.code, 0);
    std::string header;
    const auto rows = read_csv(r.out, &header);
    EXPECT_EQ(header, "x,baseline_pdf,baseline_cdf,domo_pdf,domo_cdf");
    ASSERT_EQ(rows.size(), 1001u);
    EXPECT_EQ(rows.front()[0], 0.0);
    EXPECT_EQ(rows.back()[0], 1000.0);
    // Trapezoid over the file grid plus the tail beyond 1000. The d-oMO density behaves like
    // x^(-0.23) at 0, so the first cells are taken from the cdf column instead.
    const std::size_t skip = 10;
    double mass = rows[skip][4] + (1.0 - rows.back()[4]);
    double base_mass = rows[skip][2] + (1.0 - rows.back()[2]);
    for (std::size_t i = skip + 1; i < rows.size(); ++i) {
        const double dx = rows[i][0] - rows[i - 1][0];
        mass += 0.5 * dx * (rows[i][3] + rows[i - 1][3]);
        base_mass += 0.5 * dx * (rows[i][1] + rows[i - 1][1]);
    }
    EXPECT_NEAR(mass, 1.0, 1e-3);
    EXPECT_NEAR(base_mass, 1.0, 1e-3);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = DOMO_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("order --relation st --left exp:2 --right exp:1"), 0);
    EXPECT_EQ(status("order --relation st --left exp:1 --right exp:2"), 1);
    EXPECT_EQ(status("order --relation st --left exp:1 --right domo:0,1,2@exp:1"), 2);
    EXPECT_EQ(status("order --relation lr --left exp:10000 --right gamma:500,1"), 3);
    EXPECT_EQ(status("eval --dist nope:1"), 64);
    EXPECT_EQ(status("stability --dist ell:1,1,1 --p 0.5"), 65);
    EXPECT_EQ(status("prentice --out /nonexistent-dir/p.csv"), 74);
}

TEST(Cli, CsvIsDeterministic) {
    const auto a = run_cli({"eval", "--dist", "domo:0.5,2,0.7@gamma:4,1", "--points", "50"});
    const auto b = run_cli({"eval", "--dist", "domo:0.5,2,0.7@gamma:4,1", "--points", "50"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run_cli({"prentice"}).out, run_cli({"prentice"}).out);
}
