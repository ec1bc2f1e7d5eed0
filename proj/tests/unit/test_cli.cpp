#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "freecsk/limits.hpp"

namespace {

namespace fs = std::filesystem;
using freecsk::cli::run;

const std::string kSpecDir = FREECSK_SPEC_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "freecsk");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Data rows (non-comment lines after the header), split on commas.
std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

std::string comment_value(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  const std::string prefix = "# " + key + ": ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("freecsk_cli_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << content;
  return p;
}

TEST(ParseGrid, RangeAndList) {
  EXPECT_EQ(freecsk::cli::parse_grid("4,5,6"), (std::vector<double>{4, 5, 6}));
  const std::vector<double> range = freecsk::cli::parse_grid("0.2:1:0.2");
  ASSERT_EQ(range.size(), 5u);
  EXPECT_NEAR(range.back(), 1.0, 1e-12);
  EXPECT_EQ(freecsk::cli::parse_grid("1.5"), (std::vector<double>{1.5}));
  EXPECT_THROW(freecsk::cli::parse_grid("1:2"), std::invalid_argument);
  EXPECT_THROW(freecsk::cli::parse_grid("1:2:0"), std::invalid_argument);
  EXPECT_THROW(freecsk::cli::parse_grid("1,x"), std::invalid_argument);
  EXPECT_THROW(freecsk::cli::parse_grid("1,,2"), std::invalid_argument);
}

TEST(Transform, FreePoissonG) {
  const Result r = invoke({"transform", "--spec", kSpecDir + "/free_poisson.json", "--which", "G", "--grid", "4,5,6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_NEAR(std::stod(data[0][1]), 0.5, 1e-10);
  EXPECT_NEAR(std::stod(data[1][1]), (5.0 - std::sqrt(5.0)) / 10.0, 1e-10);
  EXPECT_EQ(comment_value(r.out, "which"), "G");
}

TEST(Transform, DiracK) {
  const Result r = invoke({"transform", "--spec", kSpecDir + "/dirac2.json", "--which", "K", "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(rows(r.out).at(0).at(1)), 2.0, 1e-14);
}

TEST(Transform, ErrorsBecomeRowNotes) {
  const Result r = invoke({"transform", "--spec", kSpecDir + "/free_poisson.json", "--which", "G", "--grid", "2"});
  ASSERT_EQ(r.code, 0);
  const auto data = rows(r.out);
  EXPECT_EQ(data.at(0).at(1), "nan");
  EXPECT_FALSE(data.at(0).at(2).empty());
}

TEST(Transform, MalformedSpecFails) {
  const fs::path bad = temp_file("bad.json", R"({"type":"atomic","atoms":[1],"weights":[0.5]})");
  const Result r = invoke({"transform", "--spec", bad.string(), "--which", "G", "--grid", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("weights"), std::string::npos);
  fs::remove(bad);
}

TEST(Convolve, BoxtimesPowerIsFussCatalan) {
  const Result r = invoke({"convolve", "--spec", kSpecDir + "/free_poisson.json", "--op", "boxtimes", "--power", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 40u);
  const std::vector<double> expected{1, 3, 12, 55};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::stod(data[k][1]), expected[k], 1e-8 * expected[k]);
  EXPECT_EQ(comment_value(r.out, "positive"), "true");
  EXPECT_EQ(comment_value(r.out, "formal"), "false");
}

TEST(Convolve, DiracBoxplusDirac) {
  const fs::path other = temp_file("dirac3.json", R"({"type":"atomic","atoms":[3],"weights":[1]})");
  const Result r = invoke({"convolve", "--spec", kSpecDir + "/dirac2.json", "--spec", other.string(), "--op", "boxplus",
                           "--order", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::stod(data[k][1]), std::pow(5.0, k + 1), 1e-9 * std::pow(5.0, k + 1));
  fs::remove(other);
}

TEST(Convolve, BtOfSigmaIsEta) {
  const freecsk::MomentSeq sigma = freecsk::limit_law_moments(freecsk::LimitKind::sigma, 1.0, 8);
  const freecsk::MomentSeq eta = freecsk::limit_law_moments(freecsk::LimitKind::eta, 1.0, 8);
  std::ostringstream spec;
  spec.precision(17);
  spec << R"({"type":"moments","positive":true,"values":[)";
  for (std::size_t k = 1; k <= 8; ++k) spec << (k > 1 ? "," : "") << sigma.moment(k);
  spec << "]}";
  const fs::path path = temp_file("sigma.json", spec.str());
  const Result r = invoke({"convolve", "--spec", path.string(), "--op", "bt", "--power", "1", "--order", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 8u);
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_NEAR(std::stod(data[k - 1][1]), eta.moment(k), 1e-9);
  EXPECT_EQ(comment_value(r.out, "t"), "1");
  fs::remove(path);
}

TEST(Convolve, UsageErrors) {
  EXPECT_EQ(invoke({"convolve", "--spec", kSpecDir + "/dirac2.json", "--op", "boxplus"}).code, 2);
  EXPECT_EQ(invoke({"convolve", "--spec", kSpecDir + "/dirac2.json", "--op", "cross", "--power", "2"}).code, 2);
}

TEST(Csk, FreePoisson) {
  const Result r = invoke({"csk", "--spec", kSpecDir + "/free_poisson.json", "--at", "0.5,1.5,2.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_NEAR(std::stod(data[1][3]), 1.5, 1e-9);
  EXPECT_NEAR(std::stod(data[0][3]), 0.5, 1e-9);
  EXPECT_EQ(data[2][3], "nan");
  EXPECT_NE(data[2][4].find("outside the mean domain"), std::string::npos);
  const std::string domain = comment_value(r.out, "mean_domain");
  double lo = 0, hi = 0;
  ASSERT_EQ(std::sscanf(domain.c_str(), "(%lf, %lf)", &lo, &hi), 2) << domain;
  EXPECT_NEAR(lo, 0.0, 1e-6);
  EXPECT_NEAR(hi, 2.0, 1e-6);
}

TEST(Limit, ReportsAndSingleRow) {
  const Result full = invoke({"limit", "--spec", kSpecDir + "/free_poisson.json", "--kind", "uplus"});
  ASSERT_EQ(full.code, 0) << full.err;
  EXPECT_EQ(comment_value(full.out, "limit"), "sigma(gamma=1)");
  const Result single =
      invoke({"limit", "--spec", kSpecDir + "/free_poisson.json", "--kind", "boxplus", "--n-schedule", "1"});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_EQ(comment_value(single.out, "limit"), "eta(gamma=1)");
  std::size_t moments = 0;
  for (const auto& row : rows(single.out)) moments += row.at(0) == "moment";
  EXPECT_EQ(moments, 6u);
  EXPECT_EQ(invoke({"limit", "--spec", kSpecDir + "/free_poisson.json", "--n-schedule", "4,2"}).code, 1);
}

TEST(Verify, SuitesAndUnknownName) {
  const Result r = invoke({"verify", "--suite", "prop2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(comment_value(r.out, "prop2"), "PASS");
  EXPECT_EQ(invoke({"verify", "--suite", "nonsense"}).code, 2);
}

TEST(Output, DeterministicAndWritesFile) {
  const std::vector<std::string> args{"csk", "--spec", kSpecDir + "/two_atom.json", "--at", "1.6:2.8:0.3"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const fs::path path = fs::temp_directory_path() / ("freecsk_cli_test_out_" + std::to_string(::getpid()) + ".csv");
  std::vector<std::string> with_out = args;
  with_out.insert(with_out.end(), {"--out", path.string()});
  const Result c = invoke(with_out);
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(c.out.empty());
  std::ifstream in(path);
  std::stringstream written;
  written << in.rdbuf();
  EXPECT_EQ(written.str(), a.out);
  fs::remove(path);
}

TEST(Usage, MissingSubcommandAndBadFlags) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"transform", "--which", "G"}).code, 2);
  EXPECT_EQ(invoke({"transform", "--spec", kSpecDir + "/dirac2.json", "--which", "Q", "--grid", "1"}).code, 2);
  EXPECT_EQ(invoke({"csk", "--spec", kSpecDir + "/dirac2.json", "--at", "1:0:1"}).code, 2);
}

// The installed binary, to check real process exit codes.
int exit_code_of(const std::string& args) {
  const std::string cmd = std::string(FREECSK_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(exit_code_of("transform --spec " + kSpecDir + "/dirac2.json --which K --grid 5"), 0);
  EXPECT_EQ(exit_code_of("transform --spec /nonexistent/spec.json --which G --grid 4"), 1);
  EXPECT_EQ(exit_code_of("verify --suite nonsense"), 2);
  EXPECT_EQ(exit_code_of("frobnicate"), 2);
}

}  // namespace
