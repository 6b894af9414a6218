#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "mistab/factors.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mistab");
  std::ostringstream out, err;
  const int code = mistab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() /
           ("mistab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, FormatNumber) {
  EXPECT_EQ(mistab::cli::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(mistab::cli::format_number(2.0), "2");
  EXPECT_EQ(std::stod(mistab::cli::format_number(M_PI)), M_PI);
}

TEST(Cli, IndexClassifications) {
  auto r = run({"index", "--model", "fdsw2", "--kappa", "2", "--bond", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classification  U"), std::string::npos) << r.out;
  r = run({"index", "--model", "fdsw2", "--kappa", "0.5", "--bond", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classification  S"), std::string::npos);
  r = run({"index", "--model", "fdsw2", "--kappa", "1", "--bond", "0.333333333"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("BondOneThird"), std::string::npos);
  EXPECT_NE(r.out.find("Inconclusive"), std::string::npos);
}

TEST(Cli, GlobalFlagsAfterSubcommand) {
  auto a = run({"--model", "fdch", "--bond", "0.5", "index", "--kappa", "1"});
  auto b = run({"index", "--kappa", "1", "--model", "fdch", "--bond", "0.5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonRoundTrip) {
  for (const char* model : {"whitham", "fdch", "fdsw1", "fdsw2"}) {
    for (const char* k : {"0.3", "1.7", "4"}) {
      const auto r = run({"index", "--model", model, "--kappa", k, "--bond", "0.7", "--format", "json"});
      ASSERT_EQ(r.code, 0) << r.err;
      const auto j = json::parse(r.out);
      const auto rep = mistab::index(mistab::parse_model(j.at("model").get<std::string>()),
                                     j.at("kappa").get<double>(), j.at("bond").get<double>());
      const double d = j.at("delta").get<double>();
      EXPECT_NEAR(d, *rep.delta, 1e-12 * std::abs(*rep.delta));
      EXPECT_EQ(j.at("classification").get<std::string>(),
                std::string(mistab::to_string(rep.classification())));
    }
  }
}

TEST(Cli, CriticalAndLimit) {
  auto r = run({"critical", "--model", "whitham", "--bond", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out).at("kappa_c").get<double>(), 1.146, 0.002);

  r = run({"critical", "--model", "fdsw1", "--limit", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "Converged");
  EXPECT_NEAR(j.at("estimate").get<double>(), 1.054, 0.01);

  r = run({"critical", "--model", "fdsw2", "--limit"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict Divergent"), std::string::npos) << r.out;

  r = run({"critical", "--model", "fdch", "--limit", "--bonds", "1,10,100,1000", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("bond,kappa_c_sqrtT\n", 0), 0u);

  r = run({"critical", "--model", "fdsw2", "--bond", "0.3333333333333333"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, DiagramFiles) {
  const auto dir = temp_dir();
  const auto grid = dir / "fdsw2.csv";
  const auto r = run({"diagram", "--model", "fdsw2", "--out", grid.string(), "--nx", "30", "--ny",
                      "20", "--slopes", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(grid);
  EXPECT_EQ(text.rfind("kappa,kappa_sqrtT,bond,label\n", 0), 0u);
  EXPECT_NE(text.find("\n2,0,0,U\n"), std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::size_t rows = 0;
  for (char ch : text) rows += ch == '\n';
  EXPECT_EQ(rows, 601u);

  const auto curves = slurp(dir / "fdsw2_curves.csv");
  EXPECT_EQ(curves.rfind("mechanism,kappa,kappa_sqrtT\n", 0), 0u);
  std::istringstream in(curves);
  std::string line;
  bool found = false;
  while (std::getline(in, line)) {
    if (line.rfind("R4,", 0) == 0 && line.size() > 2 && line.substr(line.rfind(',') + 1) == "0") {
      found = true;
      const double k = std::stod(line.substr(3, line.rfind(',') - 3));
      EXPECT_NEAR(k, 1.008, 0.002);
    }
  }
  EXPECT_TRUE(found);
  std::filesystem::remove_all(dir);
}

TEST(Cli, DiagramIsDeterministic) {
  const auto dir = temp_dir();
  std::vector<std::string> base{"diagram", "--model", "fdsw1", "--nx", "40", "--ny", "40",
                                "--slopes", "60", "--out"};
  auto a = base, b = base;
  a.push_back((dir / "a.csv").string());
  b.push_back((dir / "b.csv").string());
  b.insert(b.end(), {"--threads", "3"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(slurp(dir / "a_curves.csv"), slurp(dir / "b_curves.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"intervals", "--model", "fdsw2", "--bond", "0.2"};
  EXPECT_EQ(run(args).out, run(args).out);
  const auto iv = run(args).out;
  EXPECT_EQ(iv.rfind("lo,hi,label\n", 0), 0u);
}

TEST(Cli, HillVerdicts) {
  auto r = run({"hill", "--xi", "0.01", "--amplitude", "0.01", "--kappa", "2", "--bond", "0",
                "--modes", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("AGREES"), std::string::npos);
  EXPECT_EQ(r.out.find("DISAGREES"), std::string::npos);

  r = run({"hill", "--xi", "0.01", "--amplitude", "0", "--kappa", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_LT(j.at("growth_rate").get<double>(), 1e-10);
  EXPECT_EQ(j.at("verdict"), "AGREES");

  r = run({"hill", "--xi", "0.01", "--amplitude", "0.01", "--kappa", "0.5", "--format", "json"});
  j = json::parse(r.out);
  EXPECT_LE(j.at("growth_rate").get<double>(), 1e-8);
  EXPECT_EQ(j.at("verdict"), "AGREES");

  EXPECT_EQ(run({"hill", "--model", "whitham", "--kappa", "1"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"index", "--kappa", "-1"}).code, 2);
  EXPECT_EQ(run({"index", "--kappa", "1", "--bond", "-0.5"}).code, 2);
  EXPECT_EQ(run({"index", "--kappa", "abc"}).code, 2);
  EXPECT_EQ(run({"index", "--model", "kdv", "--kappa", "1"}).code, 2);
  EXPECT_EQ(run({"index", "--kappa", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"diagram", "--nx", "5", "--ny", "5"}).code, 2);
  const auto r = run({"index", "--kappa", "-1"});
  EXPECT_NE(r.err.find("kappa"), std::string::npos);
  EXPECT_EQ(run({"index", "--kappa", "1", "--out", "/nonexistent_dir/x/y.txt"}).code, 3);
  EXPECT_EQ(run({"diagram", "--nx", "5", "--ny", "5", "--out", "/nonexistent_dir/g.csv"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}
