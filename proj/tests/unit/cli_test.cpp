#include "prorata/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prorata/table.hpp"

namespace prorata::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Table parse(const std::string& csv) {
  std::istringstream in(csv);
  return Table::read_csv(in);
}

double cell(const Table& t, std::size_t row, const std::string& column) {
  return parse_number(t.rows().at(row).at(t.column_index(column)));
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("prorata_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

 private:
  fs::path dir_;
};

TEST(Cli, EquilibriumPowerTwoPlayers) {
  const Result r = call({"equilibrium", "--family", "power", "--beta", "0.5", "--gamma", "0.05", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_DOUBLE_EQ(cell(t, 0, "q"), 225.0);
  EXPECT_DOUBLE_EQ(cell(t, 0, "per_player"), 112.5);
  EXPECT_EQ(t.rows()[0][t.column_index("method")], "closed-form-power");
}

TEST(Cli, EquilibriumNumericPath) {
  const Result r = call({"equilibrium", "--family", "cfmm", "--n", "1", "2", "--numeric"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_NEAR(cell(t, 0, "q"), 22.713085467545342, 1e-8);
  EXPECT_EQ(t.rows()[1][t.column_index("method")], "golden-section");
}

TEST(Cli, PoaSinglePlayer) {
  const Result r = call({"poa", "--family", "power", "--beta", "0.5", "--gamma", "0.05", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(t.columns(), (std::vector<std::string>{"n", "eq_payoff", "fair_payoff", "poa"}));
  EXPECT_NEAR(cell(t, 0, "poa"), 1.0, 1e-12);
}

TEST(Cli, BestResponseWithBudget) {
  const Result r = call({"bestresponse", "--y", "10", "--budget", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(cell(t, 0, "x"), 5.0);
  EXPECT_EQ(t.rows()[0][t.column_index("at_boundary")], "budget");
}

TEST(Cli, SimulateTraceSchema) {
  const Result r = call({"simulate", "--family", "power", "--n", "3", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(t.columns(),
            (std::vector<std::string>{"trial", "iteration", "player", "strategy", "payoff"}));
  ASSERT_GE(t.rows().size(), 6u);
  EXPECT_EQ(t.rows().size() % 3, 0u);
  const std::size_t last = t.rows().size() - 1;
  const double q = 2.5 / 3.0 / 0.05;  // ((beta + n - 1) / (n gamma))^2
  EXPECT_NEAR(cell(t, last, "strategy"), q * q / 3.0, 0.1);
}

TEST(Cli, BatchClearing) {
  const Result r = call({"batch", "--deltas", "10", "-4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(t.columns(), (std::vector<std::string>{"trader_id", "delta", "residual", "received_b"}));
  EXPECT_DOUBLE_EQ(cell(t, 0, "residual"), 6.0);
  EXPECT_EQ(cell(t, 1, "residual"), 0.0);
  EXPECT_EQ(cell(t, 1, "received_b"), 0.0);
}

TEST(Cli, BatchArbitrage) {
  const Result r = call({"batch", "--arbitrage"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(cell(parse(r.out), 0, "t_star"), 22.713085467545342, 1e-8);
}

TEST(Cli, VerifyFlagsLinearStart) {
  const Result good = call({"verify", "--family", "power", "--condition", "chord", "linear-segment"});
  ASSERT_EQ(good.code, 0) << good.err;
  const Table g = parse(good.out);
  EXPECT_EQ(g.rows()[0][1], "true");
  EXPECT_EQ(g.rows()[1][1], "false");
}

TEST(Cli, ErrorsAreSingleLineWithExitCodes) {
  Result r = call({"nonsense"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: config: ", 0), 0u) << r.err;

  r = call({"equilibrium", "--n", "2", "--bogus", "1"});
  EXPECT_EQ(r.code, 2);

  r = call({"equilibrium", "--family", "cfmm", "--c", "2", "--n", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.err.rfind("error: no_equilibrium: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

  r = call({"batch", "--deltas", "1", "-3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: non_positive_net_demand: ", 0), 0u) << r.err;

  r = call({"equilibrium", "--family", "table", "--n", "2"});
  EXPECT_EQ(r.code, 2);

  r = call({"equilibrium", "--family", "power", "--beta", "1.5", "--n", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: domain_error: ", 0), 0u) << r.err;

  r = call({"reproduce", "fig-unknown"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, HelpExitsCleanly) {
  const Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reproduce"), std::string::npos);
}

TEST(Cli, PrettyFormat) {
  const Result r = call({"poa", "--family", "power", "--n", "1", "2", "--format", "table"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("---"), std::string::npos);
}

TEST_F(TempDir, TableFamilyFromFile) {
  write("f.csv", "t,f\n0,0\n3,3\n6,3\n");
  const Result r = call({"verify", "--family", "table", "--table", path("f.csv"), "--condition",
                         "chord", "--condition", "rosen"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(t.rows()[0][t.column_index("holds")], "false");
  EXPECT_EQ(cell(t, 1, "value"), 0.0);

  const Result eq = call({"equilibrium", "--family", "table", "--table", path("f.csv"), "--n", "2"});
  EXPECT_EQ(eq.code, 3) << eq.err;
}

TEST_F(TempDir, ConfigFileWithOverrides) {
  write("cfg.json", R"({"family": {"kind": "power", "beta": 0.5, "gamma": 0.05}, "n": [2]})");
  Result r = call({"equilibrium", "--config", path("cfg.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(cell(parse(r.out), 0, "q"), 225.0);

  r = call({"equilibrium", "--config", path("cfg.json"), "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(cell(parse(r.out), 0, "q"), 100.0);

  write("sections.json", R"({"poa": {"n": 1}, "equilibrium": {"n": 2, "family": "power"}})");
  r = call({"equilibrium", "--config", path("sections.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(cell(parse(r.out), 0, "q"), 225.0);

  write("bad.json", R"({"n": 2, "colour": "blue"})");
  r = call({"equilibrium", "--config", path("bad.json")});
  EXPECT_EQ(r.code, 2);

  write("broken.json", "{n: 2");
  r = call({"equilibrium", "--config", path("broken.json")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(TempDir, ReproduceScenarioOneSchemaAndDeterminism) {
  const std::vector<std::string> args{"reproduce", "fig-scenario1", "--family", "cfmm", "--trials",
                                      "5", "--seed", "7", "--n-max", "4", "--output",
                                      path("a.csv"), "--summary-output", path("s.csv")};
  ASSERT_EQ(call(args).code, 0);
  std::vector<std::string> again = args;
  again[11] = path("b.csv");
  again[13] = path("t.csv");
  ASSERT_EQ(call(again).code, 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(read("s.csv"), read("t.csv"));

  std::istringstream in(read("a.csv"));
  const Table t = Table::read_csv(in);
  EXPECT_EQ(t.columns(), (std::vector<std::string>{"n", "trial", "iterations", "converged"}));
  EXPECT_EQ(t.rows().size(), 15u);
  std::istringstream sin(read("s.csv"));
  const Table s = Table::read_csv(sin);
  EXPECT_EQ(s.rows().size(), 3u);
  EXPECT_EQ(s.column_index("mean_iterations"), 1u);
}

TEST(Cli, ReproducePoaCurve) {
  const Result r = call({"reproduce", "poa-curve", "--family", "power"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  ASSERT_EQ(t.rows().size(), 50u);
  for (std::size_t k = 0; k < 50; ++k) {
    const double n = static_cast<double>(k + 1);
    EXPECT_NEAR(cell(t, k, "poa"), n * (0.5 * n / (n - 0.5)), 1e-8 * n);
  }
}

TEST_F(TempDir, ReproduceDeltaSweep) {
  const Result r = call({"reproduce", "scenario2-delta", "--family", "power", "--n", "10",
                         "--trials", "20", "--summary-output", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(read("s.csv"));
  const Table s = Table::read_csv(in);
  ASSERT_EQ(s.rows().size(), 5u);
  for (std::size_t k = 1; k < 5; ++k) {
    EXPECT_LE(cell(s, k, "mean_iterations"), cell(s, k - 1, "mean_iterations"));
  }
  EXPECT_EQ(parse(r.out).columns()[1], "delta");
}

TEST(Cli, ReproduceWhale) {
  const Result r = call({"reproduce", "whale", "--family", "cfmm", "--max-fish", "3", "--trials", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  ASSERT_EQ(t.rows().size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_GT(cell(t, k, "pct_strategy_increase"), 0.0);
    EXPECT_GT(cell(t, k, "pct_profit_increase"), 0.0);
  }
}

TEST(Cli, StudyRowsReparse) {
  const Result r = call({"study", "--family", "power", "--n", "2", "3", "--trials", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse(r.out);
  EXPECT_EQ(t.rows().size(), 8u);
  for (std::size_t k = 0; k < t.rows().size(); ++k) EXPECT_EQ(t.rows()[k][3], "true");
}

}  // namespace
}  // namespace prorata::cli
