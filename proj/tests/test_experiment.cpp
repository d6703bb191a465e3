// Copyright 2026 The ctcdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ctcdisc/experiment.hpp"
#include "ctcdisc/markov.hpp"

using namespace ctcdisc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ctcdisc_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

int exit_code_of(const std::string& yaml, const std::vector<std::string>& overrides = {}) {
  try {
    run_experiment(parse_config(yaml, overrides), std::filesystem::temp_directory_path() / "ctcdisc_rc");
    return 0;
  } catch (const std::exception& e) {
    return exit_code_for(e);
  }
}

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("1"), cplx(1, 0));
  EXPECT_EQ(parse_complex("-0.5i"), cplx(0, -0.5));
  EXPECT_EQ(parse_complex("0.6-0.8i"), cplx(0.6, -0.8));
  EXPECT_EQ(parse_complex(" 1e-3 + 2e-1i "), cplx(1e-3, 0.2));
  EXPECT_EQ(parse_complex("2.5E+2-1e-2i"), cplx(250, -0.01));
  EXPECT_EQ(parse_complex("i"), cplx(0, 1));
  EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
  EXPECT_EQ(parse_complex("+3"), cplx(3, 0));
  EXPECT_THROW(parse_complex("abc"), ConfigError);
  EXPECT_THROW(parse_complex(""), ConfigError);
  EXPECT_THROW(parse_complex("1+2j"), ConfigError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::numbers::ln2), "0.69314718055994529");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(Config, DefaultsAndOverrides) {
  const auto cfg = parse_config("problem: {kind: bb84}\n", {"n=7", "omega.basis=2", "n_grid=[1, 3, 5]"});
  EXPECT_EQ(cfg.problem_kind, "bb84");
  EXPECT_EQ(cfg.mode, Mode::Exact);
  EXPECT_EQ(cfg.n, 7u);
  EXPECT_EQ(cfg.omega.kind, OmegaSpec::Kind::Basis);
  EXPECT_EQ(cfg.omega.index, 2u);
  EXPECT_EQ(cfg.n_grid, (std::vector<unsigned>{1, 3, 5}));
  EXPECT_EQ(cfg.seed, 1u);
}

TEST(Config, GridRange) {
  const auto cfg = parse_config("problem: {kind: bb84}\nn_grid: {from: 2, to: 10, step: 4}\n");
  EXPECT_EQ(cfg.n_grid, (std::vector<unsigned>{2, 6, 10}));
  EXPECT_THROW(parse_config("problem: {kind: bb84}\nn_grid: [3, 2]\n"), ConfigError);
}

TEST(Config, AmplitudesAndBloch) {
  const auto a = parse_config(
      "problem:\n  kind: two_state\n  states: [[\"1\", \"0\"], [\"0.6\", \"0.8i\"]]\n");
  ASSERT_EQ(a.states.size(), 2u);
  EXPECT_EQ(a.states[1][1], cplx(0, 0.8));
  const auto b = parse_config("problem:\n  kind: qubit_set\n  bloch: [[0, 0], [3.141592653589793, 0], [1.5707963267948966, 1]]\n");
  ASSERT_EQ(b.states.size(), 3u);
  EXPECT_NEAR(std::abs(b.states[1][1]), 1.0, 1e-15);
  EXPECT_NEAR(std::arg(b.states[2][1]), 1.0, 1e-15);
  // Within 1e-6 of unit norm is accepted and renormalized; further off is not.
  const auto c = parse_config("problem:\n  kind: two_state\n  states: [[\"1.0000005\", \"0\"], [\"0\", \"1\"]]\n");
  EXPECT_DOUBLE_EQ(c.states[0][0].real(), 1.0);
  EXPECT_THROW(parse_config("problem:\n  kind: two_state\n  states: [[\"1.1\", \"0\"], [\"0\", \"1\"]]\n"),
               ConfigError);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("problem: [unclosed\n"), ConfigError);
  EXPECT_THROW(parse_config("mode: exact\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84}\nmodee: exact\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84}\nmode: sideways\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: pentagon}\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84, states: [[\"1\"]]}\n"), ConfigError);
  // Exactly one problem source.
  EXPECT_THROW(parse_config("problem: {kind: qubit_set, states: [[\"1\", \"0\"]], bloch: [[0, 0]]}\n"),
               ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: qubit_set}\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84}\nmode: montecarlo\n"), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84}\n", {"novalue"}), ConfigError);
  EXPECT_THROW(parse_config("problem: {kind: bb84}\nn: -3\n"), ConfigError);
}

TEST(BuildProblem, BuiltinsRoundTripThroughTheValidator) {
  for (const char* yaml : {
           "problem: {kind: bb84}\n",
           "problem: {kind: two_state, states: [[\"1\", \"0\"], [\"0.6\", \"0.8\"]]}\n",
           "problem: {kind: qubit_set, bloch: [[0, 0], [2, 0], [2, 2], [1, 4]]}\n",
       }) {
    const auto p = build_problem(parse_config(yaml));
    EXPECT_TRUE(validate_unitary_set(p.states(), p.unitaries()).ok()) << yaml;
  }
}

TEST(BuildProblem, ExplicitMatricesAndPriors) {
  const char* yaml =
      "problem:\n"
      "  kind: explicit\n"
      "  states: [[\"0\", \"1\"], [\"1\", \"0\"]]\n"
      "  unitaries:\n"
      "    - [[\"0\", \"1\"], [\"1\", \"0\"]]\n"
      "    - [[\"0\", \"-i\"], [\"i\", \"0\"]]\n"
      "priors: [0.25, 0.75]\n"
      "omega: {diagonal: [0.5, 0.5]}\n";
  const auto p = build_problem(parse_config(yaml));
  EXPECT_EQ(p.priors(), (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(p.initial_distribution(), (RVector{0.5, 0.5}));
  EXPECT_THROW(build_problem(parse_config(yaml, {"priors=[0.5, 0.6]"})), ValidationError);
  EXPECT_THROW(build_problem(parse_config(yaml, {"priors=[1.0]"})), ConfigError);
  EXPECT_THROW(build_problem(parse_config(yaml, {"omega={basis: 5}"})), ConfigError);
  EXPECT_THROW(build_problem(parse_config(yaml, {"omega={diagonal: [0.9, 0.9]}"})), ConfigError);
}

TEST(BuildProblem, BestOmegaPicksTheLargerPrior) {
  const auto p = build_problem(parse_config(
      "problem: {kind: two_state, states: [[\"1\", \"0\"], [\"0.6\", \"0.8\"]]}\n"
      "priors: [0.1, 0.9]\nomega: best\nn: 4\n"));
  EXPECT_EQ(p.initial_distribution(), (RVector{0, 1}));
}

TEST_F(Scratch, ExactTableForTwoStatesMatchesClosedForm) {
  const auto cfg = parse_config(
      "problem: {kind: two_state, states: [[\"1\", \"0\"], [\"0.7071067811865476\", \"0.7071067811865476i\"]]}\n"
      "mode: exact\nn: 10\nbrute_force: true\noutput: t.csv\n");
  const auto out = run_experiment(cfg, dir_);
  ASSERT_EQ(out.files.size(), 1u);
  const auto rows = lines(slurp(dir_ / "t.csv"));
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], "n,p_e_exact,p_s_exact,neg_log_pe_over_n,p_e_brute");
  EXPECT_EQ(fields(rows[1])[0], "0");
  EXPECT_EQ(fields(rows[1])[3], "nan");
  for (unsigned n = 0; n <= 10; ++n) {
    const auto f = fields(rows[n + 1]);
    const double want = std::pow(0.5, n) / 2;
    EXPECT_NEAR(std::stod(f[1]), want, 1e-16 + 1e-15 * want);
    EXPECT_NEAR(std::stod(f[1]) + std::stod(f[2]), 1.0, 1e-13);
    EXPECT_NEAR(std::stod(f[4]), want, 1e-15);
    if (n > 0) EXPECT_NEAR(std::stod(f[3]), -std::log(want) / n, 1e-12);
  }
  EXPECT_EQ(out.summary.rfind("mode=exact rows=11 n_max=10 p_e=", 0), 0u);
}

TEST_F(Scratch, BB84ExactTwentyRowsNormalized) {
  const auto cfg = parse_config("problem: {kind: bb84}\nn_grid: {from: 1, to: 20}\noutput: b.csv\n");
  run_experiment(cfg, dir_);
  const auto rows = lines(slurp(dir_ / "b.csv"));
  ASSERT_EQ(rows.size(), 21u);
  double prev = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto f = fields(rows[r]);
    EXPECT_NEAR(std::stod(f[1]) + std::stod(f[2]), 1.0, 1e-13);
    const double rate = std::stod(f[3]);
    // Past the initial dip the rate climbs towards ln 2 from below.
    if (r > 3) EXPECT_GE(rate, prev);
    EXPECT_LT(rate, std::numbers::ln2);
    prev = rate;
  }
}

TEST_F(Scratch, OutputIsByteStable) {
  const char* yaml = "problem: {kind: bb84}\nn: 6\nmontecarlo: true\ntrials: 20000\nseed: 5\n";
  run_experiment(parse_config(yaml, {"output=a.csv"}), dir_);
  run_experiment(parse_config(yaml, {"output=b.csv"}), dir_);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
  EXPECT_EQ(a.find('\r'), std::string::npos);
  EXPECT_EQ(lines(a)[0], "n,p_e_exact,p_s_exact,neg_log_pe_over_n,p_e_mc,mc_stderr");
}

TEST_F(Scratch, MonteCarloModeWritesSummaryAndConfusion) {
  const auto cfg = parse_config("problem: {kind: bb84}\nmode: montecarlo\nn: 10\ntrials: 100000\nseed: 3\n");
  const auto out = run_experiment(cfg, dir_);
  ASSERT_EQ(out.files.size(), 2u);
  const auto rows = lines(slurp(out.files[0]));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "n,trials,seed,errors,empirical_p_e,std_error,exact_p_e,z_score");
  const auto f = fields(rows[1]);
  EXPECT_EQ(f[0], "10");
  EXPECT_EQ(f[1], "100000");
  EXPECT_LT(std::abs(std::stod(f[7])), 5.0);
  EXPECT_NEAR(std::stod(f[6]), exact_probabilities(make_bb84_problem(), 10).p_error, 1e-15);
  const auto conf = lines(slurp(out.files[1]));
  EXPECT_EQ(conf.size(), 17u);
  EXPECT_EQ(out.files[1].filename(), "montecarlo_confusion.csv");
}

TEST_F(Scratch, ExponentModeOnBB84) {
  const auto out = run_experiment(parse_config("problem: {kind: bb84}\nmode: exponent\n"), dir_);
  const auto rows = lines(slurp(out.files[0]));
  ASSERT_EQ(rows.size(), 2u);
  const auto f = fields(rows[1]);
  EXPECT_NEAR(std::stod(f[0]), 0.5, 1e-9);
  EXPECT_NEAR(std::stod(f[1]), std::numbers::ln2, 1e-9);
  EXPECT_NEAR(std::stod(f[4]), std::numbers::ln2, 1e-9);
  EXPECT_NEAR(std::stod(f[5]), std::numbers::ln2, 0.02 * std::numbers::ln2);
  EXPECT_LE(std::stod(f[6]), std::stod(f[5]));
  EXPECT_GE(std::stod(f[7]), std::stod(f[5]));
}

TEST_F(Scratch, ExponentModeWithOrthogonalStatesHasNoRegression) {
  const auto out = run_experiment(
      parse_config("problem: {kind: two_state, states: [[\"1\", \"0\"], [\"0\", \"1\"]]}\nmode: exponent\n"), dir_);
  const auto f = fields(lines(slurp(out.files[0]))[1]);
  EXPECT_EQ(f[5], "nan");
}

TEST_F(Scratch, FixedPointModeConverges) {
  const auto cfg = parse_config(
      "problem: {kind: qubit_set, bloch: [[0, 0], [2.0943951023931953, 0], [2.0943951023931953, 3.14159]]}\n"
      "mode: fixedpoint\nomega: mixed\ntarget: 2\ntol: 1e-12\n");
  const auto out = run_experiment(cfg, dir_);
  const auto rows = lines(slurp(out.files[0]));
  EXPECT_EQ(rows[0], "iter,residual,trace_distance_to_target");
  const auto last = fields(rows.back());
  EXPECT_LE(std::stod(last[1]), 1e-12);
  EXPECT_LT(std::stod(last[2]), 1e-10);
  EXPECT_NE(out.summary.find("converged=yes"), std::string::npos);
}

TEST(ExitCodes, PerErrorClass) {
  EXPECT_EQ(exit_code_of("problem: {kind: bb84}\nn: 2\n"), 0);
  EXPECT_EQ(exit_code_of("problem: {kind: bb84}\nmode: banana\n"), 2);
  EXPECT_EQ(exit_code_of("problem: {kind: two_state, states: [[\"0.6\", \"0.8i\"], [\"0.6\", \"0.8i\"]]}\n"), 3);
  EXPECT_EQ(exit_code_of("problem: {kind: bb84}\nn: 12\nbrute_force: true\n"), 4);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
  EXPECT_EQ(exit_code_for(DimensionError("x")), 2);
}
