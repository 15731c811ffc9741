#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "synad/csv.h"
#include "synad/errors.h"
#include "synad/experiments.h"
#include "synad/mixture.h"
#include "synad/quadrature.h"
#include "synad/scenarios.h"
#include "test_util.h"

namespace synad {
namespace {

// Small network and short schedule so experiment plumbing runs in seconds.
TrainConfig quick_config() {
  TrainConfig c = theory_train_config();
  c.hidden_widths = {8, 8};
  c.max_epochs = 15;
  c.patience = 5;
  c.learning_rate = 1e-2;
  return c;
}

double at(const MixtureProblem& p, double x) {
  return regression_function(p, std::span<const double>(&x, 1));
}

TEST(Figure2Test, ParseCase) {
  EXPECT_EQ(parse_figure2_case("false-negative"), Figure2Case::kFalseNegative);
  EXPECT_EQ(parse_figure2_case("zero-margin"), Figure2Case::kZeroMargin);
  EXPECT_THROW(parse_figure2_case("other"), Error);
}

TEST(Figure2Test, ZeroMarginWithoutSyntheticIsPiecewiseConstant) {
  const MixtureProblem p = scenario_figure2(Figure2Case::kZeroMargin, 0.5, 1.0);
  for (double x : {0.01, 0.2, 0.49, 0.4999})
    EXPECT_DOUBLE_EQ(at(p, x), -1.0) << x;
  for (double x : {0.5001, 0.51, 0.8, 0.99})
    EXPECT_DOUBLE_EQ(at(p, x), 1.0) << x;
}

TEST(Figure2Test, ZeroMarginWithSyntheticIsContinuous) {
  const double s = 0.5, s_tilde = 0.5;
  const MixtureProblem p = scenario_figure2(Figure2Case::kZeroMargin, s, s_tilde);
  const Vector x = midpoint_grid(100000);
  const double dx = 1e-5;
  const double lipschitz = example1_lipschitz(s, s_tilde);
  double max_jump = 0.0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    max_jump = std::max(max_jump, std::abs(at(p, x[i]) - at(p, x[i - 1])));
  EXPECT_LE(max_jump, lipschitz * dx);
  EXPECT_GT(max_jump, 0.0);
}

TEST(Figure2Test, FalseNegativeRegionFlaggedOnlyWithSynthetic) {
  const double s = 0.5;
  for (double s_tilde : {0.0, 0.3, 0.9}) {
    const MixtureProblem p = scenario_figure2(Figure2Case::kFalseNegative, s, s_tilde);
    const LevelSetSpec spec = LevelSetSpec::for_problem(p);
    for (double x : {0.01, 0.3, 0.7, 0.9, 0.99}) {
      EXPECT_GE(p.h2(std::span<const double>(&x, 1)), 1.0 - s_tilde - 1e-15);
    }
    for (double x : {0.7, 0.8, 0.95})
      EXPECT_FALSE(level_set_indicator(p, spec, std::span<const double>(&x, 1)))
          << s_tilde << " " << x;
  }
  // Known anomalies alone are rarer still in the low-density region, which
  // therefore looks normal.
  const MixtureProblem p = scenario_figure2(Figure2Case::kFalseNegative, s, 1.0);
  const LevelSetSpec spec = LevelSetSpec::for_problem(p);
  for (double x : {0.7, 0.8, 0.95})
    EXPECT_TRUE(level_set_indicator(p, spec, std::span<const double>(&x, 1))) << x;
}

TEST(Figure2Test, FalseNegativeDensitiesNormalized) {
  const MixtureProblem p = scenario_figure2(Figure2Case::kFalseNegative, 0.5, 0.5);
  EXPECT_TRUE(check_density(p.h1(), QuadratureSpec::grid(100000)).normalized);
  EXPECT_TRUE(check_density(p.h_minus(), QuadratureSpec::grid(100000)).normalized);
  EXPECT_NEAR(p.h1()(0.8), 0.1 * p.h1()(0.3) / 1.5754, 1e-3);
}

TEST(PiecewiseLinearTest, NormalizesAndInterpolates) {
  const DensityModel d = normalized_piecewise_linear({0.0, 0.5, 1.0}, {1.0, 3.0, 1.0});
  // Unnormalized integral is 2, so the peak becomes 1.5.
  EXPECT_NEAR(d(0.5), 1.5, 1e-12);
  EXPECT_NEAR(d(0.25), 1.0, 1e-12);
  EXPECT_NEAR(check_density(d, QuadratureSpec::grid(10000)).integral, 1.0, 1e-6);
}

TEST(UnseenAnomalyScenarioTest, CountsAndSubtypes) {
  UnseenAnomalyScenario sc;
  const ScenarioData data = make_unseen_anomaly_data(sc, 3);
  EXPECT_EQ(data.train.count(ClassTag::kNormal), 600u);
  EXPECT_EQ(data.train.count(ClassTag::kKnownAnomaly), 60u);
  EXPECT_EQ(data.test.rows(), 800);
  EXPECT_EQ(std::count(data.test.subtypes.begin(), data.test.subtypes.end(), "unknown"), 100);
  EXPECT_EQ(std::count(data.test.subtypes.begin(), data.test.subtypes.end(), "known"), 100);
  for (Eigen::Index i = 0; i < data.test.rows(); ++i) {
    if (data.test.subtypes[static_cast<std::size_t>(i)] != "unknown") continue;
    EXPECT_GE(data.test.features(i, 0), 0.15);
    EXPECT_LE(data.test.features(i, 0), 0.45);
    EXPECT_GE(data.test.features(i, 1), 0.7);
    EXPECT_LE(data.test.features(i, 1), 0.95);
  }
  EXPECT_TRUE((data.train.features.array() >= 0.0).all());
  EXPECT_TRUE((data.train.features.array() <= 1.0).all());
}

TEST(UnseenAnomalyScenarioTest, Deterministic) {
  const UnseenAnomalyScenario sc;
  EXPECT_EQ(make_unseen_anomaly_data(sc, 5).test.features,
            make_unseen_anomaly_data(sc, 5).test.features);
  EXPECT_NE(make_unseen_anomaly_data(sc, 5).train.features,
            make_unseen_anomaly_data(sc, 6).train.features);
  UnseenAnomalyScenario bad;
  bad.n_normal = 0;
  EXPECT_THROW(make_unseen_anomaly_data(bad, 0), InvalidParameterError);
}

TEST(HelpersTest, MedianAndRateExponent) {
  EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median({}), Error);
  EXPECT_DOUBLE_EQ(rate_exponent(1.0, 1, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(rate_exponent(2.0, 3, 0.0), 2.0 / 7.0);
}

TEST(ExperimentGridTest, Validation) {
  ExperimentGrid grid;
  EXPECT_NO_THROW(grid.validate());
  grid.sizes = {5, 100};
  EXPECT_THROW(grid.validate(), ConfigurationError);
  grid.sizes = {100, 100};
  EXPECT_THROW(grid.validate(), ConfigurationError);
  grid.sizes = {100, 200};
  grid.seeds = {0, 1};
  EXPECT_THROW(grid.validate(), ConfigurationError);
  grid.seeds = {0, 1, 2};
  grid.scenario = "example3";
  EXPECT_THROW(grid.validate(), ConfigurationError);
  grid.scenario = "example2";
  grid.dimension = 1;
  EXPECT_THROW(grid.validate(), ConfigurationError);
}

ExperimentGrid quick_grid() {
  ExperimentGrid grid;
  grid.sizes = {20, 80};
  grid.seeds = {0, 1, 2};
  grid.model = quick_config();
  grid.quadrature = QuadratureSpec::grid(2000);
  grid.bootstrap_replicates = 50;
  return grid;
}

TEST(ConvergenceExperimentTest, ReproducibleAndSummarized) {
  const ExperimentGrid grid = quick_grid();
  const ConvergenceResult a = convergence_experiment(grid);
  const ConvergenceResult b = convergence_experiment(grid);
  ASSERT_EQ(a.runs.size(), 6u);
  ASSERT_EQ(a.rows.size(), 2u);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].excess, b.runs[i].excess);
    EXPECT_EQ(a.runs[i].s_error, b.runs[i].s_error);
    EXPECT_GE(a.runs[i].excess, -1e-12);
  }
  EXPECT_EQ(a.rate_slope, b.rate_slope);
  EXPECT_LE(a.rate_ci_low, a.rate_ci_high);
  for (const auto& row : a.rows) {
    EXPECT_EQ(row.runs + row.failures, 3);
    std::vector<double> excess;
    for (const auto& run : a.runs)
      if (run.n == row.n && !run.failed) excess.push_back(run.excess);
    EXPECT_DOUBLE_EQ(row.median_excess, median(excess));
  }
  std::ostringstream summary, runs;
  write_convergence_csv(summary, runs, a);
  std::istringstream in(runs.str());
  EXPECT_EQ(read_csv(in).rows.size(), 6u);
}

TEST(ConvergenceExperimentTest, Example2Runs) {
  ExperimentGrid grid = quick_grid();
  grid.scenario = "example2";
  grid.dimension = 2;
  grid.quadrature = QuadratureSpec::grid(100);
  const ConvergenceResult r = convergence_experiment(grid);
  EXPECT_EQ(r.rows.size(), 2u);
  EXPECT_GT(r.bayes_risk, 0.0);
}

TEST(DiscontinuityDemoTest, LowerBoundsTightenWithResolution) {
  DiscontinuityOptions options;
  options.resolutions = {100, 1000, 10000};
  options.models = {quick_config()};
  options.seeds = {0, 1};
  options.samples = 200;
  options.contrast_samples = 200;
  options.contrast_model = quick_config();
  options.contrast_runs = 1;
  const auto results = discontinuity_demo(options);
  ASSERT_EQ(results.size(), 2u);
  for (const auto& r : results) {
    ASSERT_FALSE(r.failed) << r.message;
    ASSERT_EQ(r.sup_errors.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(r.sup_errors[i], r.lower_bounds[i] - 1e-12);
      if (i > 0) {
        EXPECT_GE(r.lower_bounds[i], r.lower_bounds[i - 1] - 1e-12);
      }
    }
    EXPECT_GE(r.sup_errors.back(), 0.99);
  }
  EXPECT_FALSE(std::isnan(results[0].contrast_sup_error));
  EXPECT_TRUE(std::isnan(results[1].contrast_sup_error));

  std::ostringstream out;
  write_discontinuity_csv(out, options, results);
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_FALSE(t.rows[0][5].empty());
  EXPECT_TRUE(t.rows[5][5].empty());
}

TEST(DiscontinuityDemoTest, RejectsBadOptions) {
  DiscontinuityOptions options;
  EXPECT_THROW(discontinuity_demo(options), ConfigurationError);
  options.models = {quick_config()};
  options.samples = 5;
  EXPECT_THROW(discontinuity_demo(options), ConfigurationError);
}

TEST(BoundSuiteTest, AllChecksHold) {
  BoundSuiteOptions options;
  options.random_models = 10;
  options.trained_models = 1;
  options.samples = 200;
  options.grid_points = 10000;
  options.trained = quick_config();
  const BoundSuiteResult r = verify_bound_suite(options);
  EXPECT_EQ(r.random.size(), 10u);
  EXPECT_EQ(r.trained.size(), 1u);
  EXPECT_EQ(r.total, 11);
  EXPECT_EQ(r.holds, r.total);
  std::ostringstream out;
  write_bound_csv(out, r);
  std::istringstream in(out.str());
  EXPECT_EQ(read_csv(in).rows.size(), 11u);
}

TEST(AblationGridTest, MultiplierZeroMatchesPlainClassifier) {
  UnseenAnomalyScenario sc;
  sc.n_normal = 150;
  sc.n_known = 20;
  sc.n_test_normal = 100;
  sc.n_test_known = 20;
  sc.n_test_unknown = 20;
  const ScenarioData data = make_unseen_anomaly_data(sc, 0);
  AblationOptions options;
  options.widths = {8};
  options.depths = {1, 2};
  options.multipliers = {0.0, 1.0};
  options.seeds = {0, 1};
  options.base = quick_config();
  const AblationResult r = ablation_grid(data.train, data.test, options);
  EXPECT_EQ(r.cells.size(), 8u);
  EXPECT_EQ(r.vc_cells.size(), 4u);
  EXPECT_TRUE(r.multiplier_zero_matches_vc);
  // Two subtypes for each of (VC, n'=0r, n'=1r) per depth.
  EXPECT_EQ(r.summary.size(), 12u);
  for (const auto& row : r.summary) {
    EXPECT_GE(row.mean, 0.0);
    EXPECT_LE(row.mean, 1.0);
    EXPECT_EQ(row.runs, 2);
  }
  std::ostringstream table, cells;
  write_ablation_csv(table, cells, r);
  std::istringstream in(table.str());
  EXPECT_EQ(read_csv(in).rows.size(), 12u);

  options.multipliers = {-1.0};
  EXPECT_THROW(ablation_grid(data.train, data.test, options), ConfigurationError);
}

TEST(VcComparisonTest, ProducesOneRowPerSeed) {
  VcComparisonOptions options;
  options.scenario.n_normal = 150;
  options.scenario.n_known = 20;
  options.model = quick_config();
  options.seeds = {0, 1};
  const auto rows = vc_comparison(options);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_GT(r.unknown_baseline, 0.0);
    EXPECT_LE(r.sa_unknown, 1.0);
  }
  std::ostringstream out;
  write_vc_comparison_csv(out, rows);
  std::istringstream in(out.str());
  EXPECT_EQ(read_csv(in).rows.size(), 2u);
  options.multiplier = 0.0;
  EXPECT_THROW(vc_comparison(options), ConfigurationError);
}

}  // namespace
}  // namespace synad
