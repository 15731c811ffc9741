#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "synad/aupr.h"
#include "synad/csv.h"
#include "synad/errors.h"
#include "synad/mixture.h"
#include "synad/noise.h"
#include "synad/report.h"
#include "synad/risk_metrics.h"
#include "synad/trainer.h"
#include "test_util.h"

namespace synad {
namespace {

using testing::Gen;

constexpr int A = 1;
constexpr int N = 0;

TEST(AuprTest, PerfectRanking) {
  EXPECT_DOUBLE_EQ(aupr(std::vector<double>{0.9, 0.8, 0.3, 0.1}, std::vector<int>{A, A, N, N}),
                   1.0);
}

TEST(AuprTest, InterleavedRanking) {
  // P = 1 at the first anomaly, 2/3 at the second.
  EXPECT_NEAR(aupr(std::vector<double>{0.9, 0.8, 0.4, 0.2}, std::vector<int>{A, N, A, N}),
              0.5 * 1.0 + 0.5 * 2.0 / 3.0, 1e-12);
}

TEST(AuprTest, ConstantScoresGivePrevalence) {
  std::vector<int> labels(1000, N);
  std::fill(labels.begin(), labels.begin() + 431, A);
  const std::vector<double> scores(1000, 0.5);
  EXPECT_DOUBLE_EQ(aupr(scores, labels), 0.431);
}

TEST(AuprTest, SingleClassIsUndefined) {
  EXPECT_THROW(aupr(std::vector<double>{0.1, 0.2}, std::vector<int>{N, N}),
               UndefinedMetricError);
  EXPECT_THROW(aupr(std::vector<double>{0.1, 0.2}, std::vector<int>{A, A}),
               UndefinedMetricError);
  EXPECT_THROW(auroc(std::vector<double>{0.1}, std::vector<int>{A}), UndefinedMetricError);
}

TEST(AuprTest, LengthMismatchThrows) {
  EXPECT_THROW(aupr(std::vector<double>{0.1, 0.2}, std::vector<int>{N}), Error);
}

TEST(AuprProperty, MatchesBruteForce) {
  Gen gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = gen.integer(2, 12);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    // Coarse scores so ties are common.
    for (int i = 0; i < n; ++i) {
      scores[i] = gen.integer(0, 5) / 5.0;
      labels[i] = gen.coin() ? A : N;
    }
    labels[0] = A;
    labels[1] = N;
    EXPECT_NEAR(aupr(scores, labels), testing::brute_force_ap(scores, labels), 1e-12);
  }
}

TEST(AuprProperty, InvariantUnderIncreasingTransforms) {
  Gen gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(2, 40);
    std::vector<double> scores(n), transformed(n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      scores[i] = gen.integer(-10, 10) / 4.0;
      labels[i] = gen.coin() ? A : N;
      transformed[i] = std::exp(3.0 * scores[i]) + 7.0;
    }
    labels[0] = A;
    labels[n - 1] = N;
    EXPECT_DOUBLE_EQ(aupr(scores, labels), aupr(transformed, labels));
    EXPECT_DOUBLE_EQ(auroc(scores, labels), auroc(transformed, labels));
  }
}

TEST(AuprProperty, BoundedByPrevalenceAndOne) {
  Gen gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(2, 30);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      scores[i] = gen.uniform(0.0, 1.0);
      labels[i] = gen.coin() ? A : N;
    }
    labels[0] = A;
    labels[1] = N;
    const double ap = aupr(scores, labels);
    EXPECT_GT(ap, 0.0);
    EXPECT_LE(ap, 1.0 + 1e-12);
  }
}

TEST(PrCurveTest, OnePointPerDistinctScore) {
  const std::vector<double> scores = {0.9, 0.9, 0.5, 0.1};
  const std::vector<int> labels = {A, N, A, N};
  const auto curve = pr_curve(scores, labels);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_DOUBLE_EQ(curve[0].threshold, 0.9);
  EXPECT_DOUBLE_EQ(curve[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(curve[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(curve[1].precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(curve[1].recall, 1.0);
  EXPECT_DOUBLE_EQ(curve[2].recall, 1.0);
}

TEST(AurocTest, Examples) {
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.9, 0.8, 0.3, 0.1}, std::vector<int>{A, A, N, N}),
                   1.0);
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.1, 0.2, 0.3, 0.4}, std::vector<int>{A, A, N, N}),
                   0.0);
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>(6, 0.3), std::vector<int>{A, A, N, N, N, A}),
                   0.5);
  // Pairs (A, N): (0.9, 0.8) win, (0.9, 0.2) win, (0.4, 0.8) loss, (0.4, 0.2) win.
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.9, 0.8, 0.4, 0.2}, std::vector<int>{A, N, A, N}),
                   0.75);
}

TEST(EvaluateSubtypesTest, ScoresEachSubtypeAgainstAllNormals) {
  const std::vector<double> scores = {0.1, 0.2, 0.3, 0.9, 0.15, 0.8, 0.05};
  const std::vector<int> labels = {N, N, N, A, A, A, A};
  const std::vector<std::string> subtypes = {"normal", "normal", "x", "dos", "probe", "dos",
                                             "probe"};
  const auto results = evaluate_subtypes(scores, labels, subtypes);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].subtype, "dos");
  EXPECT_EQ(results[0].normals, 3u);
  EXPECT_EQ(results[0].anomalies, 2u);
  EXPECT_DOUBLE_EQ(results[0].aupr, 1.0);
  EXPECT_DOUBLE_EQ(results[0].baseline, 0.4);
  EXPECT_EQ(results[1].subtype, "probe");
  const std::vector<double> probe_scores = {0.1, 0.2, 0.3, 0.15, 0.05};
  const std::vector<int> probe_labels = {N, N, N, A, A};
  EXPECT_DOUBLE_EQ(results[1].aupr, aupr(probe_scores, probe_labels));
  EXPECT_DOUBLE_EQ(results[1].auroc, auroc(probe_scores, probe_labels));
}

TEST(EvaluationReportTest, Json) {
  EvaluationReport report;
  report.subtypes.push_back({"dos", 0.9, 0.1, 0.95, 90, 10});
  report.config_hash = "abc";
  report.seed = 4;
  const auto doc = report.to_json();
  EXPECT_EQ(doc["config_hash"], "abc");
  EXPECT_EQ(doc["seed"], 4);
  EXPECT_EQ(doc["subtypes"][0]["subtype"], "dos");
  EXPECT_DOUBLE_EQ(doc["subtypes"][0]["aupr"].get<double>(), 0.9);
}

TEST(ReportTest, PrCurveCsv) {
  std::ostringstream out;
  write_pr_curve_csv(out, {{0.9, 1.0, 0.5}, {0.1, 0.5, 1.0}});
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"threshold", "precision", "recall"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(std::stod(t.rows[1][1]), 0.5);
}

TEST(ReportTest, SubtypeCurvesCsv) {
  std::ostringstream out;
  write_subtype_pr_curves_csv(out, std::vector<double>{0.1, 0.9, 0.8},
                              std::vector<int>{N, A, A},
                              std::vector<std::string>{"n", "a", "b"});
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.header.front(), "subtype");
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0][0], "a");
  EXPECT_EQ(t.rows[3][0], "b");
}

TEST(ReportTest, JsonFileRoundTrip) {
  testing::TempDir dir;
  const std::string path = dir.file("r.json");
  write_json_file(path, {{"x", 1}});
  EXPECT_EQ(nlohmann::json::parse(testing::read_file(path))["x"], 1);
  EXPECT_THROW(write_json_file(dir.file("missing/r.json"), {{"x", 1}}), ConfigurationError);
}

// Risk of sign(f) computed point by point, independently of ProblemGrid.
double reference_risk(const MixtureProblem& p, const std::function<double(double)>& f,
                      int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    const double h1 = p.h1()(x);
    const double h2 = p.h2(std::span<const double>(&x, 1));
    sum += f(x) >= 0.0 ? (1.0 - p.s()) * h2 : p.s() * h1;
  }
  return sum / n;
}

class RiskTest : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(RiskTest, BayesClassifierHasZeroExcess) {
  const auto [s, s_tilde] = GetParam();
  const MixtureProblem p = example1_problem(s, s_tilde);
  const ProblemGrid grid(p, QuadratureSpec::grid(20000));
  const RiskEstimate r = grid.risk(grid.regression());
  EXPECT_NEAR(r.excess, 0.0, 1e-12);
  EXPECT_NEAR(r.risk, r.bayes_risk, 1e-12);
  const auto fp = [&](double x) {
    return regression_function(p, std::span<const double>(&x, 1));
  };
  EXPECT_NEAR(r.bayes_risk, reference_risk(p, fp, 20000), 1e-12);
}

TEST_P(RiskTest, ConstantNormalClassifier) {
  const auto [s, s_tilde] = GetParam();
  const MixtureProblem p = example1_problem(s, s_tilde);
  const RiskEstimate r = misclassification_risk(
      p, pointwise_scorer([](std::span<const double>) { return 1.0; }),
      QuadratureSpec::grid(20000));
  EXPECT_NEAR(r.risk, 1.0 - s, 1e-9);
}

TEST_P(RiskTest, FlippedBayesClassifier) {
  const auto [s, s_tilde] = GetParam();
  const MixtureProblem p = example1_problem(s, s_tilde);
  const ProblemGrid grid(p, QuadratureSpec::grid(20000));
  // -f_P is never exactly zero off the tie set, so sign(-f_P) = -f_c.
  const RiskEstimate r = grid.risk(-grid.regression());
  double tie_mass = 0.0;
  for (Eigen::Index i = 0; i < grid.rule().size(); ++i)
    if (grid.regression()[i] == 0.0) tie_mass += 1.0;
  ASSERT_EQ(tie_mass, 0.0);
  EXPECT_NEAR(r.risk, 1.0 - r.bayes_risk, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Weights, RiskTest,
                         ::testing::Values(std::pair{0.5, 0.5}, std::pair{0.3, 0.8},
                                           std::pair{0.8, 0.2}, std::pair{0.6, 0.0}));

TEST(RiskProperty, NoClassifierBeatsBayes) {
  Gen gen(24);
  const MixtureProblem p = example1_problem(0.5, 0.5);
  const ProblemGrid grid(p, QuadratureSpec::grid(4000));
  for (int trial = 0; trial < 100; ++trial) {
    Vector f(grid.rule().size());
    if (trial % 2 == 0) {
      for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = gen.uniform(-1.0, 1.0);
    } else {
      const MLPClassifier net =
          init_mlp({1, 16, 1}, ActivationSpec::relu(), OutputMapping::kRaw, trial);
      f = grid.evaluate(raw_scorer(net));
    }
    const RiskEstimate r = grid.risk(f);
    EXPECT_GE(r.risk, r.bayes_risk - 1e-12);
    EXPECT_GE(r.excess, -1e-12);
    EXPECT_NEAR(r.excess, r.risk - r.bayes_risk, 1e-12);
  }
}

TEST(RiskTest, MatchesPointwiseReference) {
  const MixtureProblem p = example1_problem(0.4, 0.7);
  const auto f = [](double x) { return std::sin(17.0 * x); };
  const RiskEstimate r = misclassification_risk(
      p, pointwise_scorer([&](std::span<const double> x) { return f(x[0]); }),
      QuadratureSpec::grid(5000));
  EXPECT_NEAR(r.risk, reference_risk(p, f, 5000), 1e-12);
  EXPECT_EQ(r.risk_std_error, 0.0);
}

TEST(RiskTest, MonteCarloReportsStandardError) {
  const MixtureProblem p = example2_problem(4, 0.5, 0.5);
  const RiskEstimate r = misclassification_risk(
      p, pointwise_scorer([](std::span<const double>) { return 1.0; }),
      QuadratureSpec::monte_carlo(200000, 3));
  EXPECT_GT(r.risk_std_error, 0.0);
  EXPECT_NEAR(r.risk, 0.5, 5.0 * r.risk_std_error);
}

TEST(RiskTest, ShapeMismatchThrows) {
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(10));
  EXPECT_THROW(grid.risk(Vector::Zero(9)), ShapeError);
  EXPECT_THROW(grid.sup_error(Vector::Zero(11)), ShapeError);
}

TEST(SymmetricDifferenceTest, LevelSetIndicatorHasZeroError) {
  for (double rho : {0.5, 1.0, 2.0}) {
    const MixtureProblem p = example1_problem(0.5, 0.5);
    const LevelSetSpec spec(rho);
    const double err = symmetric_difference_error(
        p,
        pointwise_scorer([&](std::span<const double> x) {
          return level_set_indicator(p, spec, x) ? 1.0 : -1.0;
        }),
        rho, QuadratureSpec::grid(10000));
    EXPECT_EQ(err, 0.0) << rho;
  }
}

TEST(SymmetricDifferenceTest, EverythingNormalWithEmptyLevelSet) {
  const MixtureProblem p = example1_problem(0.5, 0.5);
  const double err = symmetric_difference_error(
      p, pointwise_scorer([](std::span<const double>) { return 1.0; }), 1e9,
      QuadratureSpec::grid(10000));
  EXPECT_DOUBLE_EQ(err, 1.0);
  EXPECT_THROW(symmetric_difference_error(
                   p, pointwise_scorer([](std::span<const double>) { return 1.0; }), 0.0,
                   QuadratureSpec::grid(10)),
               InvalidParameterError);
}

TEST(SymmetricDifferenceTest, HalfLineExample) {
  // s~ = 0: level set {h1 >= 1} of h1 = 4H(4x - 3) is [9/16, 15/16].
  const MixtureProblem p = example1_problem(0.5, 0.0);
  const double err = symmetric_difference_error(
      p, pointwise_scorer([](std::span<const double> x) { return x[0] >= 0.5 ? 1.0 : -1.0; }),
      1.0, QuadratureSpec::grid(16000));
  EXPECT_NEAR(err, 0.5 - 0.375, 1e-9);
}

TEST(ComparisonConstantTest, Examples) {
  EXPECT_DOUBLE_EQ(comparison_constant(1.0, 1.0), 2.0);
  EXPECT_NEAR(comparison_constant(2.0, 1.0), 0.25 * std::pow(3.0, 1.5), 1e-12);
  for (double q : {0.5, 1.0, 3.0})
    EXPECT_NEAR(comparison_constant(q, 4.0) / comparison_constant(q, 1.0),
                std::pow(4.0, 1.0 / q), 1e-12);
  EXPECT_THROW(comparison_constant(0.0, 1.0), DomainError);
  EXPECT_THROW(comparison_constant(-1.0, 1.0), DomainError);
  EXPECT_THROW(comparison_constant(1.0, 0.0), InvalidParameterError);
}

TEST(NoiseProbeTest, LargeThresholdCoversEverything) {
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(10000));
  const NoiseProbe probe = noise_exponent_probe(grid, {1.0, 2.0});
  EXPECT_NEAR(probe.probabilities[0], 1.0, 1e-9);
  EXPECT_NEAR(probe.probabilities[1], 1.0, 1e-9);
}

TEST(NoiseProbeTest, TrivialConditionAlwaysHolds) {
  for (double s_tilde : {0.0, 0.5, 1.0}) {
    const ProblemGrid grid(example1_problem(0.5, s_tilde), QuadratureSpec::grid(10000));
    const NoiseProbe probe = noise_exponent_probe(grid, default_noise_thresholds());
    EXPECT_TRUE(probe.satisfies(NoiseCondition::trivial(), 1e-9)) << s_tilde;
  }
}

TEST(NoiseProbeTest, Example1ExponentNearOne) {
  const NoiseProbe probe = noise_exponent_probe(example1_problem(0.5, 0.5),
                                                default_noise_thresholds(),
                                                QuadratureSpec::grid(100000));
  EXPECT_GE(probe.fitted_points, 2);
  EXPECT_NEAR(probe.q_hat, 1.0, 0.15);
}

TEST(NoiseProbeTest, DefaultThresholds) {
  const auto t = default_noise_thresholds();
  ASSERT_EQ(t.size(), 20u);
  EXPECT_NEAR(t.front(), 1e-3, 1e-15);
  EXPECT_NEAR(t.back(), 0.5, 1e-15);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
}

TEST(NoiseProbeTest, InvalidThresholdsThrow) {
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(100));
  EXPECT_THROW(noise_exponent_probe(grid, {0.1, 0.0}), InvalidParameterError);
  EXPECT_THROW(noise_exponent_probe(grid, {-1.0}), InvalidParameterError);
}

TEST(NoiseProbeTest, NoFitWithoutPositiveMass) {
  // Away from x = 1/2 the zero-margin f_P is +-1, so small thresholds see
  // almost no mass.
  const ProblemGrid grid(example1_problem(0.5, 1.0), QuadratureSpec::grid(1000));
  const NoiseProbe probe = noise_exponent_probe(grid, {1e-3});
  EXPECT_EQ(probe.fitted_points, 0);
  EXPECT_TRUE(std::isnan(probe.q_hat));
}

TEST(NoiseProbeTest, Csv) {
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(1000));
  std::ostringstream out;
  write_noise_probe_csv(out, noise_exponent_probe(grid, {0.1, 0.2}));
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"threshold", "probability"}));
  EXPECT_EQ(t.rows.size(), 2u);
}

TEST(BoundCheckTest, RegressionFunctionSatisfiesBound) {
  const MixtureProblem p = example1_problem(0.5, 0.5);
  const ProblemGrid grid(p, QuadratureSpec::grid(20000));
  for (int k : {1, 2, 3}) {
    const BoundCheck b =
        theorem1_bound_check(grid, grid.regression(), 0.05, k, NoiseCondition::trivial());
    EXPECT_TRUE(b.holds) << k;
    EXPECT_EQ(b.sup_error, 0.0);
    EXPECT_NEAR(b.rhs, 4.0 * 0.05 * k, 1e-12);
    EXPECT_LE(b.lhs, b.rhs + b.slack);
  }
}

TEST(BoundCheckTest, ZeroMarginContinuousModelHasLargeRhs) {
  // Any continuous f misses the jump of f_P at x = 1/2 by at least 1 on one
  // side, so the right-hand side is at least 4.
  const MixtureProblem p = example1_problem(0.5, 1.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MLPClassifier net =
        init_mlp({1, 16, 16, 1}, ActivationSpec::relu(), OutputMapping::kRaw, seed);
    const BoundCheck b = theorem1_bound_check(regression_scorer(net), p, 0.05, 1,
                                              NoiseCondition::trivial(),
                                              QuadratureSpec::grid(10000));
    EXPECT_GE(b.sup_error, 1.0 - 1e-3);
    EXPECT_GE(b.rhs, 4.0 - 1e-2);
    EXPECT_TRUE(b.holds);
  }
}

TEST(BoundCheckProperty, RandomNetworksSatisfyBound) {
  Gen gen(26);
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(10000));
  for (int trial = 0; trial < 40; ++trial) {
    const MLPClassifier net = init_mlp({1, gen.integer(4, 32), 1}, ActivationSpec::relu(),
                                       OutputMapping::kRaw, trial);
    const double tau = gen.uniform(0.01, 0.3);
    const int k = gen.integer(1, 3);
    const BoundCheck b = theorem1_bound_check(grid, grid.evaluate(regression_scorer(net)), tau,
                                              k, NoiseCondition::trivial());
    EXPECT_TRUE(b.holds) << trial;
    EXPECT_GE(b.lhs, -1e-12);
  }
}

TEST(BoundCheckTest, Json) {
  const ProblemGrid grid(example1_problem(0.5, 0.5), QuadratureSpec::grid(100));
  const auto doc =
      theorem1_bound_check(grid, grid.regression(), 0.1, 1, NoiseCondition::trivial())
          .to_json();
  for (const char* key : {"lhs", "rhs", "sup_error", "holds", "quadrature"})
    EXPECT_TRUE(doc.contains(key)) << key;
}

TEST(SpearmanTest, Examples) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(spearman(a, std::vector<double>{2, 4, 8, 16, 32}), 1.0);
  EXPECT_DOUBLE_EQ(spearman(a, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  // Average ranks for ties: b ranks (1.5, 1.5, 3, 4, 5).
  EXPECT_NEAR(spearman(a, std::vector<double>{1, 1, 2, 3, 4}), 0.9746794344808963, 1e-12);
}

TEST(QuadratureConvergence, DoublingTheGridChangesLittle) {
  const MixtureProblem p = example1_problem(0.5, 0.5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MLPClassifier net =
        init_mlp({1, 32, 1}, ActivationSpec::relu(), OutputMapping::kRaw, seed);
    const BatchScorer f = raw_scorer(net);
    const ProblemGrid coarse(p, QuadratureSpec::grid(50000));
    const ProblemGrid fine(p, QuadratureSpec::grid(100000));
    const Vector fc = coarse.evaluate(f), ff = fine.evaluate(f);
    EXPECT_LT(std::abs(coarse.risk(fc).risk - fine.risk(ff).risk), 1e-3);
    EXPECT_LT(std::abs(coarse.symmetric_difference(fc, 1.0) - fine.symmetric_difference(ff, 1.0)),
              1e-3);
  }
}

TEST(ComparisonProperty, LevelSetErrorTracksExcessRiskAlongTraining) {
  // Checkpoints every few epochs of one Example-1 training run.
  const MixtureProblem p = example1_problem(0.5, 0.5);
  Rng rng(7, 0);
  TrainingSets sets;
  sets.normal = p.h1().sample(rng, 400);
  sets.known = p.h_minus().sample(rng, 400);
  sets.synthetic = Matrix(800, 1);
  for (Eigen::Index i = 0; i < 800; ++i) sets.synthetic(i, 0) = rng.uniform();
  TrainConfig config;
  config.hidden_widths = {16};
  config.optimizer = Optimizer::kAdam;
  config.learning_rate = 1e-3;
  config.weight_decay = 0.0;
  config.max_epochs = 2;
  config.patience = 1000;
  config.class_weights = ClassWeights{0.5, 0.5};
  config.seed = 3;

  const ProblemGrid grid(p, QuadratureSpec::grid(20000));
  const NoiseProbe probe = noise_exponent_probe(grid, default_noise_thresholds());
  const double q = probe.q_hat;
  MLPClassifier model = init_mlp({1, 16, 1}, config.activation, config.mapping, config.seed);
  std::vector<double> s_errors, excess_powers;
  for (int checkpoint = 0; checkpoint < 12; ++checkpoint) {
    const Vector f = grid.evaluate(raw_scorer(model));
    const RiskEstimate r = grid.risk(f);
    s_errors.push_back(grid.symmetric_difference(f, p.default_rho()));
    excess_powers.push_back(std::pow(std::max(r.excess, 0.0), q / (q + 1.0)));
    model = train_from(config, model, sets, TrainingSets{}).model;
  }
  EXPECT_GE(spearman(s_errors, excess_powers), 0.8);
}

}  // namespace
}  // namespace synad
