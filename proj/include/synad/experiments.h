#ifndef SYNAD_EXPERIMENTS_H_
#define SYNAD_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "synad/aupr.h"
#include "synad/dataset.h"
#include "synad/mixture.h"
#include "synad/quadrature.h"
#include "synad/risk_metrics.h"
#include "synad/sampler.h"
#include "synad/scenarios.h"
#include "synad/trainer.h"

namespace synad {

// ---------------------------------------------------------------------------
// Shared helpers

// Anomaly scores in [0, 1]; rows flagged by ood_flag score 1.0 without
// running the network.
Vector score_dataset(const MLPClassifier& model, const Dataset& data);
// 1 for known/synthetic anomalies, 0 for normal rows.
std::vector<int> anomaly_labels(const Dataset& data);
std::vector<SubtypeResult> evaluate_dataset(const MLPClassifier& model,
                                            const Dataset& data);

// Splits `data` (normal + known anomalies) into train/validation with
// split(data, validation_fraction, config.seed), optionally adds synthetic
// anomalies to both parts (validation rows use a derived seed and the
// validation counts), and trains.
TrainResult train_on_dataset(const Dataset& data, const TrainConfig& config,
                             const std::optional<SyntheticConfig>& synthetic,
                             double validation_fraction);

// Training setup for the low-dimensional theory experiments: two hidden
// leaky-ReLU layers of width 32, logistic loss, Adam at 3e-3, batch 128, up
// to 500 epochs with patience 50 (small validation sets make the validation
// risk noisy, so a short patience stops too early).
TrainConfig theory_train_config();

// Median of a non-empty sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

// alpha (q + 1) / (d + alpha (q + 2)).
double rate_exponent(double alpha, int d, double q);

// ---------------------------------------------------------------------------
// Convergence of the excess risk with sample size

struct ExperimentGrid {
  std::string scenario = "example1";  // example1 | example2
  int dimension = 1;                  // used by example2
  std::vector<int> sizes = {100, 400, 1600, 6400};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  TrainConfig model = theory_train_config();
  double s = 0.5;
  double s_tilde = 0.5;
  // n' = synthetic_ratio * n; n- = n.
  double synthetic_ratio = 2.0;
  // Independent validation draws of validation_ratio * n rows per class.
  double validation_ratio = 0.5;
  // Level-set threshold for the symmetric-difference error; <= 0 uses
  // (1 - s)/s.
  double rho = 0.0;
  std::optional<QuadratureSpec> quadrature;
  int bootstrap_replicates = 1000;
  std::string output_dir;

  // Throws ConfigurationError: sizes must be strictly increasing and >= 10,
  // at least 3 seeds, known scenario.
  void validate() const;
  MixtureProblem problem() const;
};

struct ConvergenceRun {
  int n = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string message;
  double risk = 0.0;
  double excess = 0.0;
  double s_error = 0.0;
  int epochs = 0;
};

struct ConvergenceRow {
  int n = 0;
  double median_excess = 0.0;
  double median_s_error = 0.0;
  int runs = 0;
  int failures = 0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRun> runs;
  std::vector<ConvergenceRow> rows;
  double bayes_risk = 0.0;
  // Slope of log(median excess) against log(n) and its 95% percentile
  // bootstrap interval (seeds resampled within each size).
  double rate_slope = 0.0;
  double rate_ci_low = 0.0;
  double rate_ci_high = 0.0;
};

// Per (n, seed): draws n normal rows from h1, n known anomalies from
// h_minus and synthetic_ratio * n uniform rows, trains with class weights
// (s, s~), and scores sign(f) against the exact problem. A failing run is
// recorded and the experiment continues.
ConvergenceResult convergence_experiment(const ExperimentGrid& grid);

void write_convergence_csv(std::ostream& summary, std::ostream& runs,
                           const ConvergenceResult& result);

// ---------------------------------------------------------------------------
// Sup-norm error of continuous models against a discontinuous f_P

// Settings used for the synthetic-anomaly contrast run of the discontinuity
// demo: two hidden layers of width 64, no weight decay, patience 100.
TrainConfig contrast_train_config();

struct DiscontinuityOptions {
  std::vector<std::int64_t> resolutions = {1000, 10000, 100000};
  std::vector<TrainConfig> models;
  std::vector<std::uint64_t> seeds = {0};
  int samples = 2000;  // per class
  double s = 0.5;
  // Contrast problem with synthetic anomalies. Its regression function has
  // slopes up to 64 near x = 1, so it gets more rows and its own optimizer
  // settings.
  double contrast_s_tilde = 0.5;
  int contrast_samples = 10000;  // per class
  std::optional<TrainConfig> contrast_model = contrast_train_config();
  // The contrast is trained for the first `contrast_runs` (model, seed)
  // pairs only; negative means every pair.
  int contrast_runs = 1;
};

struct DiscontinuityResult {
  std::string model;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string message;
  // Per resolution, on the zero-margin problem (s~ = 1, no synthetic
  // anomalies): grid sup|g - f_P| and the certified lower bound 1 - eps,
  // eps = |g(b) - g(a)| / 2 for the grid neighbours a < 1/2 < b.
  std::vector<double> sup_errors;
  std::vector<double> lower_bounds;
  // Same seed trained with synthetic anomalies, finest grid; NaN when the
  // contrast was not run for this pair.
  double contrast_sup_error = 0.0;
};

std::vector<DiscontinuityResult> discontinuity_demo(const DiscontinuityOptions& options);

void write_discontinuity_csv(std::ostream& out, const DiscontinuityOptions& options,
                             const std::vector<DiscontinuityResult>& results);

// ---------------------------------------------------------------------------
// Approx-sign excess-risk bound on random and trained networks

struct BoundSuiteOptions {
  int random_models = 100;
  int trained_models = 5;
  double tau = 0.05;
  int k = 1;
  double q = 0.0;
  double c0 = 1.0;
  double s = 0.5;
  double s_tilde = 0.5;
  std::int64_t grid_points = 100000;
  double slack = 1e-3;
  int samples = 1000;  // training rows per class for trained models
  TrainConfig trained = theory_train_config();
  std::uint64_t seed = 0;
};

struct BoundSuiteResult {
  std::vector<BoundCheck> random;
  std::vector<BoundCheck> trained;
  int holds = 0;
  int total = 0;
};

BoundSuiteResult verify_bound_suite(const BoundSuiteOptions& options);

void write_bound_csv(std::ostream& out, const BoundSuiteResult& result);

// ---------------------------------------------------------------------------
// Width x depth x synthetic-multiplier ablation

struct AblationOptions {
  std::vector<int> widths = {300, 678, 1500};
  std::vector<int> depths = {2, 3, 8, 17};
  std::vector<double> multipliers = {0.0, 0.001, 1.0, 5.0, 20.0};
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  TrainConfig base = theory_train_config();
  double validation_fraction = 0.2;
  // Also train the plain classifier (no sampler involved) per
  // (width, depth, seed) for comparison with the multiplier-0 cells.
  bool vc_baseline = true;
};

struct AblationCell {
  int width = 0;
  int depth = 0;
  double multiplier = 0.0;  // negative marks a VC baseline cell
  std::uint64_t seed = 0;
  bool failed = false;
  std::string message;
  std::vector<SubtypeResult> results;
  std::string parameter_hash;
};

struct AblationSummaryRow {
  int width = 0;
  int depth = 0;
  std::string method;  // "VC" or "n'=<m>r"
  std::string subtype;
  double mean = 0.0;
  double sd = 0.0;
  double baseline = 0.0;
  int runs = 0;
  int failures = 0;
};

struct AblationResult {
  std::vector<AblationCell> cells;
  std::vector<AblationCell> vc_cells;
  std::vector<AblationSummaryRow> summary;
  // Every multiplier-0 cell has the same parameters and AUPRs as the VC cell
  // with matching (width, depth, seed).
  bool multiplier_zero_matches_vc = false;
};

AblationResult ablation_grid(const Dataset& train, const Dataset& test,
                             const AblationOptions& options);

void write_ablation_csv(std::ostream& table, std::ostream& cells,
                        const AblationResult& result);

// ---------------------------------------------------------------------------
// Plain classifier vs. classifier with synthetic anomalies on unseen types

struct VcComparisonOptions {
  UnseenAnomalyScenario scenario;
  TrainConfig model = theory_train_config();
  double multiplier = 1.0;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  double validation_fraction = 0.2;
};

struct VcComparisonRow {
  std::uint64_t seed = 0;
  double vc_known = 0.0, vc_unknown = 0.0;
  double sa_known = 0.0, sa_unknown = 0.0;
  double unknown_baseline = 0.0;
};

std::vector<VcComparisonRow> vc_comparison(const VcComparisonOptions& options);

void write_vc_comparison_csv(std::ostream& out, const std::vector<VcComparisonRow>& rows);

}  // namespace synad

#endif  // SYNAD_EXPERIMENTS_H_
