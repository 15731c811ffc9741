#include "synad/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "synad/csv.h"
#include "synad/errors.h"
#include "synad/rng.h"
#include "synad/schema.h"

namespace synad {

namespace {

constexpr std::uint64_t kDrawStream = 0x44524157;        // "DRAW"
constexpr std::uint64_t kValidationStream = 0x56414C;    // "VAL"
constexpr std::uint64_t kSyntheticSalt = 0x53594E;       // "SYN"
constexpr std::uint64_t kBootstrapSalt = 0x424F4F54;     // "BOOT"

Matrix uniform_rows(Rng& rng, Eigen::Index n, int d) {
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.uniform();
  return m;
}

std::string parameter_hash(const MLPClassifier& model) {
  const Vector theta = model.parameters();
  std::string bytes(static_cast<std::size_t>(theta.size()) * sizeof(double), '\0');
  std::memcpy(bytes.data(), theta.data(), bytes.size());
  return fnv1a_hex(bytes);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom > 0 ? (n * sxy - sx * sy) / denom : std::nan("");
}

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string format_multiplier(double m) {
  std::ostringstream out;
  out << "n'=" << m << "r";
  return out.str();
}

}  // namespace

Vector score_dataset(const MLPClassifier& model, const Dataset& data) {
  Vector scores = model.anomaly_score(data.features);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const auto row = data.features.row(i);
    if (ood_flag(data.layout, std::span<const double>(row.data(), row.size())))
      scores[i] = 1.0;
  }
  return scores;
}

std::vector<int> anomaly_labels(const Dataset& data) {
  std::vector<int> labels(data.tags.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] = data.tags[i] == ClassTag::kNormal ? 0 : 1;
  return labels;
}

std::vector<SubtypeResult> evaluate_dataset(const MLPClassifier& model,
                                            const Dataset& data) {
  const Vector scores = score_dataset(model, data);
  const auto labels = anomaly_labels(data);
  return evaluate_subtypes({scores.data(), static_cast<std::size_t>(scores.size())},
                           labels, data.subtypes);
}

TrainResult train_on_dataset(const Dataset& data, const TrainConfig& config,
                             const std::optional<SyntheticConfig>& synthetic,
                             double validation_fraction) {
  const SplitResult parts = split(data, validation_fraction, config.seed);
  TrainingSets train_sets = to_training_sets(parts.train);
  TrainingSets val_sets = to_training_sets(parts.validation);
  if (synthetic) {
    train_sets.synthetic =
        sample_synthetic(data.layout, *synthetic, train_sets.normal.rows(),
                         train_sets.known.rows());
    SyntheticConfig val_config = *synthetic;
    val_config.seed = derive_seed(synthetic->seed, kValidationStream);
    val_sets.synthetic = sample_synthetic(data.layout, val_config, val_sets.normal.rows(),
                                          val_sets.known.rows());
  }
  return train(config, train_sets, val_sets);
}

TrainConfig theory_train_config() {
  TrainConfig config;
  config.hidden_widths = {32, 32};
  config.activation = ActivationSpec::leaky_relu(0.01);
  config.mapping = OutputMapping::kSigmoidProbability;
  config.loss = Loss::kLogistic;
  config.optimizer = Optimizer::kAdam;
  config.learning_rate = 3e-3;
  config.weight_decay = 1e-4;
  config.batch_size = 128;
  config.max_epochs = 500;
  config.patience = 50;
  return config;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidParameterError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double rate_exponent(double alpha, int d, double q) {
  return alpha * (q + 1.0) / (d + alpha * (q + 2.0));
}

// ---------------------------------------------------------------------------

void ExperimentGrid::validate() const {
  if (scenario != "example1" && scenario != "example2")
    throw ConfigurationError("unknown scenario '" + scenario + "'");
  if (scenario == "example2" && dimension < 2)
    throw ConfigurationError("example2 needs dimension >= 2");
  if (sizes.empty()) throw ConfigurationError("no sample sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 10) throw ConfigurationError("sample sizes must be >= 10");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw ConfigurationError("sample sizes must be strictly increasing");
  }
  if (seeds.size() < 3) throw ConfigurationError("median reporting needs >= 3 seeds");
  if (!(synthetic_ratio >= 0.0)) throw ConfigurationError("synthetic ratio must be >= 0");
  if (!(validation_ratio > 0.0)) throw ConfigurationError("validation ratio must be > 0");
  model.validate();
}

MixtureProblem ExperimentGrid::problem() const {
  return scenario == "example1" ? example1_problem(s, s_tilde)
                                : example2_problem(dimension, s, s_tilde);
}

ConvergenceResult convergence_experiment(const ExperimentGrid& grid) {
  grid.validate();
  const MixtureProblem problem = grid.problem();
  const int d = problem.dimension();
  const ProblemGrid truth(problem, grid.quadrature.value_or(QuadratureSpec::default_for(d)));
  const double rho = grid.rho > 0.0 ? grid.rho : problem.default_rho();

  ConvergenceResult result;
  result.bayes_risk = truth.bayes_risk();
  for (int n : grid.sizes) {
    for (std::uint64_t seed : grid.seeds) {
      ConvergenceRun run;
      run.n = n;
      run.seed = seed;
      const std::uint64_t cell = derive_seed(seed, static_cast<std::uint64_t>(n));
      Rng draw(cell, kDrawStream);
      const auto n_syn = static_cast<Eigen::Index>(std::llround(grid.synthetic_ratio * n));
      TrainingSets train_sets{problem.h1().sample(draw, n), problem.h_minus().sample(draw, n),
                              uniform_rows(draw, n_syn, d)};
      Rng val_draw(cell, kValidationStream);
      const auto n_val =
          std::max<Eigen::Index>(5, std::llround(grid.validation_ratio * n));
      const auto n_val_syn = static_cast<Eigen::Index>(
          std::llround(grid.synthetic_ratio * static_cast<double>(n_val)));
      TrainingSets val_sets{problem.h1().sample(val_draw, n_val),
                            problem.h_minus().sample(val_draw, n_val),
                            uniform_rows(val_draw, n_val_syn, d)};
      TrainConfig config = grid.model;
      config.seed = cell;
      config.class_weights = ClassWeights{grid.s, grid.s_tilde};
      try {
        const TrainResult trained = train(config, train_sets, val_sets);
        const Vector g = truth.evaluate(regression_scorer(trained.model));
        const RiskEstimate r = truth.risk(g);
        run.risk = r.risk;
        run.excess = r.excess;
        run.s_error = truth.symmetric_difference(g, rho);
        run.epochs = static_cast<int>(trained.history.size());
      } catch (const Error& e) {
        run.failed = true;
        run.message = e.what();
      }
      result.runs.push_back(run);
    }
  }

  std::vector<double> log_n, log_excess;
  std::vector<std::vector<double>> excess_by_size;
  for (int n : grid.sizes) {
    ConvergenceRow row;
    row.n = n;
    std::vector<double> excess, s_err;
    for (const auto& run : result.runs) {
      if (run.n != n) continue;
      ++row.runs;
      if (run.failed) {
        ++row.failures;
        continue;
      }
      excess.push_back(run.excess);
      s_err.push_back(run.s_error);
    }
    row.median_excess = excess.empty() ? std::nan("") : median(excess);
    row.median_s_error = s_err.empty() ? std::nan("") : median(s_err);
    result.rows.push_back(row);
    if (!excess.empty()) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_excess.push_back(std::log(std::max(row.median_excess, 1e-12)));
      excess_by_size.push_back(excess);
    }
  }
  result.rate_slope = log_n.size() >= 2 ? slope(log_n, log_excess) : std::nan("");
  if (log_n.size() >= 2 && grid.bootstrap_replicates > 0) {
    Rng rng(derive_seed(grid.seeds.front(), kBootstrapSalt));
    std::vector<double> slopes;
    for (int b = 0; b < grid.bootstrap_replicates; ++b) {
      std::vector<double> y;
      for (const auto& values : excess_by_size) {
        std::vector<double> resample(values.size());
        for (auto& v : resample) v = values[rng.below(values.size())];
        y.push_back(std::log(std::max(median(resample), 1e-12)));
      }
      slopes.push_back(slope(log_n, y));
    }
    result.rate_ci_low = percentile(slopes, 0.025);
    result.rate_ci_high = percentile(slopes, 0.975);
  } else {
    result.rate_ci_low = result.rate_ci_high = std::nan("");
  }
  return result;
}

void write_convergence_csv(std::ostream& summary, std::ostream& runs,
                           const ConvergenceResult& result) {
  CsvWriter s(summary);
  s.row({"n", "median_excess_risk", "median_s_error", "runs", "failures"});
  for (const auto& r : result.rows)
    s.row({std::to_string(r.n), format_double(r.median_excess),
           format_double(r.median_s_error), std::to_string(r.runs),
           std::to_string(r.failures)});
  CsvWriter w(runs);
  w.row({"n", "seed", "risk", "excess_risk", "s_error", "epochs", "failed", "message"});
  for (const auto& r : result.runs)
    w.row({std::to_string(r.n), std::to_string(r.seed), format_double(r.risk),
           format_double(r.excess), format_double(r.s_error), std::to_string(r.epochs),
           r.failed ? "1" : "0", r.message});
}

// ---------------------------------------------------------------------------

TrainConfig contrast_train_config() {
  TrainConfig config = theory_train_config();
  config.hidden_widths = {64, 64};
  config.weight_decay = 0.0;
  config.patience = 100;
  config.batch_size = 256;
  return config;
}

std::vector<DiscontinuityResult> discontinuity_demo(const DiscontinuityOptions& options) {
  if (options.models.empty()) throw ConfigurationError("no model configurations");
  if (options.resolutions.empty()) throw ConfigurationError("no grid resolutions");
  if (options.samples < 10 || options.contrast_samples < 10)
    throw ConfigurationError("need >= 10 samples per class");
  const MixtureProblem zero_margin = example1_problem(options.s, 1.0);
  const MixtureProblem contrast = example1_problem(options.s, options.contrast_s_tilde);
  std::vector<ProblemGrid> grids;
  for (auto r : options.resolutions) grids.emplace_back(zero_margin, QuadratureSpec::grid(r));
  const ProblemGrid contrast_grid(contrast,
                                  QuadratureSpec::grid(options.resolutions.back()));

  std::vector<DiscontinuityResult> results;
  for (std::size_t m = 0; m < options.models.size(); ++m) {
    for (std::uint64_t seed : options.seeds) {
      DiscontinuityResult out;
      TrainConfig config = options.models[m];
      std::ostringstream label;
      label << "model" << m << "[";
      for (std::size_t i = 0; i < config.hidden_widths.size(); ++i)
        label << (i ? "x" : "") << config.hidden_widths[i];
      label << "," << config.activation.to_string() << "]";
      out.model = label.str();
      out.seed = seed;
      config.seed = derive_seed(seed, m);
      const auto n = static_cast<Eigen::Index>(options.samples);
      const auto n_val = std::max<Eigen::Index>(5, n / 4);
      try {
        Rng draw(config.seed, kDrawStream);
        Rng val_draw(config.seed, kValidationStream);
        // Zero-margin problem: normal vs. known anomalies only.
        TrainingSets train_sets{zero_margin.h1().sample(draw, n),
                                zero_margin.h_minus().sample(draw, n), Matrix(0, 1)};
        TrainingSets val_sets{zero_margin.h1().sample(val_draw, n_val),
                              zero_margin.h_minus().sample(val_draw, n_val), Matrix(0, 1)};
        config.class_weights = ClassWeights{options.s, 1.0};
        const TrainResult plain = train(config, train_sets, val_sets);
        for (const auto& g : grids) {
          const Vector values = g.evaluate(regression_scorer(plain.model));
          out.sup_errors.push_back(g.sup_error(values));
          // Grid neighbours straddling the jump at 1/2.
          const Matrix& pts = g.points();
          Eigen::Index b = 0;
          while (b < pts.rows() && pts(b, 0) < 0.5) ++b;
          const double eps = (b > 0 && b < pts.rows())
                                 ? 0.5 * std::abs(values[b] - values[b - 1])
                                 : 1.0;
          out.lower_bounds.push_back(1.0 - eps);
        }
        if (options.contrast_runs >= 0 &&
            static_cast<int>(results.size()) >= options.contrast_runs) {
          out.contrast_sup_error = std::numeric_limits<double>::quiet_NaN();
          results.push_back(out);
          continue;
        }
        // Contrast: fresh draws plus uniform synthetic anomalies.
        TrainConfig mixed_config = options.contrast_model.value_or(config);
        mixed_config.seed = config.seed;
        mixed_config.class_weights = ClassWeights{options.s, options.contrast_s_tilde};
        const auto nc = static_cast<Eigen::Index>(options.contrast_samples);
        const auto nc_val = std::max<Eigen::Index>(5, nc / 2);
        const TrainingSets mixed_train{contrast.h1().sample(draw, nc),
                                       contrast.h_minus().sample(draw, nc),
                                       uniform_rows(draw, 2 * nc, 1)};
        const TrainingSets mixed_val{contrast.h1().sample(val_draw, nc_val),
                                     contrast.h_minus().sample(val_draw, nc_val),
                                     uniform_rows(val_draw, 2 * nc_val, 1)};
        const TrainResult mixed = train(mixed_config, mixed_train, mixed_val);
        out.contrast_sup_error =
            contrast_grid.sup_error(contrast_grid.evaluate(regression_scorer(mixed.model)));
      } catch (const Error& e) {
        out.failed = true;
        out.message = e.what();
      }
      results.push_back(out);
    }
  }
  return results;
}

void write_discontinuity_csv(std::ostream& out, const DiscontinuityOptions& options,
                             const std::vector<DiscontinuityResult>& results) {
  CsvWriter w(out);
  w.row({"model", "seed", "resolution", "sup_error", "lower_bound", "contrast_sup_error",
         "failed"});
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.sup_errors.size(); ++i)
      w.row({r.model, std::to_string(r.seed), std::to_string(options.resolutions[i]),
             format_double(r.sup_errors[i]), format_double(r.lower_bounds[i]),
             std::isnan(r.contrast_sup_error) ? "" : format_double(r.contrast_sup_error),
             "0"});
    if (r.failed) w.row({r.model, std::to_string(r.seed), "", "", "", "", "1"});
  }
}

// ---------------------------------------------------------------------------

BoundSuiteResult verify_bound_suite(const BoundSuiteOptions& options) {
  if (options.random_models < 0 || options.trained_models < 0)
    throw ConfigurationError("model counts must be >= 0");
  const MixtureProblem problem = example1_problem(options.s, options.s_tilde);
  const ProblemGrid grid(problem, QuadratureSpec::grid(options.grid_points));
  const NoiseCondition noise(options.q, options.c0);
  BoundSuiteResult result;

  Rng rng(options.seed, 0x52414E44);  // "RAND"
  for (int i = 0; i < options.random_models; ++i) {
    const int width = 2 << rng.below(4);  // 2, 4, 8 or 16
    MLPClassifier model = init_mlp({1, width, width, 1}, ActivationSpec::relu(),
                                   OutputMapping::kSigmoidProbability, rng.next_u64());
    // Random parameter scale so the suite covers flat and steep functions.
    model.set_parameters(model.parameters() * std::exp(rng.uniform(-1.0, 2.0)));
    const Vector g = grid.evaluate(regression_scorer(model));
    result.random.push_back(
        theorem1_bound_check(grid, g, options.tau, options.k, noise, options.slack));
  }

  for (int i = 0; i < options.trained_models; ++i) {
    TrainConfig config = options.trained;
    config.seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
    config.class_weights = ClassWeights{options.s, options.s_tilde};
    Rng draw(config.seed, kDrawStream);
    const auto n = static_cast<Eigen::Index>(options.samples);
    const auto n_val = std::max<Eigen::Index>(5, n / 4);
    TrainingSets train_sets{problem.h1().sample(draw, n), problem.h_minus().sample(draw, n),
                            uniform_rows(draw, 2 * n, 1)};
    TrainingSets val_sets{problem.h1().sample(draw, n_val),
                          problem.h_minus().sample(draw, n_val),
                          uniform_rows(draw, 2 * n_val, 1)};
    const TrainResult trained = train(config, train_sets, val_sets);
    const Vector g = grid.evaluate(regression_scorer(trained.model));
    result.trained.push_back(
        theorem1_bound_check(grid, g, options.tau, options.k, noise, options.slack));
  }
  for (const auto* list : {&result.random, &result.trained})
    for (const auto& c : *list) {
      ++result.total;
      if (c.holds) ++result.holds;
    }
  return result;
}

void write_bound_csv(std::ostream& out, const BoundSuiteResult& result) {
  CsvWriter w(out);
  w.row({"kind", "index", "lhs", "rhs", "sup_error", "holds"});
  auto emit = [&w](const char* kind, const std::vector<BoundCheck>& checks) {
    for (std::size_t i = 0; i < checks.size(); ++i)
      w.row({kind, std::to_string(i), format_double(checks[i].lhs),
             format_double(checks[i].rhs), format_double(checks[i].sup_error),
             checks[i].holds ? "1" : "0"});
  };
  emit("random", result.random);
  emit("trained", result.trained);
}

// ---------------------------------------------------------------------------

namespace {

AblationCell run_cell(const Dataset& train, const Dataset& test, const TrainConfig& base,
                      int width, int depth, double multiplier, std::uint64_t seed,
                      double validation_fraction, bool use_sampler) {
  AblationCell cell;
  cell.width = width;
  cell.depth = depth;
  cell.multiplier = use_sampler ? multiplier : -1.0;
  cell.seed = seed;
  TrainConfig config = base;
  config.hidden_widths.assign(static_cast<std::size_t>(depth), width);
  config.seed = seed;
  std::optional<SyntheticConfig> synthetic;
  if (use_sampler) synthetic = SyntheticConfig::times(multiplier, derive_seed(seed, kSyntheticSalt));
  try {
    const TrainResult trained = train_on_dataset(train, config, synthetic, validation_fraction);
    cell.results = evaluate_dataset(trained.model, test);
    cell.parameter_hash = parameter_hash(trained.model);
  } catch (const Error& e) {
    cell.failed = true;
    cell.message = e.what();
  }
  return cell;
}

bool same_results(const AblationCell& a, const AblationCell& b) {
  if (a.failed || b.failed) return a.failed == b.failed && a.message == b.message;
  if (a.parameter_hash != b.parameter_hash || a.results.size() != b.results.size())
    return false;
  for (std::size_t i = 0; i < a.results.size(); ++i)
    if (a.results[i].subtype != b.results[i].subtype || a.results[i].aupr != b.results[i].aupr)
      return false;
  return true;
}

void summarize(const std::vector<AblationCell>& cells, const std::string& method,
               std::vector<AblationSummaryRow>& out) {
  if (cells.empty()) return;
  std::vector<std::string> subtypes;
  for (const auto& c : cells)
    for (const auto& r : c.results)
      if (std::find(subtypes.begin(), subtypes.end(), r.subtype) == subtypes.end())
        subtypes.push_back(r.subtype);
  int failures = 0;
  for (const auto& c : cells) failures += c.failed ? 1 : 0;
  for (const auto& subtype : subtypes) {
    AblationSummaryRow row;
    row.width = cells.front().width;
    row.depth = cells.front().depth;
    row.method = method;
    row.subtype = subtype;
    row.failures = failures;
    std::vector<double> values;
    for (const auto& c : cells)
      for (const auto& r : c.results)
        if (r.subtype == subtype) {
          values.push_back(r.aupr);
          row.baseline = r.baseline;
        }
    row.runs = static_cast<int>(values.size());
    row.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double ss = 0.0;
    for (double v : values) ss += (v - row.mean) * (v - row.mean);
    row.sd = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
    out.push_back(row);
  }
}

}  // namespace

AblationResult ablation_grid(const Dataset& train, const Dataset& test,
                             const AblationOptions& options) {
  if (options.widths.empty() || options.depths.empty() || options.multipliers.empty() ||
      options.seeds.empty())
    throw ConfigurationError("ablation grid has an empty axis");
  for (double m : options.multipliers)
    if (!(m >= 0.0)) throw ConfigurationError("multipliers must be >= 0");
  AblationResult result;
  for (int width : options.widths) {
    for (int depth : options.depths) {
      if (options.vc_baseline) {
        std::vector<AblationCell> group;
        for (std::uint64_t seed : options.seeds)
          group.push_back(run_cell(train, test, options.base, width, depth, 0.0, seed,
                                   options.validation_fraction, false));
        summarize(group, "VC", result.summary);
        result.vc_cells.insert(result.vc_cells.end(), group.begin(), group.end());
      }
      for (double m : options.multipliers) {
        std::vector<AblationCell> group;
        for (std::uint64_t seed : options.seeds)
          group.push_back(run_cell(train, test, options.base, width, depth, m, seed,
                                   options.validation_fraction, true));
        summarize(group, format_multiplier(m), result.summary);
        result.cells.insert(result.cells.end(), group.begin(), group.end());
      }
    }
  }
  bool matches = options.vc_baseline;
  bool any_zero = false;
  for (const auto& cell : result.cells) {
    if (cell.multiplier != 0.0) continue;
    any_zero = true;
    const auto vc = std::find_if(result.vc_cells.begin(), result.vc_cells.end(),
                                 [&](const AblationCell& v) {
                                   return v.width == cell.width && v.depth == cell.depth &&
                                          v.seed == cell.seed;
                                 });
    if (vc == result.vc_cells.end() || !same_results(cell, *vc)) matches = false;
  }
  result.multiplier_zero_matches_vc = matches && any_zero;
  return result;
}

void write_ablation_csv(std::ostream& table, std::ostream& cells,
                        const AblationResult& result) {
  CsvWriter t(table);
  t.row({"width", "depth", "method", "subtype", "aupr_mean", "aupr_sd", "random", "runs",
         "failures"});
  for (const auto& r : result.summary)
    t.row({std::to_string(r.width), std::to_string(r.depth), r.method, r.subtype,
           format_double(r.mean), format_double(r.sd), format_double(r.baseline),
           std::to_string(r.runs), std::to_string(r.failures)});
  CsvWriter c(cells);
  c.row({"width", "depth", "method", "seed", "subtype", "aupr", "parameter_hash", "failed",
         "message"});
  auto emit = [&c](const AblationCell& cell) {
    const std::string method =
        cell.multiplier < 0 ? "VC" : format_multiplier(cell.multiplier);
    if (cell.failed) {
      c.row({std::to_string(cell.width), std::to_string(cell.depth), method,
             std::to_string(cell.seed), "", "", "", "1", cell.message});
      return;
    }
    for (const auto& r : cell.results)
      c.row({std::to_string(cell.width), std::to_string(cell.depth), method,
             std::to_string(cell.seed), r.subtype, format_double(r.aupr),
             cell.parameter_hash, "0", ""});
  };
  for (const auto& cell : result.vc_cells) emit(cell);
  for (const auto& cell : result.cells) emit(cell);
}

// ---------------------------------------------------------------------------

std::vector<VcComparisonRow> vc_comparison(const VcComparisonOptions& options) {
  if (options.seeds.empty()) throw ConfigurationError("no seeds");
  if (!(options.multiplier > 0.0)) throw ConfigurationError("multiplier must be positive");
  std::vector<VcComparisonRow> rows;
  for (std::uint64_t seed : options.seeds) {
    const ScenarioData data = make_unseen_anomaly_data(options.scenario, seed);
    TrainConfig config = options.model;
    config.seed = seed;
    const TrainResult vc =
        train_on_dataset(data.train, config, std::nullopt, options.validation_fraction);
    const TrainResult sa = train_on_dataset(
        data.train, config,
        SyntheticConfig::times(options.multiplier, derive_seed(seed, kSyntheticSalt)),
        options.validation_fraction);
    VcComparisonRow row;
    row.seed = seed;
    for (const auto& r : evaluate_dataset(vc.model, data.test)) {
      if (r.subtype == "known") row.vc_known = r.aupr;
      if (r.subtype == "unknown") {
        row.vc_unknown = r.aupr;
        row.unknown_baseline = r.baseline;
      }
    }
    for (const auto& r : evaluate_dataset(sa.model, data.test)) {
      if (r.subtype == "known") row.sa_known = r.aupr;
      if (r.subtype == "unknown") row.sa_unknown = r.aupr;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_vc_comparison_csv(std::ostream& out, const std::vector<VcComparisonRow>& rows) {
  CsvWriter w(out);
  w.row({"seed", "vc_known", "vc_unknown", "vcsa_known", "vcsa_unknown", "random_unknown"});
  for (const auto& r : rows)
    w.row({std::to_string(r.seed), format_double(r.vc_known), format_double(r.vc_unknown),
           format_double(r.sa_known), format_double(r.sa_unknown),
           format_double(r.unknown_baseline)});
}

}  // namespace synad
