#include "cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "synad/architecture.h"
#include "synad/checkpoint.h"
#include "synad/csv.h"
#include "synad/errors.h"
#include "synad/experiments.h"
#include "synad/manifest.h"
#include "synad/noise.h"
#include "synad/normalizer.h"
#include "synad/report.h"
#include "synad/sampler.h"

namespace synad::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Flags mirror config-file keys: "--weight-decay" <-> "weight_decay".
class Options {
 public:
  explicit Options(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON file with default values for the flags");
  }

  void add(const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (char& c : flag)
      if (c == '_') c = '-';
    app_->add_option(flag, values_[key], help);
  }

  // Defaults < config file < flags.
  json resolve(json defaults) const {
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw ConfigurationError("cannot open config '" + config_path_ + "'");
      json file;
      try {
        file = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!file.is_object()) throw ConfigurationError("config must be a JSON object");
      for (auto it = file.begin(); it != file.end(); ++it) {
        if (values_.count(it.key()) == 0)
          throw ConfigurationError("unknown config key '" + it.key() + "'");
        defaults[it.key()] = it.value();
      }
    }
    for (const auto& [key, value] : values_) {
      std::string flag = "--" + key;
      for (char& c : flag)
        if (c == '_') c = '-';
      if (app_->get_option(flag)->count() > 0) defaults[key] = value;
    }
    return defaults;
  }

 private:
  CLI::App* app_;
  std::string config_path_;
  std::map<std::string, std::string> values_;
};

std::string get_string(const json& c, const std::string& key) {
  if (!c.contains(key) || c[key].is_null()) return "";
  return c[key].is_string() ? c[key].get<std::string>() : c[key].dump();
}

double get_double(const json& c, const std::string& key) {
  if (c.at(key).is_number()) return c[key].get<double>();
  const auto v = parse_double(c[key].get<std::string>());
  if (!v) throw ConfigurationError("'" + key + "' must be a number");
  return *v;
}

long long get_int(const json& c, const std::string& key) {
  const double v = get_double(c, key);
  if (v != std::floor(v)) throw ConfigurationError("'" + key + "' must be an integer");
  return static_cast<long long>(v);
}

std::uint64_t get_seed(const json& c) {
  const long long v = get_int(c, "seed");
  if (v < 0) throw ConfigurationError("seed must be >= 0");
  return static_cast<std::uint64_t>(v);
}

bool has_value(const json& c, const std::string& key) {
  return c.contains(key) && !c[key].is_null() && get_string(c, key) != "";
}

template <typename T>
std::vector<T> get_list(const json& c, const std::string& key) {
  std::vector<T> out;
  if (c.at(key).is_array()) {
    for (const auto& v : c[key]) out.push_back(v.get<T>());
    return out;
  }
  std::stringstream in(get_string(c, key));
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = parse_double(item);
    if (!v) throw ConfigurationError("'" + key + "' must be a comma-separated number list");
    out.push_back(static_cast<T>(*v));
  }
  if (out.empty()) throw ConfigurationError("'" + key + "' is empty");
  return out;
}

// "--seeds 5" means seeds 0..4; "--seeds 3,8,11" lists them.
std::vector<std::uint64_t> get_seeds(const json& c, const std::string& key) {
  const std::string text = get_string(c, key);
  if (text.find(',') == std::string::npos && !c[key].is_array()) {
    const long long count = get_int(c, key);
    if (count < 1) throw ConfigurationError("'" + key + "' must be >= 1");
    std::vector<std::uint64_t> seeds;
    for (long long i = 0; i < count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
    return seeds;
  }
  return get_list<std::uint64_t>(c, key);
}

std::string output_dir(const json& config, const std::string& command) {
  if (has_value(config, "out")) return get_string(config, "out");
  json hashed = config;
  hashed.erase("out");
  return (fs::path(default_output_root()) / (command + "-" + config_hash(hashed))).string();
}

std::string in_dir(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_stream_file(const std::string& path, const std::function<void(std::ostream&)>& f) {
  std::ostringstream buffer;
  f(buffer);
  write_text_file(path, buffer.str());
}

// ---------------------------------------------------------------------------
// Model configuration shared by train and theory commands.

std::string flag_help(const std::string& key) {
  static const std::map<std::string, std::string> kHelp = {
      {"hidden", "hidden widths, e.g. 64,64,64, or 'auto'"},
      {"depth", "hidden layer count used with --hidden auto"},
      {"activation", "relu | leaky_relu[:slope] | relu_k:k | approx_sign:k:tau"},
      {"mapping", "sigmoid_probability | tanh_like | raw"},
      {"output_tau", "bandwidth of the approx-sign output map (tanh_like)"},
      {"loss", "logistic | hinge"},
      {"weighting", "class | union"},
      {"s", "normal-class weight s in (0,1)"},
      {"s_tilde", "known-anomaly share of the anomaly weight, in [0,1]"},
      {"optimizer", "momentum | adam"},
      {"lr", "learning rate"},
      {"momentum", "momentum coefficient"},
      {"weight_decay", "L2 penalty on weight matrices"},
      {"batch", "mini-batch size"},
      {"epochs", "maximum epochs"},
      {"patience", "early-stopping patience in epochs"},
      {"schema", "schema JSON (inferred from the CSV when omitted)"},
      {"data", "labeled training CSV"},
      {"normal", "CSV of normal rows"},
      {"known_anom", "CSV of known anomalies"},
      {"label_column", "name of the label column"},
      {"synthetic", "match-real | multiplier=m | absolute=n"},
      {"count", "match-real | multiplier=m | absolute=n"},
      {"seed", "random seed"},
      {"seeds", "seed count or comma-separated seed list"},
      {"val_fraction", "validation fraction in (0,1)"},
      {"out", "output directory or file"},
      {"checkpoint", "checkpoint JSON written by train"},
      {"test", "labeled test CSV"},
      {"subtype_column", "column holding the anomaly subtype"},
      {"scenario", "example1 | example2 | false-negative | zero-margin"},
      {"samples", "training rows per class"},
      {"contrast_samples", "training rows per class for the synthetic-anomaly contrast run"},
      {"contrast_runs", "how many (model, seed) pairs also train the contrast; -1 for all"},
      {"grid", "quadrature grid points"},
  };
  const auto it = kHelp.find(key);
  return it == kHelp.end() ? "" : it->second;
}

json model_defaults(const TrainConfig& base) {
  json d;
  std::string hidden;
  for (std::size_t i = 0; i < base.hidden_widths.size(); ++i)
    hidden += (i ? "," : "") + std::to_string(base.hidden_widths[i]);
  d["hidden"] = hidden;
  d["depth"] = static_cast<int>(base.hidden_widths.size());
  d["activation"] = base.activation.to_string();
  d["mapping"] = to_string(base.mapping);
  d["output_tau"] = base.output_sign.tau;
  d["loss"] = to_string(base.loss);
  d["weighting"] = base.weighting == Weighting::kUnweightedUnion ? "union" : "class";
  d["s"] = nullptr;
  d["s_tilde"] = nullptr;
  d["optimizer"] = to_string(base.optimizer);
  d["lr"] = base.learning_rate;
  d["momentum"] = base.momentum;
  d["weight_decay"] = base.weight_decay;
  d["batch"] = base.batch_size;
  d["epochs"] = base.max_epochs;
  d["patience"] = base.patience;
  return d;
}

TrainConfig model_config(const json& c, int input_dim, std::int64_t rows) {
  TrainConfig t;
  const std::string hidden = get_string(c, "hidden");
  if (hidden == "auto") {
    const long long depth = get_int(c, "depth");
    if (depth < 1) throw ConfigurationError("depth must be >= 1");
    t.hidden_widths.assign(static_cast<std::size_t>(depth), default_width(input_dim, rows));
  } else {
    t.hidden_widths = get_list<int>(c, "hidden");
  }
  t.activation = ActivationSpec::parse(get_string(c, "activation"));
  t.mapping = parse_output_mapping(get_string(c, "mapping"));
  t.output_sign = ActivationSpec::approx_sign(1, get_double(c, "output_tau"));
  t.loss = parse_loss(get_string(c, "loss"));
  const std::string weighting = get_string(c, "weighting");
  if (weighting == "union") {
    t.weighting = Weighting::kUnweightedUnion;
  } else if (weighting != "class") {
    throw ConfigurationError("weighting must be 'class' or 'union'");
  }
  if (has_value(c, "s") || has_value(c, "s_tilde")) {
    if (!has_value(c, "s") || !has_value(c, "s_tilde"))
      throw ConfigurationError("set both s and s_tilde or neither");
    t.class_weights = ClassWeights{get_double(c, "s"), get_double(c, "s_tilde")};
  }
  t.optimizer = parse_optimizer(get_string(c, "optimizer"));
  t.learning_rate = get_double(c, "lr");
  t.momentum = get_double(c, "momentum");
  t.weight_decay = get_double(c, "weight_decay");
  t.batch_size = static_cast<int>(get_int(c, "batch"));
  t.max_epochs = static_cast<int>(get_int(c, "epochs"));
  t.patience = static_cast<int>(get_int(c, "patience"));
  t.validate();
  return t;
}

// ---------------------------------------------------------------------------
// Data loading

struct LoadedTables {
  std::vector<CsvTable> tables;
  std::vector<std::string> sources;
};

// Role files without a label column get one filled with `label`.
CsvTable read_role_table(const std::string& path, const std::string& label_column,
                         const std::string& label) {
  CsvTable table = read_csv_file(path);
  if (std::find(table.header.begin(), table.header.end(), label_column) ==
      table.header.end()) {
    table.header.push_back(label_column);
    for (auto& row : table.rows) row.push_back(label);
  }
  return table;
}

std::string normal_label(const Schema* schema) {
  if (schema && !schema->label_convention().normal.empty())
    return schema->label_convention().normal.front();
  return "normal";
}

std::string anomaly_label(const Schema* schema) {
  if (schema && !schema->label_convention().anomaly.empty())
    return schema->label_convention().anomaly.front();
  return "anomaly";
}

// ---------------------------------------------------------------------------

int cmd_train(const json& c, std::ostream& out) {
  const std::string label_column = get_string(c, "label_column");
  std::optional<Schema> schema;
  if (has_value(c, "schema")) schema = Schema::load(get_string(c, "schema"));
  const Schema* sp = schema ? &*schema : nullptr;

  LoadedTables input;
  if (has_value(c, "data")) {
    input.tables.push_back(read_csv_file(get_string(c, "data")));
    input.sources.push_back(get_string(c, "data"));
  }
  if (has_value(c, "normal")) {
    input.tables.push_back(
        read_role_table(get_string(c, "normal"), label_column, normal_label(sp)));
    input.sources.push_back(get_string(c, "normal"));
  }
  if (has_value(c, "known_anom")) {
    input.tables.push_back(
        read_role_table(get_string(c, "known_anom"), label_column, anomaly_label(sp)));
    input.sources.push_back(get_string(c, "known_anom"));
  }
  if (input.tables.empty())
    throw ConfigurationError("train needs --data or --normal (and optionally --known-anom)");
  if (!schema) schema = infer_schema(input.tables, label_column);

  std::optional<RawDataset> raw;
  for (std::size_t i = 0; i < input.tables.size(); ++i) {
    RawDataset part = parse_dataset(input.tables[i], *schema, LoadMode::kTraining,
                                    input.sources[i]);
    raw = raw ? concat(*raw, part) : part;
  }
  const Normalizer normalizer = Normalizer::fit(*raw);
  Dataset data = normalizer.apply(*raw);
  const std::uint64_t seed = get_seed(c);
  data.seed = seed;

  TrainConfig config = model_config(c, data.dimension(), data.rows());
  config.seed = seed;
  const SyntheticConfig synthetic =
      SyntheticConfig::parse(get_string(c, "synthetic"), derive_seed(seed, 0x53594E));
  const std::string dir = output_dir(c, "train");
  ensure_directory(dir);
  json run_config = c;
  run_config["schema_hash"] = schema->hash();
  const std::string hash = config_hash(run_config);

  TrainResult result = [&] {
    try {
      return train_on_dataset(data, config, synthetic, get_double(c, "val_fraction"));
    } catch (const TrainingFailure& failure) {
      write_stream_file(in_dir(dir, "history.csv"),
                        [&](std::ostream& s) { write_history_csv(s, failure.history()); });
      throw;
    }
  }();

  Checkpoint checkpoint{result.model, normalizer, schema->hash(), seed, run_config};
  save_checkpoint(checkpoint, in_dir(dir, "checkpoint.json"));
  normalizer.save(in_dir(dir, "normalizer.json"));
  write_json_file(in_dir(dir, "schema.json"), schema->to_json());
  write_stream_file(in_dir(dir, "history.csv"),
                    [&](std::ostream& s) { write_history_csv(s, result.history); });
  json outputs = {{"checkpoint", "checkpoint.json"},
                  {"normalizer", "normalizer.json"},
                  {"schema", "schema.json"},
                  {"history", "history.csv"}};
  write_manifest(dir, "train", run_config, outputs);

  json summary;
  summary["status"] = "ok";
  summary["config_hash"] = hash;
  summary["output_dir"] = dir;
  summary["best_epoch"] = result.best_epoch;
  summary["epochs_run"] = result.history.size();
  summary["final_val_risk"] = result.best_val_risk;
  summary["s"] = result.weights.s;
  summary["s_tilde"] = result.weights.s_tilde;
  out << summary.dump() << "\n";
  return kExitOk;
}

int cmd_evaluate(const json& c, std::ostream& out) {
  if (!has_value(c, "checkpoint") || !has_value(c, "test"))
    throw ConfigurationError("evaluate needs --checkpoint and --test");
  const Checkpoint checkpoint = load_checkpoint(get_string(c, "checkpoint"));
  if (!checkpoint.normalizer) throw SchemaError("checkpoint has no normalizer");
  const Normalizer& normalizer = *checkpoint.normalizer;
  const Schema& trained_schema = normalizer.schema();
  if (trained_schema.hash() != checkpoint.schema_hash)
    throw SchemaError("checkpoint schema hash does not match its normalizer");

  // The subtype column is optional at test time.
  const CsvTable table = read_csv_file(get_string(c, "test"));
  std::vector<ColumnSpec> columns;
  for (const auto& col : trained_schema.columns()) {
    const bool present =
        std::find(table.header.begin(), table.header.end(), col.name) != table.header.end();
    if (col.role == ColumnRole::kSubtype && !present) continue;
    columns.push_back(col);
  }
  const bool has_subtype_role = std::any_of(columns.begin(), columns.end(), [](const auto& s) {
    return s.role == ColumnRole::kSubtype;
  });
  const std::string subtype_column = get_string(c, "subtype_column");
  if (!has_subtype_role && std::find(table.header.begin(), table.header.end(),
                                     subtype_column) != table.header.end()) {
    ColumnSpec spec;
    spec.name = subtype_column;
    spec.kind = ColumnKind::kCategorical;
    spec.role = ColumnRole::kSubtype;
    columns.push_back(spec);
  }
  const Schema test_schema(columns, trained_schema.label_convention());
  RawDataset raw = parse_dataset(table, test_schema, LoadMode::kInference, get_string(c, "test"));
  raw.schema = trained_schema;
  const Dataset data = normalizer.apply(raw);

  const Vector scores = score_dataset(checkpoint.model, data);
  const auto labels = anomaly_labels(data);
  const std::span<const double> score_span(scores.data(), static_cast<std::size_t>(scores.size()));
  EvaluationReport report;
  report.subtypes = evaluate_subtypes(score_span, labels, data.subtypes);
  if (report.subtypes.empty()) throw UndefinedMetricError("test set has no anomalies");
  report.seed = checkpoint.seed;
  report.config_hash = config_hash(c);

  const std::string dir = output_dir(c, "evaluate");
  ensure_directory(dir);
  json doc = report.to_json();
  doc["checkpoint"] = get_string(c, "checkpoint");
  doc["model_config_hash"] = config_hash(checkpoint.train_config);
  doc["overall_aupr"] = aupr(score_span, labels);
  std::size_t ood = 0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const auto row = data.features.row(i);
    if (ood_flag(data.layout, std::span<const double>(row.data(), row.size()))) ++ood;
  }
  doc["out_of_domain_rows"] = ood;
  write_json_file(in_dir(dir, "report.json"), doc);
  write_stream_file(in_dir(dir, "pr_curve.csv"), [&](std::ostream& s) {
    write_subtype_pr_curves_csv(s, score_span, labels, data.subtypes);
  });
  write_stream_file(in_dir(dir, "scores.csv"), [&](std::ostream& s) {
    CsvWriter w(s);
    w.row({"row", "score", "label", "subtype"});
    for (std::size_t i = 0; i < labels.size(); ++i)
      w.row({std::to_string(i), format_double(scores[static_cast<Eigen::Index>(i)]),
             labels[i] ? "anomaly" : "normal", data.subtypes[i]});
  });
  write_manifest(dir, "evaluate", c,
                 {{"report", "report.json"}, {"pr_curve", "pr_curve.csv"},
                  {"scores", "scores.csv"}});
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_sample(const json& c, std::ostream& out) {
  if (!has_value(c, "schema")) throw ConfigurationError("sample needs --schema");
  const Schema schema = Schema::load(get_string(c, "schema"));
  const Normalizer layout = Normalizer::from_schema(schema);
  const SyntheticConfig config = SyntheticConfig::parse(get_string(c, "count"), get_seed(c));
  const Matrix rows = sample_synthetic(layout.layout(), config, get_int(c, "n"),
                                       get_int(c, "n_minus"));
  std::vector<std::vector<std::string>> vocab;
  for (const auto& v : layout.vocabularies()) vocab.push_back(v.categories);
  if (has_value(c, "out")) {
    write_stream_file(get_string(c, "out"), [&](std::ostream& s) {
      write_synthetic_csv(s, layout.layout(), vocab, rows);
    });
  } else {
    write_synthetic_csv(out, layout.layout(), vocab, rows);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_plan(const json& c, std::ostream& out) {
  const ArchitecturePlan plan =
      architecture_plan(get_double(c, "nmin"), get_double(c, "alpha"),
                        static_cast<int>(get_int(c, "d")), get_double(c, "q"),
                        static_cast<int>(get_int(c, "m")), get_double(c, "r"));
  out << plan.to_json() << "\n";
  return kExitOk;
}

MixtureProblem scenario_problem(const json& c) {
  const std::string scenario = get_string(c, "scenario");
  const double s = get_double(c, "s"), st = get_double(c, "s_tilde");
  if (scenario == "example1") return example1_problem(s, st);
  if (scenario == "example2") return example2_problem(static_cast<int>(get_int(c, "d")), s, st);
  if (scenario == "false-negative" || scenario == "zero-margin")
    return scenario_figure2(parse_figure2_case(scenario), s, st);
  throw ConfigurationError("unknown scenario '" + scenario + "'");
}

int cmd_probe_noise(const json& c, std::ostream& out) {
  const MixtureProblem problem = scenario_problem(c);
  const std::vector<double> thresholds = has_value(c, "thresholds")
                                             ? get_list<double>(c, "thresholds")
                                             : default_noise_thresholds();
  const QuadratureSpec quadrature = has_value(c, "grid")
                                        ? QuadratureSpec::grid(get_int(c, "grid"))
                                        : QuadratureSpec::default_for(problem.dimension());
  const NoiseProbe probe = noise_exponent_probe(problem, thresholds, quadrature);
  const std::string dir = output_dir(c, "probe-noise");
  ensure_directory(dir);
  write_stream_file(in_dir(dir, "noise_probe.csv"),
                    [&](std::ostream& s) { write_noise_probe_csv(s, probe); });
  json summary = {{"q_hat", probe.q_hat},
                  {"fitted_points", probe.fitted_points},
                  {"quadrature", quadrature.describe()},
                  {"output_dir", dir}};
  write_manifest(dir, "theory probe-noise", c, {{"probe", "noise_probe.csv"}});
  out << summary.dump() << "\n";
  return kExitOk;
}

int cmd_verify_bound(const json& c, std::ostream& out) {
  if (get_string(c, "scenario") != "example1")
    throw ConfigurationError("verify-bound supports --scenario example1");
  BoundSuiteOptions o;
  o.random_models = static_cast<int>(get_int(c, "runs"));
  o.trained_models = static_cast<int>(get_int(c, "trained"));
  o.tau = get_double(c, "tau");
  o.k = static_cast<int>(get_int(c, "k"));
  o.q = get_double(c, "q");
  o.c0 = get_double(c, "c0");
  o.s = get_double(c, "s");
  o.s_tilde = get_double(c, "s_tilde");
  o.grid_points = get_int(c, "grid");
  o.slack = get_double(c, "slack");
  o.samples = static_cast<int>(get_int(c, "samples"));
  o.seed = get_seed(c);
  o.trained = model_config(c, 1, o.samples);
  const BoundSuiteResult result = verify_bound_suite(o);
  const std::string dir = output_dir(c, "verify-bound");
  ensure_directory(dir);
  write_stream_file(in_dir(dir, "bound_checks.csv"),
                    [&](std::ostream& s) { write_bound_csv(s, result); });
  write_manifest(dir, "theory verify-bound", c, {{"checks", "bound_checks.csv"}});
  json summary = {{"holds", result.holds}, {"total", result.total}, {"output_dir", dir}};
  out << summary.dump() << "\n";
  return kExitOk;
}

int cmd_convergence(const json& c, std::ostream& out) {
  ExperimentGrid grid;
  grid.scenario = get_string(c, "scenario");
  grid.dimension = static_cast<int>(get_int(c, "d"));
  grid.sizes = get_list<int>(c, "sizes");
  grid.seeds = get_seeds(c, "seeds");
  grid.s = get_double(c, "s");
  grid.s_tilde = get_double(c, "s_tilde");
  grid.synthetic_ratio = get_double(c, "synthetic_ratio");
  grid.rho = get_double(c, "rho");
  if (has_value(c, "grid")) grid.quadrature = QuadratureSpec::grid(get_int(c, "grid"));
  grid.model = model_config(c, grid.dimension, grid.sizes.back());
  grid.output_dir = output_dir(c, "convergence");
  const ConvergenceResult result = convergence_experiment(grid);
  ensure_directory(grid.output_dir);
  std::ostringstream summary_csv, runs_csv;
  write_convergence_csv(summary_csv, runs_csv, result);
  write_text_file(in_dir(grid.output_dir, "convergence_summary.csv"), summary_csv.str());
  write_text_file(in_dir(grid.output_dir, "convergence_runs.csv"), runs_csv.str());
  json rate = {{"rate_slope", result.rate_slope},
               {"rate_ci_low", result.rate_ci_low},
               {"rate_ci_high", result.rate_ci_high},
               {"bayes_risk", result.bayes_risk}};
  write_json_file(in_dir(grid.output_dir, "rate.json"), rate);
  write_manifest(grid.output_dir, "theory convergence", c,
                 {{"summary", "convergence_summary.csv"},
                  {"runs", "convergence_runs.csv"},
                  {"rate", "rate.json"}});
  out << summary_csv.str();
  out << rate.dump() << "\n";
  return kExitOk;
}

int cmd_discontinuity(const json& c, std::ostream& out) {
  DiscontinuityOptions o;
  o.resolutions = get_list<std::int64_t>(c, "resolutions");
  o.seeds = get_seeds(c, "seeds");
  o.samples = static_cast<int>(get_int(c, "samples"));
  o.contrast_samples = static_cast<int>(get_int(c, "contrast_samples"));
  o.contrast_runs = static_cast<int>(get_int(c, "contrast_runs"));
  o.s = get_double(c, "s");
  o.models = {model_config(c, 1, o.samples)};
  const auto results = discontinuity_demo(o);
  const std::string dir = output_dir(c, "discontinuity");
  ensure_directory(dir);
  std::ostringstream csv;
  write_discontinuity_csv(csv, o, results);
  write_text_file(in_dir(dir, "discontinuity.csv"), csv.str());
  write_manifest(dir, "theory discontinuity", c, {{"table", "discontinuity.csv"}});
  out << csv.str();
  return kExitOk;
}

int cmd_ablate(const json& c, std::ostream& out) {
  AblationOptions o;
  o.widths = get_list<int>(c, "widths");
  o.depths = get_list<int>(c, "depths");
  o.multipliers = get_list<double>(c, "multipliers");
  o.seeds = get_seeds(c, "seeds");
  o.validation_fraction = get_double(c, "val_fraction");
  Dataset train, test;
  if (has_value(c, "train") || has_value(c, "test")) {
    if (!has_value(c, "train") || !has_value(c, "test") || !has_value(c, "schema"))
      throw ConfigurationError("ablate on files needs --train, --test and --schema");
    const Schema schema = Schema::load(get_string(c, "schema"));
    const RawDataset raw_train = load_dataset(get_string(c, "train"), schema);
    const Normalizer normalizer = Normalizer::fit(raw_train);
    train = normalizer.apply(raw_train);
    test = normalizer.apply(load_dataset(get_string(c, "test"), schema, LoadMode::kInference));
  } else {
    const ScenarioData data = make_unseen_anomaly_data(UnseenAnomalyScenario{}, get_seed(c));
    train = data.train;
    test = data.test;
  }
  o.base = model_config(c, train.dimension(), train.rows());
  const AblationResult result = ablation_grid(train, test, o);
  const std::string dir = output_dir(c, "ablate");
  ensure_directory(dir);
  std::ostringstream table, cells;
  write_ablation_csv(table, cells, result);
  write_text_file(in_dir(dir, "ablation_table.csv"), table.str());
  write_text_file(in_dir(dir, "ablation_cells.csv"), cells.str());
  write_manifest(dir, "theory ablate", c,
                 {{"table", "ablation_table.csv"}, {"cells", "ablation_cells.csv"}});
  out << table.str();
  out << json({{"multiplier_zero_matches_vc", result.multiplier_zero_matches_vc}}).dump()
      << "\n";
  return kExitOk;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const TrainingFailure*>(&e) || dynamic_cast<const NumericError*>(&e))
    return kExitTraining;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SchemaError*>(&e) ||
      dynamic_cast<const ImputationError*>(&e) || dynamic_cast<const ShapeError*>(&e) ||
      dynamic_cast<const UndefinedMetricError*>(&e))
    return kExitData;
  return kExitUsage;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message,
                 int code) {
  json doc = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << doc.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-supervised anomaly detection with synthetic anomalies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  using Handler = std::function<int(const json&, std::ostream&)>;
  std::vector<std::tuple<CLI::App*, std::unique_ptr<Options>, json, Handler>> commands;
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                     json defaults, Handler handler) -> Options& {
    CLI::App* sub = parent->add_subcommand(name, help);
    auto options = std::make_unique<Options>(sub);
    for (auto it = defaults.begin(); it != defaults.end(); ++it)
      options->add(it.key(), flag_help(it.key()));
    Options& ref = *options;
    commands.emplace_back(sub, std::move(options), std::move(defaults), std::move(handler));
    return ref;
  };

  const TrainConfig practical;
  json train_defaults = model_defaults(practical);
  train_defaults.update(json{{"schema", ""},
                             {"data", ""},
                             {"normal", ""},
                             {"known_anom", ""},
                             {"label_column", "label"},
                             {"synthetic", "match-real"},
                             {"seed", 0},
                             {"val_fraction", 0.2},
                             {"out", ""}});
  train_defaults["hidden"] = "auto";
  command(&app, "train", "train a classifier on normal, known and synthetic anomalies",
          train_defaults, cmd_train);
  command(&app, "evaluate", "per-subtype AUPR of a checkpoint on a labeled test CSV",
          json{{"checkpoint", ""}, {"test", ""}, {"subtype_column", "subtype"}, {"out", ""}},
          cmd_evaluate);
  command(&app, "sample", "export synthetic anomalies drawn uniformly from the schema domain",
          json{{"schema", ""}, {"count", "match-real"}, {"n", 0}, {"n_minus", 0}, {"seed", 0},
               {"out", ""}},
          cmd_sample);

  CLI::App* theory = app.add_subcommand("theory", "numerical experiments");
  theory->require_subcommand(1);
  const TrainConfig theory_model = theory_train_config();
  const json model = model_defaults(theory_model);
  auto with_model = [&](json extra) {
    json d = model;
    d.update(extra);
    return d;
  };
  command(theory, "plan-architecture", "network size attaining the minimax rate",
          json{{"nmin", 10000}, {"alpha", 1}, {"d", 1}, {"q", 0}, {"m", 1}, {"r", 1}},
          cmd_plan);
  command(theory, "probe-noise", "estimate the noise exponent of a scenario",
          json{{"scenario", "example1"}, {"d", 2}, {"s", 0.5}, {"s_tilde", 0.5},
               {"thresholds", ""}, {"grid", ""}, {"out", ""}},
          cmd_probe_noise);
  command(theory, "verify-bound", "approx-sign excess-risk bound on random and trained nets",
          with_model({{"scenario", "example1"}, {"runs", 100}, {"trained", 5}, {"tau", 0.05},
                      {"k", 1}, {"q", 0}, {"c0", 1}, {"s", 0.5}, {"s_tilde", 0.5},
                      {"grid", 100000}, {"slack", 1e-3}, {"samples", 1000}, {"seed", 0},
                      {"out", ""}}),
          cmd_verify_bound);
  command(theory, "convergence", "excess risk and level-set error versus sample size",
          with_model({{"scenario", "example1"}, {"d", 1}, {"sizes", "100,400,1600,6400"},
                      {"seeds", 5}, {"s", 0.5}, {"s_tilde", 0.5}, {"synthetic_ratio", 2},
                      {"rho", 0}, {"grid", ""}, {"out", ""}}),
          cmd_convergence);
  command(theory, "discontinuity", "sup-norm error against a discontinuous target",
          with_model({{"resolutions", "1000,10000,100000"}, {"seeds", 3}, {"samples", 2000},
                      {"contrast_samples", 10000}, {"contrast_runs", 1}, {"s", 0.5}, {"out", ""}}),
          cmd_discontinuity);
  command(theory, "ablate", "width x depth x synthetic-count ablation",
          with_model({{"widths", "16,32,64"}, {"depths", "1,2,3"},
                      {"multipliers", "0,0.001,1,5,20"}, {"seeds", 3}, {"val_fraction", 0.2},
                      {"train", ""}, {"test", ""}, {"schema", ""}, {"seed", 0}, {"out", ""}}),
          cmd_ablate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  for (auto& [sub, options, defaults, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      const json config = options->resolve(defaults);
      return handler(config, out);
    } catch (const Error& e) {
      const int code = exit_code_for(e);
      print_error(err, e.kind(), e.what(), code);
      return code;
    } catch (const json::exception& e) {
      print_error(err, "configuration", e.what(), kExitUsage);
      return kExitUsage;
    } catch (const std::exception& e) {
      print_error(err, "internal", e.what(), kExitData);
      return kExitData;
    }
  }
  print_error(err, "usage", "no command given", kExitUsage);
  return kExitUsage;
}

}  // namespace synad::cli
