#include "synad/sampler.h"

#include <cmath>
#include <ostream>
#include <sstream>

#include "synad/csv.h"
#include "synad/errors.h"
#include "synad/rng.h"

namespace synad {

SyntheticConfig SyntheticConfig::match_real(std::uint64_t seed) {
  SyntheticConfig c;
  c.seed = seed;
  return c;
}

SyntheticConfig SyntheticConfig::times(double multiplier, std::uint64_t seed) {
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier))
    throw InvalidParameterError("synthetic multiplier must be finite and >= 0");
  SyntheticConfig c;
  c.policy = Policy::kMultiplier;
  c.multiplier = multiplier;
  c.seed = seed;
  return c;
}

SyntheticConfig SyntheticConfig::exactly(std::int64_t count, std::uint64_t seed) {
  if (count < 0) throw InvalidParameterError("synthetic count must be >= 0");
  SyntheticConfig c;
  c.policy = Policy::kAbsolute;
  c.absolute = count;
  c.seed = seed;
  return c;
}

SyntheticConfig SyntheticConfig::parse(const std::string& text,
                                       std::uint64_t seed) {
  if (text == "match-real" || text == "match_real") return match_real(seed);
  const auto eq = text.find('=');
  if (eq != std::string::npos) {
    const std::string key = text.substr(0, eq);
    const auto value = parse_double(text.substr(eq + 1));
    if (value) {
      if (key == "multiplier") return times(*value, seed);
      if (key == "absolute" && *value == std::floor(*value))
        return exactly(static_cast<std::int64_t>(*value), seed);
    }
  }
  throw InvalidParameterError(
      "synthetic policy must be match-real, multiplier=<m> or absolute=<n>; got '" +
      text + "'");
}

std::string SyntheticConfig::to_string() const {
  switch (policy) {
    case Policy::kMatchReal:
      return "match-real";
    case Policy::kMultiplier:
      return "multiplier=" + format_double(multiplier);
    case Policy::kAbsolute:
      return "absolute=" + std::to_string(absolute);
  }
  return "?";
}

std::int64_t resolve_count(const SyntheticConfig& config, std::int64_t n,
                           std::int64_t n_minus) {
  if (n < 0 || n_minus < 0)
    throw InvalidParameterError("sample counts must be non-negative");
  const std::int64_t real = n + n_minus;
  switch (config.policy) {
    case SyntheticConfig::Policy::kMatchReal:
      return real;
    case SyntheticConfig::Policy::kMultiplier:
      return static_cast<std::int64_t>(
          std::floor(config.multiplier * static_cast<double>(real) + 0.5));
    case SyntheticConfig::Policy::kAbsolute:
      return config.absolute;
  }
  return 0;
}

Matrix sample_synthetic(const FeatureLayout& layout, const SyntheticConfig& config,
                        std::int64_t n, std::int64_t n_minus) {
  const std::int64_t count = resolve_count(config, n, n_minus);
  Matrix out = Matrix::Zero(count, layout.width);
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(config.seed, static_cast<std::uint64_t>(i));
    for (const auto& [is_numeric, slot] : layout.order) {
      if (is_numeric) {
        out(i, layout.numeric[static_cast<std::size_t>(slot)].offset) = rng.uniform();
      } else {
        const auto& group = layout.groups[static_cast<std::size_t>(slot)];
        const auto pick = rng.below(static_cast<std::uint64_t>(group.size));
        out(i, group.offset + static_cast<int>(pick)) = 1.0;
      }
    }
  }
  return out;
}

Dataset synthetic_dataset(const FeatureLayout& layout,
                          const SyntheticConfig& config, std::int64_t n,
                          std::int64_t n_minus) {
  Dataset out;
  out.layout = layout;
  out.features = sample_synthetic(layout, config, n, n_minus);
  out.tags.assign(static_cast<std::size_t>(out.features.rows()),
                  ClassTag::kSyntheticAnomaly);
  out.subtypes.assign(out.tags.size(), "synthetic");
  out.seed = config.seed;
  out.source = "synthetic:" + config.to_string();
  return out;
}

void write_synthetic_csv(std::ostream& out, const FeatureLayout& layout,
                         const std::vector<std::vector<std::string>>& vocabularies,
                         const Matrix& rows) {
  CsvWriter writer(out);
  std::vector<std::string> header;
  for (const auto& [is_numeric, slot] : layout.order)
    header.push_back(is_numeric ? layout.numeric[static_cast<std::size_t>(slot)].name
                                : layout.groups[static_cast<std::size_t>(slot)].name);
  writer.row(header);
  std::vector<std::string> cells;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    cells.clear();
    for (const auto& [is_numeric, slot] : layout.order) {
      if (is_numeric) {
        cells.push_back(format_double(
            rows(i, layout.numeric[static_cast<std::size_t>(slot)].offset)));
      } else {
        const auto& group = layout.groups[static_cast<std::size_t>(slot)];
        std::string name;
        for (int k = 0; k < group.size; ++k)
          if (rows(i, group.offset + k) == 1.0)
            name = vocabularies.at(static_cast<std::size_t>(slot))
                       .at(static_cast<std::size_t>(k));
        cells.push_back(std::move(name));
      }
    }
    writer.row(cells);
  }
}

}  // namespace synad
