#ifndef SYNAD_SAMPLER_H_
#define SYNAD_SAMPLER_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "synad/dataset.h"

namespace synad {

// How many synthetic anomalies to draw, relative to the real training count
// r = n + n_minus.
struct SyntheticConfig {
  enum class Policy { kMatchReal, kMultiplier, kAbsolute };

  Policy policy = Policy::kMatchReal;
  double multiplier = 1.0;
  std::int64_t absolute = 0;
  std::uint64_t seed = 0;

  static SyntheticConfig match_real(std::uint64_t seed = 0);
  static SyntheticConfig times(double multiplier, std::uint64_t seed = 0);
  static SyntheticConfig exactly(std::int64_t count, std::uint64_t seed = 0);
  // "match-real", "multiplier=<m>" or "absolute=<n>".
  static SyntheticConfig parse(const std::string& text, std::uint64_t seed = 0);

  std::string to_string() const;
};

// n' per policy; fractional multipliers round half-up.
std::int64_t resolve_count(const SyntheticConfig& config, std::int64_t n,
                           std::int64_t n_minus);

// n' rows drawn uniformly from the encoded domain: numeric slots uniform on
// [0, 1), each one-hot group set to a single category chosen uniformly from
// its vocabulary. Row i uses the stream Rng(seed, i), so any subset of rows
// can be regenerated independently.
Matrix sample_synthetic(const FeatureLayout& layout, const SyntheticConfig& config,
                        std::int64_t n, std::int64_t n_minus);

// Same rows wrapped as a dataset tagged synthetic_anomaly.
Dataset synthetic_dataset(const FeatureLayout& layout,
                          const SyntheticConfig& config, std::int64_t n,
                          std::int64_t n_minus);

// Audit export: one column per schema feature, categories decoded to names.
void write_synthetic_csv(std::ostream& out, const FeatureLayout& layout,
                         const std::vector<std::vector<std::string>>& vocabularies,
                         const Matrix& rows);

}  // namespace synad

#endif  // SYNAD_SAMPLER_H_
