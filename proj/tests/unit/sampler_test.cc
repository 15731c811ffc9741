#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "synad/csv.h"
#include "synad/dataset.h"
#include "synad/errors.h"
#include "synad/sampler.h"
#include "test_util.h"

namespace synad {
namespace {

using testing::Gen;

FeatureLayout numeric_layout(int d) {
  FeatureLayout layout;
  for (int j = 0; j < d; ++j) layout.numeric.push_back({"x" + std::to_string(j), j});
  for (int j = 0; j < d; ++j) layout.order.push_back({true, j});
  layout.width = d;
  return layout;
}

// x0 numeric, g0 with 3 categories, x1 numeric, g1 with 2 categories.
FeatureLayout mixed_layout() {
  FeatureLayout layout;
  layout.numeric = {{"x0", 0}, {"x1", 4}};
  layout.groups = {{"g0", 1, 3}, {"g1", 5, 2}};
  layout.order = {{true, 0}, {false, 0}, {true, 1}, {false, 1}};
  layout.width = 7;
  return layout;
}

// Upper 1e-3 quantile of the chi-square distribution with 19 degrees of
// freedom.
constexpr double kChiSquare19At1e3 = 43.8202;

double chi_square_20_bins(const Matrix& x, int column) {
  std::vector<double> counts(20, 0.0);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    counts[static_cast<int>(x(i, column) * 20)] += 1.0;
  const double expected = static_cast<double>(x.rows()) / 20;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

TEST(ResolveCountTest, Examples) {
  EXPECT_EQ(resolve_count(SyntheticConfig::match_real(), 70, 30), 100);
  EXPECT_EQ(resolve_count(SyntheticConfig::match_real(), 70000, 1000), 71000);
  EXPECT_EQ(resolve_count(SyntheticConfig::times(0.001), 70000, 1000), 71);
  EXPECT_EQ(resolve_count(SyntheticConfig::times(3.0), 120, 5), 375);
  EXPECT_EQ(resolve_count(SyntheticConfig::times(0.0), 120, 5), 0);
  EXPECT_EQ(resolve_count(SyntheticConfig::exactly(17), 120, 5), 17);
  // Half-up rounding: 0.5 * 3 = 1.5 -> 2.
  EXPECT_EQ(resolve_count(SyntheticConfig::times(0.5), 2, 1), 2);
  EXPECT_THROW(resolve_count(SyntheticConfig::match_real(), -1, 0), InvalidParameterError);
  EXPECT_THROW(resolve_count(SyntheticConfig::times(-1.0), 1, 0), InvalidParameterError);
}

TEST(SyntheticConfigTest, ParseRoundTrip) {
  for (const auto& text : {"match-real", "multiplier=0.001", "absolute=42"}) {
    const SyntheticConfig c = SyntheticConfig::parse(text, 5);
    EXPECT_EQ(SyntheticConfig::parse(c.to_string()).to_string(), c.to_string());
    EXPECT_EQ(c.seed, 5u);
  }
  EXPECT_EQ(SyntheticConfig::parse("multiplier=5").multiplier, 5.0);
  EXPECT_THROW(SyntheticConfig::parse("lots"), Error);
}

TEST(SampleSyntheticTest, MultiplierZeroIsEmpty) {
  const Matrix x = sample_synthetic(numeric_layout(3), SyntheticConfig::times(0.0), 100, 10);
  EXPECT_EQ(x.rows(), 0);
  EXPECT_EQ(x.cols(), 3);
}

TEST(SampleSyntheticTest, MeansNearOneHalf) {
  const Matrix x =
      sample_synthetic(numeric_layout(2), SyntheticConfig::exactly(100000, 11), 0, 0);
  ASSERT_EQ(x.rows(), 100000);
  for (int j = 0; j < 2; ++j) {
    const double mean = x.col(j).mean();
    EXPECT_GE(mean, 0.497);
    EXPECT_LE(mean, 0.503);
  }
}

TEST(SampleSyntheticTest, ChiSquareUniformity) {
  const Matrix x =
      sample_synthetic(numeric_layout(3), SyntheticConfig::exactly(100000, 12), 0, 0);
  for (int j = 0; j < 3; ++j) EXPECT_LT(chi_square_20_bins(x, j), kChiSquare19At1e3) << j;
}

TEST(SampleSyntheticTest, CategoricalGroupsUniformOneHot) {
  const FeatureLayout layout = mixed_layout();
  const Matrix x = sample_synthetic(layout, SyntheticConfig::exactly(30000, 13), 0, 0);
  std::vector<double> counts(3, 0.0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    EXPECT_EQ(x.row(i).segment(1, 3).sum(), 1.0);
    EXPECT_EQ(x.row(i).segment(5, 2).sum(), 1.0);
    for (int c = 0; c < 3; ++c) counts[c] += x(i, 1 + c);
    EXPECT_FALSE(ood_flag(layout, {x.row(i).data(), 7}));
  }
  for (double c : counts) EXPECT_NEAR(c / 30000, 1.0 / 3, 0.015);
}

TEST(SampleSyntheticProperty, InDomainAndDeterministic) {
  Gen gen(14);
  for (int trial = 0; trial < 30; ++trial) {
    const FeatureLayout layout = gen.coin() ? mixed_layout() : numeric_layout(gen.integer(1, 6));
    const auto seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 20));
    const int n = gen.integer(0, 200), n_minus = gen.integer(0, 50);
    const SyntheticConfig config = SyntheticConfig::times(gen.uniform(0.0, 3.0), seed);
    const Matrix a = sample_synthetic(layout, config, n, n_minus);
    const Matrix b = sample_synthetic(layout, config, n, n_minus);
    EXPECT_EQ(a.rows(), resolve_count(config, n, n_minus));
    EXPECT_EQ(a, b);
    for (const auto& v : layout.numeric) {
      EXPECT_TRUE((a.col(v.offset).array() >= 0.0).all());
      EXPECT_TRUE((a.col(v.offset).array() < 1.0).all());
    }
    for (const auto& g : layout.groups) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const auto block = a.row(i).segment(g.offset, g.size).array();
        EXPECT_TRUE((block == 0.0 || block == 1.0).all());
        EXPECT_EQ(block.sum(), 1.0);
      }
    }
  }
}

TEST(SampleSyntheticTest, RowsRegenerateIndependently) {
  // Row i depends only on (seed, i), so a longer draw extends a shorter one.
  const FeatureLayout layout = mixed_layout();
  const Matrix short_draw = sample_synthetic(layout, SyntheticConfig::exactly(10, 3), 0, 0);
  const Matrix long_draw = sample_synthetic(layout, SyntheticConfig::exactly(25, 3), 0, 0);
  EXPECT_EQ(long_draw.topRows(10), short_draw);
  const Matrix other_seed = sample_synthetic(layout, SyntheticConfig::exactly(10, 4), 0, 0);
  EXPECT_NE(other_seed, short_draw);
}

TEST(SyntheticDatasetTest, TaggedSynthetic) {
  const Dataset d = synthetic_dataset(numeric_layout(2), SyntheticConfig::match_real(1), 7, 3);
  EXPECT_EQ(d.rows(), 10);
  EXPECT_EQ(d.count(ClassTag::kSyntheticAnomaly), 10u);
}

TEST(SyntheticCsvTest, DecodesCategories) {
  const FeatureLayout layout = mixed_layout();
  const Matrix x = sample_synthetic(layout, SyntheticConfig::exactly(5, 2), 0, 0);
  std::ostringstream out;
  write_synthetic_csv(out, layout, {{"a", "b", "c"}, {"yes", "no"}}, x);
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x0", "g0", "x1", "g1"}));
  ASSERT_EQ(t.rows.size(), 5u);
  for (const auto& row : t.rows) {
    EXPECT_TRUE(row[1] == "a" || row[1] == "b" || row[1] == "c");
    EXPECT_TRUE(row[3] == "yes" || row[3] == "no");
  }
}

}  // namespace
}  // namespace synad
