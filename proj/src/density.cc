#include "synad/density.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "synad/csv.h"
#include "synad/errors.h"

namespace synad {

namespace {

double hat_value(double x, double center, double half_width) {
  const double t = 1.0 - std::fabs(x - center) / half_width;
  return t > 0.0 ? t / half_width : 0.0;
}

// Inverse CDF of the symmetric triangular law on [c - w, c + w].
double hat_inverse_cdf(double u, double center, double half_width) {
  if (u < 0.5) return center - half_width + half_width * std::sqrt(2.0 * u);
  return center + half_width - half_width * std::sqrt(2.0 * (1.0 - u));
}

void check_hat(double center, double half_width) {
  if (!(half_width > 0.0))
    throw InvalidParameterError("hat half-width must be positive");
  if (center - half_width < -1e-12 || center + half_width > 1.0 + 1e-12)
    throw InvalidParameterError("hat support must lie inside [0, 1]");
}

}  // namespace

DensityModel DensityModel::uniform(int dimension) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  return DensityModel(Form::kUniform, dimension);
}

DensityModel DensityModel::hat_1d(double center, double half_width) {
  check_hat(center, half_width);
  DensityModel out(Form::kHat1d, 1);
  out.centers_ = {center};
  out.half_widths_ = {half_width};
  return out;
}

DensityModel DensityModel::product_hat(std::vector<double> centers,
                                       std::vector<double> half_widths) {
  if (centers.empty() || centers.size() != half_widths.size())
    throw InvalidParameterError("product hat needs matching center/width lists");
  for (std::size_t j = 0; j < centers.size(); ++j)
    check_hat(centers[j], half_widths[j]);
  DensityModel out(Form::kProductHat, static_cast<int>(centers.size()));
  out.centers_ = std::move(centers);
  out.half_widths_ = std::move(half_widths);
  return out;
}

DensityModel DensityModel::shifted_hat(const std::vector<double>& offset) {
  if (offset.empty()) throw InvalidParameterError("offset must be non-empty");
  std::vector<double> centers(offset.size(), 0.5);
  std::vector<double> widths(offset.size(), 0.5);
  widths[0] = 0.25;
  for (std::size_t j = 0; j < offset.size(); ++j) centers[j] += offset[j];
  return product_hat(std::move(centers), std::move(widths));
}

DensityModel DensityModel::tabulated(std::vector<std::vector<double>> axes,
                                     std::vector<double> values) {
  if (axes.empty()) throw InvalidParameterError("tabulated density needs axes");
  std::size_t expected = 1;
  for (const auto& axis : axes) {
    if (axis.size() < 2)
      throw InvalidParameterError("each tabulated axis needs >= 2 nodes");
    if (!std::is_sorted(axis.begin(), axis.end()) ||
        std::adjacent_find(axis.begin(), axis.end()) != axis.end())
      throw InvalidParameterError("tabulated axes must be strictly increasing");
    expected *= axis.size();
  }
  if (values.size() != expected)
    throw InvalidParameterError("tabulated value count does not match grid");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidParameterError("tabulated density values must be finite and >= 0");
  DensityModel out(Form::kTabulated, static_cast<int>(axes.size()));
  out.axes_ = std::move(axes);
  out.values_ = std::move(values);
  return out;
}

DensityModel DensityModel::load_tabulated_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  const std::size_t cols = table.header.size();
  if (cols < 2)
    throw ParseError("tabulated density needs x1..xd and value columns", 0);
  const std::size_t d = cols - 1;
  for (std::size_t j = 0; j < d; ++j)
    if (table.header[j] != "x" + std::to_string(j + 1))
      throw ParseError("expected header x" + std::to_string(j + 1), 0);
  if (table.header[d] != "value")
    throw ParseError("expected final header 'value'", 0);

  std::vector<std::map<double, std::size_t>> seen(d);
  std::vector<std::vector<double>> coords(table.rows.size(),
                                          std::vector<double>(d));
  std::vector<double> raw(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t j = 0; j <= d; ++j) {
      const auto value = parse_double(table.rows[r][j]);
      if (!value) throw ParseError("non-numeric cell", r + 1);
      if (j < d) {
        coords[r][j] = *value;
        seen[j].emplace(*value, 0);
      } else {
        raw[r] = *value;
      }
    }
  }
  std::vector<std::vector<double>> axes(d);
  std::size_t expected = 1;
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t idx = 0;
    for (auto& [coord, index] : seen[j]) {
      axes[j].push_back(coord);
      index = idx++;
    }
    expected *= axes[j].size();
  }
  if (expected != table.rows.size())
    throw ParseError("rows do not form a full tensor grid", table.rows.size());
  std::vector<double> values(expected, -1.0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::size_t flat = 0;
    for (std::size_t j = 0; j < d; ++j)
      flat = flat * axes[j].size() + seen[j].at(coords[r][j]);
    if (values[flat] >= 0.0) throw ParseError("duplicate grid node", r + 1);
    values[flat] = raw[r];
  }
  return tabulated(std::move(axes), std::move(values));
}

double DensityModel::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_)
    throw ShapeError("density evaluated at a point of the wrong dimension");
  switch (form_) {
    case Form::kUniform:
      return 1.0;
    case Form::kHat1d:
    case Form::kProductHat: {
      double out = 1.0;
      for (int j = 0; j < dimension_ && out > 0.0; ++j)
        out *= hat_value(x[j], centers_[j], half_widths_[j]);
      return out;
    }
    case Form::kTabulated:
      return tabulated_value(x);
  }
  return 0.0;
}

double DensityModel::operator()(double x) const {
  return (*this)(std::span<const double>(&x, 1));
}

double DensityModel::tabulated_value(std::span<const double> x) const {
  const std::size_t d = axes_.size();
  std::vector<std::size_t> lower(d);
  std::vector<double> frac(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& axis = axes_[j];
    if (x[j] < axis.front() || x[j] > axis.back()) return 0.0;
    auto it = std::upper_bound(axis.begin(), axis.end(), x[j]);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    if (hi >= axis.size()) hi = axis.size() - 1;
    const std::size_t lo = hi - 1;
    lower[j] = lo;
    frac[j] = (x[j] - axis[lo]) / (axis[hi] - axis[lo]);
  }
  double acc = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const bool up = (corner >> j) & 1U;
      w *= up ? frac[j] : 1.0 - frac[j];
      flat = flat * axes_[j].size() + lower[j] + (up ? 1 : 0);
    }
    if (w != 0.0) acc += w * values_[flat];
  }
  return acc;
}

double DensityModel::sup_value() const {
  switch (form_) {
    case Form::kUniform:
      return 1.0;
    case Form::kHat1d:
    case Form::kProductHat: {
      double out = 1.0;
      for (double w : half_widths_) out /= w;
      return out;
    }
    case Form::kTabulated:
      return *std::max_element(values_.begin(), values_.end());
  }
  return 0.0;
}

void DensityModel::sample(Rng& rng, std::span<double> out) const {
  if (static_cast<int>(out.size()) != dimension_)
    throw ShapeError("sample buffer has the wrong dimension");
  switch (form_) {
    case Form::kUniform:
      for (auto& v : out) v = rng.uniform();
      return;
    case Form::kHat1d:
    case Form::kProductHat:
      for (int j = 0; j < dimension_; ++j)
        out[j] = hat_inverse_cdf(rng.uniform(), centers_[j], half_widths_[j]);
      return;
    case Form::kTabulated: {
      const double bound = sup_value();
      if (!(bound > 0.0))
        throw InvalidParameterError("cannot sample an all-zero density");
      for (;;) {
        for (int j = 0; j < dimension_; ++j)
          out[j] = rng.uniform(axes_[j].front(), axes_[j].back());
        if (rng.uniform() * bound < tabulated_value(out)) return;
      }
    }
  }
}

Matrix DensityModel::sample(Rng& rng, Eigen::Index count) const {
  Matrix out(count, dimension_);
  for (Eigen::Index i = 0; i < count; ++i)
    sample(rng, std::span<double>(out.row(i).data(), dimension_));
  return out;
}

std::string DensityModel::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (form_) {
    case Form::kUniform:
      out << "uniform(d=" << dimension_ << ")";
      break;
    case Form::kHat1d:
      out << "hat_1d(center=" << centers_[0] << ",half_width=" << half_widths_[0]
          << ")";
      break;
    case Form::kProductHat:
      out << "product_hat(d=" << dimension_ << ",centers=[";
      for (std::size_t j = 0; j < centers_.size(); ++j)
        out << (j ? "," : "") << centers_[j];
      out << "],half_widths=[";
      for (std::size_t j = 0; j < half_widths_.size(); ++j)
        out << (j ? "," : "") << half_widths_[j];
      out << "])";
      break;
    case Form::kTabulated:
      out << "tabulated(d=" << dimension_ << ",nodes=" << values_.size() << ")";
      break;
  }
  return out.str();
}

DensityCheck check_density(const DensityModel& density,
                           const QuadratureSpec& quadrature, double tolerance) {
  const QuadratureRule rule(quadrature, density.dimension());
  const Matrix& pts = rule.points();
  DensityCheck check;
  check.min_value = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double v =
        density(std::span<const double>(pts.row(i).data(), pts.cols()));
    sum += v;
    check.min_value = std::min(check.min_value, v);
  }
  check.integral = sum * rule.weight();
  check.nonnegative = check.min_value >= 0.0;
  check.normalized = std::fabs(check.integral - 1.0) <= tolerance;
  return check;
}

double example2_raw_hat(std::span<const double> u) {
  double out = 1.0;
  for (double v : u) out *= std::max(2.0 - 4.0 * std::fabs(v), 0.0);
  return out;
}

}  // namespace synad
