#include "crk/core.hpp"

#include <cmath>
#include <cstdio>

#include "crk/errors.hpp"

namespace crk {

namespace {

void require_finite(std::span<const double> entries, const char* what) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) {
      throw NonFiniteError(std::string(what) + ": non-finite entry at index " + std::to_string(i));
    }
  }
}

}  // namespace

Vec::Vec(std::vector<double> entries) : entries_(std::move(entries)) {
  require_finite(entries_, "Vec");
}

Vec::Vec(std::initializer_list<double> entries) : Vec(std::vector<double>(entries)) {}

Vec Vec::zeros(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }

Vec concat(const Vec& first, const Vec& second) {
  std::vector<double> out;
  out.reserve(first.dim() + second.dim());
  out.insert(out.end(), first.begin(), first.end());
  out.insert(out.end(), second.begin(), second.end());
  return Vec(std::move(out));
}

Vec concat(std::span<const Vec> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  std::vector<double> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return Vec(std::move(out));
}

std::pair<Vec, Vec> split(const Vec& v, std::size_t head_dim) {
  if (head_dim > v.dim()) throw DimensionError("split index out of range", v.dim(), head_dim);
  return {slice(v, 0, head_dim), slice(v, head_dim, v.dim() - head_dim)};
}

Vec slice(const Vec& v, std::size_t offset, std::size_t length) {
  if (offset + length > v.dim()) throw DimensionError("slice out of range", v.dim(), offset + length);
  auto first = v.begin() + static_cast<std::ptrdiff_t>(offset);
  return Vec(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(length)));
}

Vec add_scaled(const Vec& base, double scale, const Vec& direction) {
  if (base.dim() != direction.dim()) throw DimensionError("add_scaled", base.dim(), direction.dim());
  std::vector<double> out(base.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + scale * direction[i];
  return Vec(std::move(out));
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out + ")";
}

LinearMap::LinearMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("LinearMap entry count", rows_ * cols_, entries_.size());
  }
  require_finite(entries_, "LinearMap");
}

LinearMap LinearMap::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return LinearMap(n, n, std::move(e));
}

LinearMap LinearMap::zero(std::size_t rows, std::size_t cols) {
  return LinearMap(rows, cols, std::vector<double>(rows * cols, 0.0));
}

LinearMap LinearMap::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> e;
  e.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("ragged matrix row", cols, row.size());
    e.insert(e.end(), row.begin(), row.end());
  }
  return LinearMap(rows.size(), cols, std::move(e));
}

LinearMap LinearMap::diagonal(const std::vector<double>& diag) {
  const std::size_t n = diag.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return LinearMap(n, n, std::move(e));
}

LinearMap LinearMap::selection(std::size_t cols, const std::vector<std::size_t>& source_of_row) {
  std::vector<double> e(source_of_row.size() * cols, 0.0);
  for (std::size_t r = 0; r < source_of_row.size(); ++r) {
    if (source_of_row[r] >= cols) throw DimensionError("selection column", cols, source_of_row[r]);
    e[r * cols + source_of_row[r]] = 1.0;
  }
  return LinearMap(source_of_row.size(), cols, std::move(e));
}

bool LinearMap::is_permutation() const {
  if (rows_ != cols_) return false;
  std::vector<int> col_hits(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    int row_hits = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const double x = at(r, c);
      if (x == 1.0) {
        ++row_hits;
        ++col_hits[c];
      } else if (x != 0.0) {
        return false;
      }
    }
    if (row_hits != 1) return false;
  }
  for (int hits : col_hits) {
    if (hits != 1) return false;
  }
  return true;
}

LinearMap LinearMap::transpose() const {
  std::vector<double> e(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = at(r, c);
  return LinearMap(cols_, rows_, std::move(e));
}

Vec linear_apply(const LinearMap& m, const Vec& v) {
  if (v.dim() != m.cols()) throw DimensionError("linear_apply: vector vs map columns", m.cols(), v.dim());
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r, c) * v[c];
    out[r] = acc;
  }
  return Vec(std::move(out));
}

LinearMap linear_compose(const LinearMap& second, const LinearMap& first) {
  if (second.cols() != first.rows()) {
    throw DimensionError("linear_compose: inner dimensions", second.cols(), first.rows());
  }
  std::vector<double> e(second.rows() * first.cols(), 0.0);
  for (std::size_t r = 0; r < second.rows(); ++r)
    for (std::size_t k = 0; k < second.cols(); ++k) {
      const double a = second.at(r, k);
      if (a == 0.0) continue;
      for (std::size_t c = 0; c < first.cols(); ++c) e[r * first.cols() + c] += a * first.at(k, c);
    }
  return LinearMap(second.rows(), first.cols(), std::move(e));
}

LinearMap block_diagonal(const LinearMap& upper, const LinearMap& lower) {
  const std::size_t rows = upper.rows() + lower.rows();
  const std::size_t cols = upper.cols() + lower.cols();
  std::vector<double> e(rows * cols, 0.0);
  for (std::size_t r = 0; r < upper.rows(); ++r)
    for (std::size_t c = 0; c < upper.cols(); ++c) e[r * cols + c] = upper.at(r, c);
  for (std::size_t r = 0; r < lower.rows(); ++r)
    for (std::size_t c = 0; c < lower.cols(); ++c)
      e[(upper.rows() + r) * cols + upper.cols() + c] = lower.at(r, c);
  return LinearMap(rows, cols, std::move(e));
}

LinearMap block_diagonal_power(const LinearMap& m, std::size_t copies) {
  LinearMap out = LinearMap::zero(0, 0);
  for (std::size_t i = 0; i < copies; ++i) out = block_diagonal(out, m);
  return out;
}

std::string to_string(Interface iface) {
  return "(" + std::to_string(iface.in_dim()) + "," + std::to_string(iface.out_dim()) + ")";
}

StepSize::StepSize(double h) : h_(h) {
  if (!std::isfinite(h) || !(h > 0.0)) throw Error("step size must be positive and finite, got " + format_real(h));
}

}  // namespace crk
