#pragma once

// Finite-dimensional real vectors, linear maps and box interfaces.
//
// Product spaces A x B are represented by concatenating coordinate vectors,
// so the associators and unitors of the monoidal structure are identities.
// A dimension-0 vector stands for the one-point set.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crk {

class Vec {
 public:
  Vec() = default;
  // Throws NonFiniteError if any entry is NaN or infinite.
  explicit Vec(std::vector<double> entries);
  Vec(std::initializer_list<double> entries);

  static Vec zeros(std::size_t dim);

  std::size_t dim() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& values() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> entries_;
};

Vec concat(const Vec& first, const Vec& second);
Vec concat(std::span<const Vec> parts);
// Splits v into its first `head_dim` coordinates and the rest.
std::pair<Vec, Vec> split(const Vec& v, std::size_t head_dim);
Vec slice(const Vec& v, std::size_t offset, std::size_t length);
// base + scale * direction
Vec add_scaled(const Vec& base, double scale, const Vec& direction);

// "(1, 2.5, -3)" with 17 significant digits per entry.
std::string to_string(const Vec& v);
// Shortest round-trip decimal representation ("%.17g").
std::string format_real(double value);

class LinearMap {
 public:
  // Row-major entries; throws DimensionError if entries.size() != rows*cols.
  LinearMap(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static LinearMap identity(std::size_t n);
  static LinearMap zero(std::size_t rows, std::size_t cols);
  static LinearMap from_rows(const std::vector<std::vector<double>>& rows);
  static LinearMap diagonal(const std::vector<double>& diag);
  // Row i selects coordinate source_of_row[i] of the input.
  static LinearMap selection(std::size_t cols, const std::vector<std::size_t>& source_of_row);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const double> entries() const noexcept { return entries_; }

  // True iff every entry is 0 or 1 and every row and column has exactly one 1.
  bool is_permutation() const;
  LinearMap transpose() const;

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Vec linear_apply(const LinearMap& m, const Vec& v);
// Matrix product second * first, i.e. apply `first`, then `second`.
LinearMap linear_compose(const LinearMap& second, const LinearMap& first);
LinearMap block_diagonal(const LinearMap& upper, const LinearMap& lower);
// block_diagonal(m, m, ..., m) with `copies` blocks.
LinearMap block_diagonal_power(const LinearMap& m, std::size_t copies);

// The port signature (A, B) of a box: input dimension and output dimension.
class Interface {
 public:
  constexpr Interface() = default;
  constexpr Interface(std::size_t in_dim, std::size_t out_dim) : in_dim_(in_dim), out_dim_(out_dim) {}

  constexpr std::size_t in_dim() const noexcept { return in_dim_; }
  constexpr std::size_t out_dim() const noexcept { return out_dim_; }

  friend constexpr bool operator==(const Interface&, const Interface&) = default;

 private:
  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
};

constexpr Interface interface_tensor(Interface first, Interface second) {
  return {first.in_dim() + second.in_dim(), first.out_dim() + second.out_dim()};
}

std::string to_string(Interface iface);

// Positive, finite RK step size h.
class StepSize {
 public:
  explicit StepSize(double h);
  double value() const noexcept { return h_; }
  friend bool operator==(const StepSize&, const StepSize&) = default;

 private:
  double h_;
};

}  // namespace crk
