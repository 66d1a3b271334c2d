#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rfem {

/// Square matrix with entries only in |i - j| <= half_bandwidth, stored as
/// one dense row of width 2 * half_bandwidth + 1 per matrix row.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t half_bandwidth);

  std::size_t size() const { return n_; }
  std::size_t half_bandwidth() const { return beta_; }
  bool in_band(std::size_t i, std::size_t j) const {
    return (i > j ? i - j : j - i) <= beta_;
  }

  /// Zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;
  /// Throws Error(Solver) when (i, j) lies outside the band.
  void add(std::size_t i, std::size_t j, double value);

  std::vector<double> multiply(std::span<const double> x) const;
  /// Row-major n x n copy.
  std::vector<double> to_dense() const;
  BandedMatrix scaled(double factor) const;

 private:
  double& at(std::size_t i, std::size_t j) { return data_[i * width_ + (j + beta_ - i)]; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * width_ + (j + beta_ - i)];
  }

  std::size_t n_ = 0;
  std::size_t beta_ = 0;
  std::size_t width_ = 1;
  std::vector<double> data_;

  friend std::optional<std::vector<double>> solve_banded_lu(const BandedMatrix&,
                                                            std::span<const double>, int);
};

/// Doolittle LU inside the band, no pivoting, followed by up to
/// `refinement_steps` rounds of iterative refinement. Returns nullopt when a
/// pivot vanishes relative to the matrix scale.
std::optional<std::vector<double>> solve_banded_lu(const BandedMatrix& a,
                                                   std::span<const double> rhs,
                                                   int refinement_steps = 3);

/// Dense LU with partial (row) pivoting, refined the same way. Returns
/// nullopt for a numerically singular matrix.
std::optional<std::vector<double>> solve_dense_pivoted(const BandedMatrix& a,
                                                       std::span<const double> rhs,
                                                       int refinement_steps = 3);

/// b - A x, accumulated in extended precision for iterative refinement.
std::vector<double> residual(const BandedMatrix& a, std::span<const double> x,
                             std::span<const double> b);

/// max |A x - b| / max |b| (absolute when b is zero).
double relative_residual(const BandedMatrix& a, std::span<const double> x,
                         std::span<const double> b);

}  // namespace rfem
