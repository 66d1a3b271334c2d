#include "rfem/banded.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t half_bandwidth)
    : n_(n),
      beta_(half_bandwidth),
      width_(2 * half_bandwidth + 1),
      data_(n * (2 * half_bandwidth + 1), 0.0) {}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const {
  return in_band(i, j) ? at(i, j) : 0.0;
}

void BandedMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) {
    std::ostringstream os;
    os << "write to (" << i << ", " << j << ") outside band of half-width " << beta_;
    throw Error(ErrorKind::Solver, os.str());
  }
  at(i, j) += value;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > beta_ ? i - beta_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + beta_);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += at(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

std::vector<double> BandedMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > beta_ ? i - beta_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + beta_);
    for (std::size_t j = lo; j <= hi; ++j) d[i * n_ + j] = at(i, j);
  }
  return d;
}

BandedMatrix BandedMatrix::scaled(double factor) const {
  BandedMatrix out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

namespace {

// Repeats x += solve(b - A x) with an extended-precision residual until the
// correction stops shrinking or drops to roundoff.
template <typename Solve>
void refine(const BandedMatrix& a, std::span<const double> b, std::vector<double>& x,
            int steps, Solve&& solve) {
  double prev = INFINITY;
  for (int s = 0; s < steps; ++s) {
    const auto dx = solve(residual(a, x, b));
    double step = 0.0, size = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      step = std::max(step, std::abs(dx[i]));
      size = std::max(size, std::abs(x[i]));
    }
    if (!(step < prev)) break;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    prev = step;
    if (step <= 1e-16 * size) break;
  }
}

}  // namespace

std::optional<std::vector<double>> solve_banded_lu(const BandedMatrix& a,
                                                   std::span<const double> rhs,
                                                   int refinement_steps) {
  const std::size_t n = a.size();
  const std::size_t beta = a.half_bandwidth();
  BandedMatrix lu = a;

  double scale = 0.0;
  for (double v : lu.data_) scale = std::max(scale, std::abs(v));
  const double tiny = scale * 1e-15;

  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = lu.at(k, k);
    if (!(std::abs(pivot) > tiny)) return std::nullopt;
    const std::size_t last = std::min(n - 1, k + beta);
    for (std::size_t i = k + 1; i <= last; ++i) {
      const double l = lu.at(i, k) / pivot;
      lu.at(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j <= last; ++j) lu.at(i, j) -= l * lu.at(k, j);
    }
  }

  auto substitute = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i > beta ? i - beta : 0;
      for (std::size_t j = lo; j < i; ++j) x[i] -= lu.at(i, j) * x[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t hi = std::min(n - 1, i + beta);
      for (std::size_t j = i + 1; j <= hi; ++j) x[i] -= lu.at(i, j) * x[j];
      x[i] /= lu.at(i, i);
    }
    return x;
  };
  auto x = substitute(std::vector<double>(rhs.begin(), rhs.end()));
  refine(a, rhs, x, refinement_steps, substitute);
  return x;
}

std::optional<std::vector<double>> solve_dense_pivoted(const BandedMatrix& a,
                                                       std::span<const double> rhs,
                                                       int refinement_steps) {
  const auto n = static_cast<Eigen::Index>(a.size());
  const auto dense = a.to_dense();
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(dense.data(), n, n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > 1e-15)) return std::nullopt;
  auto substitute = [&](const std::vector<double>& r) {
    const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(r.data(), n));
    return std::vector<double>(x.data(), x.data() + n);
  };
  auto x = substitute(std::vector<double>(rhs.begin(), rhs.end()));
  refine(a, rhs, x, refinement_steps, substitute);
  return x;
}

std::vector<double> residual(const BandedMatrix& a, std::span<const double> x,
                             std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t beta = a.half_bandwidth();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double acc = b[i];
    const std::size_t lo = i > beta ? i - beta : 0;
    const std::size_t hi = std::min(n - 1, i + beta);
    for (std::size_t j = lo; j <= hi; ++j) acc -= static_cast<long double>(a(i, j)) * x[j];
    r[i] = static_cast<double>(acc);
  }
  return r;
}

double relative_residual(const BandedMatrix& a, std::span<const double> x,
                         std::span<const double> b) {
  const auto ax = a.multiply(x);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = std::abs(ax[i] - b[i]);
    worst = std::isfinite(r) ? std::max(worst, r) : INFINITY;
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace rfem
