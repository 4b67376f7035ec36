#include "tracelab/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab {

double ExpSum::operator()(double t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coef.size(); ++k) s += coef[k] * std::exp(-rate[k] * t);
  return s;
}

double ExpSum::integral(double from) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    if (coef[k] == 0.0) continue;
    if (rate[k] <= 0.0) return std::numeric_limits<double>::infinity();
    s += coef[k] * std::exp(-rate[k] * from) / rate[k];
  }
  return s;
}

ExpSum& ExpSum::add(const ExpSum& other, double scale) {
  if (coef.empty()) {
    rate = other.rate;
    coef.assign(other.coef.size(), 0.0);
  }
  for (std::size_t k = 0; k < other.coef.size(); ++k) coef[k] += scale * other.coef[k];
  return *this;
}

KilledSpectrum::KilledSpectrum(const WeightedMultiGraph& g, std::span<const VertexId> target, std::size_t cap)
    : n_(g.num_vertices()) {
  if (n_ > cap) fail(ErrorCode::TooLargeForDense, std::to_string(n_) + " vertices");
  const auto in = indicator(n_, target);
  std::vector<std::size_t> local(n_, 0);
  for (VertexId v = 0; v < n_; ++v)
    if (!in[v]) {
      local[v] = outside_.size();
      outside_.push_back(v);
    }
  const std::size_t m = outside_.size();
  survival_.assign(n_, ExpSum{});
  if (m == 0) return;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const VertexId x = outside_[i];
    for (EdgeId e : g.incident(x)) {
      if (g.is_loop(e)) continue;
      const VertexId y = g.other(e, x);
      a(i, i) -= g.beta(e) / g.alpha(x);
      if (y != kCemetery && !in[y]) a(i, local[y]) += g.beta(e) / std::sqrt(g.alpha(x) * g.alpha(y));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NonConvergence, "eigendecomposition failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXd& u = solver.eigenvectors();

  mu_.resize(m);
  for (std::size_t k = 0; k < m; ++k) mu_[k] = std::max(0.0, -lambda(k));
  left_.resize(m * m);
  right_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sa = std::sqrt(g.alpha(outside_[i]));
    for (std::size_t k = 0; k < m; ++k) {
      left_[i * m + k] = u(i, k) / sa;
      right_[i * m + k] = u(i, k) * sa;
    }
  }
  std::vector<double> colsum(m, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j) colsum[k] += right_[j * m + k];
  for (std::size_t i = 0; i < m; ++i) {
    ExpSum f;
    f.rate = mu_;
    f.coef.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      f.coef[k] = left_[i * m + k] * colsum[k];
      // Round-off leaks between decoupled blocks; it matters only for modes with (near) zero rate.
      if (std::abs(f.coef[k]) < 1e-12) f.coef[k] = 0.0;
    }
    survival_[outside_[i]] = std::move(f);
  }
}

std::vector<double> KilledSpectrum::survival_all(double t) const {
  std::vector<double> out(n_, 0.0);
  for (VertexId z : outside_) out[z] = std::clamp(survival_[z](t), 0.0, 1.0);
  return out;
}

DenseMatrix KilledSpectrum::semigroup(double t) const {
  const std::size_t m = outside_.size();
  DenseMatrix out(n_, n_);
  std::vector<double> decay(m);
  for (std::size_t k = 0; k < m; ++k) decay[k] = std::exp(-mu_[k] * t);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += left_[i * m + k] * decay[k] * right_[j * m + k];
      out(outside_[i], outside_[j]) = s;
    }
  return out;
}

}  // namespace tracelab
