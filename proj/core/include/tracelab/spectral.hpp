#pragma once

#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

// f(t) = sum_k coef[k] * exp(-rate[k] * t).
struct ExpSum {
  std::vector<double> coef;
  std::vector<double> rate;

  double operator()(double t) const;
  // Integral over [from, infinity); infinite if a zero rate carries mass.
  double integral(double from = 0.0) const;
  ExpSum& add(const ExpSum& other, double scale);
};

// Eigendecomposition of the generator killed on entering a target set, using
// reversibility (alpha_x L(x,y) = alpha_y L(y,x)) to symmetrize. With an
// empty target this is the full semigroup.
class KilledSpectrum {
 public:
  KilledSpectrum(const WeightedMultiGraph& g, std::span<const VertexId> target, std::size_t cap = kDenseCap);

  // P^z(T_B > t); identically zero for z in the target.
  const ExpSum& survival(VertexId z) const { return survival_[z]; }
  double survival(VertexId z, double t) const { return survival_[z](t); }
  std::vector<double> survival_all(double t) const;

  // Killed semigroup exp(tQ) on the complement, indexed by graph vertices
  // (rows and columns of target vertices are zero).
  DenseMatrix semigroup(double t) const;

  const std::vector<double>& decay_rates() const { return mu_; }
  const std::vector<VertexId>& outside() const { return outside_; }

 private:
  std::size_t n_;
  std::vector<VertexId> outside_;
  std::vector<double> mu_;
  std::vector<double> left_;   // |outside| x |outside|: alpha_z^{-1/2} U_{zk}
  std::vector<double> right_;  // |outside| x |outside|: U_{zk} alpha_z^{1/2}
  std::vector<ExpSum> survival_;
};

}  // namespace tracelab
