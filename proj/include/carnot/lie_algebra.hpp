#ifndef CARNOT_LIE_ALGEBRA_HPP
#define CARNOT_LIE_ALGEBRA_HPP

#include "carnot/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace carnot {

/// Multi-index alpha in N_0^n.
using MultiIndex = std::vector<int>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A graded nilpotent Lie algebra with rational dilation weights and exact
/// rational structure constants. Single source of truth for a group: the
/// group law, invariant operators and the coadjoint machinery are all derived
/// from this data.
///
/// Structure constants are stored for i < j only; antisymmetry is synthesized.
/// Instances are immutable after construction and safe to share across threads.
class GradedLieAlgebra {
 public:
  using BracketMap = std::map<std::pair<int, int>, std::map<int, Rational>>;

  GradedLieAlgebra(std::string name, std::vector<Rational> weights, BracketMap brackets,
                   std::vector<std::string> basis_labels);

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(int j) const { return weights_.at(j); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const BracketMap& brackets() const { return brackets_; }

  /// c_{ij}^k with antisymmetry synthesized; zero for i == j.
  Rational structure_constant(int i, int j, int k) const;

  /// [u, v] for exact coefficient vectors.
  RationalVector bracket(const RationalVector& u, const RationalVector& v) const;

  /// ad(u) as a matrix, columns ad(u) e_j = [u, e_j].
  RationalMatrix ad(const RationalVector& u) const;

 private:
  std::string name_;
  std::vector<Rational> weights_;
  BracketMap brackets_;  // key (i, j) with i < j
  std::vector<std::string> labels_;
};

/// Checks antisymmetry bookkeeping, weight normalization and the Jacobi
/// identity, exactly over the rationals. Violations are report entries,
/// never exceptions.
ValidationReport validate_algebra(const GradedLieAlgebra& alg);

/// Checks c_{ij}^k != 0  =>  q_k = q_i + q_j.
ValidationReport validate_dilation_compatibility(const GradedLieAlgebra& alg);

/// Q = sum of the weights.
Rational homogeneous_dimension(const GradedLieAlgebra& alg);

/// Length of the lower central series, by exact iterated bracket spans.
/// Throws std::runtime_error("not nilpotent") if the series does not reach
/// zero within dim steps.
int nilpotency_step(const GradedLieAlgebra& alg);

/// (alpha_lambda x)_j = lambda^{q_j} x_j, exact. Throws std::domain_error if
/// lambda <= 0 or some lambda^{q_j} is not rational.
RationalVector dilation_coordinates(const GradedLieAlgebra& alg, const Rational& lambda,
                                    const RationalVector& x);

/// Floating-point dilation for numeric work.
Eigen::VectorXd dilation_coordinates(const GradedLieAlgebra& alg, double lambda,
                                     const Eigen::VectorXd& x);

/// Homogeneous degree [alpha] = sum alpha_j q_j.
Rational homogeneous_degree(const GradedLieAlgebra& alg, const MultiIndex& alpha);

/// Least positive rational q with q / q_j a positive integer for every j.
Rational weight_common_multiple(const GradedLieAlgebra& alg);

}  // namespace carnot

#endif  // CARNOT_LIE_ALGEBRA_HPP
