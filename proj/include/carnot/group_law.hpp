#ifndef CARNOT_GROUP_LAW_HPP
#define CARNOT_GROUP_LAW_HPP

#include "carnot/lie_algebra.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

/// The group law m(x, y) in exponential coordinates as a PolyVec in 2n
/// variables (x_1..x_n, y_1..y_n): the Dynkin form of the
/// Baker-Campbell-Hausdorff series, summed exactly and truncated at the
/// nilpotency step. Satisfies m(x, 0) = x and m(0, y) = y.
PolyVec bch_product(const GradedLieAlgebra& alg);

/// Checks the triangular shape of the law: m_j - x_j - y_j must be a sum of
/// monomials x^alpha y^beta with alpha, beta != 0 and [alpha] + [beta] = q_j.
ValidationReport verify_triangular_form(const GradedLieAlgebra& alg, const PolyVec& m);

/// Inverse map x -> x^{-1} in exponential coordinates (which is -x);
/// checked internally against m(x, inv(x)) = 0 as an exact identity.
PolyVec group_inverse(const GradedLieAlgebra& alg);

/// Adjoint representation Ad(x) = exp(ad_x) as an n x n matrix of
/// polynomials in x; the series is finite by nilpotency.
PolyMatrix adjoint_action(const GradedLieAlgebra& alg);

/// m(m(x,y),z) - m(x,m(y,z)) as polynomials in 3n variables; all components
/// are zero iff the law is associative.
PolyVec associativity_defect(const GradedLieAlgebra& alg, const PolyVec& m);

/// Jacobian matrix of y -> m(x, y), entries polynomials in (x, y).
PolyMatrix group_law_jacobian_y(const GradedLieAlgebra& alg, const PolyVec& m);

/// Checks that every monomial of m_j is q_j-homogeneous when both x and y
/// blocks carry the dilation weights (dilations are group automorphisms).
ValidationReport verify_dilation_automorphism(const GradedLieAlgebra& alg, const PolyVec& m);

/// Evaluates the group product at numeric points; pt = (x, y) concatenated.
RationalVector evaluate_product(const PolyVec& m, const RationalVector& x,
                                const RationalVector& y);
Eigen::VectorXd evaluate_product(const PolyVec& m, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y);

/// Fast double-precision evaluator for a PolyVec, for grid-scale work.
class CompiledPolyVec {
 public:
  CompiledPolyVec() = default;
  explicit CompiledPolyVec(const PolyVec& p);
  int size() const { return static_cast<int>(comps_.size()); }
  int nvars() const { return nvars_; }
  void evaluate(const double* point, double* out) const;
  Eigen::VectorXd evaluate(const Eigen::VectorXd& point) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<int, int>> factors;  // (variable, exponent)
  };
  int nvars_ = 0;
  std::vector<std::vector<Term>> comps_;
};

/// Group product evaluator bundle used by the numeric modules.
struct GroupEvaluator {
  explicit GroupEvaluator(const GradedLieAlgebra& alg);

  int dim;
  double homogeneous_dim;
  std::vector<double> weights;
  CompiledPolyVec product;  // m(x, y), 2n vars

  /// x * y
  Eigen::VectorXd multiply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// x^{-1} y
  Eigen::VectorXd left_quotient(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// alpha_lambda(x)
  Eigen::VectorXd dilate_point(double lambda, const Eigen::VectorXd& x) const;
};

}  // namespace carnot

#endif  // CARNOT_GROUP_LAW_HPP
