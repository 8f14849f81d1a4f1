#ifndef CARNOT_DIFF_OP_HPP
#define CARNOT_DIFF_OP_HPP

#include "carnot/group_law.hpp"

namespace carnot {

/// Differential operator with polynomial coefficients, in canonical form
/// sum_I p_I(x) d^I with partials to the right of coefficients and terms
/// merged by partial multi-index.
class DiffOp {
 public:
  using TermMap = std::map<MultiIndex, MultiPoly>;

  explicit DiffOp(int nvars = 0) : nvars_(nvars) {}

  static DiffOp identity(int nvars);
  static DiffOp partial(int nvars, int j);
  /// coeff(x) * d^I
  static DiffOp term(const MultiPoly& coeff, const MultiIndex& partial);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp operator*(const Rational& c) const;
  bool operator==(const DiffOp& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }

  /// Applies the operator to a polynomial.
  MultiPoly apply(const MultiPoly& f) const;

  void add_term(const MultiIndex& partial, const MultiPoly& coeff);

  std::string to_string(const std::vector<std::string>& var_names) const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Operator composition (a then b acting first): (compose(a,b) f) = a(b(f)),
/// expanded to canonical form with the Leibniz rule.
DiffOp compose(const DiffOp& a, const DiffOp& b);

/// compose(a, b) - compose(b, a).
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// Left-invariant fields X_j = sum_k (dm_k/dy_j)(x, 0) d/dx_k.
std::vector<DiffOp> left_invariant_fields(const GradedLieAlgebra& alg);

/// Right-invariant fields Y_j = sum_k (dm_k/dx_j)(0, x) d/dx_k.
std::vector<DiffOp> right_invariant_fields(const GradedLieAlgebra& alg);

/// Checks X_j = d_j + sum_{q_k > q_j} P_jk d_k with P_jk exactly
/// (q_k - q_j)-homogeneous and free of x_k..x_n.
ValidationReport verify_vectorfield_form(const GradedLieAlgebra& alg,
                                         const std::vector<DiffOp>& fields);

/// X^alpha = X_1^{alpha_1} ... X_n^{alpha_n}, ordered composition.
DiffOp power_Xalpha(const GradedLieAlgebra& alg, const MultiIndex& alpha);

struct RocklandCandidate {
  DiffOp op;
  Rational degree;  // 2q, q the least common multiple of the weights
};

/// sum_j (-1)^{q/q_j} X_j^{2q/q_j}; the standard homogeneous hypoelliptic
/// candidate attached to the grading. The Rockland condition itself is not
/// verified here.
RocklandCandidate rockland_candidate(const GradedLieAlgebra& alg);

/// nu such that op(f o alpha_lambda) = lambda^nu (op f) o alpha_lambda on
/// all polynomials, checked symbolically; nullopt if inhomogeneous.
std::optional<Rational> homogeneity_degree(const GradedLieAlgebra& alg, const DiffOp& op);

}  // namespace carnot

#endif  // CARNOT_DIFF_OP_HPP
