#ifndef CARNOT_POLYNOMIAL_HPP
#define CARNOT_POLYNOMIAL_HPP

#include "carnot/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// Sparse multivariate polynomial over the rationals. Exponent vectors have
/// fixed length nvars; zero coefficients are never stored. Arithmetic is
/// exact. Immutable in spirit: operations return new values.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int j);
  static MultiPoly monomial(int nvars, const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int term_count() const { return static_cast<int>(terms_.size()); }

  /// Total (unweighted) degree; -1 for the zero polynomial.
  int total_degree() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& other) { return *this = *this * other; }
  MultiPoly operator*(const Rational& c) const;
  bool operator==(const MultiPoly& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }

  MultiPoly pow(int k) const;
  MultiPoly derivative(int j) const;

  /// Substitutes images[j] for variable j. All images must share a common
  /// variable count, which becomes the result's.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;

  /// Widens to new_nvars variables, mapping variable j to var_map[j].
  MultiPoly embed(int new_nvars, const std::vector<int>& var_map) const;

  Rational evaluate(const RationalVector& point) const;
  double evaluate(const Eigen::VectorXd& point) const;

  /// Weighted degree of every monomial if they all agree, otherwise nullopt.
  /// Zero polynomial reports degree 0.
  std::optional<Rational> homogeneous_weighted_degree(const std::vector<Rational>& var_weights) const;

  /// True if no monomial involves any variable with index >= first_banned.
  bool depends_only_on_first(int first_banned) const;

  std::string to_string(const std::vector<std::string>& var_names) const;

  void add_term(const Exponents& e, const Rational& c);

 private:
  int nvars_;
  TermMap terms_;
};

/// Coordinate map: n polynomials sharing a variable space, e.g. a group law
/// G x G -> G (2n variables) or a map G -> G (n variables).
struct PolyVec {
  std::vector<MultiPoly> comps;

  int size() const { return static_cast<int>(comps.size()); }
  int nvars() const { return comps.empty() ? 0 : comps.front().nvars(); }
  const MultiPoly& operator[](int j) const { return comps.at(j); }
  MultiPoly& operator[](int j) { return comps.at(j); }

  RationalVector evaluate(const RationalVector& point) const;
  Eigen::VectorXd evaluate(const Eigen::VectorXd& point) const;
  bool operator==(const PolyVec& other) const { return comps == other.comps; }
};

/// Matrix with polynomial entries (Ad(x), coAd(x), Jacobians).
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<MultiPoly> entries;  // row-major

  PolyMatrix() = default;
  PolyMatrix(int r, int c, int nvars) : rows(r), cols(c), entries(r * c, MultiPoly(nvars)) {}
  const MultiPoly& operator()(int r, int c) const { return entries.at(r * cols + c); }
  MultiPoly& operator()(int r, int c) { return entries.at(r * cols + c); }

  RationalMatrix evaluate(const RationalVector& point) const;
  PolyMatrix transpose() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  bool is_identity() const;
};

/// Symbolic determinant by cofactor expansion; fine for the small dimensions
/// used here.
MultiPoly determinant(const PolyMatrix& m);

}  // namespace carnot

#endif  // CARNOT_POLYNOMIAL_HPP
