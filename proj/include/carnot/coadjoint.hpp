#ifndef CARNOT_COADJOINT_HPP
#define CARNOT_COADJOINT_HPP

#include "carnot/group_law.hpp"

#include <cstdint>
#include <set>

namespace carnot {

/// Point of the dual g*, coefficients in the dual basis X_1*..X_n*.
using Covector = RationalVector;

/// Orbit-dimension sequence (d_0(l), ..., d_{n-1}(l)).
using DimSeq = std::vector<int>;

struct Stratum {
  DimSeq d;
  std::set<int> jump_set;     // S(d), 1-based indices
  std::set<int> nonjump_set;  // T(d), 1-based indices
  std::vector<Covector> sample_points;
  long sample_count = 0;
  int rank_order_position = 0;  // position in the descending lexicographic order
};

/// coAd(x) = Ad(x^{-1})^T as an n x n matrix of polynomials in x; covectors
/// transform by l -> coAd(x) l.
PolyMatrix coadjoint_action(const GradedLieAlgebra& alg);

/// Skew form B_{ij} = <l, [X_i, X_j]> = sum_k c_{ij}^k l_k.
RationalMatrix bilinear_form(const GradedLieAlgebra& alg, const Covector& l);

/// d_i(l) = rank over Q of the column block B[:, i+1..n], i = 0..n-1.
DimSeq dimension_sequence(const GradedLieAlgebra& alg, const Covector& l);

/// Partition {1..n} = S(d) u T(d) with d_{n+1} = 0 and
/// S(d) = { i : d_i = d_{i+1} + 1 }. Throws std::invalid_argument when the
/// sequence increases or drops by more than one (an upstream bug).
std::pair<std::set<int>, std::set<int>> jump_set(const DimSeq& d);

/// Checks, index by index, that d(l) jumps at i exactly when
/// X_i lies outside g_l + span{X_{i+1}, ..., X_n} (exact rank tests).
ValidationReport jump_criterion_check(const GradedLieAlgebra& alg, const Covector& l);

/// Deterministic rational covector sampler: coordinates are signed odd primes
/// over powers of two, support patterns cycle over all nonzero subsets.
class CovectorSampler {
 public:
  CovectorSampler(int dim, std::uint64_t seed);
  Covector next();

 private:
  int dim_;
  std::uint64_t state_;
  std::uint64_t pattern_counter_;
  std::vector<long> primes_;
  size_t prime_cursor_ = 0;
  std::uint64_t next_raw();
};

/// Samples covectors, groups them by dimension sequence and orders strata by
/// descending lexicographic d. Missing strata are a sampling limitation.
std::vector<Stratum> stratify(const GradedLieAlgebra& alg, long num_samples, std::uint64_t seed);

/// l lies on the cross-section Lambda_{d(l)}: l != 0 and l_i = 0 for all
/// i in S(d(l)).
bool cross_section_membership(const GradedLieAlgebra& alg, const Covector& l);

/// Vergne polarization along the flag of ideals span{X_n}, span{X_{n-1}, X_n},
/// ...: the sum of the radicals of b_l restricted to the flag subspaces.
/// Returns a column basis. Checks (subalgebra, isotropy, codimension
/// rank(B)/2) are asserted; a failure throws std::logic_error.
RationalMatrix vergne_polarization(const GradedLieAlgebra& alg, const Covector& l);

/// True iff <l, [u, v]> = 0 for all columns u, v of h: the character
/// chi_l(exp X) = e^{i<l,X>} is multiplicative on exp(h).
bool character_check(const GradedLieAlgebra& alg, const Covector& l, const RationalMatrix& h);

/// (lambda . l)_j = lambda^{q_j} l_j, from <lambda.l, X> = <l, A_lambda X>.
Covector dilation_on_dual(const GradedLieAlgebra& alg, const Rational& lambda, const Covector& l);

/// For step <= 2 algebras coAd(x) l is affine in x; solves for an orbit point
/// on the cross-section g*_{T(d)} and returns it. nullopt when the algebra has
/// step > 2 or no solution exists.
std::optional<Covector> orbit_cross_section_point(const GradedLieAlgebra& alg, const Covector& l);

}  // namespace carnot

#endif  // CARNOT_COADJOINT_HPP
