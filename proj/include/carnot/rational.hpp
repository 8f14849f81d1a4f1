#ifndef CARNOT_RATIONAL_HPP
#define CARNOT_RATIONAL_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

/// Exact rational scalar. All symbolic computations in the library are
/// carried out over this type; no rounding ever occurs on this path.
using Rational = mpq_class;

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
inline Rational parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// q^k for k >= 0.
inline Rational rational_pow(const Rational& q, long k) {
  if (k < 0) throw std::invalid_argument("rational_pow: negative exponent");
  Rational r = 1;
  Rational base = q;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

/// Exact k-th root if both numerator and denominator are perfect k-th powers.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  if (k == 0) throw std::invalid_argument("exact_root: k = 0");
  if (k == 1) return q;
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num_root, den_root;
  const bool num_exact = mpz_root(num_root.get_mpz_t(), q.get_num().get_mpz_t(), k) != 0;
  const bool den_exact = mpz_root(den_root.get_mpz_t(), q.get_den().get_mpz_t(), k) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return r;
}

/// lambda^e for rational exponent e = a/b, exact when the b-th root of
/// lambda^a exists over the rationals.
inline std::optional<Rational> exact_rational_power(const Rational& lambda, const Rational& e) {
  if (sgn(lambda) <= 0) throw std::invalid_argument("exact_rational_power: base must be positive");
  const mpz_class& a = e.get_num();
  const mpz_class& b = e.get_den();
  if (!a.fits_slong_p() || !b.fits_ulong_p()) return std::nullopt;
  long ai = a.get_si();
  Rational base = ai >= 0 ? rational_pow(lambda, ai) : Rational(1) / rational_pow(lambda, -ai);
  return exact_root(base, b.get_ui());
}

inline Rational rational_lcm(const Rational& a, const Rational& b) {
  // lcm over Q: lcm of numerators / gcd of denominators.
  mpz_class num, den;
  mpz_lcm(num.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_gcd(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace carnot

namespace Eigen {

template <>
struct NumTraits<carnot::Rational> : GenericNumTraits<carnot::Rational> {
  typedef carnot::Rational Real;
  typedef carnot::Rational NonInteger;
  typedef carnot::Rational Nested;
  typedef carnot::Rational Literal;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 40
  };
};

}  // namespace Eigen

#endif  // CARNOT_RATIONAL_HPP
