#include "carnot/coadjoint.hpp"

#include "carnot/rational_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace carnot {

PolyMatrix coadjoint_action(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  const PolyMatrix ad = adjoint_action(alg);
  // Substitute x -> -x to get Ad(x^{-1}), then transpose.
  std::vector<MultiPoly> minus_x;
  for (int j = 0; j < n; ++j) minus_x.push_back(-MultiPoly::variable(n, j));
  PolyMatrix ad_inv(n, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) ad_inv(r, c) = ad(r, c).substitute(minus_x);
  return ad_inv.transpose();
}

RationalMatrix bilinear_form(const GradedLieAlgebra& alg, const Covector& l) {
  const int n = alg.dim();
  if (l.size() != n) throw std::invalid_argument("covector arity mismatch");
  RationalMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = 0;
  for (const auto& [key, terms] : alg.brackets()) {
    const auto [i, j] = key;
    Rational value = 0;
    for (const auto& [k, c] : terms) value += c * l(k);
    b(i, j) = value;
    b(j, i) = -value;
  }
  return b;
}

DimSeq dimension_sequence(const GradedLieAlgebra& alg, const Covector& l) {
  const int n = alg.dim();
  const RationalMatrix b = bilinear_form(alg, l);
  DimSeq d(n);
  for (int i = 0; i < n; ++i) {
    // Columns i+1..n in 1-based terms, i.e. block starting at column i.
    RationalMatrix block = b.rightCols(n - i);
    d[i] = rank<Rational>(block);
  }
  return d;
}

std::pair<std::set<int>, std::set<int>> jump_set(const DimSeq& d) {
  const int n = static_cast<int>(d.size());
  std::set<int> s, t;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1 < n) ? d[i + 1] : 0;
    const int step = d[i] - next;
    if (step == 1) {
      s.insert(i + 1);
    } else if (step == 0) {
      t.insert(i + 1);
    } else {
      std::ostringstream msg;
      msg << "dimension sequence steps must be 0 or 1; got step " << step << " at position "
          << i + 1;
      throw std::invalid_argument(msg.str());
    }
  }
  return {s, t};
}

ValidationReport jump_criterion_check(const GradedLieAlgebra& alg, const Covector& l) {
  ValidationReport report;
  const int n = alg.dim();
  const DimSeq d = dimension_sequence(alg, l);
  const auto [s, t] = jump_set(d);

  const RationalMatrix b = bilinear_form(alg, l);
  const RationalMatrix radical = nullspace<Rational>(b);  // g_l

  for (int i = 1; i <= n; ++i) {
    // Span of g_l and X_{i+1}..X_n.
    RationalMatrix span(n, radical.cols() + (n - i));
    span.leftCols(radical.cols()) = radical;
    for (int c = 0; c < n - i; ++c) {
      for (int r = 0; r < n; ++r) span(r, radical.cols() + c) = (r == i + c) ? 1 : 0;
    }
    RationalVector ei(n);
    for (int r = 0; r < n; ++r) ei(r) = (r == i - 1) ? 1 : 0;
    const bool outside = !in_span<Rational>(span, ei);
    const bool jumps = s.count(i) > 0;
    if (outside != jumps) {
      std::ostringstream msg;
      msg << "index " << i << ": dimension sequence " << (jumps ? "jumps" : "does not jump")
          << " but X_i is " << (outside ? "outside" : "inside") << " g_l + span{X_{i+1}..X_n}";
      report.violations.push_back(msg.str());
    }
  }
  return report;
}

CovectorSampler::CovectorSampler(int dim, std::uint64_t seed)
    : dim_(dim), state_(seed ^ 0x9e3779b97f4a7c15ULL), pattern_counter_(0) {
  // Odd primes used as numerators; enough for many draws without repetition
  // inside a single covector.
  const int limit = 2000;
  std::vector<bool> sieve(limit, true);
  for (int p = 2; p < limit; ++p) {
    if (!sieve[p]) continue;
    if (p % 2 == 1) primes_.push_back(p);
    for (int q = 2 * p; q < limit; q += p) sieve[q] = false;
  }
}

std::uint64_t CovectorSampler::next_raw() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Covector CovectorSampler::next() {
  const std::uint64_t num_patterns = (1ULL << dim_) - 1;
  const std::uint64_t pattern = 1 + (pattern_counter_++ % num_patterns);
  Covector l(dim_);
  for (int j = 0; j < dim_; ++j) l(j) = 0;
  for (int j = 0; j < dim_; ++j) {
    if (!(pattern & (1ULL << j))) continue;
    const std::uint64_t r = next_raw();
    const long prime = primes_[prime_cursor_++ % primes_.size()];
    const int exponent = 1 + static_cast<int>(r % 6);
    const bool negative = (r >> 8) & 1;
    Rational value(prime, 1L << exponent);
    value.canonicalize();
    l(j) = negative ? Rational(-value) : value;
  }
  return l;
}

std::vector<Stratum> stratify(const GradedLieAlgebra& alg, long num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("num_samples must be >= 1");
  CovectorSampler sampler(alg.dim(), seed);
  std::map<DimSeq, Stratum> groups;
  for (long s = 0; s < num_samples; ++s) {
    Covector l = sampler.next();
    DimSeq d = dimension_sequence(alg, l);
    auto [it, inserted] = groups.try_emplace(d);
    Stratum& stratum = it->second;
    if (inserted) {
      stratum.d = d;
      auto [js, ts] = jump_set(d);
      stratum.jump_set = std::move(js);
      stratum.nonjump_set = std::move(ts);
    }
    stratum.sample_count += 1;
    if (stratum.sample_points.size() < 3) stratum.sample_points.push_back(std::move(l));
  }
  std::vector<Stratum> strata;
  for (auto& [d, stratum] : groups) strata.push_back(std::move(stratum));
  std::sort(strata.begin(), strata.end(),
            [](const Stratum& a, const Stratum& b) { return a.d > b.d; });
  for (size_t i = 0; i < strata.size(); ++i) strata[i].rank_order_position = static_cast<int>(i);
  return strata;
}

bool cross_section_membership(const GradedLieAlgebra& alg, const Covector& l) {
  bool nonzero = false;
  for (int j = 0; j < l.size(); ++j) {
    if (l(j) != 0) nonzero = true;
  }
  if (!nonzero) return false;
  const DimSeq d = dimension_sequence(alg, l);
  const auto [s, t] = jump_set(d);
  for (int i : s) {
    if (l(i - 1) != 0) return false;
  }
  return true;
}

RationalMatrix vergne_polarization(const GradedLieAlgebra& alg, const Covector& l) {
  const int n = alg.dim();
  const RationalMatrix b = bilinear_form(alg, l);

  // Increasing flag of ideals W_i = span{X_{n-i+1}, ..., X_n}.
  std::vector<RationalVector> generators;
  for (int i = 1; i <= n; ++i) {
    const int offset = n - i;  // first basis index of W_i
    // Gram block of b_l on W_i and its kernel.
    RationalMatrix gram(i, i);
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < i; ++c) gram(r, c) = b(offset + r, offset + c);
    RationalMatrix rad = nullspace<Rational>(gram);
    for (int c = 0; c < rad.cols(); ++c) {
      RationalVector v(n);
      for (int r = 0; r < n; ++r) v(r) = 0;
      for (int r = 0; r < i; ++r) v(offset + r) = rad(r, c);
      generators.push_back(std::move(v));
    }
  }
  RationalMatrix gen_matrix(n, static_cast<int>(generators.size()));
  for (int c = 0; c < gen_matrix.cols(); ++c) gen_matrix.col(c) = generators[c];
  RationalMatrix h = column_space_basis<Rational>(gen_matrix);

  // Subalgebra.
  for (int a = 0; a < h.cols(); ++a) {
    for (int c = a + 1; c < h.cols(); ++c) {
      const RationalVector br = alg.bracket(h.col(a), h.col(c));
      if (!in_span<Rational>(h, br)) {
        throw std::logic_error("vergne_polarization: output is not a subalgebra");
      }
    }
  }
  // Isotropy.
  for (int a = 0; a < h.cols(); ++a) {
    for (int c = 0; c < h.cols(); ++c) {
      Rational pairing = 0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) pairing += h(r, a) * b(r, s) * h(s, c);
      if (pairing != 0) throw std::logic_error("vergne_polarization: output is not isotropic");
    }
  }
  // Codimension rank(B)/2.
  const int rank_b = rank<Rational>(RationalMatrix(b));
  if (2 * (n - static_cast<int>(h.cols())) != rank_b) {
    throw std::logic_error("vergne_polarization: wrong codimension");
  }
  return h;
}

bool character_check(const GradedLieAlgebra& alg, const Covector& l, const RationalMatrix& h) {
  for (int a = 0; a < h.cols(); ++a) {
    for (int c = a + 1; c < h.cols(); ++c) {
      const RationalVector br = alg.bracket(h.col(a), h.col(c));
      Rational pairing = 0;
      for (int r = 0; r < alg.dim(); ++r) pairing += l(r) * br(r);
      if (pairing != 0) return false;
    }
  }
  return true;
}

Covector dilation_on_dual(const GradedLieAlgebra& alg, const Rational& lambda, const Covector& l) {
  if (sgn(lambda) <= 0) throw std::domain_error("dilation parameter must be positive");
  Covector out(alg.dim());
  for (int j = 0; j < alg.dim(); ++j) {
    const auto factor = exact_rational_power(lambda, alg.weight(j));
    if (!factor) throw std::domain_error("lambda^{q_j} is not rational");
    out(j) = *factor * l(j);
  }
  return out;
}

std::optional<Covector> orbit_cross_section_point(const GradedLieAlgebra& alg, const Covector& l) {
  const int n = alg.dim();
  if (nilpotency_step(alg) > 2) return std::nullopt;

  // For step <= 2, coAd(x) l = l + M_l x with (M_l)_{jk} entry read off the
  // linear part of the coadjoint polynomials.
  const PolyMatrix coad = coadjoint_action(alg);
  RationalMatrix m_l(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m_l(j, k) = 0;
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < n; ++c) {
      // (coAd(x) l)_j = sum_c coad(j, c) l_c; coad entries are affine in x.
      for (const auto& [e, coeff] : coad(j, c).terms()) {
        int var = -1;
        int order = 0;
        for (int v = 0; v < n; ++v) {
          order += e[v];
          if (e[v] == 1) var = v;
        }
        if (order == 0) continue;  // constant part contributes l itself
        if (order > 1) throw std::logic_error("step-2 coadjoint action is not affine");
        m_l(j, var) += coeff * l(c);
      }
    }
  }

  const DimSeq d = dimension_sequence(alg, l);
  const auto [s, t] = jump_set(d);
  // Solve (l + M_l x)_i = 0 for i in S(d).
  RationalMatrix a(static_cast<int>(s.size()), n);
  RationalVector rhs(static_cast<int>(s.size()));
  int row = 0;
  for (int i : s) {
    for (int c = 0; c < n; ++c) a(row, c) = m_l(i - 1, c);
    rhs(row) = -l(i - 1);
    ++row;
  }
  const auto x = solve<Rational>(a, rhs);
  if (!x) return std::nullopt;
  RationalVector point = l;
  for (int j = 0; j < n; ++j) {
    Rational delta = 0;
    for (int c = 0; c < n; ++c) delta += m_l(j, c) * (*x)(c);
    point(j) += delta;
  }
  return point;
}

}  // namespace carnot
