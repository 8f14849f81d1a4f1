#include "carnot/diff_op.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace carnot {

DiffOp DiffOp::identity(int nvars) {
  DiffOp op(nvars);
  op.terms_[MultiIndex(nvars, 0)] = MultiPoly::constant(nvars, 1);
  return op;
}

DiffOp DiffOp::partial(int nvars, int j) {
  DiffOp op(nvars);
  MultiIndex I(nvars, 0);
  I[j] = 1;
  op.terms_[I] = MultiPoly::constant(nvars, 1);
  return op;
}

DiffOp DiffOp::term(const MultiPoly& coeff, const MultiIndex& partial) {
  DiffOp op(coeff.nvars());
  if (static_cast<int>(partial.size()) != coeff.nvars()) {
    throw std::invalid_argument("partial index arity mismatch");
  }
  if (!coeff.is_zero()) op.terms_[partial] = coeff;
  return op;
}

void DiffOp::add_term(const MultiIndex& partial, const MultiPoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(partial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp DiffOp::operator-() const {
  DiffOp out(nvars_);
  for (const auto& [I, p] : terms_) out.terms_[I] = -p;
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("operator arity mismatch");
  for (const auto& [I, p] : other.terms_) add_term(I, p);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("operator arity mismatch");
  for (const auto& [I, p] : other.terms_) add_term(I, -p);
  return *this;
}

DiffOp DiffOp::operator*(const Rational& c) const {
  DiffOp out(nvars_);
  if (c == 0) return out;
  for (const auto& [I, p] : terms_) out.terms_[I] = p * c;
  return out;
}

MultiPoly DiffOp::apply(const MultiPoly& f) const {
  if (f.nvars() != nvars_) throw std::invalid_argument("operand arity mismatch");
  MultiPoly out(nvars_);
  for (const auto& [I, p] : terms_) {
    MultiPoly df = f;
    for (int j = 0; j < nvars_ && !df.is_zero(); ++j) {
      for (int k = 0; k < I[j]; ++k) df = df.derivative(j);
    }
    if (!df.is_zero()) out += p * df;
  }
  return out;
}

std::string DiffOp::to_string(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [I, p] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << p.to_string(var_names) << ")";
    for (int j = 0; j < nvars_; ++j) {
      for (int k = 0; k < I[j]; ++k) out << "*d_" << var_names[j];
    }
  }
  return out.str();
}

namespace {

/// Multi-index binomial helpers for the Leibniz expansion.
void enumerate_sub_indices(const MultiIndex& I, MultiIndex& current, size_t pos,
                           const std::function<void(const MultiIndex&)>& fn) {
  if (pos == I.size()) {
    fn(current);
    return;
  }
  for (int k = 0; k <= I[pos]; ++k) {
    current[pos] = k;
    enumerate_sub_indices(I, current, pos + 1, fn);
  }
}

Rational multi_binomial(const MultiIndex& I, const MultiIndex& K) {
  auto binom = [](int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
  };
  Rational r = 1;
  for (size_t j = 0; j < I.size(); ++j) r *= binom(I[j], K[j]);
  return r;
}

}  // namespace

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("operator arity mismatch");
  const int n = a.nvars();
  DiffOp out(n);
  for (const auto& [I, p] : a.terms()) {
    for (const auto& [J, r] : b.terms()) {
      // d^I (r d^J) = sum_{K <= I} C(I, K) (d^{I-K} r) d^{K + J}
      MultiIndex current(n, 0);
      enumerate_sub_indices(I, current, 0, [&](const MultiIndex& K) {
        MultiPoly dr = r;
        for (int j = 0; j < n && !dr.is_zero(); ++j) {
          for (int k = 0; k < I[j] - K[j]; ++k) dr = dr.derivative(j);
        }
        if (dr.is_zero()) return;
        MultiIndex KJ(n);
        for (int j = 0; j < n; ++j) KJ[j] = K[j] + J[j];
        out.add_term(KJ, p * dr * MultiPoly::constant(n, multi_binomial(I, K)));
      });
    }
  }
  return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

std::vector<DiffOp> left_invariant_fields(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  const PolyVec m = bch_product(alg);
  // Substitution y = 0, keeping x.
  std::vector<MultiPoly> x_only;
  for (int j = 0; j < n; ++j) x_only.push_back(MultiPoly::variable(n, j));
  for (int j = 0; j < n; ++j) x_only.push_back(MultiPoly(n));
  std::vector<DiffOp> fields;
  for (int j = 0; j < n; ++j) {
    DiffOp xj(n);
    for (int k = 0; k < n; ++k) {
      const MultiPoly coeff = m[k].derivative(n + j).substitute(x_only);
      if (coeff.is_zero()) continue;
      MultiIndex I(n, 0);
      I[k] = 1;
      xj.add_term(I, coeff);
    }
    fields.push_back(std::move(xj));
  }
  return fields;
}

std::vector<DiffOp> right_invariant_fields(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  const PolyVec m = bch_product(alg);
  // Substitution x = 0, then rename y -> x.
  std::vector<MultiPoly> zero_then_x;
  for (int j = 0; j < n; ++j) zero_then_x.push_back(MultiPoly(n));
  for (int j = 0; j < n; ++j) zero_then_x.push_back(MultiPoly::variable(n, j));
  std::vector<DiffOp> fields;
  for (int j = 0; j < n; ++j) {
    DiffOp yj(n);
    for (int k = 0; k < n; ++k) {
      const MultiPoly coeff = m[k].derivative(j).substitute(zero_then_x);
      if (coeff.is_zero()) continue;
      MultiIndex I(n, 0);
      I[k] = 1;
      yj.add_term(I, coeff);
    }
    fields.push_back(std::move(yj));
  }
  return fields;
}

ValidationReport verify_vectorfield_form(const GradedLieAlgebra& alg,
                                         const std::vector<DiffOp>& fields) {
  ValidationReport report;
  const int n = alg.dim();
  if (static_cast<int>(fields.size()) != n) {
    report.violations.push_back("expected one field per basis element");
    return report;
  }
  std::vector<Rational> weights(alg.weights());
  for (int j = 0; j < n; ++j) {
    DiffOp rest = fields[j] - DiffOp::partial(n, j);
    for (const auto& [I, p] : rest.terms()) {
      int k = -1;
      int order = 0;
      for (int v = 0; v < n; ++v) {
        order += I[v];
        if (I[v] == 1) k = v;
      }
      if (order != 1 || k < 0) {
        report.violations.push_back("field " + std::to_string(j + 1) +
                                    " is not a first-order vector field");
        continue;
      }
      std::ostringstream where;
      where << "P_{" << j + 1 << "," << k + 1 << "}";
      if (!(alg.weight(k) > alg.weight(j))) {
        report.violations.push_back(where.str() + ": coefficient appears at q_k <= q_j");
      }
      const auto deg = p.homogeneous_weighted_degree(weights);
      if (!deg || *deg != alg.weight(k) - alg.weight(j)) {
        report.violations.push_back(where.str() + ": not exactly (q_k - q_j)-homogeneous");
      }
      if (!p.depends_only_on_first(k)) {
        report.violations.push_back(where.str() + ": depends on x_k or later variables");
      }
    }
  }
  return report;
}

DiffOp power_Xalpha(const GradedLieAlgebra& alg, const MultiIndex& alpha) {
  const int n = alg.dim();
  if (static_cast<int>(alpha.size()) != n) throw std::invalid_argument("multi-index arity");
  const auto fields = left_invariant_fields(alg);
  DiffOp out = DiffOp::identity(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < alpha[j]; ++k) out = compose(out, fields[j]);
  }
  return out;
}

RocklandCandidate rockland_candidate(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  const Rational q = weight_common_multiple(alg);
  const auto fields = left_invariant_fields(alg);
  DiffOp sum(n);
  for (int j = 0; j < n; ++j) {
    const Rational ratio = q / alg.weight(j);
    if (ratio.get_den() != 1) throw std::logic_error("weight common multiple is not integral");
    const long r = ratio.get_num().get_si();
    DiffOp power = DiffOp::identity(n);
    for (long k = 0; k < 2 * r; ++k) power = compose(power, fields[j]);
    sum += power * Rational(r % 2 == 0 ? 1 : -1);
  }
  return {sum, 2 * q};
}

std::optional<Rational> homogeneity_degree(const GradedLieAlgebra& alg, const DiffOp& op) {
  // A term p(x) d^I scales by lambda^{[I] - [beta]} per monomial x^beta of p;
  // the operator is homogeneous iff that exponent is the same across terms.
  const int n = alg.dim();
  std::optional<Rational> nu;
  for (const auto& [I, p] : op.terms()) {
    Rational deg_I = 0;
    for (int j = 0; j < n; ++j) deg_I += Rational(I[j]) * alg.weight(j);
    for (const auto& [e, c] : p.terms()) {
      Rational deg_e = 0;
      for (int j = 0; j < n; ++j) deg_e += Rational(e[j]) * alg.weight(j);
      const Rational candidate = deg_I - deg_e;
      if (!nu) {
        nu = candidate;
      } else if (*nu != candidate) {
        return std::nullopt;
      }
    }
  }
  return nu;
}

}  // namespace carnot
