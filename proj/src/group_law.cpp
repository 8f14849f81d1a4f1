#include "carnot/group_law.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace carnot {

namespace {

/// Generic algebra element with polynomial coefficients: v = sum_k v_k X_k.
using PolyElement = std::vector<MultiPoly>;

PolyElement poly_bracket(const GradedLieAlgebra& alg, const PolyElement& u,
                         const PolyElement& v) {
  const int n = alg.dim();
  const int nv = u.front().nvars();
  PolyElement out(n, MultiPoly(nv));
  for (const auto& [key, terms] : alg.brackets()) {
    const auto [i, j] = key;
    MultiPoly cross = u[i] * v[j] - u[j] * v[i];
    if (cross.is_zero()) continue;
    for (const auto& [k, c] : terms) out[k] += cross * c;
  }
  return out;
}

/// Letters of a Dynkin word: false = x-block generic element, true = y-block.
using Word = std::vector<bool>;

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = w.size();
    for (bool b : w) h = h * 131 + (b ? 7 : 3);
    return h;
  }
};

class DynkinAccumulator {
 public:
  explicit DynkinAccumulator(const GradedLieAlgebra& alg) : alg_(alg) {
    const int n = alg.dim();
    x_.reserve(n);
    y_.reserve(n);
    for (int j = 0; j < n; ++j) {
      x_.push_back(MultiPoly::variable(2 * n, j));
      y_.push_back(MultiPoly::variable(2 * n, n + j));
    }
    result_.assign(n, MultiPoly(2 * n));
  }

  void add_word(const Word& word, const Rational& coeff) {
    const PolyElement& value = evaluate(word);
    for (int k = 0; k < alg_.dim(); ++k) result_[k] += value[k] * coeff;
  }

  PolyVec take_result() {
    PolyVec out;
    out.comps = std::move(result_);
    return out;
  }

 private:
  /// Right-nested bracket value of a letter word; suffix values are memoized.
  const PolyElement& evaluate(const Word& word) {
    auto it = cache_.find(word);
    if (it != cache_.end()) return it->second;
    PolyElement value;
    if (word.size() == 1) {
      value = word[0] ? y_ : x_;
    } else {
      Word suffix(word.begin() + 1, word.end());
      const PolyElement& tail = evaluate(suffix);
      value = poly_bracket(alg_, word[0] ? y_ : x_, tail);
    }
    return cache_.emplace(word, std::move(value)).first->second;
  }

  const GradedLieAlgebra& alg_;
  PolyElement x_, y_;
  std::vector<MultiPoly> result_;
  std::unordered_map<Word, PolyElement, WordHash> cache_;
};

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Enumerates blocks (p_i, q_i) with p_i + q_i >= 1 up to total length `step`
/// and feeds each word into the accumulator with its Dynkin coefficient
///   (-1)^{k-1} / (k * |word| * prod p_i! q_i!).
void dynkin_sum(int step, DynkinAccumulator& acc) {
  struct Frame {
    Word word;
    Rational factorial_prod;
    int blocks;
  };
  std::vector<Frame> stack;
  stack.push_back({Word{}, Rational(1), 0});
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (frame.blocks > 0) {
      const int len = static_cast<int>(frame.word.size());
      Rational coeff = Rational(frame.blocks % 2 == 1 ? 1 : -1) /
                       (Rational(frame.blocks) * Rational(len) * frame.factorial_prod);
      acc.add_word(frame.word, coeff);
    }
    const int remaining = step - static_cast<int>(frame.word.size());
    if (remaining <= 0) continue;
    // Append one more block x^p y^q, p + q >= 1.
    for (int p = 0; p <= remaining; ++p) {
      for (int q = (p == 0 ? 1 : 0); p + q <= remaining; ++q) {
        Frame next = frame;
        next.word.insert(next.word.end(), p, false);
        next.word.insert(next.word.end(), q, true);
        next.factorial_prod *= factorial(p) * factorial(q);
        next.blocks += 1;
        stack.push_back(std::move(next));
      }
    }
  }
}

}  // namespace

PolyVec bch_product(const GradedLieAlgebra& alg) {
  const int step = nilpotency_step(alg);
  DynkinAccumulator acc(alg);
  dynkin_sum(step, acc);
  return acc.take_result();
}

ValidationReport verify_triangular_form(const GradedLieAlgebra& alg, const PolyVec& m) {
  ValidationReport report;
  const int n = alg.dim();
  if (m.size() != n || m.nvars() != 2 * n) {
    report.violations.push_back("group law has wrong arity");
    return report;
  }
  for (int j = 0; j < n; ++j) {
    MultiPoly rest = m[j];
    rest -= MultiPoly::variable(2 * n, j);
    rest -= MultiPoly::variable(2 * n, n + j);
    for (const auto& [e, c] : rest.terms()) {
      bool alpha_nonzero = false, beta_nonzero = false;
      Rational degree = 0;
      for (int v = 0; v < n; ++v) {
        if (e[v] > 0) alpha_nonzero = true;
        if (e[n + v] > 0) beta_nonzero = true;
        degree += Rational(e[v] + e[n + v]) * alg.weight(v);
      }
      if (!alpha_nonzero || !beta_nonzero || degree != alg.weight(j)) {
        std::ostringstream msg;
        msg << "component " << j + 1 << ": monomial with coefficient " << to_string(c)
            << " violates the triangular form ([alpha]+[beta] = " << to_string(degree)
            << ", q_j = " << to_string(alg.weight(j)) << ")";
        report.violations.push_back(msg.str());
      }
    }
  }
  return report;
}

PolyVec group_inverse(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  PolyVec inv;
  for (int j = 0; j < n; ++j) inv.comps.push_back(-MultiPoly::variable(n, j));

  // m(x, inv(x)) must vanish identically; a failure here is an internal bug.
  const PolyVec m = bch_product(alg);
  std::vector<MultiPoly> images;
  for (int j = 0; j < n; ++j) images.push_back(MultiPoly::variable(n, j));
  for (int j = 0; j < n; ++j) images.push_back(inv.comps[j]);
  for (int j = 0; j < n; ++j) {
    if (!m[j].substitute(images).is_zero()) {
      throw std::logic_error("group_inverse: m(x, -x) != 0; inconsistent group law");
    }
  }
  return inv;
}

PolyMatrix adjoint_action(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  const int step = nilpotency_step(alg);
  // ad_x as a matrix of linear polynomials in x: (ad_x)_{kj} = sum_i x_i c_{ij}^k.
  PolyMatrix ad_x(n, n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        const Rational c = alg.structure_constant(i, j, k);
        if (c != 0) ad_x(k, j) += MultiPoly::variable(n, i) * c;
      }
    }
  }
  // exp(ad_x) = sum_{m < step} ad_x^m / m!.
  PolyMatrix result(n, n, n);
  for (int j = 0; j < n; ++j) result(j, j) = MultiPoly::constant(n, 1);
  PolyMatrix power = ad_x;
  Rational fact = 1;
  for (int m = 1; m < step; ++m) {
    fact *= m;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) result(r, c) += power(r, c) * (Rational(1) / fact);
    if (m + 1 < step) power = power * ad_x;
  }
  return result;
}

PolyVec associativity_defect(const GradedLieAlgebra& alg, const PolyVec& m) {
  const int n = alg.dim();
  // Variables (x, y, z) in 3n unknowns.
  std::vector<MultiPoly> x, y, z;
  for (int j = 0; j < n; ++j) x.push_back(MultiPoly::variable(3 * n, j));
  for (int j = 0; j < n; ++j) y.push_back(MultiPoly::variable(3 * n, n + j));
  for (int j = 0; j < n; ++j) z.push_back(MultiPoly::variable(3 * n, 2 * n + j));

  auto compose = [&](const std::vector<MultiPoly>& a,
                     const std::vector<MultiPoly>& b) -> std::vector<MultiPoly> {
    std::vector<MultiPoly> images = a;
    images.insert(images.end(), b.begin(), b.end());
    std::vector<MultiPoly> out;
    for (int j = 0; j < n; ++j) out.push_back(m[j].substitute(images));
    return out;
  };

  const auto xy = compose(x, y);
  const auto yz = compose(y, z);
  const auto left = compose(xy, z);
  const auto right = compose(x, yz);
  PolyVec defect;
  for (int j = 0; j < n; ++j) defect.comps.push_back(left[j] - right[j]);
  return defect;
}

PolyMatrix group_law_jacobian_y(const GradedLieAlgebra& alg, const PolyVec& m) {
  const int n = alg.dim();
  PolyMatrix jac(n, n, 2 * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) jac(k, j) = m[k].derivative(n + j);
  return jac;
}

ValidationReport verify_dilation_automorphism(const GradedLieAlgebra& alg, const PolyVec& m) {
  ValidationReport report;
  const int n = alg.dim();
  std::vector<Rational> var_weights;
  for (int j = 0; j < n; ++j) var_weights.push_back(alg.weight(j));
  for (int j = 0; j < n; ++j) var_weights.push_back(alg.weight(j));
  for (int j = 0; j < n; ++j) {
    const auto degree = m[j].homogeneous_weighted_degree(var_weights);
    if (!degree || *degree != alg.weight(j)) {
      report.violations.push_back("component " + std::to_string(j + 1) +
                                  " is not q_j-homogeneous under the dilation weights");
    }
  }
  return report;
}

RationalVector evaluate_product(const PolyVec& m, const RationalVector& x,
                                const RationalVector& y) {
  if (x.size() + y.size() != m.nvars()) throw std::invalid_argument("product arity mismatch");
  RationalVector pt(m.nvars());
  pt.head(x.size()) = x;
  pt.tail(y.size()) = y;
  return m.evaluate(pt);
}

Eigen::VectorXd evaluate_product(const PolyVec& m, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y) {
  if (x.size() + y.size() != m.nvars()) throw std::invalid_argument("product arity mismatch");
  Eigen::VectorXd pt(m.nvars());
  pt.head(x.size()) = x;
  pt.tail(y.size()) = y;
  return m.evaluate(pt);
}

CompiledPolyVec::CompiledPolyVec(const PolyVec& p) : nvars_(p.nvars()) {
  comps_.resize(p.size());
  for (int j = 0; j < p.size(); ++j) {
    for (const auto& [e, c] : p[j].terms()) {
      Term t;
      t.coeff = to_double(c);
      for (int v = 0; v < nvars_; ++v) {
        if (e[v] > 0) t.factors.emplace_back(v, e[v]);
      }
      comps_[j].push_back(std::move(t));
    }
  }
}

void CompiledPolyVec::evaluate(const double* point, double* out) const {
  for (size_t j = 0; j < comps_.size(); ++j) {
    double sum = 0;
    for (const Term& t : comps_[j]) {
      double term = t.coeff;
      for (const auto& [v, e] : t.factors) {
        double base = point[v];
        for (int k = 0; k < e; ++k) term *= base;
      }
      sum += term;
    }
    out[j] = sum;
  }
}

Eigen::VectorXd CompiledPolyVec::evaluate(const Eigen::VectorXd& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  Eigen::VectorXd out(static_cast<int>(comps_.size()));
  evaluate(point.data(), out.data());
  return out;
}

GroupEvaluator::GroupEvaluator(const GradedLieAlgebra& alg)
    : dim(alg.dim()),
      homogeneous_dim(to_double(homogeneous_dimension(alg))),
      product(bch_product(alg)) {
  for (int j = 0; j < dim; ++j) weights.push_back(to_double(alg.weight(j)));
}

Eigen::VectorXd GroupEvaluator::multiply(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y) const {
  Eigen::VectorXd pt(2 * dim);
  pt.head(dim) = x;
  pt.tail(dim) = y;
  Eigen::VectorXd out(dim);
  product.evaluate(pt.data(), out.data());
  return out;
}

Eigen::VectorXd GroupEvaluator::left_quotient(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y) const {
  return multiply(-x, y);
}

Eigen::VectorXd GroupEvaluator::dilate_point(double lambda, const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim);
  for (int j = 0; j < dim; ++j) out(j) = std::pow(lambda, weights[j]) * x(j);
  return out;
}

}  // namespace carnot
