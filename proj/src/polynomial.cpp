#include "carnot/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace carnot {

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int j) {
  if (j < 0 || j >= nvars) throw std::invalid_argument("variable index out of range");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[j] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent arity mismatch");
  MultiPoly p(nvars);
  if (c != 0) p.terms_[e] = c;
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 &&
         std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                     [](int e) { return e == 0; });
}

int MultiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  MultiPoly out(a.nvars_);
  MultiPoly::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int j = 0; j < a.nvars_; ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, coeff] : terms_) out.terms_[e] = coeff * c;
  return out;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    if (k >>= 1) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(int j) const {
  if (j < 0 || j >= nvars_) throw std::invalid_argument("variable index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    Exponents d = e;
    d[j] -= 1;
    out.add_term(d, c * Rational(e[j]));
  }
  return out;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) {
    throw std::invalid_argument("substitution image count mismatch");
  }
  const int out_vars = images.empty() ? 0 : images.front().nvars();
  for (const auto& img : images) {
    if (img.nvars() != out_vars) throw std::invalid_argument("substitution images arity mismatch");
  }
  // Memoized powers of each image.
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  auto image_power = [&](int j, int k) -> const MultiPoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(constant(out_vars, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[j]);
    return cache[k];
  };
  MultiPoly out(out_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(out_vars, c);
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] > 0) term *= image_power(j, e[j]);
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::embed(int new_nvars, const std::vector<int>& var_map) const {
  if (static_cast<int>(var_map.size()) != nvars_) {
    throw std::invalid_argument("variable map arity mismatch");
  }
  MultiPoly out(new_nvars);
  Exponents e(new_nvars);
  for (const auto& [old_e, c] : terms_) {
    std::fill(e.begin(), e.end(), 0);
    for (int j = 0; j < nvars_; ++j) {
      if (old_e[j] == 0) continue;
      const int target = var_map[j];
      if (target < 0 || target >= new_nvars) throw std::invalid_argument("variable map range");
      e[target] += old_e[j];
    }
    out.add_term(e, c);
  }
  return out;
}

Rational MultiPoly::evaluate(const RationalVector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int j = 0; j < nvars_; ++j) {
      for (int k = 0; k < e[j]; ++k) term *= point(j);
    }
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(const Eigen::VectorXd& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (int j = 0; j < nvars_; ++j) {
      for (int k = 0; k < e[j]; ++k) term *= point(j);
    }
    sum += term;
  }
  return sum;
}

std::optional<Rational> MultiPoly::homogeneous_weighted_degree(
    const std::vector<Rational>& var_weights) const {
  if (static_cast<int>(var_weights.size()) != nvars_) {
    throw std::invalid_argument("weight arity mismatch");
  }
  std::optional<Rational> degree;
  for (const auto& [e, c] : terms_) {
    Rational d = 0;
    for (int j = 0; j < nvars_; ++j) d += Rational(e[j]) * var_weights[j];
    if (!degree) {
      degree = d;
    } else if (*degree != d) {
      return std::nullopt;
    }
  }
  return degree ? degree : std::optional<Rational>(Rational(0));
}

bool MultiPoly::depends_only_on_first(int first_banned) const {
  for (const auto& [e, c] : terms_) {
    for (int j = first_banned; j < nvars_; ++j) {
      if (e[j] != 0) return false;
    }
  }
  return true;
}

std::string MultiPoly::to_string(const std::vector<std::string>& var_names) const {
  if (static_cast<int>(var_names.size()) != nvars_) {
    throw std::invalid_argument("variable name arity mismatch");
  }
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (sgn(c) < 0) {
        out << "-";
        coeff = -c;
      }
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
      coeff = abs(c);
    }
    first = false;
    std::ostringstream vars;
    bool has_vars = false;
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      if (has_vars) vars << "*";
      vars << var_names[j];
      if (e[j] > 1) vars << "^" << e[j];
      has_vars = true;
    }
    if (!has_vars) {
      out << carnot::to_string(coeff);
    } else if (coeff == 1) {
      out << vars.str();
    } else {
      out << carnot::to_string(coeff) << "*" << vars.str();
    }
  }
  return out.str();
}

RationalVector PolyVec::evaluate(const RationalVector& point) const {
  RationalVector out(size());
  for (int j = 0; j < size(); ++j) out(j) = comps[j].evaluate(point);
  return out;
}

Eigen::VectorXd PolyVec::evaluate(const Eigen::VectorXd& point) const {
  Eigen::VectorXd out(size());
  for (int j = 0; j < size(); ++j) out(j) = comps[j].evaluate(point);
  return out;
}

RationalMatrix PolyMatrix::evaluate(const RationalVector& point) const {
  RationalMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = (*this)(r, c).evaluate(point);
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out;
  out.rows = cols;
  out.cols = rows;
  out.entries.resize(entries.size(), MultiPoly(entries.empty() ? 0 : entries.front().nvars()));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(c, r) = (*this)(r, c);
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("polynomial matrix shape mismatch");
  const int nv = a.entries.empty() ? 0 : a.entries.front().nvars();
  PolyMatrix out(a.rows, b.cols, nv);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      MultiPoly sum(nv);
      for (int k = 0; k < a.cols; ++k) sum += a(r, k) * b(k, c);
      out(r, c) = sum;
    }
  }
  return out;
}

bool PolyMatrix::is_identity() const {
  if (rows != cols) return false;
  const int nv = entries.empty() ? 0 : entries.front().nvars();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const MultiPoly expected = MultiPoly::constant(nv, r == c ? 1 : 0);
      if (!((*this)(r, c) == expected)) return false;
    }
  }
  return true;
}

MultiPoly determinant(const PolyMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows;
  const int nv = m.entries.empty() ? 0 : m.entries.front().nvars();
  if (n == 0) return MultiPoly::constant(nv, 1);
  if (n == 1) return m(0, 0);
  MultiPoly det(nv);
  // Expand along the first row.
  for (int c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, nv);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int col = 0; col < n; ++col) {
        if (col == c) continue;
        minor(r - 1, cc++) = m(r, col);
      }
    }
    MultiPoly contrib = m(0, c) * determinant(minor);
    if (c % 2 == 1) contrib = -contrib;
    det += contrib;
  }
  return det;
}

}  // namespace carnot
