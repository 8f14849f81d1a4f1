#include "carnot/lie_algebra.hpp"

#include "carnot/rational_linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace carnot {

GradedLieAlgebra::GradedLieAlgebra(std::string name, std::vector<Rational> weights,
                                   BracketMap brackets, std::vector<std::string> basis_labels)
    : name_(std::move(name)),
      weights_(std::move(weights)),
      brackets_(std::move(brackets)),
      labels_(std::move(basis_labels)) {
  const int n = dim();
  if (n <= 0) throw std::invalid_argument("algebra dimension must be positive");
  if (labels_.empty()) {
    for (int j = 0; j < n; ++j) labels_.push_back("X" + std::to_string(j + 1));
  }
  if (static_cast<int>(labels_.size()) != n) {
    throw std::invalid_argument("basis label count does not match dimension");
  }
  for (const auto& [key, terms] : brackets_) {
    const auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n || i >= j) {
      throw std::invalid_argument("bracket indices must satisfy 0 <= i < j < dim");
    }
    for (const auto& [k, c] : terms) {
      if (k < 0 || k >= n) throw std::invalid_argument("bracket target index out of range");
      (void)c;
    }
  }
}

Rational GradedLieAlgebra::structure_constant(int i, int j, int k) const {
  if (i == j) return 0;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = brackets_.find({i, j});
  if (it == brackets_.end()) return 0;
  auto jt = it->second.find(k);
  if (jt == it->second.end()) return 0;
  return flip ? Rational(-jt->second) : jt->second;
}

RationalVector GradedLieAlgebra::bracket(const RationalVector& u, const RationalVector& v) const {
  const int n = dim();
  RationalVector out(n);
  for (int k = 0; k < n; ++k) out(k) = 0;
  for (const auto& [key, terms] : brackets_) {
    const auto [i, j] = key;
    const Rational cross = u(i) * v(j) - u(j) * v(i);
    if (cross == 0) continue;
    for (const auto& [k, c] : terms) out(k) += c * cross;
  }
  return out;
}

RationalMatrix GradedLieAlgebra::ad(const RationalVector& u) const {
  const int n = dim();
  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      // [u, e_j] = sum_i u_i [e_i, e_j]
      for (int k = 0; k < n; ++k) {
        const Rational c = structure_constant(i, j, k);
        if (c != 0) m(k, j) += u(i) * c;
      }
    }
  }
  return m;
}

namespace {

std::string bracket_name(const GradedLieAlgebra& alg, int i, int j) {
  return "[" + alg.basis_labels()[i] + "," + alg.basis_labels()[j] + "]";
}

}  // namespace

ValidationReport validate_algebra(const GradedLieAlgebra& alg) {
  ValidationReport report;
  const int n = alg.dim();

  for (int j = 0; j < n; ++j) {
    if (sgn(alg.weight(j)) <= 0) {
      report.violations.push_back("weight q_" + std::to_string(j + 1) + " is not positive");
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    if (alg.weight(j) > alg.weight(j + 1)) {
      report.violations.push_back("weights are not sorted ascending at position " +
                                  std::to_string(j + 1));
      break;
    }
  }
  if (alg.weight(0) != 1) {
    report.violations.push_back("weights are not normalized to q_1 = 1");
  }

  // Jacobi identity on all basis triples, expanded exactly.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        RationalVector total(n);
        for (int m = 0; m < n; ++m) total(m) = 0;
        // [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]
        const int tri[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& t : tri) {
          for (int m = 0; m < n; ++m) {
            const Rational c = alg.structure_constant(t[0], t[1], m);
            if (c == 0) continue;
            for (int l = 0; l < n; ++l) {
              const Rational d = alg.structure_constant(m, t[2], l);
              if (d != 0) total(l) += c * d;
            }
          }
        }
        for (int l = 0; l < n; ++l) {
          if (total(l) != 0) {
            std::ostringstream msg;
            msg << "Jacobi identity fails on (" << alg.basis_labels()[i] << ","
                << alg.basis_labels()[j] << "," << alg.basis_labels()[k] << "): component "
                << alg.basis_labels()[l] << " = " << to_string(total(l));
            report.violations.push_back(msg.str());
            break;
          }
        }
      }
    }
  }
  return report;
}

ValidationReport validate_dilation_compatibility(const GradedLieAlgebra& alg) {
  ValidationReport report;
  for (const auto& [key, terms] : alg.brackets()) {
    const auto [i, j] = key;
    for (const auto& [k, c] : terms) {
      if (c == 0) continue;
      if (alg.weight(k) != alg.weight(i) + alg.weight(j)) {
        std::ostringstream msg;
        msg << "c_{" << i + 1 << "," << j + 1 << "}^" << k + 1 << " != 0 but q_" << k + 1
            << " = " << to_string(alg.weight(k)) << " != q_" << i + 1 << " + q_" << j + 1 << " = "
            << to_string(alg.weight(i) + alg.weight(j)) << " (" << bracket_name(alg, i, j) << ")";
        report.violations.push_back(msg.str());
      }
    }
  }
  return report;
}

Rational homogeneous_dimension(const GradedLieAlgebra& alg) {
  Rational q = 0;
  for (const auto& w : alg.weights()) q += w;
  return q;
}

int nilpotency_step(const GradedLieAlgebra& alg) {
  const int n = alg.dim();
  // Current term of the lower central series, as column basis.
  RationalMatrix current(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) current(r, c) = (r == c) ? 1 : 0;
  int step = 0;
  while (current.cols() > 0) {
    ++step;
    if (step > n) throw std::runtime_error("not nilpotent");
    // [g, current]: span of brackets of basis vectors with current columns.
    std::vector<RationalVector> gens;
    for (int i = 0; i < n; ++i) {
      RationalVector ei(n);
      for (int r = 0; r < n; ++r) ei(r) = (r == i) ? 1 : 0;
      for (int c = 0; c < current.cols(); ++c) {
        RationalVector b = alg.bracket(ei, current.col(c));
        bool nonzero = false;
        for (int r = 0; r < n; ++r) {
          if (b(r) != 0) {
            nonzero = true;
            break;
          }
        }
        if (nonzero) gens.push_back(b);
      }
    }
    RationalMatrix next(n, static_cast<int>(gens.size()));
    for (int c = 0; c < next.cols(); ++c) next.col(c) = gens[c];
    current = column_space_basis<Rational>(next);
  }
  return step;
}

RationalVector dilation_coordinates(const GradedLieAlgebra& alg, const Rational& lambda,
                                    const RationalVector& x) {
  if (sgn(lambda) <= 0) throw std::domain_error("dilation parameter must be positive");
  if (x.size() != alg.dim()) throw std::invalid_argument("coordinate vector arity mismatch");
  RationalVector out(alg.dim());
  for (int j = 0; j < alg.dim(); ++j) {
    auto factor = exact_rational_power(lambda, alg.weight(j));
    if (!factor) {
      throw std::domain_error("lambda^{q_j} is not rational for q_j = " +
                              to_string(alg.weight(j)) + ", lambda = " + to_string(lambda));
    }
    out(j) = *factor * x(j);
  }
  return out;
}

Eigen::VectorXd dilation_coordinates(const GradedLieAlgebra& alg, double lambda,
                                     const Eigen::VectorXd& x) {
  if (!(lambda > 0)) throw std::domain_error("dilation parameter must be positive");
  if (x.size() != alg.dim()) throw std::invalid_argument("coordinate vector arity mismatch");
  Eigen::VectorXd out(alg.dim());
  for (int j = 0; j < alg.dim(); ++j) out(j) = std::pow(lambda, to_double(alg.weight(j))) * x(j);
  return out;
}

Rational homogeneous_degree(const GradedLieAlgebra& alg, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != alg.dim()) {
    throw std::invalid_argument("multi-index arity mismatch");
  }
  Rational deg = 0;
  for (int j = 0; j < alg.dim(); ++j) {
    if (alpha[j] < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    deg += Rational(alpha[j]) * alg.weight(j);
  }
  return deg;
}

Rational weight_common_multiple(const GradedLieAlgebra& alg) {
  Rational q = alg.weight(0);
  for (int j = 1; j < alg.dim(); ++j) q = rational_lcm(q, alg.weight(j));
  return q;
}

}  // namespace carnot
