#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/coadjoint.hpp"
#include "carnot/group_law.hpp"
#include "carnot/group_spec_io.hpp"
#include "carnot/harmonic.hpp"

#include <Eigen/Dense>

using namespace carnot;

namespace {

GradedLieAlgebra load(const std::string& name) {
  return load_group_spec(std::string(CARNOT_DATA_DIR) + "/" + name + ".json");
}

MultiPoly var(int nv, int j) { return MultiPoly::variable(nv, j); }

/// Independent oracle for the Heisenberg product: the faithful 3x3 strictly
/// upper-triangular matrix representation. exp and log are finite sums for
/// nilpotent matrices, so the only error is floating-point roundoff.
Eigen::Vector3d heisenberg_matrix_product(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  auto embed = [](const Eigen::Vector3d& v) {
    Eigen::Matrix3d n = Eigen::Matrix3d::Zero();
    n(0, 1) = v(0);  // X = E12
    n(1, 2) = v(1);  // Y = E23
    n(0, 2) = v(2);  // Z = E13
    return n;
  };
  auto exp3 = [](const Eigen::Matrix3d& n) {
    return Eigen::Matrix3d(Eigen::Matrix3d::Identity() + n + 0.5 * n * n);
  };
  const Eigen::Matrix3d prod = exp3(embed(a)) * exp3(embed(b));
  const Eigen::Matrix3d m = prod - Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d log = m - 0.5 * m * m;  // nilpotent: the series stops
  return {log(0, 1), log(1, 2), log(0, 2)};
}

}  // namespace

TEST_CASE("group law propagates the nilpotency failure") {
  const auto bad = load("corrupted_jacobi");
  CHECK_THROWS_WITH_AS((void)bch_product(bad), "not nilpotent", std::runtime_error);
}

TEST_CASE("abelian law is addition") {
  const auto alg = load("abelian3");
  const PolyVec m = bch_product(alg);
  for (int j = 0; j < 3; ++j) {
    CHECK(m[j] == var(6, j) + var(6, 3 + j));
  }
}

TEST_CASE("Heisenberg law matches the half-commutator form") {
  const auto heis = load("heisenberg");
  const PolyVec m = bch_product(heis);
  CHECK(m[0] == var(6, 0) + var(6, 3));
  CHECK(m[1] == var(6, 1) + var(6, 4));
  MultiPoly expected = var(6, 2) + var(6, 5);
  expected += (var(6, 0) * var(6, 4)) * Rational(1, 2);
  expected -= (var(6, 1) * var(6, 3)) * Rational(1, 2);
  CHECK(m[2] == expected);
}

TEST_CASE("Heisenberg law agrees with the matrix exponential oracle") {
  const auto heis = load("heisenberg");
  const GroupEvaluator ev(heis);
  DetRng rng(5);
  for (int s = 0; s < 20; ++s) {
    const Eigen::Vector3d a = rng.uniform_vector(3, -2, 2);
    const Eigen::Vector3d b = rng.uniform_vector(3, -2, 2);
    const Eigen::Vector3d oracle = heisenberg_matrix_product(a, b);
    const Eigen::VectorXd law = ev.multiply(a, b);
    CHECK((law - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("filiform fourth coordinate carries the depth-3 terms") {
  // z = x + y + [x,y]/2 + [x,[x,y]]/12 + [y,[y,x]]/12 gives, with
  // [X1,X2] = X3 and [X1,X3] = X4:
  //   m_4 = x4 + y4 + (x1 y3 - x3 y1)/2 + (x1 - y1)(x1 y2 - x2 y1)/12.
  const auto fil = load("filiform4");
  const PolyVec m = bch_product(fil);
  const int nv = 8;
  const MultiPoly cross12 = var(nv, 0) * var(nv, 5) - var(nv, 1) * var(nv, 4);
  MultiPoly expected = var(nv, 3) + var(nv, 7);
  expected += (var(nv, 0) * var(nv, 6) - var(nv, 2) * var(nv, 4)) * Rational(1, 2);
  expected += ((var(nv, 0) - var(nv, 4)) * cross12) * Rational(1, 12);
  CHECK(m[3] == expected);
}

TEST_CASE("law fixes the identity in both slots") {
  for (const char* name : {"heisenberg", "filiform4", "abelian2_aniso"}) {
    const auto alg = load(name);
    const int n = alg.dim();
    const PolyVec m = bch_product(alg);
    std::vector<MultiPoly> x_zero, zero_y;
    for (int j = 0; j < n; ++j) x_zero.push_back(var(n, j));
    for (int j = 0; j < n; ++j) x_zero.push_back(MultiPoly(n));
    for (int j = 0; j < n; ++j) zero_y.push_back(MultiPoly(n));
    for (int j = 0; j < n; ++j) zero_y.push_back(var(n, j));
    for (int j = 0; j < n; ++j) {
      CHECK(m[j].substitute(x_zero) == var(n, j));
      CHECK(m[j].substitute(zero_y) == var(n, j));
    }
  }
}

TEST_CASE("associativity holds symbolically and on rational samples") {
  for (const char* name : {"heisenberg", "filiform4", "abelian3"}) {
    const auto alg = load(name);
    const PolyVec m = bch_product(alg);
    const PolyVec defect = associativity_defect(alg, m);
    for (int j = 0; j < alg.dim(); ++j) CHECK(defect[j].is_zero());

    CovectorSampler sampler(alg.dim(), 3);
    for (int s = 0; s < 20; ++s) {
      const RationalVector x = sampler.next(), y = sampler.next(), z = sampler.next();
      CHECK(evaluate_product(m, evaluate_product(m, x, y), z) ==
            evaluate_product(m, x, evaluate_product(m, y, z)));
    }
  }
}

TEST_CASE("triangular form verification") {
  const auto heis = load("heisenberg");
  PolyVec m = bch_product(heis);
  CHECK(verify_triangular_form(heis, m).ok());
  CHECK(verify_triangular_form(load("abelian3"), bch_product(load("abelian3"))).ok());

  // Corrupt the first component with x1 y1: degree 2 != q_1 = 1.
  m[0] += var(6, 0) * var(6, 3);
  const auto report = verify_triangular_form(heis, m);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().find("component 1") != std::string::npos);
}

TEST_CASE("group inverse is negation, verified against the law") {
  const auto heis = load("heisenberg");
  const PolyVec inv = group_inverse(heis);
  const PolyVec m = bch_product(heis);
  RationalVector x(3);
  x << 1, 2, 3;
  const RationalVector minus_x = inv.evaluate(x);
  const RationalVector prod = evaluate_product(m, x, minus_x);
  for (int j = 0; j < 3; ++j) CHECK(prod(j) == 0);

  RationalVector zero(3);
  zero << 0, 0, 0;
  CHECK(inv.evaluate(zero) == zero);

  const auto ab = load("abelian2");
  const PolyVec inv_ab = group_inverse(ab);
  for (int j = 0; j < 2; ++j) CHECK(inv_ab[j] == -var(2, j));
}

TEST_CASE("adjoint action") {
  const auto ab = load("abelian3");
  CHECK(adjoint_action(ab).is_identity());

  const auto heis = load("heisenberg");
  const PolyMatrix ad = adjoint_action(heis);
  // Ad(x,y,z) = I + ad_v: fixes Z, X -> X - y Z, Y -> Y + x Z.
  CHECK(ad(2, 0) == -var(3, 1));
  CHECK(ad(2, 1) == var(3, 0));
  CHECK(ad(0, 0) == MultiPoly::constant(3, 1));
  CHECK(ad(2, 2) == MultiPoly::constant(3, 1));
  CHECK(ad(0, 1).is_zero());

  // Ad(x) Ad(x^{-1}) = I as polynomials.
  std::vector<MultiPoly> minus_x;
  for (int j = 0; j < 3; ++j) minus_x.push_back(-var(3, j));
  PolyMatrix ad_inv(3, 3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) ad_inv(r, c) = ad(r, c).substitute(minus_x);
  CHECK((ad * ad_inv).is_identity());

  // Automorphism property on random rational samples, exact.
  const auto fil = load("filiform4");
  const PolyMatrix ad_fil = adjoint_action(fil);
  CovectorSampler sampler(4, 17);
  for (int s = 0; s < 10; ++s) {
    const RationalVector x = sampler.next(), v = sampler.next(), w = sampler.next();
    const RationalMatrix a = ad_fil.evaluate(x);
    RationalVector av(4), aw(4);
    for (int r = 0; r < 4; ++r) {
      av(r) = 0;
      aw(r) = 0;
      for (int c = 0; c < 4; ++c) {
        av(r) += a(r, c) * v(c);
        aw(r) += a(r, c) * w(c);
      }
    }
    const RationalVector lhs_bracket = fil.bracket(v, w);
    RationalVector lhs(4);
    for (int r = 0; r < 4; ++r) {
      lhs(r) = 0;
      for (int c = 0; c < 4; ++c) lhs(r) += a(r, c) * lhs_bracket(c);
    }
    CHECK(lhs == fil.bracket(av, aw));
  }
}

TEST_CASE("evaluation paths agree") {
  const auto heis = load("heisenberg");
  const PolyVec m = bch_product(heis);

  RationalVector zero(3);
  zero << 0, 0, 0;
  CHECK(evaluate_product(m, zero, zero) == zero);

  RationalVector e1(3), e2(3);
  e1 << 1, 0, 0;
  e2 << 0, 1, 0;
  const RationalVector prod = evaluate_product(m, e1, e2);
  CHECK(prod(0) == 1);
  CHECK(prod(1) == 1);
  CHECK(prod(2) == Rational(1, 2));

  DetRng rng(9);
  const GroupEvaluator ev(heis);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd a = rng.uniform_vector(3, -1, 1);
    Eigen::VectorXd b = rng.uniform_vector(3, -1, 1);
    RationalVector ar(3), br(3);
    for (int j = 0; j < 3; ++j) {
      // Snap to rationals with denominator 1024 so both paths see the
      // same point.
      const long num_a = std::lround(a(j) * 1024);
      const long num_b = std::lround(b(j) * 1024);
      ar(j) = Rational(num_a, 1024);
      br(j) = Rational(num_b, 1024);
      a(j) = static_cast<double>(num_a) / 1024;
      b(j) = static_cast<double>(num_b) / 1024;
    }
    const RationalVector exact = evaluate_product(m, ar, br);
    const Eigen::VectorXd approx = ev.multiply(a, b);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(approx(j) - to_double(exact(j))) < 1e-12);
  }

  CHECK_THROWS(evaluate_product(m, e1, RationalVector(2)));
}

TEST_CASE("unimodularity: Jacobian determinant of left translation is 1") {
  for (const char* name : {"heisenberg", "filiform4", "abelian2_aniso"}) {
    const auto alg = load(name);
    const PolyVec m = bch_product(alg);
    CHECK(determinant(group_law_jacobian_y(alg, m)) == MultiPoly::constant(2 * alg.dim(), 1));
  }
}

TEST_CASE("dilations are automorphisms of the law") {
  for (const char* name : {"heisenberg", "filiform4", "abelian2_aniso"}) {
    const auto alg = load(name);
    CHECK(verify_dilation_automorphism(alg, bch_product(alg)).ok());
  }
}
