#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/coadjoint.hpp"
#include "carnot/diff_op.hpp"
#include "carnot/group_spec_io.hpp"

#include <functional>

using namespace carnot;

namespace {

GradedLieAlgebra load(const std::string& name) {
  return load_group_spec(std::string(CARNOT_DATA_DIR) + "/" + name + ".json");
}

MultiPoly var(int nv, int j) { return MultiPoly::variable(nv, j); }

/// All monomials in n variables of total degree <= max_degree.
std::vector<MultiPoly> monomial_basis(int n, int max_degree) {
  std::vector<MultiPoly> basis;
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      basis.push_back(MultiPoly::monomial(n, e, 1));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      rec(pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(0, max_degree);
  return basis;
}

/// f composed with left translation by g: x -> f(g . x).
MultiPoly left_translate(const GradedLieAlgebra& alg, const PolyVec& m, const RationalVector& g,
                         const MultiPoly& f) {
  const int n = alg.dim();
  std::vector<MultiPoly> images;
  for (int j = 0; j < n; ++j) images.push_back(MultiPoly::constant(n, g(j)));
  for (int j = 0; j < n; ++j) images.push_back(var(n, j));
  std::vector<MultiPoly> law_at_g;
  for (int j = 0; j < n; ++j) law_at_g.push_back(m[j].substitute(images));
  return f.substitute(law_at_g);
}

MultiPoly right_translate(const GradedLieAlgebra& alg, const PolyVec& m, const RationalVector& g,
                          const MultiPoly& f) {
  const int n = alg.dim();
  std::vector<MultiPoly> images;
  for (int j = 0; j < n; ++j) images.push_back(var(n, j));
  for (int j = 0; j < n; ++j) images.push_back(MultiPoly::constant(n, g(j)));
  std::vector<MultiPoly> law_at_g;
  for (int j = 0; j < n; ++j) law_at_g.push_back(m[j].substitute(images));
  return f.substitute(law_at_g);
}

}  // namespace

TEST_CASE("abelian fields are the plain partials") {
  const auto ab = load("abelian3");
  const auto left = left_invariant_fields(ab);
  const auto right = right_invariant_fields(ab);
  for (int j = 0; j < 3; ++j) {
    CHECK(left[j] == DiffOp::partial(3, j));
    CHECK(right[j] == DiffOp::partial(3, j));
  }
}

TEST_CASE("Heisenberg fields in closed form") {
  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  DiffOp x1 = DiffOp::partial(3, 0);
  x1 += DiffOp::term(var(3, 1) * Rational(-1, 2), MultiIndex{0, 0, 1});
  DiffOp x2 = DiffOp::partial(3, 1);
  x2 += DiffOp::term(var(3, 0) * Rational(1, 2), MultiIndex{0, 0, 1});
  CHECK(fields[0] == x1);
  CHECK(fields[1] == x2);
  CHECK(fields[2] == DiffOp::partial(3, 2));

  const auto right = right_invariant_fields(heis);
  DiffOp y1 = DiffOp::partial(3, 0);
  y1 += DiffOp::term(var(3, 1) * Rational(1, 2), MultiIndex{0, 0, 1});
  CHECK(right[0] == y1);
}

TEST_CASE("left fields commute with left translations on polynomials") {
  for (const char* name : {"heisenberg", "filiform4"}) {
    const auto alg = load(name);
    const int n = alg.dim();
    const PolyVec m = bch_product(alg);
    const auto fields = left_invariant_fields(alg);
    CovectorSampler sampler(n, 19);
    const RationalVector g = sampler.next();
    for (const MultiPoly& f : monomial_basis(n, 3)) {
      for (int j = 0; j < n; ++j) {
        CHECK(fields[j].apply(left_translate(alg, m, g, f)) ==
              left_translate(alg, m, g, fields[j].apply(f)));
      }
    }
  }
}

TEST_CASE("right fields commute with right translations on polynomials") {
  const auto heis = load("heisenberg");
  const PolyVec m = bch_product(heis);
  const auto fields = right_invariant_fields(heis);
  CovectorSampler sampler(3, 29);
  const RationalVector g = sampler.next();
  for (const MultiPoly& f : monomial_basis(3, 3)) {
    for (int j = 0; j < 3; ++j) {
      CHECK(fields[j].apply(right_translate(heis, m, g, f)) ==
            right_translate(heis, m, g, fields[j].apply(f)));
    }
  }
}

TEST_CASE("left and right families commute") {
  for (const char* name : {"heisenberg", "filiform4"}) {
    const auto alg = load(name);
    const auto left = left_invariant_fields(alg);
    const auto right = right_invariant_fields(alg);
    for (int i = 0; i < alg.dim(); ++i) {
      for (int j = 0; j < alg.dim(); ++j) {
        CHECK(commutator(left[i], right[j]).is_zero());
      }
    }
  }
}

TEST_CASE("fields represent the bracket structure") {
  for (const char* name : {"heisenberg", "filiform4", "abelian2_aniso"}) {
    const auto alg = load(name);
    const int n = alg.dim();
    const auto fields = left_invariant_fields(alg);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        DiffOp expected(n);
        for (int k = 0; k < n; ++k) {
          const Rational c = alg.structure_constant(i, j, k);
          if (c != 0) expected += fields[k] * c;
        }
        CHECK(commutator(fields[i], fields[j]) == expected);
      }
    }
  }
}

TEST_CASE("triangular field form") {
  for (const char* name : {"heisenberg", "filiform4", "abelian3"}) {
    const auto alg = load(name);
    CHECK(verify_vectorfield_form(alg, left_invariant_fields(alg)).ok());
  }

  // Corrupted field with P_13 = x3: wrong homogeneity and wrong variables.
  const auto heis = load("heisenberg");
  auto fields = left_invariant_fields(heis);
  fields[0] += DiffOp::term(var(3, 2), MultiIndex{0, 0, 1});
  const auto report = verify_vectorfield_form(heis, fields);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.size() >= 2);
}

TEST_CASE("composition obeys the Leibniz rule") {
  // d_1 (x_1 f) = x_1 d_1 f + f.
  const DiffOp d1 = DiffOp::partial(2, 0);
  const DiffOp mult_x1 = DiffOp::term(var(2, 0), MultiIndex{0, 0});
  DiffOp expected = DiffOp::term(var(2, 0), MultiIndex{1, 0});
  expected += DiffOp::identity(2);
  CHECK(compose(d1, mult_x1) == expected);

  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  CHECK(commutator(fields[0], fields[1]) == fields[2]);
  CHECK(compose(DiffOp::identity(3), fields[0]) == fields[0]);
  CHECK(compose(fields[0], DiffOp::identity(3)) == fields[0]);

  // Composition agrees with double application on all monomials <= degree 6.
  const DiffOp composed = compose(fields[0], fields[1]);
  for (const MultiPoly& f : monomial_basis(3, 6)) {
    CHECK(composed.apply(f) == fields[0].apply(fields[1].apply(f)));
  }
}

TEST_CASE("ordered powers X^alpha") {
  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  CHECK(power_Xalpha(heis, {1, 0, 0}) == fields[0]);
  CHECK(power_Xalpha(heis, {1, 1, 0}) == compose(fields[0], fields[1]));
  CHECK(power_Xalpha(heis, {0, 0, 0}) == DiffOp::identity(3));
}

TEST_CASE("Rockland candidates") {
  const auto ab = load("abelian2");
  const auto r_ab = rockland_candidate(ab);
  DiffOp lap(2);
  lap -= compose(DiffOp::partial(2, 0), DiffOp::partial(2, 0));
  lap -= compose(DiffOp::partial(2, 1), DiffOp::partial(2, 1));
  CHECK(r_ab.op == lap);
  CHECK(r_ab.degree == 2);

  const auto heis = load("heisenberg");
  const auto r = rockland_candidate(heis);
  const auto fields = left_invariant_fields(heis);
  DiffOp expected = compose(compose(fields[0], fields[0]), compose(fields[0], fields[0]));
  expected += compose(compose(fields[1], fields[1]), compose(fields[1], fields[1]));
  expected -= compose(fields[2], fields[2]);
  CHECK(r.op == expected);
  CHECK(r.degree == 4);

  const auto aniso = load("abelian2_aniso");
  const auto r_aniso = rockland_candidate(aniso);
  DiffOp quartic(2);
  const DiffOp d1 = DiffOp::partial(2, 0);
  quartic += compose(compose(d1, d1), compose(d1, d1));
  quartic -= compose(DiffOp::partial(2, 1), DiffOp::partial(2, 1));
  CHECK(r_aniso.op == quartic);
  CHECK(r_aniso.degree == 4);
}

TEST_CASE("application to polynomials") {
  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  CHECK(fields[2].apply(var(3, 2)) == MultiPoly::constant(3, 1));
  CHECK(fields[0].apply(var(3, 2)) == var(3, 1) * Rational(-1, 2));
  // A pure-derivative operator kills constants; multiplication rescales them.
  CHECK(fields[0].apply(MultiPoly::constant(3, 5)).is_zero());
  const DiffOp scale = DiffOp::term(MultiPoly::constant(3, 3), MultiIndex{0, 0, 0});
  CHECK(scale.apply(MultiPoly::constant(3, 5)) == MultiPoly::constant(3, 15));
}

TEST_CASE("homogeneity degrees") {
  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  CHECK(*homogeneity_degree(heis, fields[0]) == 1);
  CHECK(*homogeneity_degree(heis, fields[2]) == 2);
  CHECK(*homogeneity_degree(heis, rockland_candidate(heis).op) == 4);

  // X^alpha is [alpha]-homogeneous for every alpha with [alpha] <= 6, on the
  // Heisenberg and anisotropic abelian test algebras.
  for (const char* name : {"heisenberg", "abelian2_aniso"}) {
    const auto alg = load(name);
    const int n = alg.dim();
    std::vector<MultiIndex> all;
    MultiIndex current(n, 0);
    std::function<void(int)> enumerate = [&](int pos) {
      const Rational degree = homogeneous_degree(alg, current);
      if (degree > 6) return;
      if (pos == n) {
        all.push_back(current);
        return;
      }
      for (int k = 0;; ++k) {
        current[pos] = k;
        if (homogeneous_degree(alg, current) > 6) break;
        enumerate(pos + 1);
      }
      current[pos] = 0;
    };
    enumerate(0);
    CHECK(all.size() >= 16);  // guards against a vacuous enumeration
    for (const MultiIndex& alpha : all) {
      CHECK(*homogeneity_degree(alg, power_Xalpha(alg, alpha)) ==
            homogeneous_degree(alg, alpha));
    }
  }

  // d_1 + x_1 d_1 mixes degrees 1 and 0.
  DiffOp mixed = DiffOp::partial(3, 0);
  mixed += DiffOp::term(var(3, 0), MultiIndex{1, 0, 0});
  CHECK_FALSE(homogeneity_degree(heis, mixed).has_value());
}

TEST_CASE("homogeneity via the dilation identity on polynomials") {
  // op(f o alpha_lambda) = lambda^nu (op f) o alpha_lambda with lambda = 2,
  // checked exactly on monomials for a nontrivial field.
  const auto heis = load("heisenberg");
  const auto fields = left_invariant_fields(heis);
  const Rational lambda = 2;
  auto dilate_poly = [&](const MultiPoly& f) {
    std::vector<MultiPoly> images;
    for (int j = 0; j < 3; ++j) {
      images.push_back(var(3, j) * *exact_rational_power(lambda, heis.weight(j)));
    }
    return f.substitute(images);
  };
  for (const MultiPoly& f : monomial_basis(3, 4)) {
    const MultiPoly lhs = fields[0].apply(dilate_poly(f));
    const MultiPoly rhs = dilate_poly(fields[0].apply(f)) * lambda;  // nu = 1
    CHECK(lhs == rhs);
  }
}
