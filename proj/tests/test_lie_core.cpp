#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/group_spec_io.hpp"
#include "carnot/lie_algebra.hpp"

using namespace carnot;

namespace {

GradedLieAlgebra load(const std::string& name) {
  return load_group_spec(std::string(CARNOT_DATA_DIR) + "/" + name + ".json");
}

GradedLieAlgebra heisenberg() { return load("heisenberg"); }

GradedLieAlgebra heisenberg_with_weights(std::vector<Rational> weights) {
  GradedLieAlgebra::BracketMap brackets;
  brackets[{0, 1}][2] = 1;
  return GradedLieAlgebra("heis", std::move(weights), brackets, {"X", "Y", "Z"});
}

}  // namespace

TEST_CASE("validate_algebra accepts the bundled corpus") {
  for (const char* name : {"heisenberg", "abelian1", "abelian2", "abelian2_aniso", "abelian3",
                            "abelian4", "abelian4_aniso", "filiform4"}) {
    const auto alg = load(name);
    CHECK(validate_algebra(alg).ok());
    CHECK(validate_dilation_compatibility(alg).ok());
  }
}

TEST_CASE("validate_algebra flags a Jacobi violation") {
  // Heisenberg plus [X, Z] = X: Jacobi on (X, Y, Z) expands to
  // [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0 + 0 - [X,Y] = -Z, nonzero.
  GradedLieAlgebra::BracketMap brackets;
  brackets[{0, 1}][2] = 1;
  brackets[{0, 2}][0] = 1;
  const GradedLieAlgebra bad("bad", {1, 1, 2}, brackets, {"X", "Y", "Z"});
  const auto report = validate_algebra(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().find("Jacobi") != std::string::npos);
}

TEST_CASE("dilation compatibility distinguishes gradings") {
  CHECK(validate_dilation_compatibility(heisenberg_with_weights({1, 1, 2})).ok());

  const auto report = validate_dilation_compatibility(heisenberg_with_weights({1, 1, 1}));
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().find("c_{1,2}^3") != std::string::npos);

  // Abelian: no brackets to constrain, any weights pass.
  GradedLieAlgebra abelian("ab", {1, Rational(7, 3)}, {}, {"X", "Y"});
  CHECK(validate_dilation_compatibility(abelian).ok());
}

TEST_CASE("homogeneous dimension") {
  CHECK(homogeneous_dimension(heisenberg()) == 4);
  CHECK(homogeneous_dimension(load("abelian3")) == 3);
  CHECK(homogeneous_dimension(load("abelian2_aniso")) == 3);
}

TEST_CASE("nilpotency step by exact spans") {
  CHECK(nilpotency_step(load("abelian3")) == 1);
  CHECK(nilpotency_step(heisenberg()) == 2);
  CHECK(nilpotency_step(load("filiform4")) == 3);
  // Graded implies nilpotent with step <= dim.
  for (const char* name : {"heisenberg", "abelian1", "filiform4", "abelian4_aniso"}) {
    const auto alg = load(name);
    CHECK(nilpotency_step(alg) <= alg.dim());
  }
}

TEST_CASE("non-nilpotent bracket data is detected") {
  // corrupted_jacobi has [X, Z] = X, whose lower central series never dies.
  const auto bad = load("corrupted_jacobi");
  CHECK_THROWS_WITH_AS((void)nilpotency_step(bad), "not nilpotent", std::runtime_error);
}

TEST_CASE("dilation coordinates") {
  const auto heis = heisenberg();
  RationalVector x(3);
  x << 1, 1, 1;
  const RationalVector doubled = dilation_coordinates(heis, Rational(2), x);
  CHECK(doubled(0) == 2);
  CHECK(doubled(1) == 2);
  CHECK(doubled(2) == 4);

  const RationalVector same = dilation_coordinates(heis, Rational(1), x);
  CHECK(same == x);

  RationalVector y(3);
  y << 2, 2, 4;
  CHECK(dilation_coordinates(heis, Rational(1, 2), y) == x);

  CHECK_THROWS_AS(dilation_coordinates(heis, Rational(-1), x), std::domain_error);

  // Composition law, exact over the rationals.
  const Rational lambda(3, 2), mu(4, 3);
  CHECK(dilation_coordinates(heis, lambda, dilation_coordinates(heis, mu, x)) ==
        dilation_coordinates(heis, lambda * mu, x));
}

TEST_CASE("dilations with fractional weights need exact roots") {
  GradedLieAlgebra alg("half", {1, Rational(3, 2)}, {}, {"A", "B"});
  RationalVector x(2);
  x << 1, 1;
  // 4^{3/2} = 8 is exact; 2^{3/2} is not rational.
  const RationalVector scaled = dilation_coordinates(alg, Rational(4), x);
  CHECK(scaled(1) == 8);
  CHECK_THROWS_AS(dilation_coordinates(alg, Rational(2), x), std::domain_error);
}

TEST_CASE("homogeneous degree of multi-indices") {
  const auto heis = heisenberg();
  CHECK(homogeneous_degree(heis, {1, 1, 0}) == 2);
  CHECK(homogeneous_degree(heis, {0, 0, 1}) == 2);
  CHECK(homogeneous_degree(heis, {0, 0, 0}) == 0);
}

TEST_CASE("weight common multiple") {
  CHECK(weight_common_multiple(heisenberg()) == 2);
  CHECK(weight_common_multiple(load("abelian3")) == 1);
  CHECK(weight_common_multiple(load("abelian4_aniso")) == 6);
}

TEST_CASE("group spec loading") {
  const auto heis = heisenberg();
  CHECK(heis.dim() == 3);
  CHECK(heis.weight(2) == 2);
  CHECK(heis.basis_labels()[2] == "Z");
  CHECK(heis.structure_constant(0, 1, 2) == 1);
  CHECK(heis.structure_constant(1, 0, 2) == -1);
  CHECK(heis.structure_constant(0, 2, 1) == 0);

  // Weights are rescaled so the minimum is 1.
  const auto rescaled = parse_group_spec(
      R"({"name":"r","dim":2,"weights":["2","4"],"basis":["A","B"],"brackets":[]})", "inline");
  CHECK(rescaled.weight(0) == 1);
  CHECK(rescaled.weight(1) == 2);

  CHECK_THROWS_AS(parse_group_spec("{", "inline"), SpecError);
  CHECK_THROWS_AS(parse_group_spec(R"({"dim":2,"weights":["1"]})", "inline"), SpecError);
  CHECK_THROWS_AS(
      parse_group_spec(
          R"({"dim":2,"weights":["1","1"],"brackets":[{"i":1,"j":2,"k":1,"c":"1/0"}]})", "inline"),
      SpecError);
  CHECK_THROWS_AS(load_group_spec("/nonexistent/path.json"), IoError);

  // Conflicting duplicate brackets are a schema violation.
  CHECK_THROWS_AS(
      parse_group_spec(
          R"({"dim":3,"weights":["1","1","2"],
              "brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":2,"j":1,"k":3,"c":"1"}]})",
          "inline"),
      SpecError);
}

TEST_CASE("exact rational powers") {
  CHECK(*exact_rational_power(Rational(4), Rational(1, 2)) == 2);
  CHECK(*exact_rational_power(Rational(8, 27), Rational(2, 3)) == Rational(4, 9));
  CHECK_FALSE(exact_rational_power(Rational(2), Rational(1, 2)).has_value());
  CHECK(*exact_rational_power(Rational(5), Rational(3)) == 125);
}
