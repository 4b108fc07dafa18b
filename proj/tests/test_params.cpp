#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtb/params.hpp"

using namespace qtb;

TEST_CASE("exact parameter bundle at q=2, q1=3") {
  Params<Rational> P = default_exact_params();
  CHECK(P.q2 == Rational(4));
  CHECK(P.q3 == Rational(1, 12));
  CHECK(P.q1 * P.q2 * P.q3 == Rational(1));

  CHECK(P.kappa(1) == Rational(11, 2));
  CHECK(P.kappa(-1) == -P.kappa(1));
  CHECK(P.kappa(2) == Rational(715, 6));

  CHECK(P.c1() == Rational(-1, 22));
  CHECK(P.c2() == Rational(-4));
  CHECK(P.c1() * P.c2() == ScalarOps<Rational>::inv(P.kappa(1)));

  Rational u(3);
  CHECK(P.gamma(1, {u}) == Rational(-18, 11));
  CHECK(P.gamma(1, {u, u}) == Rational(-36, 11));
  CHECK_THROWS_AS(P.gamma(0, {u}), config_error);
}

TEST_CASE("g is the cubic z^3 - e1 z^2 w + e2 z w^2 - w^3") {
  Params<Rational> P = default_exact_params();
  Rational e1 = P.q1 + P.q2 + P.q3;
  Rational e2 = P.q1 * P.q2 + P.q1 * P.q3 + P.q2 * P.q3;
  Rational z(5), w(7);
  Rational cubic = z * z * z - e1 * z * z * w + e2 * z * w * w - w * w * w;
  CHECK(P.g_eval(z, w) == cubic);
  CHECK(P.g_eval(P.q1 * w, w) == 0);
  CHECK(P.g_eval(P.q3 * w, w) == 0);
}

TEST_CASE("phi evaluation and pole") {
  Params<Rational> P = default_exact_params();
  Rational u(3);
  CHECK(P.phi_eval({u}, Rational(5)) == Rational(-7, 4));
  CHECK_THROWS_AS(P.phi_eval({u}, u), pole_error);
  CHECK(P.phi_eval({u, u}, Rational(5)) == Rational(49, 16));
}

TEST_CASE("genericity gate rejects resonant parameters") {
  CHECK_THROWS_AS(Params<Rational>(Rational(2), Rational(4)), genericity_error);     // q1 = q2
  CHECK_THROWS_AS(Params<Rational>(Rational(2), Rational(1)), genericity_error);     // q1 = 1
  CHECK_THROWS_AS(Params<Rational>(Rational(1), Rational(3)), genericity_error);     // q2 = 1
  CHECK_THROWS_AS(Params<Rational>(Rational(2), Rational(2)), genericity_error);     // q1^2 = q2
  CHECK_THROWS_AS(Params<Rational>(Rational(2), Rational(1, 4)), genericity_error);  // q3 = 1
  CHECK_THROWS_AS(Params<Rational>(Rational(0), Rational(3)), config_error);
  CHECK_NOTHROW(default_exact_params());
  CHECK_NOTHROW(default_float_params());
}

TEST_CASE("float parameters satisfy the float genericity gate") {
  Params<Complex> P = default_float_params();
  CHECK(abs(P.q1 * P.q2 * P.q3 - Complex(1)) < Real("1e-45"));
  Complex k1 = P.kappa(1);
  Complex direct = (Complex(1) - P.q1) * (Complex(1) - P.q2) * (Complex(1) - P.q3);
  CHECK(abs(k1 - direct) == 0);
  CHECK(abs(P.c1() * P.c2() - ScalarOps<Complex>::inv(k1)) < Real("1e-45"));
}

TEST_CASE("prime field reduction preserves the defining relations") {
  Params<Rational> P = default_exact_params();
  Params<FpA> Pa = reduce_params<FpA>(P);
  CHECK(Pa.q1 * Pa.q2 * Pa.q3 == FpA(1L));
  CHECK(Pa.kappa(1) == FpA::from_rational(P.kappa(1)));
  Params<FpB> Pb = reduce_params<FpB>(P);
  CHECK(Pb.kappa(3) == FpB::from_rational(P.kappa(3)));
}
