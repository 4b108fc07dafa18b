#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtb/ratfn.hpp"

using namespace qtb;
using LP = LaurentPoly<Rational>;
using RF = RationalFn<Rational>;

static LP x(int nvars, int i, int e = 1) {
  std::vector<int> expo(nvars, 0);
  expo[i] = e;
  return LP::monomial(nvars, expo, Rational(1));
}
static RF over_affine(int nvars, const LP& num, int a, const Rational& c, int mult = 1) {
  return RF(num).times_linear_power(a, c, std::nullopt, -mult);
}

TEST_CASE("construction keeps denominators factored and canonical") {
  // 1/(x2 - 3 x1) normalizes to -(1/3) / (x1 - (1/3) x2)
  RF f = RF::constant(2, Rational(1)).times_linear_power(1, Rational(3), 0, -1);
  REQUIRE(f.den().size() == 1);
  CHECK(f.den()[0].a == 0);
  CHECK(*f.den()[0].b == 1);
  CHECK(f.den()[0].c == Rational(1, 3));
  CHECK(f.eval({Rational(1), Rational(6)}) == Rational(1, 3));
}

TEST_CASE("multiplying by a stored factor cancels it") {
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, Rational(5));  // 1/(x-5)
  RF g = f.times_linear_power(0, Rational(5), std::nullopt, 1);
  CHECK(g.den().empty());
  CHECK(g.num() == LP::constant(1, Rational(1)));
  RF h = f.times_linear_power(0, Rational(5), std::nullopt, 2);  // (x-5)^2/(x-5) = x-5
  CHECK(h.den().empty());
  CHECK(h.num() == LP::var_affine(1, 0, Rational(5)));
}

TEST_CASE("addition over a common denominator") {
  Rational u(2), v(7);
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, u);
  RF g = over_affine(1, LP::constant(1, Rational(1)), 0, v);
  RF sum = f + g;
  LP expect_num = Rational(2) * x(1, 0) - LP::constant(1, u + v);
  RF expect(expect_num);
  expect = expect.times_linear_power(0, u, std::nullopt, -1);
  expect = expect.times_linear_power(0, v, std::nullopt, -1);
  CHECK(sum == expect);
  CHECK((f - f).is_zero());
  CHECK(sum.eval({Rational(3)}) == Rational(1) / Rational(1) + Rational(1) / Rational(-4));
}

TEST_CASE("reduction cancels exact numerator factors") {
  LP num = x(2, 0, 2) - x(2, 1, 2);
  RF f = RF(num).times_linear_power(0, Rational(1), 1, -1);  // (x1^2-x2^2)/(x1-x2)
  RF r = f.reduced();
  CHECK(r.den().empty());
  CHECK(r.num() == x(2, 0) + x(2, 1));
}

TEST_CASE("substitution transforms factors, with pole detection") {
  RF f = RF::constant(3, Rational(1)).times_linear_power(0, Rational(3), 1, -1);  // 1/(x1-3x2)
  RF g = f.substituted(3, {{0, {Rational(2), 2}}});  // x1 -> 2 x3
  CHECK(g.eval({Rational(0), Rational(1), Rational(1)}) == Rational(1) / Rational(-1));
  CHECK(g.eval({Rational(0), Rational(1), Rational(5)}) == Rational(1, 7));

  CHECK_THROWS_AS(f.substituted(3, {{0, {Rational(3), 1}}}), pole_error);
  RF h = RF::constant(1, Rational(1)).times_linear_power(0, Rational(3), std::nullopt, -1);
  CHECK_THROWS_AS(h.substituted(1, {{0, {Rational(3), std::nullopt}}}), pole_error);
  CHECK(h.substituted(1, {{0, {Rational(5), std::nullopt}}}).num() ==
        LP::constant(1, Rational(1, 2)));
}

TEST_CASE("derivative of factored quotients") {
  // d/dz 1/(z-c) = -1/(z-c)^2
  Rational c(4);
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, c);
  RF df = f.derivative(0);
  RF expect = over_affine(1, LP::constant(1, Rational(-1)), 0, c, 2);
  CHECK(df == expect);

  // d/dz z^2/(z-1) = (z^2 - 2z)/(z-1)^2
  RF g = over_affine(1, x(1, 0, 2), 0, Rational(1));
  RF dg = g.derivative(0);
  RF expect2 = over_affine(1, x(1, 0, 2) - Rational(2) * x(1, 0), 0, Rational(1), 2);
  CHECK(dg == expect2);
}

TEST_CASE("frozen residue oracles for the z^k dz/z weight") {
  // f = 1/(z-c): k=1 gives -1, k=2 gives -c
  Rational c(6);
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, c);
  RF r1 = residues_at_zero_and_infinity(f, 0, 1);
  CHECK(r1.num() == LP::constant(1, Rational(-1)));
  CHECK(r1.den().empty());
  RF r2 = residues_at_zero_and_infinity(f, 0, 2);
  CHECK(r2.num() == LP::constant(1, -c));

  // f = 1 with k=0: no finite poles, and the series oracles give 1 and -1
  RF one = RF::constant(1, Rational(1));
  CHECK(residues_at_zero_and_infinity(one, 0, 0).is_zero());
  CHECK(residue_series_at_zero(one, 0, 0).num() == LP::constant(1, Rational(1)));
  CHECK(residue_series_at_infinity(one, 0, 0).num() == LP::constant(1, Rational(-1)));
}

TEST_CASE("triple pole against the series oracle") {
  // f = 1/(z-2)^3, k=4: residue at 2 of z^3/(z-2)^3 is C(3,2)*2 = 6; total -6
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, Rational(2), 3);
  RF total = residues_at_zero_and_infinity(f, 0, 4);
  CHECK(total.num() == LP::constant(1, Rational(-6)));
  RF s0 = residue_series_at_zero(f, 0, 4);
  RF si = residue_series_at_infinity(f, 0, 4);
  CHECK(s0.is_zero());
  CHECK(si.num() == LP::constant(1, Rational(-6)));
}

TEST_CASE("residue theorem: primary route equals series route") {
  // f = (z^2 + 3 z x + x^2) / ((z-2)(z-5x)^2), z = var 0, x = var 1
  LP num = x(2, 0, 2) + Rational(3) * x(2, 0) * x(2, 1) + x(2, 1, 2);
  RF f = RF(num)
             .times_linear_power(0, Rational(2), std::nullopt, -1)
             .times_linear_power(0, Rational(5), 1, -2);
  for (int k = -1; k <= 3; ++k) {
    RF primary = residues_at_zero_and_infinity(f, 0, k);
    RF series = residue_series_at_zero(f, 0, k) + residue_series_at_infinity(f, 0, k);
    CHECK(primary == series);
  }
}

TEST_CASE("pole with z in the trailing slot of a canonical factor") {
  // f = 1/(x - 2z) with x = var 0, z = var 1; k=1 total is 1/2
  RF f = RF::constant(2, Rational(1)).times_linear_power(0, Rational(2), 1, -1);
  RF total = residues_at_zero_and_infinity(f, 1, 1);
  CHECK(total.num() == LP::constant(2, Rational(1, 2)));
  CHECK_THROWS_AS(residue_series_at_zero(f, 1, 1), size_error);
}

TEST_CASE("numerator-only z dependence has cancelling boundary residues") {
  LP num = x(2, 1, 2) + x(2, 0) * x(2, 1) + Rational(7) * x(2, 0, 2);  // z^2 + xz + 7x^2, z=var 1
  RF f = RF(num);
  CHECK(residues_at_zero_and_infinity(f, 1, 0).is_zero());
  RF s0 = residue_series_at_zero(f, 1, 0);
  RF si = residue_series_at_infinity(f, 1, 0);
  CHECK((s0 + si).is_zero());
  CHECK(s0.num() == Rational(7) * x(2, 0, 2));
}

TEST_CASE("spectator denominators survive the residue computation") {
  // f = 1 / ((z-3)(x-5)), poles in z only at z=3
  RF f = RF::constant(2, Rational(1))
             .times_linear_power(0, Rational(3), std::nullopt, -1)
             .times_linear_power(1, Rational(5), std::nullopt, -1);
  RF total = residues_at_zero_and_infinity(f, 0, 1);
  RF expect = RF::constant(2, Rational(-1)).times_linear_power(1, Rational(5), std::nullopt, -1);
  CHECK(total == expect);
}

TEST_CASE("float backend difference magnitude") {
  using RC = RationalFn<Complex>;
  using LC = LaurentPoly<Complex>;
  RC f = RC::constant(1, Complex(1)).times_linear_power(0, Complex(2), std::nullopt, -1);
  RC g = RC(LC::constant(1, Complex(Real("0.5"))))
             .times_linear_power(0, Complex(2), std::nullopt, -1);
  CHECK(RC::diff_magnitude(f, f + RC(LC(1))) < 1e-40);
  CHECK(RC::diff_magnitude(f, g) > 0.4);
  RC r = residues_at_zero_and_infinity(f, 0, 1);
  CHECK(abs(r.num().coefficient(Mono{}) - Complex(-1)) == 0);
}

TEST_CASE("evaluation guards") {
  RF f = over_affine(1, LP::constant(1, Rational(1)), 0, Rational(5));
  CHECK_THROWS_AS(f.eval({Rational(5)}), pole_error);
  CHECK(f.eval({Rational(6)}) == Rational(1));
}
