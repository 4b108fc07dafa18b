#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtb/bimodule.hpp"

using namespace qtb;
using LP = LaurentPoly<Rational>;
using Ops = ScalarOps<Rational>;

namespace {
Params<Rational> par() { return Params<Rational>(Rational(2), Rational(3)); }
std::vector<Rational> one_u() { return {Rational(5)}; }
std::vector<Rational> two_u() { return {Rational(5), Rational(7)}; }
}  // namespace

TEST_CASE("unit element and one-variable products") {
  auto P = par();
  auto us = one_u();
  auto unit = sh1_unit(us);
  CHECK(unit.n == 0);
  CHECK(unit.num == LP::constant(0, Ops::one()));

  // unit * x^0 appends the evaluation factor (x - u)
  auto r = right_mult(P, unit, sh0_generator(P, 0));
  CHECK(r.num == P.c1() * LP::var_affine(1, 0, us[0]));

  // x^k * unit carries the (q^{-1} x - q u) kernel
  Rational qinv = Ops::inv(P.q);
  for (int k : {0, 2}) {
    auto l = left_mult(P, sh0_generator(P, k), unit);
    LP expect = P.c1() * (LP::monomial(1, {k + 1}, qinv) -
                          LP::monomial(1, {k}, P.q * us[0]));
    CHECK(l.num == expect);
    CHECK(act_e(P, k, unit).num == expect);
  }
}

TEST_CASE("two-sided products associate") {
  auto P = par();
  auto us = one_u();
  auto F1 = sh0_generator(P, 0);
  auto F2 = sh0_generator(P, 1);
  auto G = act_e(P, 0, sh1_unit(us));

  auto lhs1 = left_mult(P, shuffle_product(P, F1, F2), G);
  auto rhs1 = left_mult(P, F1, left_mult(P, F2, G));
  CHECK(lhs1.num == rhs1.num);

  auto lhs2 = right_mult(P, left_mult(P, F1, G), F2);
  auto rhs2 = left_mult(P, F1, right_mult(P, G, F2));
  CHECK(lhs2.num == rhs2.num);

  auto lhs3 = right_mult(P, right_mult(P, G, F1), F2);
  auto rhs3 = right_mult(P, G, shuffle_product(P, F1, F2));
  CHECK(lhs3.num == rhs3.num);
}

TEST_CASE("kappa of a single box") {
  auto P = par();
  auto us = one_u();
  Rational qinv = Ops::inv(P.q);
  auto k1 = kappa_map(P, us, Partition{1});
  CHECK(k1.n == 1);
  CHECK(k1.num == LP::monomial(1, {1}, P.c1() * (qinv - P.q)));

  // same element by hand from the defining recursion
  auto sig = sigma_h_perp_minus(P, 1);
  auto byhand = left_mult(P, sig, sh1_unit(us)) -
                P.q * right_mult(P, sh1_unit(us), sig);
  CHECK(byhand.num == k1.num);
}

TEST_CASE("kappa family: membership and regularity") {
  auto P = par();
  auto us = one_u();
  for (int n = 1; n <= 4; ++n) {
    for (const Partition& la : partitions_of(n)) {
      auto v = kappa_map(P, us, la);
      CHECK(v.n == n);
      CHECK(!v.is_zero());
      auto why = wheel_violation1(P, v);
      INFO("partition of ", n, " violation: ", why.value_or("none"));
      CHECK(!why.has_value());
      auto [ord0, ordinf] = scaling_orders(v);
      CHECK(ord0 >= 1);   // vanishes as all x -> 0
      CHECK(ordinf >= 0);  // bounded as all x -> infinity
    }
  }
}

TEST_CASE("membership detector rejects non-members") {
  auto P = par();
  auto us = one_u();
  Shuffle1<Rational> flat(us, 2, LP::constant(2, Ops::one()));
  auto why = wheel_violation1(P, flat);
  REQUIRE(why.has_value());
  CHECK(why->find("vanish") != std::string::npos);

  Shuffle1<Rational> asym(us, 2, LP::monomial(2, {1, 0}, Ops::one()));
  CHECK(wheel_violation1(P, asym).has_value());

  CHECK(is_member_sh1(P, act_e(P, 1, act_e(P, 0, sh1_unit(us)))));
  CHECK(is_member_sh1(P, kappa_map(P, us, Partition{2})));
}

TEST_CASE("diagonal action: frozen gamma and multiplication") {
  auto P = par();
  CHECK(P.gamma(1, {Rational(3)}) == Rational(-18, 11));

  auto us = one_u();
  auto G = kappa_map(P, us, Partition{1});
  auto hG = act_h(P, 1, G);
  LP mul = LP::constant(1, P.gamma(1, us)) - LP::power_sum(1, 1);
  CHECK(hG.num == G.num * mul);

  // diagonal operators commute
  auto G2 = act_e(P, 0, G);
  CHECK(act_h(P, 1, act_h(P, 2, G2)).num == act_h(P, 2, act_h(P, 1, G2)).num);
}

TEST_CASE("lowering closed forms") {
  auto P = par();
  auto us = one_u();
  Rational u = us[0];
  for (int k : {0, 1, -1}) {
    auto z = act_f(P, k, sh1_unit(us));
    CHECK(z.n == 0);
    CHECK(z.is_zero());
  }
  // f_k kappa(box) = (q - q^{-1}) u^k / kappa_1 by the residue-sum identity
  auto k1 = kappa_map(P, us, Partition{1});
  Rational qinv = Ops::inv(P.q);
  for (int k : {0, 1, 2, -1}) {
    auto w = act_f(P, k, k1);
    CHECK(w.n == 0);
    Rational expect = (P.q - qinv) * Ops::pow_int(u, k) * Ops::inv(P.kappa(1));
    CHECK(w.num == LP::constant(0, expect));
  }
}

TEST_CASE("raising/diagonal commutator shifts modes") {
  auto P = par();
  auto us = one_u();
  std::vector<Shuffle1<Rational>> gs{sh1_unit(us), kappa_map(P, us, Partition{1})};
  for (const auto& G : gs) {
    for (int r : {1, 2, -1, -2}) {
      for (int k : {0, 1}) {
        auto lhs = act_h(P, r, act_e(P, k, G)) - act_e(P, k, act_h(P, r, G));
        Rational c = Ops::zero() - Ops::inv(Ops::from_long(r));
        auto rhs = c * act_e(P, k + r, G);
        CHECK(lhs.num == rhs.num);
      }
    }
  }
}

TEST_CASE("lowering/diagonal commutator shifts modes") {
  auto P = par();
  auto us = one_u();
  std::vector<Shuffle1<Rational>> gs{kappa_map(P, us, Partition{1}),
                                     act_e(P, 0, kappa_map(P, us, Partition{1}))};
  for (const auto& G : gs) {
    for (int r : {1, -1, 2}) {
      for (int k : {0, 1}) {
        auto lhs = act_h(P, r, act_f(P, k, G)) - act_f(P, k, act_h(P, r, G));
        Rational c = Ops::inv(Ops::from_long(r));
        auto rhs = c * act_f(P, k + r, G);
        CHECK(lhs.num == rhs.num);
      }
    }
  }
}

TEST_CASE("raising/lowering commutator matches the contour formula") {
  auto P = par();
  for (const auto& us : {one_u(), two_u()}) {
    std::vector<Shuffle1<Rational>> gs{act_e(P, 0, sh1_unit(us))};
    if (us.size() == 1) gs.push_back(kappa_map(P, us, Partition{1}));
    for (const auto& G : gs) {
      for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, -1}}) {
        auto lhs = act_e(P, k, act_f(P, l, G)) - act_f(P, l, act_e(P, k, G));
        auto rhs = ef_commutator_contour(P, k, l, G);
        CHECK(as_ratfn(lhs) == rhs);
      }
    }
  }
}

TEST_CASE("vacuum raising/lowering commutator closed form") {
  auto P = par();
  auto us = one_u();
  Rational qinv = Ops::inv(P.q);
  auto unit = sh1_unit(us);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 0}, {2, -1}}) {
    // f_l annihilates the unit, so the commutator reduces to -f_l e_k
    CHECK(act_f(P, l, unit).is_zero());
    auto fe = act_f(P, l, act_e(P, k, unit));
    Rational expect =
        (P.q - qinv) * Ops::pow_int(us[0], k + l) * Ops::inv(P.kappa(1));
    CHECK(fe.n == 0);
    CHECK(fe.num == LP::constant(0, expect));
  }
}

TEST_CASE("evaluation functional") {
  auto P = par();
  auto us = one_u();
  auto k1 = kappa_map(P, us, Partition{1});
  Rational a(2);
  Rational qinv = Ops::inv(P.q);
  Rational expect = P.c1() * (qinv - P.q) * a * Ops::inv(a - us[0]);
  CHECK(evaluate(k1, {a}) == expect);
  CHECK(ev_value(k1, {a}) == expect);
  CHECK(ev_value(k1, {a, Rational(3)}) == Rational(0));
  CHECK_THROWS_AS(evaluate(k1, {us[0]}), pole_error);
  auto G2 = act_e(P, 0, k1);
  CHECK_THROWS_AS(evaluate(G2, {a, a}), pole_error);
  CHECK_THROWS_AS(evaluate(k1, {a, a}), size_error);
}

TEST_CASE("scaling orders") {
  auto P = par();
  auto us = one_u();
  auto g = act_e(P, 0, sh1_unit(us));
  CHECK(scaling_orders(g) == std::pair<int, int>{0, 0});
  auto k1 = kappa_map(P, us, Partition{1});
  CHECK(scaling_orders(k1) == std::pair<int, int>{1, 0});
}

TEST_CASE("spanning families and window generators") {
  auto P = par();
  auto us = one_u();
  auto span1 = sh1_spanning(P, us, 1, 0, 1);
  CHECK(span1.size() == 3);  // kappa(box) plus unit * x^0, unit * x^1
  for (const auto& v : span1) {
    CHECK(v.n == 1);
    CHECK(is_member_sh1(P, v));
  }

  auto gens = jp_generators(P, us, Rational(0), 2, 0, 1, 2);
  CHECK(gens.size() == 6);
  for (const auto& g : gens) {
    CHECK(g.n == 2);
    CHECK(is_member_sh1(P, g));
  }

  // p != 0 includes the two-variable right factors as twisted commutators
  Rational p(1, 3);
  auto tgens = jp_generators(P, us, p, 2, 0, 1, 2);
  CHECK(tgens.size() > gens.size());
  for (const auto& g : tgens) CHECK(g.n == 2);
}

TEST_CASE("tensor parameter list round trip") {
  auto P = par();
  auto us = two_u();
  auto g = act_e(P, 1, act_e(P, 0, sh1_unit(us)));
  CHECK(g.n == 2);
  CHECK(is_member_sh1(P, g));
  auto f = act_f(P, 0, g);
  CHECK(f.n == 1);
  CHECK(is_member_sh1(P, f));
}
