#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtb/symfunc.hpp"

using namespace qtb;

TEST_CASE("degree 2 transitions") {
  SymBasis b = sym_basis(2);
  REQUIRE(b.lams.size() == 2);
  CHECK(b.lams[0] == Partition({2}));
  CHECK(b.lams[1] == Partition({1, 1}));

  // p_(2) = m_(2); p_(1,1) = m_(2) + 2 m_(1,1)
  CHECK(b.p_to_m.at(0, 0) == 1);
  CHECK(b.p_to_m.at(1, 0) == 0);
  CHECK(b.p_to_m.at(0, 1) == 1);
  CHECK(b.p_to_m.at(1, 1) == 2);

  // m_(1,1) = (p_(1,1) - p_(2))/2
  CHECK(b.m_to_p.at(0, 1) == Rational(-1, 2));
  CHECK(b.m_to_p.at(1, 1) == Rational(1, 2));
}

TEST_CASE("degree 3: elementary symmetric in power sums") {
  SymBasis b = sym_basis(3);
  int j = b.index_of(Partition({1, 1, 1}));
  // e_3 = m_(1,1,1) = p_1^3/6 - p_2 p_1/2 + p_3/3
  CHECK(b.m_to_p.at(b.index_of(Partition({3})), j) == Rational(1, 3));
  CHECK(b.m_to_p.at(b.index_of(Partition({2, 1})), j) == Rational(-1, 2));
  CHECK(b.m_to_p.at(b.index_of(Partition({1, 1, 1})), j) == Rational(1, 6));
  CHECK_THROWS_AS(b.index_of(Partition({4})), size_error);
}

TEST_CASE("transitions are mutually inverse through degree 6") {
  for (int n = 1; n <= 6; ++n) {
    SymBasis b = sym_basis(n);
    int k = static_cast<int>(b.lams.size());
    Matrix<Rational> prod = b.p_to_m * b.m_to_p;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) CHECK(prod.at(i, j) == (i == j ? Rational(1) : Rational(0)));
  }
}

TEST_CASE("m-coefficient extraction round-trips a symmetric polynomial") {
  int n = 4;
  SymBasis b = sym_basis(n);
  // build 3 m_(2,1,1) - 5 m_(4) and read its coefficients back
  LaurentPoly<Rational> f =
      Rational(3) * monomial_symmetric<Rational>(n, {2, 1, 1}) -
      Rational(5) * monomial_symmetric<Rational>(n, {4});
  std::vector<Rational> coef = m_coefficients(f, b.lams);
  for (size_t i = 0; i < b.lams.size(); ++i) {
    Rational expect = 0;
    if (b.lams[i] == Partition({2, 1, 1})) expect = 3;
    if (b.lams[i] == Partition({4})) expect = -5;
    CHECK(coef[i] == expect);
  }
}

TEST_CASE("power sum products expand consistently") {
  // p_(2,1) in 3 variables equals p_2 * p_1
  LaurentPoly<Rational> lhs = power_sum_product<Rational>(3, Partition({2, 1}));
  LaurentPoly<Rational> rhs =
      LaurentPoly<Rational>::power_sum(3, 2) * LaurentPoly<Rational>::power_sum(3, 1);
  CHECK(lhs == rhs);
  SymBasis b = sym_basis(3);
  std::vector<Rational> coef = m_coefficients(lhs, b.lams);
  // p_2 p_1 = m_(3) + m_(2,1)
  CHECK(coef[b.index_of(Partition({3}))] == 1);
  CHECK(coef[b.index_of(Partition({2, 1}))] == 1);
  CHECK(coef[b.index_of(Partition({1, 1, 1}))] == 0);
}
