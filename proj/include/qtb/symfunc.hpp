#pragma once

#include <vector>

#include "qtb/laurent.hpp"
#include "qtb/linalg.hpp"
#include "qtb/partition.hpp"

namespace qtb {

/// Coefficient bookkeeping for symmetric polynomials of homogeneous degree n
/// realized in exactly n variables, where the monomial basis {m_lambda} and
/// power-sum basis {p_lambda} both index partitions of n.
struct SymBasis {
  int n = 0;
  std::vector<Partition> lams;      // partitions of n in canonical order
  Matrix<Rational> p_to_m;          // column j: p_{lams[j]} expanded in m-basis
  Matrix<Rational> m_to_p;          // inverse transition

  int index_of(const Partition& la) const;
};

SymBasis sym_basis(int n);

/// p_mu = p_{mu_1} p_{mu_2} ... as a polynomial in nvars variables.
template <class S>
LaurentPoly<S> power_sum_product(int nvars, const Partition& mu) {
  LaurentPoly<S> f = LaurentPoly<S>::constant(nvars, ScalarOps<S>::one());
  for (int part : mu.parts) f *= LaurentPoly<S>::power_sum(nvars, part);
  return f;
}

/// m-basis coefficients of a symmetric polynomial, homogeneous of degree n in
/// exactly n variables: entry j is the coefficient of the monomial x^lams[j].
template <class S>
std::vector<S> m_coefficients(const LaurentPoly<S>& f, const std::vector<Partition>& lams) {
  std::vector<S> out;
  out.reserve(lams.size());
  for (const Partition& la : lams) {
    Mono m;
    for (int i = 0; i < la.length(); ++i) m.e[i] = static_cast<int8_t>(la.parts[i]);
    out.push_back(f.coefficient(m));
  }
  return out;
}

}  // namespace qtb
