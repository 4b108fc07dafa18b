#include "qtb/symfunc.hpp"

namespace qtb {

int SymBasis::index_of(const Partition& la) const {
  for (size_t i = 0; i < lams.size(); ++i)
    if (lams[i] == la) return static_cast<int>(i);
  throw size_error("partition not in basis: " + la.str());
}

SymBasis sym_basis(int n) {
  SymBasis b;
  b.n = n;
  b.lams = partitions_of(n);
  int k = static_cast<int>(b.lams.size());
  b.p_to_m = Matrix<Rational>(k, k);
  for (int j = 0; j < k; ++j) {
    LaurentPoly<Rational> p = power_sum_product<Rational>(n, b.lams[j]);
    std::vector<Rational> col = m_coefficients(p, b.lams);
    for (int i = 0; i < k; ++i) b.p_to_m.at(i, j) = col[i];
  }
  b.m_to_p = inverse(b.p_to_m);
  return b;
}

}  // namespace qtb
