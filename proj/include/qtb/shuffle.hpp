#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qtb/params.hpp"
#include "qtb/ratfn.hpp"
#include "qtb/symfunc.hpp"

namespace qtb {

/// Element of Sh_{0,n}: a symmetric Laurent numerator over the implicit
/// denominator prod_{i<j} (x_i - x_j)^2.
template <class S>
struct Shuffle0 {
  int n = 0;
  LaurentPoly<S> num;

  Shuffle0() : num(0) {}
  Shuffle0(int n_, LaurentPoly<S> num_) : n(n_), num(std::move(num_)) {
    if (num.nvars() != n) throw size_error("numerator variable count mismatch");
  }

  bool is_zero() const { return num.is_zero(); }

  friend Shuffle0 operator+(const Shuffle0& a, const Shuffle0& b) {
    if (a.n != b.n) throw size_error("adding shuffle elements of different sizes");
    return Shuffle0(a.n, a.num + b.num);
  }
  friend Shuffle0 operator-(const Shuffle0& a, const Shuffle0& b) {
    if (a.n != b.n) throw size_error("adding shuffle elements of different sizes");
    return Shuffle0(a.n, a.num - b.num);
  }
  friend Shuffle0 operator*(const S& c, const Shuffle0& a) { return Shuffle0(a.n, c * a.num); }
};

template <class S>
Shuffle0<S> sh0_unit() {
  return Shuffle0<S>(0, LaurentPoly<S>::constant(0, ScalarOps<S>::one()));
}

/// sigma(e_i) = c1 x^i in one variable.
template <class S>
Shuffle0<S> sh0_generator(const Params<S>& P, int i) {
  return Shuffle0<S>(1, LaurentPoly<S>::monomial(1, {i}, P.c1()));
}

namespace detail {

/// g(x_first, x_second) expanded in the ambient space.
template <class S>
LaurentPoly<S> gker(const Params<S>& P, int nvars, int first, int second) {
  using LP = LaurentPoly<S>;
  LP a = LP::monomial(nvars, [&] { std::vector<int> e(nvars, 0); e[first] = 1; return e; }(),
                      ScalarOps<S>::one());
  LP b = LP::monomial(nvars, [&] { std::vector<int> e(nvars, 0); e[second] = 1; return e; }(),
                      ScalarOps<S>::one());
  LP r = LP::constant(nvars, ScalarOps<S>::one());
  r *= a - P.q1 * b;
  r *= a - P.q2 * b;
  r *= a - P.q3 * b;
  return r;
}

enum class CombineMode { Sh0, LeftSh1, RightSh1 };

/// Split-sum core of all three twisted products. The A block (size m)
/// carries f, the B block (size n) carries g; the result numerator lives
/// over the canonical denominator of the target space.
///
/// Sh0:      cross factors g(x_b, x_a), sign (-1)^{#(i<j, i in A, j in B)}
/// LeftSh1:  Sh0 plus phi numerators (q^{-1}x_a - q u_t) on A
/// RightSh1: Sh0 plus evaluation numerators (x_b - u_t) on B
template <class S>
LaurentPoly<S> combine_split_sum(const Params<S>& P, const std::vector<S>& us,
                                 const LaurentPoly<S>& f, int m, const LaurentPoly<S>& g, int n,
                                 CombineMode mode) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  int N = m + n;
  if (N > MAXV) throw size_error("product size exceeds the 8-variable budget");
  if (N == 0) return f * g;

  // precompute cross kernels for all ordered pairs
  std::vector<LP> cross(static_cast<size_t>(N) * N, LP(N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (a != b) cross[static_cast<size_t>(a) * N + b] = gker(P, N, a, b);

  S qinv = Ops::inv(P.q);
  LP total(N);
  for (int mask = 0; mask < (1 << N); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != m) continue;
    std::vector<int> A, B;
    for (int i = 0; i < N; ++i) ((mask >> i) & 1 ? A : B).push_back(i);

    int inv_ab = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        bool ia = (mask >> i) & 1, ja = (mask >> j) & 1;
        if (ia && !ja) ++inv_ab;
      }

    LP term = f.remapped(N, A);
    term *= g.remapped(N, B);
    for (int a : A)
      for (int b : B) term *= cross[static_cast<size_t>(b) * N + a];
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = i + 1; j < A.size(); ++j)
        term *= LP::var_binomial(N, A[i], Ops::one(), A[j]);
    for (size_t i = 0; i < B.size(); ++i)
      for (size_t j = i + 1; j < B.size(); ++j)
        term *= LP::var_binomial(N, B[i], Ops::one(), B[j]);

    if (mode == CombineMode::LeftSh1) {
      for (int a : A)
        for (const S& u : us) {
          std::vector<int> e(static_cast<size_t>(N), 0);
          e[static_cast<size_t>(a)] = 1;
          term *= LP::monomial(N, e, qinv) - LP::constant(N, P.q * u);
        }
    } else if (mode == CombineMode::RightSh1) {
      for (int b : B)
        for (const S& u : us) term *= LP::var_affine(N, b, u);
    }

    int sign = inv_ab % 2;
    total = sign ? total - term : total + term;
  }

  std::vector<int> all(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) all[static_cast<size_t>(i)] = i;
  LP h = divided_by_vandermonde(total, all);

  Rational scale(1);
  for (int t = 2; t <= m; ++t) scale *= t;
  for (int t = 2; t <= n; ++t) scale *= t;
  for (int t = 2; t <= N; ++t) scale /= t;
  return Ops::from_rational(scale) * h;
}

}  // namespace detail

/// (F * G)(x_1..x_{m+n}) = Sym[F G prod omega(x_{m+j}, x_i)] at numerator level.
template <class S>
Shuffle0<S> shuffle_product(const Params<S>& P, const Shuffle0<S>& F, const Shuffle0<S>& G) {
  LaurentPoly<S> num = detail::combine_split_sum(P, {}, F.num, F.n, G.num, G.n,
                                                 detail::CombineMode::Sh0);
  return Shuffle0<S>(F.n + G.n, std::move(num));
}

/// Wheel-condition report: nullopt when the numerator is symmetric and
/// vanishes on (x, q1 x, q1 q2 x) and (x, q2 x, q1 q2 x); otherwise a
/// description of the violation. Conditions are vacuous for n < 3.
template <class S>
std::optional<std::string> wheel_violation(const Params<S>& P, const Shuffle0<S>& F) {
  using Ops = ScalarOps<S>;
  if (!is_symmetric(F.num)) return "numerator is not symmetric";
  if (F.n < 3) return std::nullopt;
  const S& q1 = P.q1;
  S q12 = P.q1 * P.q2;
  S q2 = P.q2;
  for (int which = 0; which < 2; ++which) {
    typename LaurentPoly<S>::SubstTarget second{which == 0 ? q1 : q2, 0};
    LaurentPoly<S> r = F.num.substituted(F.n, {{1, second}, {2, {q12, 0}}});
    bool bad;
    if constexpr (Ops::exact)
      bad = !r.is_zero();
    else
      bad = r.coeff_magnitude() > 1e-28 * std::max(F.num.coeff_magnitude(), 1.0);
    if (bad)
      return std::string("wheel condition fails on (x, ") + (which == 0 ? "q1" : "q2") +
             " x, q1 q2 x): residual has " + std::to_string(r.term_count()) + " terms";
  }
  return std::nullopt;
}

template <class S>
bool is_member_sh0(const Params<S>& P, const Shuffle0<S>& F) {
  return !wheel_violation(P, F).has_value();
}

/// epsilon^{(b)}_n: numerator prod_{i<j} (x_i - b x_j)(x_i - b^{-1} x_j).
template <class S>
Shuffle0<S> epsilon_row_base(const Params<S>& P, int n, const S& base) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  (void)P;
  LP num = LP::constant(n, Ops::one());
  S binv = Ops::inv(base);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= LP::var_binomial(n, i, base, j);
      num *= LP::var_binomial(n, i, binv, j);
    }
  return Shuffle0<S>(n, std::move(num));
}

/// epsilon^{(b)}_lambda = epsilon_{lambda_1} * ... * epsilon_{lambda_l}.
template <class S>
Shuffle0<S> epsilon_base(const Params<S>& P, const Partition& la, const S& base) {
  Shuffle0<S> acc = sh0_unit<S>();
  for (int part : la.parts) acc = shuffle_product(P, acc, epsilon_row_base(P, part, base));
  return acc;
}

template <class S>
Shuffle0<S> epsilon_q3_row(const Params<S>& P, int n) {
  return epsilon_row_base(P, n, P.q3);
}

template <class S>
Shuffle0<S> epsilon_q3(const Params<S>& P, const Partition& la) {
  return epsilon_base(P, la, P.q3);
}

/// Heisenberg pairing <0| h^perp_r h^perp_{-r} |0> = (q^r - q^{-r})/(r kappa_r).
template <class S>
S heisenberg_norm(const Params<S>& P, int r) {
  using Ops = ScalarOps<S>;
  if (r == 0) throw config_error("Heisenberg norm needs r != 0");
  return (Ops::pow_int(P.q, r) - Ops::pow_int(P.q, -r)) *
         Ops::inv(Ops::from_long(r) * P.kappa(r));
}

/// Rescaling h~perp_r = s_r h^perp_r with s_r = r (1 - q1^r) q^r q3^r.
template <class S>
S h_tilde_scale(const Params<S>& P, int r) {
  using Ops = ScalarOps<S>;
  return Ops::from_long(r) * (Ops::one() - Ops::pow_int(P.q1, r)) * Ops::pow_int(P.q, r) *
         Ops::pow_int(P.q3, r);
}

/// sigma(h^perp_{-r}), solved from the canonical-element identity: matching
/// the coefficient of the single-generator monomial h^perp_r gives
///   sigma(h^perp_{-r}) = N_r s_r sum_{la |- r} (q1-1)^{-r} (prod la_i!)^{-1}
///                        [coeff of p_r in m_la] epsilon_la.
template <class S>
Shuffle0<S> sigma_h_perp_minus(const Params<S>& P, int r) {
  using Ops = ScalarOps<S>;
  if (r < 1) throw config_error("sigma(h_perp) needs r >= 1");
  SymBasis basis = sym_basis(r);
  int row = basis.index_of(Partition(std::vector<int>{r}));
  S pref = heisenberg_norm(P, r) * h_tilde_scale(P, r) *
           Ops::pow_int(P.q1 - Ops::one(), -r);
  Shuffle0<S> acc(r, LaurentPoly<S>(r));
  for (size_t j = 0; j < basis.lams.size(); ++j) {
    const Partition& la = basis.lams[j];
    Rational coef = basis.m_to_p.at(row, static_cast<int>(j));
    if (coef == 0) continue;
    Rational fact(1);
    for (int part : la.parts)
      for (int t = 2; t <= part; ++t) fact *= t;
    S c = pref * Ops::from_rational(coef / fact);
    acc = acc + (c * epsilon_q3(P, la));
  }
  return acc;
}

/// sigma(e^perp_{-m}): base sigma(e^perp_{-1}) = c1 x, recursion
/// e^perp_{-m-1} = [e_0, e^perp_{-m}].
template <class S>
Shuffle0<S> sigma_e_perp_minus(const Params<S>& P, int m) {
  if (m < 1) throw config_error("sigma(e_perp) needs m >= 1");
  Shuffle0<S> cur = sh0_generator(P, 1);
  Shuffle0<S> e0 = sh0_generator(P, 0);
  for (int t = 1; t < m; ++t)
    cur = shuffle_product(P, e0, cur) - shuffle_product(P, cur, e0);
  return cur;
}

/// The displayed four-term Serre combination, symmetrized over x1, x2, x3;
/// identically zero in Sh_0.
template <class S>
RationalFn<S> serre_witness(const Params<S>& P) {
  using Ops = ScalarOps<S>;
  using RF = RationalFn<S>;
  auto omega = [&](int i, int j) {
    RF r(detail::gker(P, 3, i, j));
    return r.times_linear_power(i, Ops::one(), j, -3);
  };
  LaurentPoly<S> weight = LaurentPoly<S>::monomial(3, {0, 1, -1}, Ops::one());  // x2 / x3
  RF term = omega(2, 0) * omega(2, 1) * omega(1, 0) - omega(2, 0) * omega(1, 2) * omega(1, 0) -
            omega(0, 2) * omega(0, 1) * omega(2, 1) + omega(0, 1) * omega(0, 2) * omega(1, 2);
  term = weight * term;
  RF total(LaurentPoly<S>(3));
  std::vector<int> perm{0, 1, 2};
  do {
    total = total + term.remapped(3, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ScalarOps<S>::inv(ScalarOps<S>::from_long(6)) * total;
}

/// Mode transcription of g(z,w)e(z)e(w) + g(w,z)e(w)e(z) = 0: returns the
/// size-2 element that must vanish for each mode pair (i, j).
template <class S>
Shuffle0<S> e_quadratic_relation(const Params<S>& P, int i, int j) {
  S e1 = P.q1 + P.q2 + P.q3;
  S e2 = P.q1 * P.q2 + P.q1 * P.q3 + P.q2 * P.q3;
  auto A = [&](int a, int b) {
    return shuffle_product(P, sh0_generator(P, a), sh0_generator(P, b));
  };
  Shuffle0<S> lhs = A(i + 3, j) - e1 * A(i + 2, j + 1) + e2 * A(i + 1, j + 2) - A(i, j + 3);
  Shuffle0<S> rhs = A(j + 3, i) - e1 * A(j + 2, i + 1) + e2 * A(j + 1, i + 2) - A(j, i + 3);
  return lhs + rhs;
}

}  // namespace qtb
