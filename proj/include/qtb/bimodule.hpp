#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtb/partition.hpp"
#include "qtb/shuffle.hpp"

namespace qtb {

/// Element of Sh_{1,n}(u_1..u_k): a symmetric Laurent numerator over the
/// implicit denominator prod_{i<j}(x_i - x_j)^2 prod_i prod_t (x_i - u_t).
template <class S>
struct Shuffle1 {
  int n = 0;
  std::vector<S> us;
  LaurentPoly<S> num;

  Shuffle1() : num(0) {}
  Shuffle1(std::vector<S> us_, int n_, LaurentPoly<S> num_)
      : n(n_), us(std::move(us_)), num(std::move(num_)) {
    if (num.nvars() != n) throw size_error("numerator variable count mismatch");
    if (us.empty()) throw config_error("u list must be nonempty");
  }

  bool is_zero() const { return num.is_zero(); }

  friend Shuffle1 operator+(const Shuffle1& a, const Shuffle1& b) {
    if (a.n != b.n || a.us.size() != b.us.size())
      throw size_error("adding bimodule elements of different shapes");
    return Shuffle1(a.us, a.n, a.num + b.num);
  }
  friend Shuffle1 operator-(const Shuffle1& a, const Shuffle1& b) {
    if (a.n != b.n || a.us.size() != b.us.size())
      throw size_error("adding bimodule elements of different shapes");
    return Shuffle1(a.us, a.n, a.num - b.num);
  }
  friend Shuffle1 operator*(const S& c, const Shuffle1& a) {
    return Shuffle1(a.us, a.n, c * a.num);
  }
};

template <class S>
Shuffle1<S> sh1_unit(const std::vector<S>& us) {
  return Shuffle1<S>(us, 0, LaurentPoly<S>::constant(0, ScalarOps<S>::one()));
}

template <class S>
Shuffle1<S> sh1_zero(const std::vector<S>& us, int n) {
  return Shuffle1<S>(us, n, LaurentPoly<S>(n));
}

/// The element as an explicit rational function.
template <class S>
RationalFn<S> as_ratfn(const Shuffle1<S>& G) {
  RationalFn<S> r(G.num);
  for (int i = 0; i < G.n; ++i)
    for (int j = i + 1; j < G.n; ++j)
      r = r.times_linear_power(i, ScalarOps<S>::one(), j, -2);
  for (int i = 0; i < G.n; ++i)
    for (const S& u : G.us) r = r.times_linear_power(i, u, std::nullopt, -1);
  return r;
}

/// Reassemble an element from a rational function known to lie in the space:
/// multiplies the canonical denominator back and requires everything to
/// cancel. For inexact scalars small residues are pruned first.
template <class S>
Shuffle1<S> shuffle1_from_ratfn(const std::vector<S>& us, int n, const RationalFn<S>& f) {
  using Ops = ScalarOps<S>;
  RationalFn<S> r = f;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r = r.times_linear_power(i, Ops::one(), j, 2);
  for (int i = 0; i < n; ++i)
    for (const S& u : us) r = r.times_linear_power(i, u, std::nullopt, 1);
  if (!r.den().empty()) {
    if constexpr (Ops::exact) {
      r = r.reduced();
    } else {
      LaurentPoly<S> num = r.num();
      num.prune_relative(1e-34);
      for (const auto& fac : r.den())
        for (int t = 0; t < fac.mult; ++t) {
          auto [quot, rem] = num.divided_by_linear(fac.a, fac.c, fac.b);
          if (rem.coeff_magnitude() > 1e-30 * (1.0 + num.coeff_magnitude()))
            throw divisibility_error("rational function does not lie in the bimodule space");
          num = quot;
        }
      num.prune_relative(1e-34);
      return Shuffle1<S>(us, n, std::move(num));
    }
  }
  if (!r.den().empty())
    throw divisibility_error("rational function does not lie in the bimodule space");
  return Shuffle1<S>(us, n, r.num());
}

/// (F * G), F in Sh_0 of size m acting from the left: Sym[F G prod
/// omega(x_{m+j}, x_i) prod phi(u, x_i)].
template <class S>
Shuffle1<S> left_mult(const Params<S>& P, const Shuffle0<S>& F, const Shuffle1<S>& G) {
  LaurentPoly<S> num = detail::combine_split_sum(P, G.us, F.num, F.n, G.num, G.n,
                                                 detail::CombineMode::LeftSh1);
  return Shuffle1<S>(G.us, F.n + G.n, std::move(num));
}

/// (G * F), F in Sh_0 of size m acting from the right: Sym[G F prod
/// omega(x_i, x_{m+j})].
template <class S>
Shuffle1<S> right_mult(const Params<S>& P, const Shuffle1<S>& G, const Shuffle0<S>& F) {
  LaurentPoly<S> num = detail::combine_split_sum(P, G.us, G.num, G.n, F.num, F.n,
                                                 detail::CombineMode::RightSh1);
  return Shuffle1<S>(G.us, G.n + F.n, std::move(num));
}

/// Wheel report for the bimodule space: the Sh_0 wheel conditions plus
/// vanishing at (x_1, x_2) = (u_t, q_2 u_t) for every u_t.
template <class S>
std::optional<std::string> wheel_violation1(const Params<S>& P, const Shuffle1<S>& G) {
  using Ops = ScalarOps<S>;
  if (!is_symmetric(G.num)) return "numerator is not symmetric";
  if (G.n >= 3) {
    Shuffle0<S> as0(G.n, G.num);
    if (auto why = wheel_violation(P, as0)) return why;
  }
  if (G.n >= 2) {
    for (size_t t = 0; t < G.us.size(); ++t) {
      typename LaurentPoly<S>::SubstTarget first{G.us[t], std::nullopt};
      typename LaurentPoly<S>::SubstTarget second{P.q2 * G.us[t], std::nullopt};
      LaurentPoly<S> r = G.num.substituted(G.n, {{0, first}, {1, second}});
      bool bad;
      if constexpr (Ops::exact)
        bad = !r.is_zero();
      else
        bad = r.coeff_magnitude() > 1e-28 * std::max(G.num.coeff_magnitude(), 1.0);
      if (bad)
        return "numerator does not vanish at (u, q2 u) for u slot " + std::to_string(t + 1);
    }
  }
  return std::nullopt;
}

template <class S>
bool is_member_sh1(const Params<S>& P, const Shuffle1<S>& G) {
  return !wheel_violation1(P, G).has_value();
}

/// e_k . G = c1 x^k * G.
template <class S>
Shuffle1<S> act_e(const Params<S>& P, int k, const Shuffle1<S>& G) {
  return left_mult(P, sh0_generator(P, k), G);
}

/// h_r . G = (-(1/r) sum_i x_i^r + gamma_r) G.
template <class S>
Shuffle1<S> act_h(const Params<S>& P, int r, const Shuffle1<S>& G) {
  using Ops = ScalarOps<S>;
  if (r == 0) throw config_error("h_r action needs r != 0");
  LaurentPoly<S> mul = LaurentPoly<S>::constant(G.n, P.gamma(r, G.us));
  if (G.n > 0) {
    S minv = Ops::zero() - Ops::inv(Ops::from_long(r));
    mul = mul + minv * LaurentPoly<S>::power_sum(G.n, r);
  }
  return Shuffle1<S>(G.us, G.n, G.num * mul);
}

/// f_k . G = c2 n (Res_{z=0} + Res_{z=inf}) G(x_1..x_{n-1}, z) z^k /
/// prod_i omega(z, x_i) dz/z; kills the size-0 element.
template <class S>
Shuffle1<S> act_f(const Params<S>& P, int k, const Shuffle1<S>& G) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  if (G.n == 0) return sh1_zero(G.us, 0);
  int n = G.n;
  int zv = n - 1;
  LP num = G.num;
  for (int i = 0; i < n - 1; ++i) num *= LP::var_binomial(n, zv, Ops::one(), i);
  RationalFn<S> r(std::move(num));
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j) r = r.times_linear_power(i, Ops::one(), j, -2);
  for (int i = 0; i < n - 1; ++i)
    for (const S& u : G.us) r = r.times_linear_power(i, u, std::nullopt, -1);
  for (const S& u : G.us) r = r.times_linear_power(zv, u, std::nullopt, -1);
  for (int i = 0; i < n - 1; ++i) {
    r = r.times_linear_power(zv, P.q1, i, -1);
    r = r.times_linear_power(zv, P.q2, i, -1);
    r = r.times_linear_power(zv, P.q3, i, -1);
  }
  RationalFn<S> total = residues_at_zero_and_infinity(r, zv, k);
  total = (P.c2() * Ops::from_long(n)) * total;
  std::vector<int> keep(static_cast<size_t>(n), 0);
  for (int i = 0; i < n - 1; ++i) keep[static_cast<size_t>(i)] = i;
  return shuffle1_from_ratfn(G.us, n - 1, total.remapped(n - 1, keep));
}

/// Contour-formula oracle for [e_k, f_l] acting on G:
/// -(1/kappa_1) (Res_0 + Res_inf) prod_i omega(x_i,z)/omega(z,x_i) phi(u,z)
/// z^{k+l} dz/z, times G.
template <class S>
RationalFn<S> ef_commutator_contour(const Params<S>& P, int k, int l, const Shuffle1<S>& G) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  int n = G.n;
  int N = n + 1;
  int zv = n;
  S qinv = Ops::inv(P.q);
  LP num = LP::constant(N, Ops::one());
  for (int i = 0; i < n; ++i) num *= (Ops::zero() - Ops::one()) * detail::gker(P, N, i, zv);
  for (const S& u : G.us) num *= qinv * LP::var_affine(N, zv, P.q * P.q * u);
  RationalFn<S> r(std::move(num));
  for (int i = 0; i < n; ++i) {
    r = r.times_linear_power(zv, P.q1, i, -1);
    r = r.times_linear_power(zv, P.q2, i, -1);
    r = r.times_linear_power(zv, P.q3, i, -1);
  }
  for (const S& u : G.us) r = r.times_linear_power(zv, u, std::nullopt, -1);
  std::vector<int> ext(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ext[static_cast<size_t>(i)] = i;
  RationalFn<S> g = as_ratfn(G).remapped(N, ext);
  RationalFn<S> total = residues_at_zero_and_infinity(r * g, zv, k + l);
  S pref = Ops::zero() - Ops::inv(P.kappa(1));
  std::vector<int> keep(static_cast<size_t>(N), 0);
  for (int i = 0; i < n; ++i) keep[static_cast<size_t>(i)] = i;
  return (pref * total).remapped(n, keep);
}

/// kappa(h_perp_{-la_1} ... h_perp_{-la_l} |vac>) via
/// kappa(h_perp_{-r} v) = sigma(h_perp_{-r}) * kappa(v)
///                        - q^r kappa(v) * sigma(h_perp_{-r}).
/// The plain Heisenberg recursion covers the single-u case; tensor modules
/// need the extra ladder rule implemented on top of the Fock coordinates.
template <class S>
Shuffle1<S> kappa_map(const Params<S>& P, const std::vector<S>& us, const Partition& la) {
  using Ops = ScalarOps<S>;
  if (us.size() != 1)
    throw config_error("the Heisenberg kappa recursion applies to a single Fock factor");
  Shuffle1<S> v = sh1_unit(us);
  for (auto it = la.parts.rbegin(); it != la.parts.rend(); ++it) {
    int r = *it;
    Shuffle0<S> sig = sigma_h_perp_minus(P, r);
    v = left_mult(P, sig, v) - Ops::pow_int(P.q, r) * right_mult(P, v, sig);
  }
  return v;
}

/// Strict evaluation at a point of matching arity.
template <class S>
S evaluate(const Shuffle1<S>& G, const std::vector<S>& a) {
  using Ops = ScalarOps<S>;
  if (static_cast<int>(a.size()) != G.n) throw size_error("evaluation point arity mismatch");
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j)
      if (Ops::is_zero(a[i] - a[j]))
        throw pole_error("evaluation points " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + " collide");
    for (const S& u : G.us)
      if (Ops::is_zero(a[i] - u)) throw pole_error("evaluation point lies on a Fock parameter");
  }
  S den = Ops::one();
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) den = den * (a[i] - a[j]) * (a[i] - a[j]);
    for (const S& u : G.us) den = den * (a[i] - u);
  }
  return G.num.eval(a) * Ops::inv(den);
}

/// The functional ev_a on the whole space: zero on sizes other than the
/// arity of a.
template <class S>
S ev_value(const Shuffle1<S>& G, const std::vector<S>& a) {
  if (static_cast<int>(a.size()) != G.n) return ScalarOps<S>::zero();
  return evaluate(G, a);
}

/// Scaling orders under x -> t x: order of vanishing of G(t x) as t -> 0,
/// and order of decay as t -> inf. Regular at zero means ord0 >= 0, regular
/// at infinity means ordinf >= 0, and the strict section condition is
/// ord0 >= 1.
template <class S>
std::pair<int, int> scaling_orders(const Shuffle1<S>& G) {
  if (G.num.is_zero()) throw config_error("scaling order of the zero element");
  auto [lo, hi] = G.num.scaling_range(G.n);
  int den0 = G.n * (G.n - 1);
  int deninf = G.n * (G.n - 1) + G.n * static_cast<int>(G.us.size());
  return {lo - den0, deninf - hi};
}

/// Level-by-level right-word spanning family of Sh_{1,j}: kappa-basis
/// elements joined with right multiplications by the one-variable
/// generators x^k, kmin <= k <= kmax. Tensor parameter lists skip the
/// kappa seeds.
template <class S>
std::vector<Shuffle1<S>> sh1_spanning(const Params<S>& P, const std::vector<S>& us, int j,
                                      int kmin, int kmax) {
  std::vector<Shuffle1<S>> level{sh1_unit(us)};
  for (int t = 1; t <= j; ++t) {
    std::vector<Shuffle1<S>> next;
    if (us.size() == 1)
      for (const Partition& la : partitions_of(t)) next.push_back(kappa_map(P, us, la));
    for (const Shuffle1<S>& v : level)
      for (int k = kmin; k <= kmax; ++k) next.push_back(right_mult(P, v, sh0_generator(P, k)));
    level = std::move(next);
  }
  return level;
}

/// Generators of J_p in a window: G * F - p^{|F|} F * G with G over
/// sh1_spanning and F over words in the one-variable generators. For p = 0
/// only the m = 1 right-ideal layer is produced (it spans J_0).
template <class S>
std::vector<Shuffle1<S>> jp_generators(const Params<S>& P, const std::vector<S>& us, const S& p,
                                       int n_total, int kmin, int kmax, int max_f_size) {
  using Ops = ScalarOps<S>;
  std::vector<Shuffle1<S>> out;
  int mmax = Ops::is_zero(p) ? 1 : std::min(n_total, max_f_size);
  for (int m = 1; m <= mmax; ++m) {
    // F words: weakly increasing exponent tuples of length m
    std::vector<std::vector<int>> words;
    std::vector<int> w(static_cast<size_t>(m), kmin);
    for (;;) {
      words.push_back(w);
      int i = m - 1;
      while (i >= 0 && w[static_cast<size_t>(i)] == kmax) --i;
      if (i < 0) break;
      int v = ++w[static_cast<size_t>(i)];
      for (int t = i + 1; t < m; ++t) w[static_cast<size_t>(t)] = v;
    }
    std::vector<Shuffle0<S>> fs;
    for (const auto& word : words) {
      Shuffle0<S> F = sh0_generator(P, word[0]);
      for (int t = 1; t < m; ++t) F = shuffle_product(P, F, sh0_generator(P, word[t]));
      fs.push_back(std::move(F));
    }
    S pm = Ops::pow_int(p, m);
    for (const Shuffle1<S>& G : sh1_spanning(P, us, n_total - m, kmin, kmax))
      for (const Shuffle0<S>& F : fs) {
        Shuffle1<S> gen = right_mult(P, G, F);
        if (!Ops::is_zero(p)) gen = gen - pm * left_mult(P, F, G);
        if (!gen.is_zero()) out.push_back(std::move(gen));
      }
  }
  return out;
}

}  // namespace qtb
