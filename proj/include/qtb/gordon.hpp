#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtb/bimodule.hpp"
#include "qtb/linalg.hpp"
#include "qtb/symfunc.hpp"

namespace qtb {

/// Staged specialization of a size-n element along a partition: row a of
/// lambda folds its variables onto y_a as the geometric string
/// x_{pos(a)+j} = q1^j y_a, then the y_a are driven to q3^{a-1} u in order,
/// with the prescribed linear-factor powers applied before each evaluation.
/// stages[i] is the value after i evaluations, in the ambient n variables.
template <class S>
struct SpecializationPlan {
  Partition lambda;
  int n = 0;
  std::vector<RationalFn<S>> stages;
};

template <class S>
SpecializationPlan<S> rho_stages(const Params<S>& P, const Partition& la, const Shuffle1<S>& F) {
  using Ops = ScalarOps<S>;
  if (F.us.size() != 1)
    throw config_error("the staged specialization needs a single evaluation parameter");
  int n = F.n;
  int size = 0;
  for (int part : la.parts) size += part;
  if (size > n) throw size_error("partition larger than the element size");
  S u = F.us[0];

  SpecializationPlan<S> plan;
  plan.lambda = la;
  plan.n = n;

  std::map<int, typename LaurentPoly<S>::SubstTarget> strings;
  std::vector<int> ypos(la.parts.size(), 0);
  int pos = 0;
  for (size_t a = 0; a < la.parts.size(); ++a) {
    ypos[a] = pos;
    for (int j = 1; j < la.parts[a]; ++j)
      strings[pos + j] = {Ops::pow_int(P.q1, j), ypos[a]};
    pos += la.parts[a];
  }
  RationalFn<S> cur = as_ratfn(F).substituted(n, strings);
  plan.stages.push_back(cur);

  for (size_t a = 0; a < la.parts.size(); ++a) {
    S target = Ops::pow_int(P.q3, static_cast<long>(a)) * u;
    int power = a == 0 ? 1 : 1 - la.parts[a];
    if (power != 0) cur = cur.times_linear_power(ypos[a], target, std::nullopt, power);
    cur = cur.reduced();
    if (cur.mult_of(LinFactor<S>{ypos[a], std::nullopt, target, 1}) > 0)
      throw divisibility_error(
          "specialization stage " + std::to_string(a + 1) +
          " has a residual pole: the element violates a wheel condition");
    cur = cur.substituted(n, {{ypos[a], typename LaurentPoly<S>::SubstTarget{target, std::nullopt}}});
    plan.stages.push_back(cur);
  }
  return plan;
}

/// The specialization functional itself, returned in the surviving trailing
/// variables (n - |lambda| of them).
template <class S>
RationalFn<S> rho(const Params<S>& P, const Partition& la, const Shuffle1<S>& F) {
  SpecializationPlan<S> plan = rho_stages(P, la, F);
  int size = 0;
  for (int part : la.parts) size += part;
  std::vector<int> map(static_cast<size_t>(F.n), 0);
  for (int i = size; i < F.n; ++i) map[static_cast<size_t>(i)] = i - size;
  return plan.stages.back().remapped(F.n - size, map);
}

/// rho for |lambda| = n, where the result is a constant.
template <class S>
S rho_scalar(const Params<S>& P, const Partition& la, const Shuffle1<S>& F) {
  RationalFn<S> r = rho(P, la, F);
  return r.eval({});
}

/// Appendix witness: the base-q1 epsilon element on the conjugate partition,
/// dressed with one evaluation numerator per variable. Its specialization
/// along lambda is a nonzero constant.
template <class S>
Shuffle1<S> rho_witness(const Params<S>& P, const std::vector<S>& us, const Partition& la) {
  using LP = LaurentPoly<S>;
  int n = 0;
  for (int part : la.parts) n += part;
  Shuffle0<S> eps = epsilon_base(P, la.conjugate(), P.q1);
  LP num = eps.num;
  for (int i = 0; i < n; ++i)
    for (const S& u : us) num *= LP::var_affine(n, i, P.q2 * u);
  return Shuffle1<S>(us, n, std::move(num));
}

/// Checks that the specialization along lambda kills a sample of the
/// subspace (size-m elements) * (size n-m words); requires |lambda| > m.
template <class S>
bool filtration_vanishing(const Params<S>& P, const std::vector<S>& us, const Partition& la,
                          int m, int n) {
  int size = 0;
  for (int part : la.parts) size += part;
  if (size <= m) throw config_error("the vanishing statement needs |lambda| > m");
  if (size > n) throw size_error("partition larger than the ambient size");
  for (const Shuffle1<S>& G : sh1_spanning(P, us, m, 0, 1)) {
    std::vector<int> word(static_cast<size_t>(n - m), 0);
    for (;;) {
      Shuffle0<S> H = sh0_unit<S>();
      for (int k : word) H = shuffle_product(P, H, sh0_generator(P, k));
      Shuffle1<S> prod = right_mult(P, G, H);
      if (!rho(P, la, prod).is_zero()) return false;
      int i = static_cast<int>(word.size()) - 1;
      while (i >= 0 && word[static_cast<size_t>(i)] == 1) --i;
      if (i < 0) break;
      int v = ++word[static_cast<size_t>(i)];
      for (size_t t = static_cast<size_t>(i) + 1; t < word.size(); ++t) word[t] = v;
    }
  }
  return true;
}

/// Total order on partitions of equal size: mu > la iff at the first index
/// where they differ mu has the larger part.
inline bool rho_order_greater(const Partition& mu, const Partition& la) {
  return std::lexicographical_compare(la.parts.begin(), la.parts.end(), mu.parts.begin(),
                                      mu.parts.end());
}

namespace detail {

/// Weakly decreasing integer tuples of the given length with entries >= lo
/// and total sum <= cap.
inline void laurent_signatures_rec(std::vector<std::vector<int>>& out, std::vector<int>& cur,
                                   int len, int lo, int hi, int cap) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  int rem = len - static_cast<int>(cur.size());
  int sum = 0;
  for (int x : cur) sum += x;
  for (int v = std::min(hi, cur.empty() ? hi : cur.back()); v >= lo; --v) {
    if (sum + v + lo * (rem - 1) > cap) continue;
    cur.push_back(v);
    laurent_signatures_rec(out, cur, len, lo, v, cap);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> laurent_signatures(int len, int lo, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (len == 0) {
    if (cap >= 0) out.push_back({});
    return out;
  }
  int hi = cap - lo * (len - 1);
  laurent_signatures_rec(out, cur, len, lo, hi, cap);
  return out;
}

/// Dense incremental echelon rank over a lazily growing monomial column set.
template <class S>
struct MonoSpanRank {
  using Ops = ScalarOps<S>;
  std::map<Mono, int> col;
  std::vector<std::vector<S>> rows;
  std::vector<int> pivcol;

  int colof(const Mono& m) {
    auto it = col.find(m);
    if (it != col.end()) return it->second;
    int c = static_cast<int>(col.size());
    col.emplace(m, c);
    return c;
  }
  bool insert(const std::vector<std::pair<Mono, S>>& v) {
    std::vector<S> w;
    for (const auto& [m, c] : v) {
      int j = colof(m);
      if (j >= static_cast<int>(w.size())) w.resize(col.size(), Ops::zero());
      w[j] = c;
    }
    if (w.size() < col.size()) w.resize(col.size(), Ops::zero());
    for (size_t i = 0; i < rows.size(); ++i) {
      int p = pivcol[i];
      if (p >= static_cast<int>(w.size()) || Ops::is_zero(w[p])) continue;
      S f = w[p];
      const auto& r = rows[i];
      for (size_t j = 0; j < r.size(); ++j)
        if (!Ops::is_zero(r[j])) w[j] = w[j] - f * r[j];
    }
    int piv = -1;
    for (size_t j = 0; j < w.size(); ++j)
      if (!Ops::is_zero(w[j])) {
        piv = static_cast<int>(j);
        break;
      }
    if (piv < 0) return false;
    S inv = Ops::inv(w[piv]);
    for (auto& c : w) c = c * inv;
    rows.push_back(std::move(w));
    pivcol.push_back(piv);
    return true;
  }
  int rank() const { return static_cast<int>(rows.size()); }
};

/// Batched right products (m_mu core) * m_nu for a fixed core of size m and
/// word size s. Per variable split the core factor, cross kernels, block
/// Vandermonde factors and evaluation numerators are assembled once; each
/// (mu, nu) product is then a signed sum of exponent-shifted copies followed
/// by a single division by the full Vandermonde determinant.
template <class S>
struct ProductBatch {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  int m, s, N;
  std::vector<LP> big;
  std::vector<int> signs;
  std::vector<std::vector<int>> As, Bs;
  S scale;

  ProductBatch(const Params<S>& P, const std::vector<S>& us, const LP& core, int m_, int s_)
      : m(m_), s(s_), N(m_ + s_) {
    if (N > MAXV) throw size_error("product size exceeds the 8-variable budget");
    std::vector<LP> cross(static_cast<size_t>(N) * N, LP(N));
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        if (a != b) cross[static_cast<size_t>(a) * N + b] = gker(P, N, a, b);
    for (int mask = 0; mask < (1 << N); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != m) continue;
      std::vector<int> A, B;
      for (int i = 0; i < N; ++i) ((mask >> i) & 1 ? A : B).push_back(i);
      int inv_ab = 0;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
          if (((mask >> i) & 1) && !((mask >> j) & 1)) ++inv_ab;
      LP term = core.remapped(N, A);
      for (int a : A)
        for (int b : B) term *= cross[static_cast<size_t>(b) * N + a];
      for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = i + 1; j < A.size(); ++j)
          term *= LP::var_binomial(N, A[i], Ops::one(), A[j]);
      for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = i + 1; j < B.size(); ++j)
          term *= LP::var_binomial(N, B[i], Ops::one(), B[j]);
      for (int b : B)
        for (const S& u : us) term *= LP::var_affine(N, b, u);
      big.push_back(std::move(term));
      signs.push_back(inv_ab % 2 ? -1 : 1);
      As.push_back(std::move(A));
      Bs.push_back(std::move(B));
    }
    Rational sc(1);
    for (int t = 2; t <= m; ++t) sc *= t;
    for (int t = 2; t <= s; ++t) sc *= t;
    for (int t = 2; t <= N; ++t) sc /= t;
    scale = Ops::from_rational(sc);
  }

  static std::vector<std::vector<int>> orbit(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::vector<int>> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
  }

  /// Numerator of (m_mu core) * F where F = sum_j c_j m_{nu_j}.
  LaurentPoly<S> numerator(const std::vector<int>& mu,
                           const std::vector<std::pair<std::vector<int>, S>>& F) const {
    auto mu_orb = orbit(mu);
    std::vector<std::pair<std::vector<std::vector<int>>, S>> forb;
    for (const auto& [nu, c] : F) forb.emplace_back(orbit(nu), c);
    std::vector<std::pair<Mono, S>> bag;
    for (size_t k = 0; k < big.size(); ++k) {
      const auto& A = As[k];
      const auto& B = Bs[k];
      for (const auto& [nu_orb, c] : forb) {
        S coef = signs[k] > 0 ? c : Ops::zero() - c;
        for (const auto& pa : mu_orb)
          for (const auto& pb : nu_orb) {
            Mono sh{};
            for (size_t i = 0; i < A.size(); ++i) sh.e[A[i]] = static_cast<int8_t>(pa[i]);
            for (size_t j = 0; j < B.size(); ++j) sh.e[B[j]] = static_cast<int8_t>(pb[j]);
            for (const auto& [mm, cc] : big[k].terms()) bag.emplace_back(mm + sh, coef * cc);
          }
      }
    }
    std::sort(bag.begin(), bag.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<Mono, S> mp;
    for (size_t i = 0; i < bag.size();) {
      Mono mkey = bag[i].first;
      S c = bag[i].second;
      size_t j = i + 1;
      while (j < bag.size() && bag[j].first == mkey) c = c + bag[j++].second;
      if (!Ops::is_zero(c)) mp.emplace_hint(mp.end(), mkey, c);
      i = j;
    }
    LP acc = LP::from_map(N, std::move(mp));
    std::vector<int> all(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) all[static_cast<size_t>(i)] = i;
    return scale * divided_by_vandermonde(acc, all);
  }
};

/// Window coordinates: partitions mu with at most nvars rows and |mu| <= cap,
/// graded lexicographic.
inline std::vector<Partition> window_partitions(int nvars, int cap) {
  std::vector<Partition> out;
  for (int m = 0; m <= cap; ++m)
    for (const Partition& la : partitions_of(m))
      if (la.length() <= nvars) out.push_back(la);
  return out;
}

/// Coefficient vector of a symmetric polynomial over the window partitions;
/// nullopt when the polynomial does not fit the window.
template <class S>
std::optional<std::vector<S>> window_coordinates(const LaurentPoly<S>& f,
                                                 const std::vector<Partition>& window, int cap) {
  if (f.is_zero()) return std::vector<S>(window.size(), ScalarOps<S>::zero());
  auto [lo, hi] = f.scaling_range(f.nvars());
  if (lo < 0 || hi > cap) return std::nullopt;
  return m_coefficients(f, window);
}

/// Wheel-constraint matrix of the degree window for Sh_{1,n}: every window
/// element must vanish on the two triple-collision strings and at
/// (u_t, q2 u_t) for every evaluation parameter.
template <class S>
Matrix<S> window_constraints(const Params<S>& P, const std::vector<S>& us, int n,
                             const std::vector<Partition>& window) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  using Target = typename LP::SubstTarget;
  std::vector<std::map<int, Target>> subs;
  if (n >= 3) {
    subs.push_back({{1, Target{P.q1, 0}}, {2, Target{P.q1 * P.q2, 0}}});
    subs.push_back({{1, Target{P.q2, 0}}, {2, Target{P.q1 * P.q2, 0}}});
  }
  if (n >= 2)
    for (const S& u : us)
      subs.push_back({{0, Target{u, std::nullopt}}, {1, Target{P.q2 * u, std::nullopt}}});
  if (subs.empty()) return Matrix<S>(0, static_cast<int>(window.size()));

  // rows are keyed per substitution family: distinct wheel conditions may
  // produce the same residual monomial and must not be merged
  std::map<std::pair<int, Mono>, int> row_of;
  std::vector<std::map<int, S>> cols(window.size());
  for (size_t j = 0; j < window.size(); ++j) {
    std::vector<int> mu = window[j].parts;
    LP mj = monomial_symmetric<S>(n, mu);
    for (size_t si = 0; si < subs.size(); ++si) {
      LP r = mj.substituted(n, subs[si]);
      for (const auto& [mono, c] : r.terms()) {
        auto key = std::make_pair(static_cast<int>(si), mono);
        auto it = row_of.find(key);
        int row;
        if (it == row_of.end()) {
          row = static_cast<int>(row_of.size());
          row_of.emplace(key, row);
        } else {
          row = it->second;
        }
        auto ins = cols[j].try_emplace(row, c);
        if (!ins.second) ins.first->second += c;
      }
    }
  }
  Matrix<S> C(static_cast<int>(row_of.size()), static_cast<int>(window.size()));
  for (size_t j = 0; j < window.size(); ++j)
    for (const auto& [row, c] : cols[j])
      if (!Ops::is_zero(c)) C.at(row, static_cast<int>(j)) = c;
  return C;
}

/// Basis of the window member space as numerators.
template <class S>
std::vector<LaurentPoly<S>> window_member_basis(const Params<S>& P, const std::vector<S>& us,
                                                int n, int cap) {
  using Ops = ScalarOps<S>;
  std::vector<Partition> window = window_partitions(n, cap);
  Matrix<S> C = window_constraints(P, us, n, window);
  std::vector<std::vector<S>> vecs;
  if (C.rows == 0) {
    for (size_t j = 0; j < window.size(); ++j) {
      std::vector<S> v(window.size(), Ops::zero());
      v[j] = Ops::one();
      vecs.push_back(std::move(v));
    }
  } else {
    vecs = nullspace(C);
  }
  std::vector<LaurentPoly<S>> out;
  for (const auto& v : vecs) {
    LaurentPoly<S> f(n);
    for (size_t j = 0; j < window.size(); ++j)
      if (!Ops::is_zero(v[j])) f += v[j] * monomial_symmetric<S>(n, window[j].parts);
    out.push_back(std::move(f));
  }
  return out;
}

/// Member basis of the degree-d homogeneous slice of the Sh0 window of size
/// s, as coefficient combos over monomial symmetric functions m_nu with nu
/// running over laurent_signatures of entries >= lo and degree exactly d: all
/// of them for s < 3 (no wheel conditions), otherwise the nullspace of the
/// two triple-collision families. The collision substitutions preserve total
/// degree, so the window member space is the direct sum of these slices and
/// nested degree budgets can share them.
template <class S>
std::vector<std::vector<std::pair<std::vector<int>, S>>> sh0_window_combos(const Params<S>& P,
                                                                           int s, int lo, int d) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  std::vector<std::vector<std::pair<std::vector<int>, S>>> out;
  std::vector<std::vector<int>> mon;
  for (auto& nu : laurent_signatures(s, lo, d)) {
    int sum = 0;
    for (int x : nu) sum += x;
    if (sum == d) mon.push_back(std::move(nu));
  }
  if (s < 3) {
    for (auto& nu : mon) out.push_back({{nu, Ops::one()}});
    return out;
  }
  // rows are keyed per substitution family, exactly as in window_constraints
  std::map<std::pair<int, Mono>, std::map<int, S>> rr;
  for (int family = 0; family < 2; ++family) {
    S c1 = family == 0 ? P.q1 : P.q2;
    S c2 = P.q1 * P.q2;
    for (size_t j = 0; j < mon.size(); ++j) {
      LP f = monomial_symmetric<S>(s, mon[j]);
      LP g = f.substituted(
          s, {{1, typename LP::SubstTarget{c1, 0}}, {2, typename LP::SubstTarget{c2, 0}}});
      for (const auto& [m, c] : g.terms()) {
        auto& row = rr[{family, m}];
        auto ins = row.try_emplace(static_cast<int>(j), c);
        if (!ins.second) ins.first->second += c;
      }
    }
  }
  Matrix<S> C(static_cast<int>(rr.size()), static_cast<int>(mon.size()));
  int ri = 0;
  for (auto& [key, row] : rr) {
    for (auto& [j, c] : row) C.at(ri, j) = c;
    ++ri;
  }
  for (auto& v : nullspace(C)) {
    std::vector<std::pair<std::vector<int>, S>> f;
    for (size_t j = 0; j < mon.size(); ++j)
      if (!Ops::is_zero(v[j])) f.emplace_back(mon[j], v[j]);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

/// The kappa family re-expressed on the epsilon-adapted boson coordinates:
/// for each partition in `lams` (all of size n), the element kappa applied to
/// the boson vector whose shuffle image is the q3-epsilon element of that
/// partition. On this basis the specialization matrix [rho_mu(kappa_eps_la)]
/// is upper triangular in the descending total order with nonzero diagonal,
/// which certifies nonsingularity cheaply.
template <class S>
std::vector<Shuffle1<S>> kappa_eps_basis(const Params<S>& P, const std::vector<S>& us,
                                         const std::vector<Partition>& lams) {
  using Ops = ScalarOps<S>;
  if (lams.empty()) return {};
  int n = lams.front().size();
  std::vector<Partition> nus = partitions_of(n);
  int np = static_cast<int>(nus.size());

  // shuffle images of the boson words h_{-nu_1} ... h_{-nu_l} and the
  // q3-epsilon elements, in monomial coordinates
  std::vector<Shuffle0<S>> words, epss;
  for (const Partition& nu : nus) {
    Shuffle0<S> w = sh0_unit<S>();
    for (int part : nu.parts) w = shuffle_product(P, w, sigma_h_perp_minus(P, part));
    words.push_back(std::move(w));
    epss.push_back(epsilon_q3(P, nu));
  }
  std::map<Mono, int> idx;
  auto index_terms = [&](const Shuffle0<S>& f) {
    for (const auto& [m, c] : f.num.terms()) idx.try_emplace(m, static_cast<int>(idx.size()));
  };
  for (const auto& f : words) index_terms(f);
  for (const auto& f : epss) index_terms(f);
  int nc = static_cast<int>(idx.size());

  // solve E X = W columnwise: X[i][j] = coefficient of eps_i in word_j
  std::vector<std::vector<S>> A(nc, std::vector<S>(2 * static_cast<size_t>(np), Ops::zero()));
  for (int j = 0; j < np; ++j) {
    for (const auto& [m, c] : epss[j].num.terms()) A[idx[m]][j] = c;
    for (const auto& [m, c] : words[j].num.terms()) A[idx[m]][np + j] = c;
  }
  int r = 0;
  for (int c = 0; c < np && r < nc; ++c) {
    int piv = -1;
    for (int i = r; i < nc; ++i)
      if (!Ops::is_zero(A[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[r]);
    S inv = Ops::inv(A[r][c]);
    for (auto& x : A[r]) x = x * inv;
    for (int i = 0; i < nc; ++i)
      if (i != r && !Ops::is_zero(A[i][c])) {
        S f = A[i][c];
        for (int j = c; j < 2 * np; ++j) A[i][j] = A[i][j] - f * A[r][j];
      }
    ++r;
  }
  if (r != np) throw genericity_error("epsilon transition solve is rank deficient");
  for (int i = r; i < nc; ++i)
    for (int j = 0; j < np; ++j)
      if (!Ops::is_zero(A[i][np + j]))
        throw genericity_error("boson words do not lie in the epsilon span");

  // invert X so that eps_i = sum_j XI[j][i] word_j
  std::vector<std::vector<S>> XI(np, std::vector<S>(2 * static_cast<size_t>(np), Ops::zero()));
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) XI[i][j] = A[i][np + j];
    XI[i][np + i] = Ops::one();
  }
  for (int c = 0; c < np; ++c) {
    int piv = -1;
    for (int i = c; i < np; ++i)
      if (!Ops::is_zero(XI[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) throw genericity_error("epsilon transition matrix is singular");
    std::swap(XI[piv], XI[c]);
    S inv = Ops::inv(XI[c][c]);
    for (auto& x : XI[c]) x = x * inv;
    for (int i = 0; i < np; ++i)
      if (i != c && !Ops::is_zero(XI[i][c])) {
        S f = XI[i][c];
        for (int j = 0; j < 2 * np; ++j) XI[i][j] = XI[i][j] - f * XI[c][j];
      }
  }

  std::vector<Shuffle1<S>> kwords;
  for (const Partition& nu : nus) kwords.push_back(kappa_map(P, us, nu));
  std::vector<Shuffle1<S>> out;
  for (const Partition& la : lams) {
    if (la.size() != n) throw config_error("kappa basis partitions must share one size");
    int ei = -1;
    for (int t = 0; t < np; ++t)
      if (nus[t].parts == la.parts) ei = t;
    if (ei < 0) throw config_error("partition not found in the size-n list");
    Shuffle1<S> acc = sh1_zero<S>(us, n);
    for (int j = 0; j < np; ++j) {
      S c = XI[j][np + ei];
      if (!Ops::is_zero(c)) acc = acc + c * kwords[j];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// Tuning knobs for the graded window computation.
struct QuotientOptions {
  int window_cap = -1;  // highest total degree kept; default n*n
  int word_floor = -1;  // lowest exponent allowed in word-side monomials
  int mult_floor = -2;  // lowest exponent allowed in core-side multipliers
  int spill = 2;        // extra degree enumerated beyond the cap
  bool early_stop = true;
  int sampling_threshold = 400;  // window size above which constraint rows
                                 // are compressed by random evaluation
  bool trace = false;            // phase progress on stderr
};

/// Outcome of the window computation for one graded piece of the quotient by
/// the right ideal of positive-size words.
struct QuotientReport {
  int n = 0;
  int window_cap = 0;
  int window_dim = 0;  // monomial-symmetric coordinates in the window
  int member_dim = 0;  // solutions of the wheel constraints
  int ideal_dim = 0;   // dimension of (span of enumerated products) within the window
  int dim = 0;         // member_dim - ideal_dim
  int products = 0;    // products enumerated
  bool saturated = false;      // products + kappa family fill the member space
  bool rho_triangular = false; // specialization matrix upper triangular on the adapted basis
  bool rho_certified = false;  // specialization matrix nonsingular
  std::string warning;         // nonempty when a certificate did not hold
};

/// Dimension of the degree-n block of (window of the bimodule space) modulo
/// (window of the right ideal generated by positive-size words), by exact
/// rank. Products are kept with their full coordinate support; the dimension
/// of their span inside the window is the difference of two ranks, so
/// combinations that cancel out-of-window terms are not lost. For a single
/// evaluation parameter the kappa family bounds the quotient from below
/// through the specialization matrix, and filling the member space bounds it
/// from above; the report says whether both certificates held.
template <class S>
QuotientReport graded_quotient_dimension(const Params<S>& P, const std::vector<S>& us, int n,
                                         const QuotientOptions& opt = {}) {
  using Ops = ScalarOps<S>;
  using LP = LaurentPoly<S>;
  int cap = opt.window_cap >= 0 ? opt.window_cap : n * n;
  int k = static_cast<int>(us.size());
  QuotientReport rep;
  rep.n = n;
  rep.window_cap = cap;
  if (n == 0) {
    rep.window_dim = rep.member_dim = rep.dim = 1;
    rep.saturated = rep.rho_certified = rep.rho_triangular = true;
    return rep;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto since = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::vector<Partition> window = detail::window_partitions(n, cap);
  rep.window_dim = static_cast<int>(window.size());

  // member dimension: kernel of the wheel constraints on the window. Large
  // windows compress each constraint family by evaluating the surviving
  // variables at random points; the sampled rank can only undercount, so the
  // member estimate can only overcount, and the saturation equality below
  // rejects any overcount.
  if (rep.window_dim <= opt.sampling_threshold) {
    Matrix<S> C = detail::window_constraints(P, us, n, window);
    rep.member_dim = rep.window_dim - (C.rows == 0 ? 0 : rank(std::move(C)));
  } else {
    using Target = typename LP::SubstTarget;
    std::vector<std::map<int, Target>> subs;
    if (n >= 3) {
      subs.push_back({{1, Target{P.q1, 0}}, {2, Target{P.q1 * P.q2, 0}}});
      subs.push_back({{1, Target{P.q2, 0}}, {2, Target{P.q1 * P.q2, 0}}});
    }
    if (n >= 2)
      for (const S& u : us)
        subs.push_back({{0, Target{u, std::nullopt}}, {1, Target{P.q2 * u, std::nullopt}}});
    std::vector<std::vector<LP>> images(subs.size());
    for (size_t si = 0; si < subs.size(); ++si)
      for (const Partition& la : window)
        images[si].push_back(monomial_symmetric<S>(n, la.parts).substituted(n, subs[si]));
    std::mt19937_64 rng(0x5eed5eedULL);
    IncrementalRank<S> crank;
    int stall = 0;
    while (stall < 3) {
      bool grew = false;
      for (size_t si = 0; si < subs.size(); ++si) {
        std::vector<S> point(static_cast<size_t>(n));
        for (auto& x : point) x = Ops::from_long(static_cast<long>(rng() % 1000003 + 1));
        std::vector<S> row;
        row.reserve(window.size());
        for (const LP& f : images[si]) row.push_back(f.eval(point));
        if (crank.insert(row)) grew = true;
      }
      stall = grew ? 0 : stall + 1;
    }
    rep.member_dim = rep.window_dim - crank.rank();
  }
  if (opt.trace)
    std::fprintf(stderr, "[n=%d] %.1fs window %d member %d\n", n, since(), rep.window_dim,
                 rep.member_dim);

  // certificates on the kappa side (single evaluation parameter only)
  std::vector<Partition> lams = partitions_of(n);
  std::sort(lams.begin(), lams.end(),
            [](const Partition& a, const Partition& b) { return rho_order_greater(a, b); });
  std::vector<Shuffle1<S>> kappas;
  if (k == 1) {
    kappas = kappa_eps_basis(P, us, lams);
    Matrix<S> R(static_cast<int>(lams.size()), static_cast<int>(lams.size()));
    for (size_t i = 0; i < lams.size(); ++i)
      for (size_t j = 0; j < lams.size(); ++j)
        R.at(static_cast<int>(i), static_cast<int>(j)) = rho_scalar(P, lams[i], kappas[j]);
    rep.rho_triangular = true;
    bool diag = true;
    for (size_t i = 0; i < lams.size(); ++i) {
      if (Ops::is_zero(R.at(static_cast<int>(i), static_cast<int>(i)))) diag = false;
      for (size_t j = 0; j < i; ++j)
        if (!Ops::is_zero(R.at(static_cast<int>(i), static_cast<int>(j))))
          rep.rho_triangular = false;
    }
    rep.rho_certified =
        (rep.rho_triangular && diag) || rank(std::move(R)) == static_cast<int>(lams.size());
  }
  if (opt.trace)
    std::fprintf(stderr, "[n=%d] %.1fs certificate tri=%d cert=%d\n", n, since(),
                 static_cast<int>(rep.rho_triangular), static_cast<int>(rep.rho_certified));

  auto mono_in = [&](const Mono& m) {
    int deg = 0;
    for (int i = 0; i < n; ++i) {
      if (m.e[i] < 0) return false;
      deg += m.e[i];
    }
    return deg <= cap;
  };
  // every inserted polynomial is symmetric, so restricting to the terms with
  // weakly decreasing exponents (one per orbit) preserves ranks and window
  // membership while shrinking the coordinate set by roughly n!
  auto full_coords = [&](const LP& f) {
    std::vector<std::pair<Mono, S>> v;
    for (const auto& [m, c] : f.terms()) {
      bool lead = true;
      for (int i = 0; i + 1 < n; ++i)
        if (m.e[i] < m.e[i + 1]) {
          lead = false;
          break;
        }
      if (lead) v.emplace_back(m, c);
    }
    return v;
  };
  auto outside_coords = [&](const std::vector<std::pair<Mono, S>>& full) {
    std::vector<std::pair<Mono, S>> v;
    for (const auto& [m, c] : full)
      if (!mono_in(m)) v.emplace_back(m, c);
    return v;
  };

  detail::MonoSpanRank<S> rk_all, rk_out;
  int target = rep.member_dim - static_cast<int>(lams.size());
  bool allow_stop = opt.early_stop && k == 1 && rep.rho_certified;
  bool hit = false;
  // word bases are cached per homogeneous degree slice so that the nested
  // budgets of different multipliers share the nullspace work
  std::map<std::pair<int, int>, std::vector<std::vector<std::pair<std::vector<int>, S>>>>
      word_cache;
  auto words_for = [&](int s, int dmax) {
    std::vector<const std::vector<std::pair<std::vector<int>, S>>*> out;
    for (int d = opt.word_floor * s; d <= dmax; ++d) {
      auto key = std::make_pair(s, d);
      auto it = word_cache.find(key);
      if (it == word_cache.end())
        it = word_cache.emplace(key, detail::sh0_window_combos(P, s, opt.word_floor, d)).first;
      for (const auto& F : it->second) out.push_back(&F);
    }
    return out;
  };

  auto push_product = [&](const LP& pr) {
    ++rep.products;
    auto full = full_coords(pr);
    rk_all.insert(full);
    rk_out.insert(outside_coords(full));
    if (allow_stop && rk_all.rank() - rk_out.rank() >= target) hit = true;
  };

  for (int m = 1; m < n && !hit; ++m) {
    int s = n - m;
    std::vector<LP> cores;
    if (k == 1) {
      for (const Partition& la : partitions_of(m)) cores.push_back(kappa_map(P, us, la).num);
    } else {
      int corecap = cap + opt.spill - 3 * m * s - s * k - opt.word_floor * s;
      for (LP& f : detail::window_member_basis(P, us, m, corecap)) cores.push_back(std::move(f));
    }
    for (const LP& core : cores) {
      if (hit) break;
      detail::ProductBatch<S> batch(P, us, core, m, s);
      int cdeg = core.is_zero() ? 0 : core.scaling_range(m).second;
      std::vector<std::vector<int>> mus{{}};
      if (k == 1) {
        int mucap = cap + opt.spill - cdeg - 3 * m * s - s * k - opt.word_floor * s;
        mus = detail::laurent_signatures(m, opt.mult_floor, mucap);
      }
      for (const auto& mu : mus) {
        if (hit) break;
        int gdeg = cdeg;
        for (int x : mu) gdeg += x;
        int budget = cap + opt.spill - gdeg - 3 * m * s - s * k;
        if (budget < opt.word_floor * s) continue;
        for (const auto* F : words_for(s, budget)) {
          push_product(batch.numerator(mu, *F));
          if (hit) break;
        }
      }
    }
    if (opt.trace)
      std::fprintf(stderr, "[n=%d] %.1fs core size %d done, products %d, ideal %d/%d\n", n, since(),
                   m, rep.products, rk_all.rank() - rk_out.rank(), target);
  }
  if (!hit) {
    // size-zero core last: the split sum degenerates to a single term, so each
    // product is the word times the evaluation numerator, and the word basis
    // here is the widest (and costliest) one
    LP evalf = LP::constant(n, Ops::one());
    for (int i = 0; i < n; ++i)
      for (const S& u : us) evalf *= LP::var_affine(n, i, u);
    int budget = cap + opt.spill - n * k;
    if (budget >= opt.word_floor * n) {
      for (const auto* F : words_for(n, budget)) {
        std::map<Mono, S> mp;
        for (const auto& [nu, c] : *F) {
          LP mn = monomial_symmetric<S>(n, nu);
          for (const auto& [mm, cc] : mn.terms()) {
            auto ins = mp.try_emplace(mm, c * cc);
            if (!ins.second) ins.first->second = ins.first->second + c * cc;
          }
        }
        push_product(LP::from_map(n, std::move(mp)) * evalf);
        if (hit) break;
      }
    }
    if (opt.trace)
      std::fprintf(stderr, "[n=%d] %.1fs core size 0 done, products %d, ideal %d/%d\n", n, since(),
                   rep.products, rk_all.rank() - rk_out.rank(), target);
  }
  rep.ideal_dim = rk_all.rank() - rk_out.rank();
  rep.dim = rep.member_dim - rep.ideal_dim;

  if (k == 1) {
    bool kappa_fit = true;
    for (const Shuffle1<S>& kv : kappas) {
      for (const auto& [m, c] : kv.num.terms())
        if (!mono_in(m)) kappa_fit = false;
      rk_all.insert(full_coords(kv.num));
    }
    int span_in = rk_all.rank() - rk_out.rank();
    rep.saturated = kappa_fit && span_in == rep.member_dim;
    if (!kappa_fit)
      rep.warning = "kappa family does not fit the window; raise the degree cap";
    else if (!rep.saturated)
      rep.warning = "window rank has not saturated; enlarge the window or the generator set";
    else if (!rep.rho_certified)
      rep.warning = "specialization matrix is singular at these parameters";
  } else if (rep.dim >= 0 && !hit) {
    // no kappa certificate for several evaluation parameters; report the
    // complement rank as computed
    rep.warning = "no lower-bound certificate for several evaluation parameters";
  }
  return rep;
}

/// Backward-compatible entry point taking only the degree cap.
template <class S>
QuotientReport graded_quotient_dimension(const Params<S>& P, const std::vector<S>& us, int n,
                                         int window_cap) {
  QuotientOptions opt;
  opt.window_cap = window_cap;
  return graded_quotient_dimension(P, us, n, opt);
}

}  // namespace qtb
