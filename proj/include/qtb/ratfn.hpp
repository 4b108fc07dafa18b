#pragma once

#include <optional>
#include <vector>

#include "qtb/laurent.hpp"

namespace qtb {

/// One denominator factor: (x_a - c * x_b)^mult, or (x_a - c)^mult when b is
/// absent. Canonical form (enforced by RationalFn): c != 0, and a < b for
/// two-variable factors.
template <class S>
struct LinFactor {
  int a = 0;
  std::optional<int> b;
  S c = ScalarOps<S>::zero();
  int mult = 1;
};

/// Rational function: Laurent numerator over a multiset of linear factors
/// that is never expanded. Factors are merged by exact scalar equality of
/// their constants; coinciding roots of distinct canonical factors are
/// excluded by parameter genericity.
template <class S>
class RationalFn {
 public:
  using Ops = ScalarOps<S>;
  using Subst = std::map<int, typename LaurentPoly<S>::SubstTarget>;

  RationalFn() = default;
  explicit RationalFn(LaurentPoly<S> num) : num_(std::move(num)) {}
  RationalFn(LaurentPoly<S> num, const std::vector<LinFactor<S>>& den)
      : num_(std::move(num)) {
    for (const auto& f : den) *this = times_linear_power(f.a, f.c, f.b, -f.mult);
  }

  static RationalFn constant(int nvars, const S& c) {
    return RationalFn(LaurentPoly<S>::constant(nvars, c));
  }

  const LaurentPoly<S>& num() const { return num_; }
  const std::vector<LinFactor<S>>& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  LaurentPoly<S> den_expanded() const {
    LaurentPoly<S> d = LaurentPoly<S>::constant(nvars(), Ops::one());
    for (const auto& f : den_)
      for (int i = 0; i < f.mult; ++i) d *= expand_factor(nvars(), f);
    return d;
  }

  /// Multiplies by (x_a - c x_b)^power or (x_a - c)^power, cancelling against
  /// stored denominator factors; power may be negative.
  RationalFn times_linear_power(int a, const S& c, std::optional<int> b, int power) const {
    if (power == 0) return *this;
    RationalFn out = *this;
    int va = a;
    std::optional<int> vb = b;
    S cc = c;
    // normalize to canonical orientation, peeling off scalars and monomials
    if (vb && *vb == va) {
      S delta = Ops::one() - cc;
      if (Ops::is_zero(delta)) {
        if (power > 0) return RationalFn(LaurentPoly<S>(nvars()));
        throw pole_error("division by identically zero factor");
      }
      out.num_ = Ops::pow_int(delta, power) * out.num_.shifted(va, power);
      return out;
    }
    if (Ops::is_zero(cc)) {
      out.num_ = out.num_.shifted(va, power);
      return out;
    }
    if (vb && *vb < va) {
      // (x_a - c x_b) = -c (x_b - c^{-1} x_a)
      out.num_ = Ops::pow_int(-cc, power) * out.num_;
      cc = Ops::inv(cc);
      std::swap(va, *vb);
    }
    for (size_t i = 0; i < out.den_.size(); ++i) {
      LinFactor<S>& f = out.den_[i];
      if (f.a == va && f.b == vb && Ops::is_zero(f.c - cc)) {
        f.mult -= power;
        int extra = -f.mult;
        if (f.mult <= 0) out.den_.erase(out.den_.begin() + static_cast<long>(i));
        LinFactor<S> base{va, vb, cc, 1};
        for (int t = 0; t < extra; ++t) out.num_ *= expand_factor(nvars(), base);
        return out;
      }
    }
    if (power < 0) {
      out.den_.push_back(LinFactor<S>{va, vb, cc, -power});
      out.sort_den();
    } else {
      LinFactor<S> base{va, vb, cc, 1};
      for (int t = 0; t < power; ++t) out.num_ *= expand_factor(nvars(), base);
    }
    return out;
  }

  friend RationalFn operator*(const RationalFn& x, const RationalFn& y) {
    RationalFn out = x;
    out.num_ *= y.num_;
    for (const auto& f : y.den_) out = out.times_linear_power(f.a, f.c, f.b, -f.mult);
    return out;
  }
  friend RationalFn operator*(const S& c, const RationalFn& x) {
    RationalFn out = x;
    out.num_ = c * out.num_;
    if (out.num_.is_zero()) out.den_.clear();
    return out;
  }
  friend RationalFn operator*(const LaurentPoly<S>& p, const RationalFn& x) {
    RationalFn out = x;
    out.num_ *= p;
    return out;
  }
  RationalFn operator-() const {
    RationalFn out = *this;
    out.num_ = -out.num_;
    return out;
  }

  friend RationalFn operator+(const RationalFn& x, const RationalFn& y) {
    std::vector<LinFactor<S>> common = x.den_;
    for (const auto& g : y.den_) {
      bool merged = false;
      for (auto& f : common)
        if (f.a == g.a && f.b == g.b && Ops::is_zero(f.c - g.c)) {
          f.mult = std::max(f.mult, g.mult);
          merged = true;
          break;
        }
      if (!merged) common.push_back(g);
    }
    LaurentPoly<S> nx = x.num_, ny = y.num_;
    for (const auto& f : common) {
      int mx = x.mult_of(f), my = y.mult_of(f);
      for (int t = 0; t < f.mult - mx; ++t) nx *= expand_factor(x.nvars(), f);
      for (int t = 0; t < f.mult - my; ++t) ny *= expand_factor(y.nvars(), f);
    }
    RationalFn out(nx + ny);
    for (const auto& f : common) out = out.times_linear_power(f.a, f.c, f.b, -f.mult);
    if (out.num_.is_zero()) out.den_.clear();
    return out;
  }
  friend RationalFn operator-(const RationalFn& x, const RationalFn& y) { return x + (-y); }

  /// Structural equality through common-denominator subtraction; exact
  /// backends only (float comparisons go through diff_magnitude).
  friend bool operator==(const RationalFn& x, const RationalFn& y) {
    return (x - y).num_.is_zero();
  }

  /// Relative magnitude of x - y against the operand scale.
  static double diff_magnitude(const RationalFn& x, const RationalFn& y) {
    RationalFn d = x - y;
    double scale = std::max({x.num_.coeff_magnitude(), y.num_.coeff_magnitude(), 1.0});
    return d.num_.coeff_magnitude() / scale;
  }

  /// Cancels denominator factors that exactly divide the numerator. Exact
  /// backends only; float values pass through unchanged.
  RationalFn reduced() const {
    if constexpr (!Ops::exact) {
      return *this;
    } else {
      RationalFn out = *this;
      std::vector<LinFactor<S>> keep;
      for (const auto& f : out.den_) {
        LinFactor<S> g = f;
        while (g.mult > 0) {
          auto [q, r] = out.num_.divided_by_linear(g.a, g.c, g.b);
          if (!r.is_zero()) break;
          out.num_ = q;
          --g.mult;
        }
        if (g.mult > 0) keep.push_back(g);
      }
      out.den_ = keep;
      return out;
    }
  }

  RationalFn substituted(int new_nvars, const Subst& subs) const {
    RationalFn out(num_.substituted(new_nvars, subs));
    for (const auto& f : den_) {
      auto [ca, va] = image_of(f.a, subs, new_nvars);
      if (f.b) {
        auto [cb, vb] = image_of(*f.b, subs, new_nvars);
        if (va && vb) {
          if (*va == *vb) {
            S delta = ca - f.c * cb;
            if (Ops::is_zero(delta)) throw pole_error("substitution collapses denominator factor");
            out.num_ = Ops::pow_int(delta, -f.mult) * out.num_.shifted(*va, -f.mult);
          } else {
            out.num_ = Ops::pow_int(ca, -f.mult) * out.num_;
            out = out.times_linear_power(*va, f.c * cb * Ops::inv(ca), vb, -f.mult);
          }
        } else if (va && !vb) {
          out.num_ = Ops::pow_int(ca, -f.mult) * out.num_;
          out = out.times_linear_power(*va, f.c * cb * Ops::inv(ca), std::nullopt, -f.mult);
        } else if (!va && vb) {
          S lead = -f.c * cb;
          out.num_ = Ops::pow_int(lead, -f.mult) * out.num_;
          out = out.times_linear_power(*vb, ca * Ops::inv(Ops::zero() - lead), std::nullopt,
                                       -f.mult);
        } else {
          S value = ca - f.c * cb;
          if (Ops::is_zero(value))
            throw pole_error("substitution evaluates a denominator factor to zero");
          out.num_ = Ops::pow_int(value, -f.mult) * out.num_;
        }
      } else {
        if (va) {
          out.num_ = Ops::pow_int(ca, -f.mult) * out.num_;
          out = out.times_linear_power(*va, f.c * Ops::inv(ca), std::nullopt, -f.mult);
        } else {
          S value = ca - f.c;
          if (Ops::is_zero(value))
            throw pole_error("substitution evaluates a denominator factor to zero");
          out.num_ = Ops::pow_int(value, -f.mult) * out.num_;
        }
      }
    }
    return out;
  }

  RationalFn remapped(int new_nvars, const std::vector<int>& mapping) const {
    RationalFn out(num_.remapped(new_nvars, mapping));
    for (const auto& f : den_) {
      std::optional<int> b2;
      if (f.b) b2 = mapping.at(static_cast<size_t>(*f.b));
      out = out.times_linear_power(mapping.at(static_cast<size_t>(f.a)), f.c, b2, -f.mult);
    }
    return out;
  }

  S eval(const std::vector<S>& x) const {
    S d = Ops::one();
    for (const auto& f : den_) {
      S v = x.at(static_cast<size_t>(f.a));
      if (f.b)
        v = v - f.c * x.at(static_cast<size_t>(*f.b));
      else
        v = v - f.c;
      if (Ops::is_zero(v)) throw pole_error("evaluation point lies on a denominator factor");
      d *= Ops::pow_int(v, f.mult);
    }
    return num_.eval(x) * Ops::inv(d);
  }

  RationalFn derivative(int var) const {
    // d/dx [N / prod F_i^{m_i}] = [N' E - N sum_i m_i F_i' E/F_i] / prod F_i^{m_i+1},
    // E = prod of the distinct factors
    int nv = nvars();
    LaurentPoly<S> E = LaurentPoly<S>::constant(nv, Ops::one());
    for (const auto& f : den_) E *= expand_factor(nv, f);
    LaurentPoly<S> top = num_.derivative(var) * E;
    for (size_t i = 0; i < den_.size(); ++i) {
      const auto& f = den_[i];
      S df = Ops::zero();
      if (f.a == var) df += Ops::one();
      if (f.b && *f.b == var) df -= f.c;
      if (Ops::is_zero(df)) continue;
      LaurentPoly<S> rest = LaurentPoly<S>::constant(nv, Ops::one());
      for (size_t j = 0; j < den_.size(); ++j)
        if (j != i) rest *= expand_factor(nv, den_[j]);
      top -= (Ops::from_long(f.mult) * df) * (num_ * rest);
    }
    RationalFn out(top);
    for (const auto& f : den_) out = out.times_linear_power(f.a, f.c, f.b, -(f.mult + 1));
    return out.reduced();
  }

  int mult_of(const LinFactor<S>& key) const {
    for (const auto& f : den_)
      if (f.a == key.a && f.b == key.b && Ops::is_zero(f.c - key.c)) return f.mult;
    return 0;
  }

  static LaurentPoly<S> expand_factor(int nvars, const LinFactor<S>& f) {
    if (f.b) return LaurentPoly<S>::var_binomial(nvars, f.a, f.c, *f.b);
    return LaurentPoly<S>::var_affine(nvars, f.a, f.c);
  }

 private:
  static std::pair<S, std::optional<int>> image_of(int var, const Subst& subs, int new_nvars) {
    auto it = subs.find(var);
    if (it == subs.end()) {
      if (var >= new_nvars) throw size_error("identity substitution slot outside target space");
      return {Ops::one(), var};
    }
    return {it->second.coef, it->second.var};
  }
  void sort_den() {
    std::sort(den_.begin(), den_.end(), [](const LinFactor<S>& x, const LinFactor<S>& y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.b.has_value() != y.b.has_value()) return !x.b.has_value();
      if (x.b && y.b && *x.b != *y.b) return *x.b < *y.b;
      return false;
    });
  }

  LaurentPoly<S> num_;
  std::vector<LinFactor<S>> den_;
};

/// Res_{z=0} + Res_{z=infty} of f(x, z) z^k dz/z in the distinguished
/// variable z, computed as minus the sum of residues at the finite nonzero
/// poles (residue theorem). The z slot of the result is unused.
template <class S>
RationalFn<S> residues_at_zero_and_infinity(const RationalFn<S>& f, int zvar, int k) {
  using Ops = ScalarOps<S>;
  int nv = f.nvars();
  RationalFn<S> integrand(f.num().shifted(zvar, k - 1));
  for (const auto& fac : f.den())
    integrand = integrand.times_linear_power(fac.a, fac.c, fac.b, -fac.mult);

  RationalFn<S> total{LaurentPoly<S>(nv)};
  for (const auto& fac : integrand.den()) {
    bool in_a = fac.a == zvar;
    bool in_b = fac.b && *fac.b == zvar;
    if (!in_a && !in_b) continue;
    int m = fac.mult;
    RationalFn<S> h = integrand.times_linear_power(fac.a, fac.c, fac.b, m);
    for (int t = 1; t < m; ++t) h = h.derivative(zvar);
    S pref = Ops::one();
    typename LaurentPoly<S>::SubstTarget loc;
    if (in_a) {
      loc = {fac.c, fac.b};  // root z = c x_b, or z = c for affine factors
    } else {
      // (x_a - c z) = -c (z - c^{-1} x_a): root z = x_a / c
      loc = {Ops::inv(fac.c), fac.a};
      pref = Ops::pow_int(-fac.c, -m);
    }
    long factorial = 1;
    for (int t = 2; t < m; ++t) factorial *= t;
    pref = pref * Ops::inv(Ops::from_long(factorial));
    total = total - (pref * h.substituted(nv, {{zvar, loc}}));
  }
  return total;
}

namespace detail {

/// Exact inverse of a single-term Laurent polynomial.
template <class S>
LaurentPoly<S> invert_monomial(const LaurentPoly<S>& p) {
  if (p.term_count() != 1) throw divisibility_error("inverse requires a monomial");
  Mono m = p.terms()[0].first;
  S c = p.terms()[0].second;
  Mono mi;
  for (int i = 0; i < MAXV; ++i) mi.e[i] = static_cast<int8_t>(-m.e[i]);
  std::map<Mono, S> acc;
  acc.emplace(mi, ScalarOps<S>::inv(c));
  return LaurentPoly<S>::from_map(p.nvars(), std::move(acc));
}

/// Truncated z-power series of 1/(z - W)^m with W = c x_b or W = c. At zero:
/// coefficients of z^0..z^ord. At infinity: coefficients of z^{-m-j}, j =
/// 0..ord.
template <class S>
std::vector<LaurentPoly<S>> factor_series(int nvars, const LinFactor<S>& f, bool at_zero,
                                          int ord) {
  using Ops = ScalarOps<S>;
  LaurentPoly<S> W;
  if (f.b) {
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(*f.b)] = 1;
    W = LaurentPoly<S>::monomial(nvars, e, f.c);
  } else {
    W = LaurentPoly<S>::constant(nvars, f.c);
  }
  long m = f.mult;
  LaurentPoly<S> Winv;
  if (at_zero) {
    // 1/(z-W)^m = (-1)^m W^{-m} sum_j C(m-1+j, j) (z/W)^j
    LaurentPoly<S> Wm = LaurentPoly<S>::constant(nvars, Ops::pow_int(-Ops::one(), m));
    for (int t = 0; t < m; ++t) Wm *= W;
    Winv = invert_monomial(Wm);
  }
  LaurentPoly<S> Winv1;
  if (at_zero) Winv1 = invert_monomial(W);
  std::vector<LaurentPoly<S>> out;
  Rational binom(1);
  LaurentPoly<S> zero_coef = Winv;
  LaurentPoly<S> inf_coef = LaurentPoly<S>::constant(nvars, Ops::one());
  for (int j = 0; j <= ord; ++j) {
    if (j > 0) {
      binom *= Rational(m - 1 + j);
      binom /= Rational(j);
      if (at_zero)
        zero_coef *= Winv1;
      else
        inf_coef *= W;
    }
    S cb = Ops::from_rational(binom);
    out.push_back(cb * (at_zero ? zero_coef : inf_coef));
  }
  return out;
}

template <class S>
std::pair<std::vector<LinFactor<S>>, std::vector<LinFactor<S>>> split_z_factors(
    const RationalFn<S>& f, int zvar) {
  std::vector<LinFactor<S>> zfac, rest;
  for (const auto& fac : f.den()) {
    if (fac.a == zvar)
      zfac.push_back(fac);
    else if (fac.b && *fac.b == zvar)
      throw size_error("series residue requires z-leading denominator factors");
    else
      rest.push_back(fac);
  }
  return {zfac, rest};
}

template <class S>
std::vector<LaurentPoly<S>> series_product(int nv, const std::vector<LinFactor<S>>& zfac,
                                           bool at_zero, int ord) {
  std::vector<LaurentPoly<S>> prod(static_cast<size_t>(ord) + 1, LaurentPoly<S>(nv));
  prod[0] = LaurentPoly<S>::constant(nv, ScalarOps<S>::one());
  for (const auto& fac : zfac) {
    auto fs = factor_series(nv, fac, at_zero, ord);
    std::vector<LaurentPoly<S>> next(static_cast<size_t>(ord) + 1, LaurentPoly<S>(nv));
    for (int i = 0; i <= ord; ++i)
      for (int j = 0; i + j <= ord; ++j) next[static_cast<size_t>(i + j)] += prod[static_cast<size_t>(i)] * fs[static_cast<size_t>(j)];
    prod = next;
  }
  return prod;
}

template <class S>
LaurentPoly<S> strip_z(const Mono& m, const S& c, int zvar, int nv) {
  Mono mm = m;
  mm.e[zvar] = 0;
  std::map<Mono, S> acc;
  acc.emplace(mm, c);
  return LaurentPoly<S>::from_map(nv, std::move(acc));
}

}  // namespace detail

/// Res_{z=0} of f z^k dz/z via direct series expansion. Independent oracle
/// for residues_at_zero_and_infinity; requires all z-factors z-leading.
template <class S>
RationalFn<S> residue_series_at_zero(const RationalFn<S>& f, int zvar, int k) {
  int nv = f.nvars();
  LaurentPoly<S> num = f.num().shifted(zvar, k - 1);
  auto [zfac, rest] = detail::split_z_factors(f, zvar);
  if (num.is_zero()) return RationalFn<S>(LaurentPoly<S>(nv));
  int lo = INT_MAX;
  for (const auto& [m, c] : num.terms()) lo = std::min(lo, static_cast<int>(m.e[zvar]));
  if (lo > -1) return RationalFn<S>(LaurentPoly<S>(nv));
  int ord = -1 - lo;
  auto prod = detail::series_product(nv, zfac, true, ord);
  LaurentPoly<S> res(nv);
  for (const auto& [m, c] : num.terms()) {
    int need = -1 - m.e[zvar];
    if (need < 0 || need > ord) continue;
    res += detail::strip_z(m, c, zvar, nv) * prod[static_cast<size_t>(need)];
  }
  return RationalFn<S>(res, rest);
}

/// Res_{z=infinity} of f z^k dz/z via series expansion at infinity; same
/// contract as residue_series_at_zero.
template <class S>
RationalFn<S> residue_series_at_infinity(const RationalFn<S>& f, int zvar, int k) {
  int nv = f.nvars();
  LaurentPoly<S> num = f.num().shifted(zvar, k - 1);
  auto [zfac, rest] = detail::split_z_factors(f, zvar);
  if (num.is_zero()) return RationalFn<S>(LaurentPoly<S>(nv));
  int mtot = 0;
  for (const auto& fac : zfac) mtot += fac.mult;
  int hi = INT_MIN;
  for (const auto& [m, c] : num.terms()) hi = std::max(hi, static_cast<int>(m.e[zvar]));
  int ord = hi - mtot + 1;
  if (ord < 0) return RationalFn<S>(LaurentPoly<S>(nv));
  auto prod = detail::series_product(nv, zfac, false, ord);
  LaurentPoly<S> res(nv);
  for (const auto& [m, c] : num.terms()) {
    int need = m.e[zvar] - mtot + 1;
    if (need < 0 || need > ord) continue;
    res += detail::strip_z(m, c, zvar, nv) * prod[static_cast<size_t>(need)];
  }
  return RationalFn<S>(-res, rest);
}

}  // namespace qtb
