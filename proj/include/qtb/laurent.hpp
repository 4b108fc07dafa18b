#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "qtb/scalar.hpp"

namespace qtb {

constexpr int MAXV = 8;

/// Exponent vector of a Laurent monomial; slots at and above the owning
/// polynomial's variable count stay zero.
struct Mono {
  std::array<int8_t, MAXV> e{};

  int deg() const {
    int d = 0;
    for (int8_t x : e) d += x;
    return d;
  }
  int operator[](int i) const { return e[i]; }

  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend bool operator<(const Mono& a, const Mono& b) {
    int da = a.deg(), db = b.deg();
    if (da != db) return da < db;
    return a.e < b.e;
  }
  friend Mono operator+(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < MAXV; ++i) {
      int s = a.e[i] + b.e[i];
      if (s > 120 || s < -120) throw size_error("monomial exponent overflow");
      m.e[i] = static_cast<int8_t>(s);
    }
    return m;
  }
};

/// Sparse multivariate Laurent polynomial over scalar S, terms held in
/// graded-lexicographic order.
template <class S>
class LaurentPoly {
 public:
  using Ops = ScalarOps<S>;
  using Term = std::pair<Mono, S>;

  LaurentPoly() : nvars_(0) {}
  explicit LaurentPoly(int nvars) : nvars_(check_nvars(nvars)) {}

  static LaurentPoly constant(int nvars, const S& c) {
    LaurentPoly f(nvars);
    if (!Ops::is_zero(c)) f.terms_.push_back({Mono{}, c});
    return f;
  }
  static LaurentPoly monomial(int nvars, const std::vector<int>& expo, const S& c) {
    LaurentPoly f(nvars);
    if (Ops::is_zero(c)) return f;
    Mono m;
    for (size_t i = 0; i < expo.size(); ++i) {
      if (static_cast<int>(i) >= nvars && expo[i] != 0)
        throw size_error("exponent outside variable range");
      m.e[i] = static_cast<int8_t>(expo[i]);
    }
    f.terms_.push_back({m, c});
    return f;
  }
  /// x_a - c * x_b
  static LaurentPoly var_binomial(int nvars, int a, const S& c, int b) {
    LaurentPoly f(nvars);
    Mono ma, mb;
    ma.e[a] = 1;
    mb.e[b] = 1;
    f.terms_.push_back({ma, Ops::one()});
    LaurentPoly g(nvars);
    g.terms_.push_back({mb, c});
    return f - g;
  }
  /// x_a - c
  static LaurentPoly var_affine(int nvars, int a, const S& c) {
    LaurentPoly f(nvars);
    Mono ma;
    ma.e[a] = 1;
    f.terms_.push_back({ma, Ops::one()});
    return f - constant(nvars, c);
  }
  /// Power sum x_1^r + ... + x_n^r, r != 0 (negative allowed).
  static LaurentPoly power_sum(int nvars, int r) {
    LaurentPoly f(nvars);
    for (int i = 0; i < nvars; ++i) {
      std::vector<int> e(nvars, 0);
      e[i] = r;
      f += monomial(nvars, e, Ops::one());
    }
    return f;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  S coefficient(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Mono& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Ops::zero();
  }

  int total_degree_max() const {
    int d = INT_MIN;
    for (auto& [m, c] : terms_) d = std::max(d, m.deg());
    return d;
  }
  int total_degree_min() const {
    int d = INT_MAX;
    for (auto& [m, c] : terms_) d = std::min(d, m.deg());
    return d;
  }

  LaurentPoly operator-() const {
    LaurentPoly f = *this;
    for (auto& [m, c] : f.terms_) c = -c;
    return f;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same_space(b);
    LaurentPoly out(a.nvars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
      if (ia->first < ib->first)
        out.terms_.push_back(*ia++);
      else if (ib->first < ia->first)
        out.terms_.push_back(*ib++);
      else {
        S c = ia->second + ib->second;
        if (!Ops::is_zero(c)) out.terms_.push_back({ia->first, c});
        ++ia, ++ib;
      }
    }
    out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
    out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same_space(b);
    std::map<Mono, S> acc;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Mono m = ma + mb;
        auto [it, fresh] = acc.try_emplace(m, Ops::zero());
        it->second += ca * cb;
      }
    return from_map(a.nvars_, std::move(acc));
  }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend LaurentPoly operator*(const S& c, const LaurentPoly& a) {
    LaurentPoly out(a.nvars_);
    if (Ops::is_zero(c)) return out;
    out.terms_ = a.terms_;
    for (auto& [m, x] : out.terms_) x = c * x;
    out.drop_zeros();
    return out;
  }
  LaurentPoly& operator*=(const S& c) { return *this = c * (*this); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Shift one variable's exponent by k everywhere (multiply by x_a^k).
  LaurentPoly shifted(int a, int k) const {
    LaurentPoly out(nvars_);
    out.terms_ = terms_;
    for (auto& [m, c] : out.terms_) {
      Mono mm = m;
      int s = mm.e[a] + k;
      if (s > 120 || s < -120) throw size_error("monomial exponent overflow");
      mm.e[a] = static_cast<int8_t>(s);
      m = mm;
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    return out;
  }

  /// Relabel variables into a possibly different space: slot i of this
  /// polynomial becomes slot mapping[i] of the result.
  LaurentPoly remapped(int new_nvars, const std::vector<int>& mapping) const {
    check_nvars(new_nvars);
    std::map<Mono, S> acc;
    for (auto& [m, c] : terms_) {
      Mono mm;
      for (int i = 0; i < nvars_; ++i) {
        if (m.e[i] == 0) continue;
        int t = mapping.at(i);
        int s = mm.e[t] + m.e[i];
        if (s > 120 || s < -120) throw size_error("monomial exponent overflow");
        mm.e[t] = static_cast<int8_t>(s);
      }
      auto [it, fresh] = acc.try_emplace(mm, Ops::zero());
      it->second += c;
    }
    return from_map(new_nvars, std::move(acc));
  }

  struct SubstTarget {
    S coef;
    std::optional<int> var;  // x_i -> coef * x_var, or a plain scalar when absent
  };

  /// Substitute per-variable targets; identity for variables not in the map.
  /// Result lives in a caller-chosen space of new_nvars variables (identity
  /// slots must be meaningful there).
  LaurentPoly substituted(int new_nvars, const std::map<int, SubstTarget>& subs) const {
    check_nvars(new_nvars);
    std::map<Mono, S> acc;
    for (auto& [m, c] : terms_) {
      S coef = c;
      Mono mm;
      bool dead = false;
      for (int i = 0; i < nvars_ && !dead; ++i) {
        int ei = m.e[i];
        if (ei == 0) continue;
        auto it = subs.find(i);
        if (it == subs.end()) {
          if (i >= new_nvars) throw size_error("identity substitution slot outside target space");
          mm.e[i] = static_cast<int8_t>(mm.e[i] + ei);
          continue;
        }
        const SubstTarget& tgt = it->second;
        if (Ops::is_zero(tgt.coef)) {
          if (ei < 0)
            throw pole_error("substitution of zero into negative power of variable " +
                             std::to_string(i + 1));
          dead = true;
          continue;
        }
        coef = coef * Ops::pow_int(tgt.coef, ei);
        if (tgt.var) {
          int t = *tgt.var;
          if (t >= new_nvars) throw size_error("substitution target outside target space");
          int s = mm.e[t] + ei;
          if (s > 120 || s < -120) throw size_error("monomial exponent overflow");
          mm.e[t] = static_cast<int8_t>(s);
        }
      }
      if (dead) continue;
      auto [it, fresh] = acc.try_emplace(mm, Ops::zero());
      it->second += coef;
    }
    return from_map(new_nvars, std::move(acc));
  }

  /// Full evaluation at a scalar point.
  S eval(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw size_error("evaluation point arity mismatch");
    S total = Ops::zero();
    for (auto& [m, c] : terms_) {
      S t = c;
      for (int i = 0; i < nvars_; ++i)
        if (m.e[i] != 0) {
          if (Ops::is_zero(x[i]) && m.e[i] < 0)
            throw pole_error("evaluation hits negative power of zero at variable " +
                             std::to_string(i + 1));
          t = t * Ops::pow_int(x[i], m.e[i]);
        }
      total += t;
    }
    return total;
  }

  /// Exact division by (x_a - c x_b) when b is given, else by (x_a - c).
  /// Returns quotient; terms that cannot be reached by the quotient pass are
  /// returned as the remainder (empty iff division exact).
  std::pair<LaurentPoly, LaurentPoly> divided_by_linear(int a, const S& c,
                                                        std::optional<int> b) const {
    LaurentPoly quot(nvars_), rem(nvars_);
    if (terms_.empty()) return {quot, rem};
    int min0 = INT_MAX;
    for (auto& [m, cc] : terms_) min0 = std::min(min0, static_cast<int>(m.e[a]));

    // Work by descending exponent of x_a.
    auto by_var_desc = [a](const Mono& x, const Mono& y) {
      if (x.e[a] != y.e[a]) return x.e[a] > y.e[a];
      return x < y;
    };
    std::map<Mono, S, decltype(by_var_desc)> work(by_var_desc);
    for (auto& [m, cc] : terms_) work.emplace(m, cc);
    std::map<Mono, S> qacc;
    while (!work.empty()) {
      auto it = work.begin();
      Mono m = it->first;
      S coef = it->second;
      work.erase(it);
      if (Ops::is_zero(coef)) continue;
      if (m.e[a] <= min0 - 1) {
        rem += monomial_term(m, coef);
        continue;
      }
      Mono qm = m;
      qm.e[a] = static_cast<int8_t>(qm.e[a] - 1);
      auto [qit, qfresh] = qacc.try_emplace(qm, Ops::zero());
      qit->second += coef;
      // Subtracting (quotient term)*(divisor) cancels the leading term and
      // feeds one lower term back into the queue.
      Mono low = qm;
      if (b) {
        int s = low.e[*b] + 1;
        if (s > 120) throw size_error("monomial exponent overflow");
        low.e[*b] = static_cast<int8_t>(s);
      }
      auto [wit, wfresh] = work.try_emplace(low, Ops::zero());
      wit->second += coef * c;
    }
    quot = from_map(nvars_, std::move(qacc));
    return {quot, rem};
  }

  /// d/dx_a.
  LaurentPoly derivative(int a) const {
    LaurentPoly out(nvars_);
    for (auto& [m, c] : terms_) {
      if (m.e[a] == 0) continue;
      Mono mm = m;
      mm.e[a] = static_cast<int8_t>(mm.e[a] - 1);
      out += monomial_term(mm, Ops::from_long(m.e[a]) * c);
    }
    return out;
  }

  /// Min/max of the total exponent carried by the first k variables; the
  /// scaling degree of f(t y_1, ..., t y_k, x_{k+1}, ...) in t.
  std::pair<int, int> scaling_range(int k) const {
    if (terms_.empty()) return {0, 0};
    int lo = INT_MAX, hi = INT_MIN;
    for (auto& [m, c] : terms_) {
      int s = 0;
      for (int i = 0; i < k; ++i) s += m.e[i];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return {lo, hi};
  }

  /// Largest |coefficient| (0 for the zero polynomial); float-mode tolerance
  /// decisions key off this.
  double coeff_magnitude() const {
    double m = 0;
    for (auto& [mono, c] : terms_) m = std::max(m, Ops::magnitude(c));
    return m;
  }

  /// Drop terms with |coeff| below eps * coeff_magnitude(); exact backends
  /// never prune.
  void prune_relative(double eps) {
    if constexpr (Ops::exact) return;
    double cutoff = coeff_magnitude() * eps;
    std::erase_if(terms_, [&](const Term& t) { return Ops::magnitude(t.second) < cutoff; });
  }

  std::string str(const std::string& varname = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << Ops::str(c);
      for (int i = 0; i < nvars_; ++i)
        if (m.e[i] != 0) {
          os << "*" << varname << (i + 1);
          if (m.e[i] != 1) os << "^" << static_cast<int>(m.e[i]);
        }
    }
    return os.str();
  }

  static LaurentPoly from_map(int nvars, std::map<Mono, S>&& acc) {
    LaurentPoly out(nvars);
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!Ops::is_zero(c)) out.terms_.push_back({m, c});
    return out;
  }

 private:
  LaurentPoly monomial_term(const Mono& m, const S& c) const {
    LaurentPoly f(nvars_);
    if (!Ops::is_zero(c)) f.terms_.push_back({m, c});
    return f;
  }
  static int check_nvars(int n) {
    if (n < 0 || n > MAXV) throw size_error("variable count out of range (max 8)");
    return n;
  }
  void check_same_space(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw size_error("mixed variable spaces in polynomial arithmetic");
  }
  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return Ops::is_zero(t.second); });
  }

  int nvars_;
  std::vector<Term> terms_;
};

/// Average of f over the full symmetric group on its variables (n <= 8).
template <class S>
LaurentPoly<S> symmetrized(const LaurentPoly<S>& f) {
  int n = f.nvars();
  if (n > 8) throw size_error("symmetrization supports at most 8 variables");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly<S> total(n);
  long count = 0;
  do {
    total += f.remapped(n, perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  S inv = ScalarOps<S>::inv(ScalarOps<S>::from_long(count));
  return inv * total;
}

template <class S>
bool is_symmetric(const LaurentPoly<S>& f) {
  int n = f.nvars();
  std::vector<int> perm(n);
  for (int swap = 0; swap + 1 < n; ++swap) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[swap], perm[swap + 1]);
    if (!(f.remapped(n, perm) == f)) return false;
  }
  return true;
}

/// Monomial symmetric polynomial m_mu on nvars variables: the orbit sum of
/// x^mu over distinct permutations of the exponent vector (entries may be
/// negative; mu is padded with zeros).
template <class S>
LaurentPoly<S> monomial_symmetric(int nvars, std::vector<int> mu) {
  if (static_cast<int>(mu.size()) > nvars) throw size_error("exponent vector longer than space");
  mu.resize(nvars, 0);
  std::sort(mu.begin(), mu.end());
  LaurentPoly<S> total(nvars);
  do {
    total += LaurentPoly<S>::monomial(nvars, mu, ScalarOps<S>::one());
  } while (std::next_permutation(mu.begin(), mu.end()));
  return total;
}

/// Divides f by prod_{i<j} (x_i - x_j) over the given variable set, throwing
/// on a divisibility defect in exact mode; in float mode the defect is pruned
/// when below 1e-25 relative and reported otherwise.
template <class S>
LaurentPoly<S> divided_by_vandermonde(const LaurentPoly<S>& f, const std::vector<int>& vars) {
  LaurentPoly<S> cur = f;
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j) {
      auto [q, r] = cur.divided_by_linear(vars[i], ScalarOps<S>::one(), vars[j]);
      if (!r.is_zero()) {
        if constexpr (ScalarOps<S>::exact) {
          throw divisibility_error("vandermonde division left a remainder");
        } else {
          double scale = cur.coeff_magnitude();
          if (r.coeff_magnitude() > 1e-25 * std::max(scale, 1.0))
            throw divisibility_error("vandermonde division left a large float remainder");
        }
      }
      cur = q;
    }
  return cur;
}

}  // namespace qtb
