#pragma once

#include <vector>

#include "qtb/scalar.hpp"

namespace qtb {

/// Algebra parameters q1, q2, q3 with q2 = q^2 and q1 q2 q3 = 1.
/// Construction enforces genericity: q1^l q2^m q3^n == 1 must imply
/// l == m == n within the lattice bound (the diagonal is forced by the
/// constraint itself and is exempt).
template <class S>
struct Params {
  S q, q1, q2, q3;
  int genericity_bound = 12;

  Params(const S& q_, const S& q1_, int bound = 12) : q(q_), q1(q1_), genericity_bound(bound) {
    using Ops = ScalarOps<S>;
    q2 = q * q;
    if (Ops::is_zero(q) || Ops::is_zero(q1)) throw config_error("parameters q, q1 must be nonzero");
    q3 = Ops::inv(q1 * q2);
    check_genericity();
  }

  S kappa(long r) const {
    using Ops = ScalarOps<S>;
    S one = Ops::one();
    return (one - Ops::pow_int(q1, r)) * (one - Ops::pow_int(q2, r)) * (one - Ops::pow_int(q3, r));
  }

  S c1() const {
    using Ops = ScalarOps<S>;
    S one = Ops::one();
    return q3 * Ops::inv((one - q1) * (one - q3));
  }

  S c2() const {
    using Ops = ScalarOps<S>;
    S one = Ops::one();
    return Ops::inv(q3 * (one - q2));
  }

  /// gamma_r for the k-fold module with evaluation parameters us.
  S gamma(long r, const std::vector<S>& us) const {
    using Ops = ScalarOps<S>;
    if (r == 0) throw config_error("gamma_r needs r != 0");
    S power_sum = Ops::zero();
    for (const S& u : us) power_sum += Ops::pow_int(u, r);
    S one = Ops::one();
    return (one - Ops::pow_int(q2, r)) * Ops::inv(Ops::from_long(r) * kappa(r)) * power_sum;
  }

  /// g(z, w) = (z - q1 w)(z - q2 w)(z - q3 w) at scalar arguments.
  S g_eval(const S& z, const S& w) const {
    return (z - q1 * w) * (z - q2 * w) * (z - q3 * w);
  }

  /// phi(u, z) = (q^{-1} z - q u)/(z - u); product over all us.
  S phi_eval(const std::vector<S>& us, const S& z) const {
    using Ops = ScalarOps<S>;
    S result = Ops::one();
    S qinv = Ops::inv(q);
    for (const S& u : us) {
      S den = z - u;
      if (Ops::is_zero(den)) throw pole_error("phi evaluated at its pole z = u");
      result *= (qinv * z - q * u) * Ops::inv(den);
    }
    return result;
  }

  void check_genericity() const {
    using Ops = ScalarOps<S>;
    int B = genericity_bound;
    std::vector<S> p1(2 * B + 1), p2(2 * B + 1), p3(2 * B + 1);
    for (int e = -B; e <= B; ++e) {
      p1[e + B] = Ops::pow_int(q1, e);
      p2[e + B] = Ops::pow_int(q2, e);
      p3[e + B] = Ops::pow_int(q3, e);
    }
    for (int l = -B; l <= B; ++l)
      for (int m = -B; m <= B; ++m)
        for (int n = -B; n <= B; ++n) {
          if (l == m && m == n) continue;
          S prod = p1[l + B] * p2[m + B] * p3[n + B];
          if (is_one(prod))
            throw genericity_error("parameters fail genericity: q1^" + std::to_string(l) + " q2^" +
                                   std::to_string(m) + " q3^" + std::to_string(n) + " = 1");
        }
  }

 private:
  static bool is_one(const S& x) {
    using Ops = ScalarOps<S>;
    if constexpr (Ops::exact) {
      return Ops::is_zero(x - Ops::one());
    } else {
      return Ops::magnitude(x - Ops::one()) < 1e-12;
    }
  }
};

inline Params<Rational> default_exact_params(int bound = 12) {
  return Params<Rational>(Rational(2), Rational(3), bound);
}

inline Params<Complex> default_float_params(int bound = 12) {
  Real theta("0.3");
  Complex q1 = Real("2.3") * Complex(cos(theta), sin(theta));
  return Params<Complex>(Complex(Real("1.21")), q1, bound);
}

template <class S>
Params<S> reduce_params(const Params<Rational>& p);

template <>
inline Params<Rational> reduce_params<Rational>(const Params<Rational>& p) {
  return p;
}

template <>
inline Params<FpA> reduce_params<FpA>(const Params<Rational>& p) {
  return Params<FpA>(FpA::from_rational(p.q), FpA::from_rational(p.q1), p.genericity_bound);
}

template <>
inline Params<FpB> reduce_params<FpB>(const Params<Rational>& p) {
  return Params<FpB>(FpB::from_rational(p.q), FpB::from_rational(p.q1), p.genericity_bound);
}

}  // namespace qtb
