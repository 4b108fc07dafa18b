#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <boost/multiprecision/cpp_complex.hpp>

namespace qtb {

using Rational = mpq_class;
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct genericity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct divisibility_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Prime field on 64-bit words; used internally for large exact rank
/// computations, never exposed through the CLI.
template <std::uint64_t P>
struct Fp {
  std::uint64_t v = 0;

  Fp() = default;
  Fp(long x) {
    long r = x % static_cast<long>(P);
    if (r < 0) r += static_cast<long>(P);
    v = static_cast<std::uint64_t>(r);
  }
  static Fp from_u64(std::uint64_t x) { return Fp{x % P, 0}; }

  static Fp from_rational(const Rational& q) {
    Fp num = reduce_z(q.get_num());
    Fp den = reduce_z(q.get_den());
    if (den.v == 0) throw divisibility_error("rational has denominator divisible by field modulus");
    return num / den;
  }

  static Fp reduce_z(const mpz_class& z) {
    mpz_class m = z % mpz_class(static_cast<unsigned long>(P));
    if (m < 0) m += mpz_class(static_cast<unsigned long>(P));
    return from_u64(m.get_ui());
  }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v + b.v;
    if (s >= P || s < a.v) s -= P;
    return Fp{s, 0};
  }
  friend Fp operator-(Fp a, Fp b) {
    return Fp{a.v >= b.v ? a.v - b.v : a.v + P - b.v, 0};
  }
  friend Fp operator*(Fp a, Fp b) {
    return Fp{static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % P), 0};
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp operator-() const { return Fp{v == 0 ? 0 : P - v, 0}; }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

  Fp pow(std::uint64_t e) const {
    Fp r{1, 0}, b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  Fp inv() const {
    if (v == 0) throw divisibility_error("division by zero in prime field");
    return pow(P - 2);
  }

 private:
  Fp(std::uint64_t raw, int) : v(raw) {}
};

constexpr std::uint64_t FP_PRIME_A = 2305843009213693951ull;  // 2^61 - 1
constexpr std::uint64_t FP_PRIME_B = 9223372036854775783ull;  // largest prime below 2^63
using FpA = Fp<FP_PRIME_A>;
using FpB = Fp<FP_PRIME_B>;

/// Uniform scalar interface. Exact backends have is_zero == exact equality;
/// the complex backend only reports exact binary zeros and all tolerance
/// decisions stay at call sites.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_long(long n) { return Rational(n); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational inv(const Rational& x) {
    if (is_zero(x)) throw divisibility_error("division by zero rational");
    return Rational(1) / x;
  }
  static Rational pow_int(const Rational& x, long e);
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarOps<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return Complex(0); }
  static Complex one() { return Complex(1); }
  static bool is_zero(const Complex& x) { return x.real() == 0 && x.imag() == 0; }
  static Complex from_long(long n) { return Complex(n); }
  static Complex from_rational(const Rational& q) {
    Real num(q.get_num().get_str());
    Real den(q.get_den().get_str());
    return Complex(num / den);
  }
  static Complex inv(const Complex& x) {
    if (is_zero(x)) throw divisibility_error("division by zero complex");
    return ScalarOps::one() / x;
  }
  static Complex pow_int(const Complex& x, long e);
  static double magnitude(const Complex& x) { return static_cast<double>(abs(x)); }
  static std::string str(const Complex& x);
};

template <std::uint64_t P>
struct ScalarOps<Fp<P>> {
  static constexpr bool exact = true;
  static Fp<P> zero() { return Fp<P>(0L); }
  static Fp<P> one() { return Fp<P>(1L); }
  static bool is_zero(Fp<P> x) { return x.v == 0; }
  static Fp<P> from_long(long n) { return Fp<P>(n); }
  static Fp<P> from_rational(const Rational& q) { return Fp<P>::from_rational(q); }
  static Fp<P> inv(Fp<P> x) { return x.inv(); }
  static Fp<P> pow_int(Fp<P> x, long e) {
    if (e >= 0) return x.pow(static_cast<std::uint64_t>(e));
    return x.inv().pow(static_cast<std::uint64_t>(-e));
  }
  static double magnitude(Fp<P> x) { return x.v ? 1.0 : 0.0; }
  static std::string str(Fp<P> x) { return std::to_string(x.v) + " (mod p)"; }
};

inline Rational ScalarOps<Rational>::pow_int(const Rational& x, long e) {
  if (e == 0) return Rational(1);
  Rational base = e > 0 ? x : inv(x);
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

inline Complex ScalarOps<Complex>::pow_int(const Complex& x, long e) {
  if (e == 0) return Complex(1);
  Complex base = e > 0 ? x : inv(x);
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Complex r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

/// Parses "a" or "a/b" into an exact rational.
Rational parse_rational(const std::string& text);

/// Parses "re", "re,im", or "a/b,c/d" (rational components allowed) into a
/// 50-digit complex number.
Complex parse_complex(const std::string& text);

std::string complex_str(const Complex& x, int digits = 30);

inline std::string ScalarOps<Complex>::str(const Complex& x) { return complex_str(x); }

}  // namespace qtb
