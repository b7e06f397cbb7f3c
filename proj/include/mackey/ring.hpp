#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace mackey {

using Scalar = mpq_class;
using Integer = mpz_class;

/// Raised for mathematically invalid input (bad tables, non-maps, ring
/// mismatches). The CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind { Integers, Rationals, IntegersMod, PLocalIntegers };

/// Result of a Bezout step: s*a + t*b = g, u*a + v*b = 0, and the 2x2
/// matrix [[s, t], [u, v]] is invertible over the ring.
struct Gcdx {
  Scalar g, s, t, u, v;
};

/// One of the four supported coefficient rings. Every ring element is
/// carried as a GMP rational; `normalize` brings it into canonical form.
class Ring {
 public:
  Ring() = default;

  static Ring integers() { return Ring(RingKind::Integers, 0); }
  static Ring rationals() { return Ring(RingKind::Rationals, 0); }
  static Ring integers_mod(long m) {
    if (m < 2) throw DomainError("IntegersMod requires modulus >= 2");
    return Ring(RingKind::IntegersMod, m);
  }
  static Ring p_local(long p) {
    if (!is_prime(p)) throw DomainError("PLocalIntegers requires a prime, got " + std::to_string(p));
    return Ring(RingKind::PLocalIntegers, p);
  }

  RingKind kind() const { return kind_; }
  long parameter() const { return param_; }
  bool is_field() const { return kind_ == RingKind::Rationals; }
  bool is_domain() const { return kind_ != RingKind::IntegersMod; }

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && param_ == o.param_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::string name() const {
    switch (kind_) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::IntegersMod: return "Z/" + std::to_string(param_);
      case RingKind::PLocalIntegers: return "Z_(" + std::to_string(param_) + ")";
    }
    return "?";
  }

  bool contains(const Scalar& x) const {
    switch (kind_) {
      case RingKind::Integers:
      case RingKind::IntegersMod: return x.get_den() == 1;
      case RingKind::Rationals: return true;
      case RingKind::PLocalIntegers: return mpz_divisible_ui_p(x.get_den().get_mpz_t(), param_) == 0;
    }
    return false;
  }

  Scalar normalize(const Scalar& x) const {
    if (!contains(x)) throw DomainError("value " + x.get_str() + " is not an element of " + name());
    if (kind_ == RingKind::IntegersMod) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), x.get_num().get_mpz_t(), param_);
      return Scalar(r);
    }
    return x;
  }

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

  bool is_unit(const Scalar& a) const {
    switch (kind_) {
      case RingKind::Integers: return abs(a) == 1;
      case RingKind::Rationals: return sgn(a) != 0;
      case RingKind::IntegersMod: return gcd_with_modulus(a) == 1;
      case RingKind::PLocalIntegers: return sgn(a) != 0 && valuation(a) == 0;
    }
    return false;
  }

  /// p-adic valuation of a nonzero element (PLocalIntegers only).
  long valuation(const Scalar& a) const {
    Integer n = abs(a.get_num());
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), param_)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), param_);
      ++v;
    }
    return v;
  }

  bool divides(const Scalar& a, const Scalar& b) const {
    if (is_zero(b)) return true;
    if (is_zero(a)) return false;
    switch (kind_) {
      case RingKind::Integers: return mpz_divisible_p(b.get_num().get_mpz_t(), a.get_num().get_mpz_t()) != 0;
      case RingKind::Rationals: return true;
      case RingKind::IntegersMod: {
        Integer g = gcd_with_modulus(a);
        return mpz_divisible_p(b.get_num().get_mpz_t(), g.get_mpz_t()) != 0;
      }
      case RingKind::PLocalIntegers: return valuation(a) <= valuation(b);
    }
    return false;
  }

  /// Some q with a*q = b. Requires divides(a, b).
  Scalar quotient(const Scalar& b, const Scalar& a) const {
    if (is_zero(b)) return Scalar(0);
    if (!divides(a, b)) throw std::logic_error("quotient: " + a.get_str() + " does not divide " + b.get_str());
    switch (kind_) {
      case RingKind::Integers:
      case RingKind::Rationals:
      case RingKind::PLocalIntegers: {
        Scalar q = b / a;
        return q;
      }
      case RingKind::IntegersMod: {
        Integer m(param_);
        Integer g = gcd_with_modulus(a);
        Integer a1 = a.get_num() / g, b1 = b.get_num() / g, m1 = m / g;
        Integer inv;
        if (m1 == 1) return Scalar(0);
        mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), m1.get_mpz_t());
        return normalize(Scalar(Integer(b1 * inv)));
      }
    }
    return Scalar(0);
  }

  Gcdx gcdx(const Scalar& a, const Scalar& b) const {
    if (is_zero(a) && is_zero(b)) return {Scalar(0), Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
    if (is_zero(a)) return {b, Scalar(0), Scalar(1), Scalar(1), Scalar(0)};
    switch (kind_) {
      case RingKind::Integers:
      case RingKind::IntegersMod: {
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
        Integer u = -(b.get_num() / g), v = a.get_num() / g;
        return {reduce(Scalar(g)), reduce(Scalar(s)), reduce(Scalar(t)), reduce(Scalar(u)), reduce(Scalar(v))};
      }
      case RingKind::Rationals:
      case RingKind::PLocalIntegers: {
        if (is_zero(b) || divides(a, b)) return {a, Scalar(1), Scalar(0), Scalar(-b / a), Scalar(1)};
        return {b, Scalar(0), Scalar(1), Scalar(1), Scalar(-a / b)};
      }
    }
    return {};
  }

  /// Pivot preference: smaller is a better pivot. Zero is never a pivot.
  Integer pivot_size(const Scalar& a) const {
    switch (kind_) {
      case RingKind::Integers: return abs(a.get_num());
      case RingKind::Rationals: return Integer(1);
      case RingKind::IntegersMod: return gcd_with_modulus(a);
      case RingKind::PLocalIntegers: return Integer(valuation(a));
    }
    return Integer(0);
  }

  /// Canonical generator of the ideal (a); used to compare invariant factors.
  Scalar ideal_generator(const Scalar& a) const {
    switch (kind_) {
      case RingKind::Integers: return abs(a);
      case RingKind::Rationals: return is_zero(a) ? Scalar(0) : Scalar(1);
      case RingKind::IntegersMod: return is_zero(a) ? Scalar(0) : Scalar(gcd_with_modulus(a));
      case RingKind::PLocalIntegers: {
        if (is_zero(a)) return Scalar(0);
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), param_, valuation(a));
        return Scalar(pw);
      }
    }
    return Scalar(0);
  }

  /// Generator of the annihilator ideal {x : a*x = 0}.
  Scalar annihilator(const Scalar& a) const {
    if (is_zero(a)) return Scalar(1);
    if (kind_ != RingKind::IntegersMod) return Scalar(0);
    Integer g = gcd_with_modulus(a);
    return normalize(Scalar(Integer(Integer(param_) / g)));
  }

  Scalar inverse(const Scalar& a) const {
    if (!is_unit(a)) throw std::logic_error("inverse of non-unit " + a.get_str() + " in " + name());
    return quotient(Scalar(1), a);
  }

  static bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  Ring(RingKind k, long p) : kind_(k), param_(p) {}

  Scalar reduce(const Scalar& x) const {
    if (kind_ == RingKind::IntegersMod) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), x.get_num().get_mpz_t(), param_);
      return Scalar(r);
    }
    return x;
  }

  Integer gcd_with_modulus(const Scalar& a) const {
    Integer g;
    Integer m(param_);
    mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), m.get_mpz_t());
    return g;
  }

  RingKind kind_ = RingKind::Integers;
  long param_ = 0;
};

}  // namespace mackey
