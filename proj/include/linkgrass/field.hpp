#pragma once

// Exact scalars: the prime field GF(p) and the dual numbers GF(p)[e]/(e^2).

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace linkgrass {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Moduli are kept below 2^31 so every product of two residues fits in 64 bits.
inline constexpr u64 kPrimeLimit = u64{1} << 31;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 k = 3; k * k <= n; k += 2)
    if (n % k == 0) return false;
  return true;
}

/// Validates a modulus and returns it narrowed. Throws InvalidInput.
inline u32 checked_prime(u64 p) {
  if (p >= kPrimeLimit) throw InvalidInput("modulus " + std::to_string(p) + " is not below 2^31");
  if (!is_prime(p)) throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
  return static_cast<u32>(p);
}

/// Element of GF(p). The modulus travels with the value; mixing moduli is an error.
class Fp {
 public:
  Fp() = default;
  Fp(u64 value, u32 p) : v_(static_cast<u32>(value % p)), p_(p) {}

  /// Residue of a signed integer.
  static Fp from_signed(std::int64_t value, u32 p) {
    std::int64_t m = value % static_cast<std::int64_t>(p);
    if (m < 0) m += p;
    return Fp(static_cast<u64>(m), p);
  }
  static Fp zero(u32 p) { return Fp(0, p); }
  static Fp one(u32 p) { return Fp(1, p); }

  u32 value() const { return v_; }
  u32 modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_unit() const { return v_ != 0; }

  friend Fp operator+(Fp a, Fp b) {
    same_field(a, b);
    u64 s = u64{a.v_} + b.v_;
    return Fp(s >= a.p_ ? s - a.p_ : s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    same_field(a, b);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : u64{a.v_} + a.p_ - b.v_, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    same_field(a, b);
    return Fp(u64{a.v_} * b.v_, a.p_);
  }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(Fp a, Fp b) {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    return a.v_ <=> b.v_;
  }

  Fp pow(u64 e) const {
    Fp base = *this, acc = one(p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  static void same_field(Fp a, Fp b) {
    if (a.p_ != b.p_) throw InvalidInput("mixed moduli " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
  }

  u32 v_ = 0;
  u32 p_ = 2;
};

/// Multiplicative inverse in GF(p). Throws DivisionByZero on 0.
inline Fp field_inverse(Fp x) {
  if (x.is_zero()) throw DivisionByZero("inverse of 0 in GF(" + std::to_string(x.modulus()) + ")");
  return x.pow(x.modulus() - 2);
}
inline Fp inverse(Fp x) { return field_inverse(x); }

/// a0 + a1*e with e^2 = 0.
class Dual {
 public:
  Dual() = default;
  Dual(Fp a0, Fp a1) : a0_(a0), a1_(a1) {
    if (a0.modulus() != a1.modulus()) throw InvalidInput("dual number parts over different fields");
  }
  explicit Dual(Fp a0) : a0_(a0), a1_(Fp::zero(a0.modulus())) {}
  Dual(u64 a0, u64 a1, u32 p) : a0_(a0, p), a1_(a1, p) {}

  static Dual zero(u32 p) { return Dual(0, 0, p); }
  static Dual one(u32 p) { return Dual(1, 0, p); }
  static Dual epsilon(u32 p) { return Dual(0, 1, p); }

  Fp constant() const { return a0_; }
  Fp nilpotent() const { return a1_; }
  u32 modulus() const { return a0_.modulus(); }
  bool is_zero() const { return a0_.is_zero() && a1_.is_zero(); }
  bool is_unit() const { return a0_.is_unit(); }

  friend Dual operator+(Dual a, Dual b) { return Dual(a.a0_ + b.a0_, a.a1_ + b.a1_); }
  friend Dual operator-(Dual a, Dual b) { return Dual(a.a0_ - b.a0_, a.a1_ - b.a1_); }
  friend Dual operator*(Dual a, Dual b) { return Dual(a.a0_ * b.a0_, a.a0_ * b.a1_ + a.a1_ * b.a0_); }
  Dual operator-() const { return Dual(-a0_, -a1_); }
  Dual& operator+=(Dual b) { return *this = *this + b; }
  Dual& operator-=(Dual b) { return *this = *this - b; }
  Dual& operator*=(Dual b) { return *this = *this * b; }

  friend bool operator==(Dual a, Dual b) { return a.a0_ == b.a0_ && a.a1_ == b.a1_; }
  friend auto operator<=>(Dual a, Dual b) {
    if (auto c = a.a0_ <=> b.a0_; c != 0) return c;
    return a.a1_ <=> b.a1_;
  }

  friend std::ostream& operator<<(std::ostream& os, Dual a) { return os << a.a0_ << "+" << a.a1_ << "e"; }

 private:
  Fp a0_;
  Fp a1_;
};

/// (a0 + a1 e)^{-1} = a0^{-1} - a0^{-2} a1 e. Throws NotAUnit when a0 = 0.
inline Dual dual_inverse(Dual x) {
  if (!x.is_unit()) throw NotAUnit("dual number with zero constant part is not invertible");
  Fp inv = field_inverse(x.constant());
  return Dual(inv, -(inv * inv * x.nilpotent()));
}
inline Dual inverse(Dual x) { return dual_inverse(x); }

/// Constant part of a scalar: identity on GF(p), reduction mod e on dual numbers.
inline Fp residue(Fp x) { return x; }
inline Fp residue(Dual x) { return x.constant(); }

template <class R>
concept Scalar = requires(R a, R b, u32 p) {
  { a + b } -> std::same_as<R>;
  { a * b } -> std::same_as<R>;
  { R::zero(p) } -> std::same_as<R>;
  { R::one(p) } -> std::same_as<R>;
  { a.is_unit() } -> std::same_as<bool>;
  { a.is_zero() } -> std::same_as<bool>;
  { inverse(a) } -> std::same_as<R>;
};

}  // namespace linkgrass
