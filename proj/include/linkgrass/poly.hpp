#pragma once

// Univariate polynomials over GF(p), coefficient vectors in ascending degree.

#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "tameness.hpp"

namespace linkgrass {

class Poly {
 public:
  Poly() = default;
  explicit Poly(u32 p) : p_(checked_prime(p)) {}
  Poly(std::vector<Fp> coeffs, u32 p) : p_(p), c_(std::move(coeffs)) { trim(); }

  static Poly from_ints(const std::vector<std::int64_t>& coeffs, u32 p) {
    std::vector<Fp> c;
    for (auto x : coeffs) c.push_back(Fp::from_signed(x, p));
    return Poly(std::move(c), p);
  }
  static Poly monomial(std::size_t k, u32 p) {
    std::vector<Fp> c(k + 1, Fp::zero(p));
    c[k] = Fp::one(p);
    return Poly(std::move(c), p);
  }
  static Poly constant(Fp x) { return Poly({x}, x.modulus()); }

  u32 modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Fp>& coeffs() const { return c_; }
  Fp coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Fp::zero(p_); }

  /// Coefficients 0..n-1, zero padded.
  Vec to_vec(std::size_t n) const {
    if (c_.size() > n) throw ShapeError("polynomial degree exceeds vector length");
    Vec v(n, Fp::zero(p_));
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k];
    return v;
  }

  Fp eval(Fp x) const {
    Fp acc = Fp::zero(p_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Hasse derivative D^(k): y^n -> binom(n, k) y^(n-k).
  Poly hasse(std::size_t k) const {
    if (k >= c_.size()) return Poly(p_);
    std::vector<Fp> out(c_.size() - k, Fp::zero(p_));
    for (std::size_t n = k; n < c_.size(); ++n) out[n - k] = c_[n] * binomial_mod(n, k, p_);
    return Poly(std::move(out), p_);
  }

  /// Order of vanishing at the finite point x; nullopt for the zero polynomial.
  std::optional<std::size_t> order_at(Fp x) const {
    if (is_zero()) return std::nullopt;
    for (std::size_t k = 0;; ++k)
      if (!hasse(k).eval(x).is_zero()) return k;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const u32 p = common(a, b);
    std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()), Fp::zero(p));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c), p);
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Fp> c;
    for (auto x : a.c_) c.push_back(-x);
    return Poly(std::move(c), a.p_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    const u32 p = common(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(p);
    std::vector<Fp> c(a.c_.size() + b.c_.size() - 1, Fp::zero(p));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c), p);
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  static Fp binomial_mod(std::size_t n, std::size_t k, u32 p) {
    const BigInt b = big_binomial(n, k) % p;
    return Fp(b.convert_to<u32>(), p);
  }

 private:
  static u32 common(const Poly& a, const Poly& b) {
    if (a.p_ != b.p_) throw InvalidInput("polynomials over different fields");
    return a.p_;
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  u32 p_ = 2;
  std::vector<Fp> c_;
};

inline Poly poly_from_vec(std::span<const Fp> v, u32 p) { return Poly(std::vector<Fp>(v.begin(), v.end()), p); }

/// Determinant of a square matrix of polynomials by cofactor expansion.
inline Poly poly_determinant(const std::vector<std::vector<Poly>>& m, u32 p) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(Fp::one(p));
  if (n == 1) return m[0][0];
  Poly acc(p);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][j] * poly_determinant(minor, p);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace linkgrass
