#pragma once

// Exact arithmetic in the Eisenstein integers Z[w], w^2 + w + 1 = 0,
// the canonical prime registry, residue fields and cubic residue symbols.

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

/**
 * An element a + b*w of Z[w] in the basis {1, w}.
 *
 * Coefficients are 64-bit; every operation computes in 128 bits and throws
 * ArithmeticOverflow if the result does not fit.
 */
class EisensteinInteger {
 public:
  constexpr EisensteinInteger() noexcept = default;
  constexpr EisensteinInteger(i64 a, i64 b = 0) noexcept : a_(a), b_(b) {}  // NOLINT

  static constexpr EisensteinInteger omega() noexcept { return {0, 1}; }
  static constexpr EisensteinInteger omega_squared() noexcept { return {-1, -1}; }
  /// lambda = 1 - w, the prime above 3.
  static constexpr EisensteinInteger lambda() noexcept { return {1, -1}; }

  constexpr i64 a() const noexcept { return a_; }
  constexpr i64 b() const noexcept { return b_; }

  constexpr bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

  /// a^2 - ab + b^2.
  i64 norm() const {
    const i128 a = a_;
    const i128 b = b_;
    return detail::narrow(a * a - a * b + b * b, "norm");
  }

  /// x + sigma(x) = 2a - b.
  i64 trace() const { return detail::narrow(2 * static_cast<i128>(a_) - b_, "trace"); }

  /// The Galois conjugate sigma(a + b w) = (a - b) - b w.
  EisensteinInteger conjugate() const {
    return {detail::sub(a_, b_), detail::narrow(-static_cast<i128>(b_), "conjugate")};
  }

  bool is_unit() const { return !is_zero() && norm() == 1; }

  friend EisensteinInteger operator+(const EisensteinInteger& x, const EisensteinInteger& y) {
    return {detail::add(x.a_, y.a_), detail::add(x.b_, y.b_)};
  }
  friend EisensteinInteger operator-(const EisensteinInteger& x, const EisensteinInteger& y) {
    return {detail::sub(x.a_, y.a_), detail::sub(x.b_, y.b_)};
  }
  friend EisensteinInteger operator-(const EisensteinInteger& x) { return EisensteinInteger{} - x; }
  friend EisensteinInteger operator*(const EisensteinInteger& x, const EisensteinInteger& y) {
    const i128 a = x.a_, b = x.b_, c = y.a_, d = y.b_;
    return {detail::narrow(a * c - b * d, "mul"), detail::narrow(a * d + b * c - b * d, "mul")};
  }
  EisensteinInteger& operator+=(const EisensteinInteger& y) { return *this = *this + y; }
  EisensteinInteger& operator*=(const EisensteinInteger& y) { return *this = *this * y; }

  friend constexpr bool operator==(const EisensteinInteger&, const EisensteinInteger&) = default;
  friend constexpr auto operator<=>(const EisensteinInteger&, const EisensteinInteger&) = default;

  friend std::ostream& operator<<(std::ostream& os, const EisensteinInteger& z) {
    os << z.a_ << (z.b_ < 0 ? "-" : "+") << (z.b_ < 0 ? -z.b_ : z.b_) << "w";
    return os;
  }

 private:
  i64 a_ = 0;
  i64 b_ = 0;
};

inline EisensteinInteger pow(EisensteinInteger base, int exp) {
  EisensteinInteger r{1};
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

enum class ArithOp { Add, Mul, Conjugate };

/// Ring operation dispatcher; Conjugate ignores y.
inline EisensteinInteger arith(const EisensteinInteger& x, const EisensteinInteger& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return x + y;
    case ArithOp::Mul:
      return x * y;
    case ArithOp::Conjugate:
      return x.conjugate();
  }
  throw DomainError("arith: unknown op");
}

/// The six units, in the order 1, w, w^2, -1, -w, -w^2.
inline constexpr std::array<EisensteinInteger, 6> kUnits = {
    EisensteinInteger{1, 0},  EisensteinInteger{0, 1},  EisensteinInteger{-1, -1},
    EisensteinInteger{-1, 0}, EisensteinInteger{0, -1}, EisensteinInteger{1, 1}};

struct DivMod {
  EisensteinInteger quotient;
  EisensteinInteger remainder;
};

namespace detail {

// Nearest integer to num/den (den > 0), ties toward +infinity.
inline i128 round_div(i128 num, i128 den) {
  i128 twice = 2 * num + den;
  i128 q = twice / (2 * den);
  if (twice % (2 * den) != 0 && twice < 0) --q;
  return q;
}

}  // namespace detail

/// Euclidean division with N(remainder) < N(divisor).
inline DivMod divmod(const EisensteinInteger& x, const EisensteinInteger& y) {
  if (y.is_zero()) throw DomainError("divmod: division by zero");
  const i128 n = y.norm();
  const EisensteinInteger yc = y.conjugate();
  // x * conj(y) in 128 bits; exact quotient would be that / N(y).
  const i128 a = x.a(), b = x.b(), c = yc.a(), d = yc.b();
  const i128 re = a * c - b * d;
  const i128 im = a * d + b * c - b * d;
  const EisensteinInteger q{detail::narrow(detail::round_div(re, n), "divmod"),
                            detail::narrow(detail::round_div(im, n), "divmod")};
  return {q, x - q * y};
}

inline bool divides(const EisensteinInteger& d, const EisensteinInteger& x) {
  if (d.is_zero()) return x.is_zero();
  return divmod(x, d).remainder.is_zero();
}

/// Exact quotient; throws if d does not divide x.
inline EisensteinInteger exact_div(const EisensteinInteger& x, const EisensteinInteger& d) {
  DivMod r = divmod(x, d);
  if (!r.remainder.is_zero()) throw DomainError("exact_div: not divisible");
  return r.quotient;
}

inline bool divisible_by_lambda(const EisensteinInteger& z) { return detail::mod(detail::add(z.a(), z.b()), 3) == 0; }

/// Exponent of lambda = 1 - w in z (z nonzero).
inline int lambda_valuation(EisensteinInteger z) {
  if (z.is_zero()) throw DomainError("lambda_valuation: zero");
  int v = 0;
  while (divisible_by_lambda(z)) {
    z = exact_div(z, EisensteinInteger::lambda());
    ++v;
  }
  return v;
}

struct PrimaryDecomposition {
  EisensteinInteger unit;
  EisensteinInteger primary;
};

/// The unique associate with a = 2, b = 0 (mod 3), and the unit with unit * primary = z.
inline PrimaryDecomposition primary_associate(const EisensteinInteger& z) {
  if (z.is_zero() || divisible_by_lambda(z)) {
    throw DomainError("primary_associate: argument divisible by 1-w has no primary associate");
  }
  for (const EisensteinInteger& u : kUnits) {
    const EisensteinInteger c = u * z;
    if (detail::mod(c.a(), 3) == 2 && detail::mod(c.b(), 3) == 0) {
      return {u.conjugate(), c};  // u is a unit, so u^{-1} = conj(u)
    }
  }
  throw std::logic_error("primary_associate: no primary associate found");
}

/**
 * Deterministic representative of the associate class of z:
 * 0 for 0, 1 for units, otherwise (1-w)^k * primary(z / (1-w)^k).
 */
inline EisensteinInteger canonical_associate(EisensteinInteger z) {
  if (z.is_zero()) return z;
  int k = 0;
  while (divisible_by_lambda(z)) {
    z = exact_div(z, EisensteinInteger::lambda());
    ++k;
  }
  EisensteinInteger rest = z.is_unit() ? EisensteinInteger{1} : primary_associate(z).primary;
  return pow(EisensteinInteger::lambda(), k) * rest;
}

inline bool associated(const EisensteinInteger& x, const EisensteinInteger& y) {
  return canonical_associate(x) == canonical_associate(y);
}

/// gcd normalized by canonical_associate.
inline EisensteinInteger euclidean_gcd(EisensteinInteger x, EisensteinInteger y) {
  if (x.is_zero() && y.is_zero()) throw DomainError("euclidean_gcd: both arguments are zero");
  while (!y.is_zero()) {
    EisensteinInteger r = divmod(x, y).remainder;
    x = y;
    y = r;
  }
  return canonical_associate(x);
}

// ---------------------------------------------------------------------------
// Cubic residue symbol values.

/// Zero, or w^k with k in {0, 1, 2}.
class CubicSymbol {
 public:
  static constexpr CubicSymbol zero() noexcept { return CubicSymbol{true, 0}; }
  static constexpr CubicSymbol omega_pow(int k) noexcept {
    return CubicSymbol{false, static_cast<std::uint8_t>(((k % 3) + 3) % 3)};
  }
  static constexpr CubicSymbol one() noexcept { return omega_pow(0); }

  constexpr bool is_zero() const noexcept { return zero_; }
  constexpr bool is_one() const noexcept { return !zero_ && k_ == 0; }
  /// Exponent k; meaningless for Zero.
  constexpr int exponent() const noexcept { return k_; }

  constexpr CubicSymbol squared() const noexcept { return *this * *this; }
  constexpr CubicSymbol conjugate() const noexcept { return zero_ ? *this : omega_pow(3 - k_); }

  /// chi + chi^2 (= chi + conj chi): 2 for w^0, -1 for w^1 and w^2, 0 for Zero.
  constexpr int trace() const noexcept { return zero_ ? 0 : (k_ == 0 ? 2 : -1); }

  EisensteinInteger to_eisenstein() const noexcept {
    if (zero_) return {};
    return k_ == 0 ? EisensteinInteger{1} : (k_ == 1 ? EisensteinInteger::omega() : EisensteinInteger::omega_squared());
  }

  friend constexpr CubicSymbol operator*(CubicSymbol x, CubicSymbol y) noexcept {
    if (x.zero_ || y.zero_) return zero();
    return omega_pow(x.k_ + y.k_);
  }
  friend constexpr bool operator==(const CubicSymbol&, const CubicSymbol&) = default;

  friend std::ostream& operator<<(std::ostream& os, const CubicSymbol& s) {
    if (s.zero_) return os << "0";
    return os << "w^" << static_cast<int>(s.k_);
  }

 private:
  constexpr CubicSymbol(bool z, std::uint8_t k) noexcept : zero_(z), k_(k) {}
  bool zero_;
  std::uint8_t k_;
};

// ---------------------------------------------------------------------------
// Primes of Z[w].

enum class PrimeKind { Split, Inert, Ramified };

inline const char* to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::Split:
      return "split";
    case PrimeKind::Inert:
      return "inert";
    case PrimeKind::Ramified:
      return "ramified";
  }
  return "?";
}

struct PrimeAbove {
  i64 p = 0;
  EisensteinInteger generator;
  int residue_degree = 0;
  PrimeKind kind = PrimeKind::Split;

  /// N(P) = p^residue_degree.
  i64 norm() const { return residue_degree == 1 ? p : detail::mul(p, p); }
  friend bool operator==(const PrimeAbove&, const PrimeAbove&) = default;
};

/**
 * Validate and wrap an arbitrary generator of a prime above p.
 * Accepts any associate of either prime above a split p.
 */
inline PrimeAbove make_prime_above(i64 p, const EisensteinInteger& generator) {
  if (!is_prime(p)) throw DomainError("make_prime_above: " + std::to_string(p) + " is not prime");
  const i64 n = generator.norm();
  if (p == 3) {
    if (n != 3) throw DomainError("make_prime_above: generator does not lie above 3");
    return {p, generator, 1, PrimeKind::Ramified};
  }
  if (p % 3 == 1) {
    if (n != p) throw DomainError("make_prime_above: generator norm differs from p");
    return {p, generator, 1, PrimeKind::Split};
  }
  if (!associated(generator, EisensteinInteger{p})) {
    throw DomainError("make_prime_above: inert prime must be generated by an associate of p");
  }
  return {p, generator, 2, PrimeKind::Inert};
}

/**
 * Canonical prime above p.
 *
 * p = 3: 1 - w.  p = 2 mod 3: p itself.  p = 1 mod 3: of the two primary
 * generators of norm p (conjugates of each other), the one with positive
 * w-coefficient.
 */
inline PrimeAbove prime_above(i64 p) {
  if (!is_prime(p)) throw DomainError("prime_above: " + std::to_string(p) + " is not prime");
  if (p == 3) return {3, EisensteinInteger::lambda(), 1, PrimeKind::Ramified};
  if (p % 3 == 2) return {p, EisensteinInteger{p}, 2, PrimeKind::Inert};
  // A nontrivial cube root of unity r mod p; (p, w - r) is a prime ideal.
  const u64 up = static_cast<u64>(p);
  u64 r = 1;
  for (u64 g = 2; r == 1; ++g) r = powmod(g, (up - 1) / 3, up);
  const EisensteinInteger pi = euclidean_gcd(EisensteinInteger{p}, EisensteinInteger{-static_cast<i64>(r), 1});
  if (pi.norm() != p) throw std::logic_error("prime_above: norm equation failed");
  const EisensteinInteger primary = primary_associate(pi).primary;
  const EisensteinInteger other = primary.conjugate();  // still primary
  return {p, primary.b() > 0 ? primary : other, 1, PrimeKind::Split};
}

/// The Galois-conjugate prime (equal to P when p is inert or ramified, up to associates).
inline PrimeAbove conjugate_prime(const PrimeAbove& P) {
  PrimeAbove q = P;
  q.generator = P.generator.conjugate();
  return q;
}

// ---------------------------------------------------------------------------
// Residue fields O/P.

/// Element of O/P: x + y*w with coordinates mod p (y = 0 when N(P) = p).
struct ResidueElement {
  u64 x = 0;
  u64 y = 0;
  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

/**
 * Reduction O -> O/P.
 *
 * Degree 1: w maps to the root r of x^2 + x + 1 (mod p) with generator(r) = 0.
 * Degree 2: O/P is F_p[w]/(w^2 + w + 1), elements are coordinate pairs mod p.
 */
class ResidueMap {
 public:
  explicit ResidueMap(const PrimeAbove& P) : p_(static_cast<u64>(P.p)), degree_(P.residue_degree) {
    if (P.kind == PrimeKind::Ramified) {
      // O/(1-w) = F_3 with w -> 1.
      omega_image_ = 1;
      degree_ = 1;
      return;
    }
    if (degree_ == 1) {
      const i64 c = detail::mod(P.generator.a(), P.p);
      const i64 d = detail::mod(P.generator.b(), P.p);
      if (d == 0) throw DomainError("ResidueMap: degenerate generator");
      omega_image_ = mulmod(static_cast<u64>(P.p - c) % p_, invmod(static_cast<u64>(d), p_), p_);
    }
  }

  u64 modulus() const noexcept { return p_; }
  int degree() const noexcept { return degree_; }
  /// Image of w (degree 1 only).
  u64 omega_image() const noexcept { return omega_image_; }

  ResidueElement reduce(const EisensteinInteger& z) const {
    const i64 p = static_cast<i64>(p_);
    const u64 x = static_cast<u64>(detail::mod(z.a(), p));
    const u64 y = static_cast<u64>(detail::mod(z.b(), p));
    if (degree_ == 1) return {(x + mulmod(y, omega_image_, p_)) % p_, 0};
    return {x, y};
  }

  ResidueElement mul(const ResidueElement& u, const ResidueElement& v) const {
    if (degree_ == 1) return {mulmod(u.x, v.x, p_), 0};
    const u64 xx = mulmod(u.x, v.x, p_);
    const u64 yy = mulmod(u.y, v.y, p_);
    const u64 xy = (mulmod(u.x, v.y, p_) + mulmod(u.y, v.x, p_)) % p_;
    return {(xx + p_ - yy) % p_, (xy + p_ - yy) % p_};
  }

  ResidueElement pow(ResidueElement base, u64 exp) const {
    ResidueElement r{1 % p_, 0};
    while (exp > 0) {
      if (exp & 1U) r = mul(r, base);
      base = mul(base, base);
      exp >>= 1U;
    }
    return r;
  }

  static bool is_zero(const ResidueElement& e) noexcept { return e.x == 0 && e.y == 0; }

 private:
  u64 p_;
  int degree_;
  u64 omega_image_ = 0;
};

inline ResidueMap residue_map(const PrimeAbove& P) { return ResidueMap(P); }

/// Symbol of an already-reduced element: Zero or the w^k congruent to r^((N(P)-1)/3).
inline CubicSymbol cubic_symbol_of_residue(const ResidueMap& rm, const ResidueElement& r) {
  if (ResidueMap::is_zero(r)) return CubicSymbol::zero();
  const u64 p = rm.modulus();
  const u64 exponent = (rm.degree() == 1 ? p - 1 : p * p - 1) / 3;
  const ResidueElement t = rm.pow(r, exponent);
  for (int k = 0; k < 3; ++k) {
    if (rm.reduce(CubicSymbol::omega_pow(k).to_eisenstein()) == t) return CubicSymbol::omega_pow(k);
  }
  throw std::logic_error("cubic residue symbol: residue map is not a ring homomorphism (corrupt generator?)");
}

/**
 * Cubic residue symbol (a/P)_3: Zero if P | a, else the w^k congruent to
 * a^((N(P)-1)/3) mod P.
 */
inline CubicSymbol cubic_residue_symbol(const EisensteinInteger& a, const PrimeAbove& P) {
  if (P.kind == PrimeKind::Ramified) throw DomainError("cubic_residue_symbol: P above 3 is not supported");
  const ResidueMap rm(P);
  return cubic_symbol_of_residue(rm, rm.reduce(a));
}

// ---------------------------------------------------------------------------
// Prime registry.

/**
 * The fixed choice of prime above each rational prime.
 *
 * Defaults to prime_above(); individual entries can be replaced (any valid
 * generator of a prime above p) to study alternative choices. Immutable once
 * built, so safe to share across threads.
 */
class PrimeRegistry {
 public:
  PrimeRegistry() = default;

  PrimeAbove prime(i64 p) const {
    if (auto it = overrides_.find(p); it != overrides_.end()) return it->second;
    return prime_above(p);
  }

  /// Copy with the entry at p replaced by the given generator.
  PrimeRegistry with_generator(i64 p, const EisensteinInteger& generator) const {
    PrimeRegistry r = *this;
    r.overrides_[p] = make_prime_above(p, generator);
    return r;
  }

  /// Copy with the entry at p replaced by its Galois conjugate.
  PrimeRegistry with_conjugate_at(i64 p) const { return with_generator(p, prime(p).generator.conjugate()); }

  bool has_overrides() const noexcept { return !overrides_.empty(); }

 private:
  std::map<i64, PrimeAbove> overrides_;
};

inline const PrimeRegistry& default_registry() {
  static const PrimeRegistry registry;
  return registry;
}

}  // namespace cyclic3
