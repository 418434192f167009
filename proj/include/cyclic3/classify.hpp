#pragma once

// Cyclic cubic fields labelled by cube-free 3-split integers
// D = 3^e3 * d1 * d2^2: partners, conductors, defining polynomials and the
// family of fields with discriminant in [X, 2X].

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cyclic3/eisenstein.hpp"
#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

enum class LabelErrorKind { NotPositive, Not3Split, NotCubeFree, Trivial, Malformed };

class LabelError : public DomainError {
 public:
  LabelError(LabelErrorKind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  LabelErrorKind kind() const noexcept { return kind_; }

 private:
  LabelErrorKind kind_;
};

/// (e3, d1, d2) naming the field of D = 3^e3 * d1 * d2^2.
struct FieldLabel {
  int e3 = 0;
  i64 d1 = 1;
  i64 d2 = 1;

  i64 D() const { return detail::mul(detail::mul(ipow(3, e3), d1), detail::mul(d2, d2)); }
  friend constexpr bool operator==(const FieldLabel&, const FieldLabel&) = default;
  friend constexpr auto operator<=>(const FieldLabel&, const FieldLabel&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FieldLabel& l) {
    return os << "(" << l.e3 << "," << l.d1 << "," << l.d2 << ")";
  }
};

namespace detail {

inline bool split_prime(i64 q) { return q % 3 == 1; }

/// Squarefree, every prime factor = 1 mod 3 (so coprime to 3).
inline bool is_split_squarefree(i64 n) {
  if (n < 1) return false;
  for (const auto& [q, e] : factorize(n)) {
    if (e != 1 || !split_prime(q)) return false;
  }
  return true;
}

inline i64 gcd(i64 a, i64 b) {
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace detail

inline void validate(const FieldLabel& l) {
  if (l.e3 < 0 || l.e3 > 2) throw LabelError(LabelErrorKind::Malformed, "label: e3 must be 0, 1 or 2");
  if (!detail::is_split_squarefree(l.d1) || !detail::is_split_squarefree(l.d2)) {
    throw LabelError(LabelErrorKind::Malformed, "label: d1, d2 must be squarefree with prime factors = 1 mod 3");
  }
  if (detail::gcd(l.d1, l.d2) != 1) throw LabelError(LabelErrorKind::Malformed, "label: d1 and d2 must be coprime");
  if (l.e3 == 0 && l.d1 == 1 && l.d2 == 1) throw LabelError(LabelErrorKind::Trivial, "label: D = 1 is excluded");
}

/// Split D > 1 into (e3, d1, d2); rejects D with a prime = 2 mod 3 or a cube factor.
inline FieldLabel parse_label(i64 D) {
  if (D < 1) throw LabelError(LabelErrorKind::NotPositive, "parse_label: D must be positive");
  if (D == 1) throw LabelError(LabelErrorKind::Trivial, "parse_label: D = 1 is excluded");
  FieldLabel l{0, 1, 1};
  for (const auto& [q, e] : factorize(D)) {
    if (q != 3 && !detail::split_prime(q)) {
      throw LabelError(LabelErrorKind::Not3Split, "parse_label: " + std::to_string(D) + " has prime factor " +
                                                      std::to_string(q) + " = 2 mod 3");
    }
    if (e >= 3) {
      throw LabelError(LabelErrorKind::NotCubeFree,
                       "parse_label: " + std::to_string(D) + " is divisible by " + std::to_string(q) + "^3");
    }
    if (q == 3) {
      l.e3 = e;
    } else if (e == 1) {
      l.d1 *= q;
    } else {
      l.d2 *= q;
    }
  }
  return l;
}

/// sign * D1 * D2 = D with D2 = sigma(D1).
struct ThreeSplitFactorization {
  int sign = 1;
  EisensteinInteger D1;
  EisensteinInteger D2;
};

/**
 * D1 = (1-w)^e3 * prod pi_q^(v_q(d1 d2^2)) over registry primes pi_q,
 * D2 = sigma(D1). The sign is computed, and is +1 for registry primes.
 */
inline ThreeSplitFactorization three_split_factorization(const FieldLabel& l,
                                                         const PrimeRegistry& registry = default_registry()) {
  validate(l);
  EisensteinInteger d1 = pow(EisensteinInteger::lambda(), l.e3);
  for (const auto& [q, e] : factorize(l.d1)) d1 *= registry.prime(q).generator;
  for (const auto& [q, e] : factorize(l.d2)) d1 *= pow(registry.prime(q).generator, 2);
  const EisensteinInteger d2 = d1.conjugate();
  const EisensteinInteger prod = d1 * d2;
  const i64 D = l.D();
  if (prod.b() != 0 || (prod.a() != D && prod.a() != -D)) {
    throw std::logic_error("three_split_factorization: D1 * D2 != +-D");
  }
  return {prod.a() == D ? 1 : -1, d1, d2};
}

/// The other label of the same field: exponents doubled mod 3.
inline FieldLabel partner(const FieldLabel& l) { return {(2 * l.e3) % 3, l.d2, l.d1}; }

struct CanonicalLabel {
  FieldLabel label;
  bool canonical = false;  ///< whether the input was already the representative
};

/// Representative of {label, partner(label)} with the smaller D.
inline CanonicalLabel canonicalize(const FieldLabel& l) {
  const FieldLabel q = partner(l);
  if (l.D() <= q.D()) return {l, true};
  return {q, false};
}

struct ConductorDiscriminant {
  i64 conductor = 0;
  i64 discriminant = 0;
  friend bool operator==(const ConductorDiscriminant&, const ConductorDiscriminant&) = default;
};

/// f_D = 9^delta * d1 * d2 (delta = [e3 > 0]); discriminant = f_D^2.
inline ConductorDiscriminant conductor_discriminant(const FieldLabel& l) {
  const i64 f = detail::mul(detail::mul(l.e3 > 0 ? 9 : 1, l.d1), l.d2);
  return {f, detail::mul(f, f)};
}

/// Generator u + v of the field, u^3 = D1 D2^2, v^3 = D1^2 D2, root of x^3 - 3A x - B.
struct DefiningPolynomial {
  i64 A = 0;
  i64 B = 0;

  /// 4A^3 - B^2 (the polynomial discriminant is 27 times this).
  i128 reduced_discriminant() const {
    const i128 a = A;
    const i128 b = B;
    return 4 * a * a * a - b * b;
  }
  friend bool operator==(const DefiningPolynomial&, const DefiningPolynomial&) = default;
};

inline DefiningPolynomial defining_polynomial(const FieldLabel& l, const PrimeRegistry& registry = default_registry()) {
  const ThreeSplitFactorization f = three_split_factorization(l, registry);
  const i64 D = l.D();
  // uv = D1 D2 = sign * D;  u^3 + v^3 = D1 D2 (D1 + D2) = sign * D * trace(D1).
  const i64 uv = f.sign * D;
  return {uv, detail::mul(uv, f.D1.trace())};
}

struct FieldRecord {
  FieldLabel label;
  i64 D = 0;
  i64 conductor = 0;
  i64 discriminant = 0;
  i64 polyA = 0;
  i64 polyB = 0;
  bool canonical = true;
  friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

inline FieldRecord make_record(const FieldLabel& l, const PrimeRegistry& registry = default_registry()) {
  const ConductorDiscriminant cd = conductor_discriminant(l);
  const DefiningPolynomial poly = defining_polynomial(l, registry);
  return {l, l.D(), cd.conductor, cd.discriminant, poly.A, poly.B, canonicalize(l).canonical};
}

/// Sort key used for every family-level reduction.
inline bool record_order(const FieldRecord& x, const FieldRecord& y) {
  return x.conductor != y.conductor ? x.conductor < y.conductor : x.D < y.D;
}

namespace detail {

// Every label whose conductor is 9^delta * n, for the squarefree split n
// with prime factors `qs`.
template <class Fn>
void for_each_label_of(const std::vector<i64>& qs, bool with_three, Fn&& fn) {
  const std::size_t k = qs.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    i64 d1 = 1;
    i64 d2 = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        d2 *= qs[i];
      } else {
        d1 *= qs[i];
      }
    }
    if (with_three) {
      fn(FieldLabel{1, d1, d2});
      fn(FieldLabel{2, d1, d2});
    } else if (d1 * d2 > 1) {
      fn(FieldLabel{0, d1, d2});
    }
  }
}

// Calls fn(label) for every label (canonical or not) with conductor in [lo, hi].
template <class Fn>
void for_each_label_in_conductor_range(i64 lo, i64 hi, Fn&& fn) {
  if (hi < lo || hi < 2) return;
  const std::vector<std::int32_t> spf = smallest_prime_factors(hi);
  std::vector<i64> qs;
  auto split_factors = [&](i64 n) -> bool {
    qs.clear();
    while (n > 1) {
      const i64 q = spf[static_cast<std::size_t>(n)];
      n /= q;
      if (q % 3 != 1 || n % q == 0) return false;
      qs.push_back(q);
    }
    return true;
  };
  for (i64 f = std::max<i64>(lo, 2); f <= hi; ++f) {
    if (f % 3 != 0) {
      if (split_factors(f)) for_each_label_of(qs, false, fn);
    } else if (f % 9 == 0 && (f / 9) % 3 != 0) {
      if (split_factors(f / 9)) for_each_label_of(qs, true, fn);
    }
  }
}

inline i64 isqrt(i64 n) {
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// All labels (both members of each partner pair) with conductor <= max_conductor, sorted.
inline std::vector<FieldLabel> labels_up_to_conductor(i64 max_conductor) {
  std::vector<FieldLabel> out;
  detail::for_each_label_in_conductor_range(2, max_conductor, [&](const FieldLabel& l) { out.push_back(l); });
  std::sort(out.begin(), out.end(), [](const FieldLabel& x, const FieldLabel& y) {
    const i64 fx = conductor_discriminant(x).conductor, fy = conductor_discriminant(y).conductor;
    return fx != fy ? fx < fy : x.D() < y.D();
  });
  return out;
}

/// Canonical labels only, sorted by (conductor, D).
inline std::vector<FieldLabel> canonical_labels_up_to_conductor(i64 max_conductor) {
  std::vector<FieldLabel> out;
  for (const FieldLabel& l : labels_up_to_conductor(max_conductor)) {
    if (canonicalize(l).canonical) out.push_back(l);
  }
  return out;
}

/**
 * The family F_3(X): one canonical record per cyclic cubic field with
 * X <= discriminant <= 2X, sorted by (conductor, D).
 */
inline std::vector<FieldRecord> enumerate_family(i64 X, const PrimeRegistry& registry = default_registry()) {
  if (X < 2) throw DomainError("enumerate_family: X must be at least 2");
  const i64 lo_sq = detail::isqrt(X - 1) + 1;  // smallest f with f^2 >= X
  const i64 hi_sq = detail::isqrt(detail::mul(2, X));
  std::vector<FieldRecord> out;
  detail::for_each_label_in_conductor_range(lo_sq, hi_sq, [&](const FieldLabel& l) {
    if (canonicalize(l).canonical) out.push_back(make_record(l, registry));
  });
  std::sort(out.begin(), out.end(), record_order);
  return out;
}

}  // namespace cyclic3
