#pragma once

// Rational-integer helpers: checked 64-bit arithmetic, modular powers,
// deterministic primality, sieving and trial-division factorization.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclic3 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised whenever a 64-bit coefficient would overflow. Never wrapped.
class ArithmeticOverflow : public std::overflow_error {
 public:
  explicit ArithmeticOverflow(const std::string& what)
      : std::overflow_error("arithmetic overflow: " + what) {}
};

/// Raised for inputs outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline i64 narrow(i128 v, const char* where) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
    throw ArithmeticOverflow(where);
  }
  return static_cast<i64>(v);
}

inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("add");
  return r;
}

inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("sub");
  return r;
}

inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("mul");
  return r;
}

/// Floor division (rounds toward negative infinity).
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least non-negative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Modular inverse of a mod m (m prime, a not divisible by m).
inline u64 invmod(u64 a, u64 m) { return powmod(a, m - 2, m); }

/// Deterministic Miller-Rabin; exact for all 64-bit inputs.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  const u64 un = static_cast<u64>(n);
  u64 d = un - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, un);
      if (x == un - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// All primes <= limit, increasing.
inline std::vector<i64> primes_up_to(i64 limit) {
  std::vector<i64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (i64 i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    if (i <= limit / i) {
      for (i64 j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
  }
  return out;
}

/// Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0).
inline std::vector<std::int32_t> smallest_prime_factors(i64 limit) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (i64 i = 2; i <= limit; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (i64 j = i; j <= limit; j += i) {
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
    }
  }
  return spf;
}

using Factorization = std::vector<std::pair<i64, int>>;

/// Trial-division factorization, prime factors increasing. n >= 1.
inline Factorization factorize(i64 n) {
  if (n < 1) throw DomainError("factorize: n must be positive");
  Factorization f;
  for (i64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

/// Integer power with overflow detection.
inline i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = detail::mul(r, base);
  return r;
}

}  // namespace cyclic3
