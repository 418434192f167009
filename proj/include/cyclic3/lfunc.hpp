#pragma once

// Splitting of rational primes in K_D and the coefficients lambda_D(p^m) of
// -L_D'/L_D, under the Kummer criterion or the simplified character chi_p.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "cyclic3/classify.hpp"
#include "cyclic3/eisenstein.hpp"
#include "cyclic3/numerics.hpp"
#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

/// (e, f, g) with e*f*g = 3.
struct SplittingType {
  int e = 1;
  int f = 1;
  int g = 3;

  static constexpr SplittingType ramified() noexcept { return {3, 1, 1}; }
  static constexpr SplittingType split() noexcept { return {1, 1, 3}; }
  static constexpr SplittingType inert() noexcept { return {1, 3, 1}; }

  friend constexpr bool operator==(const SplittingType&, const SplittingType&) = default;
  friend std::ostream& operator<<(std::ostream& os, const SplittingType& t) {
    return os << "(" << t.e << "," << t.f << "," << t.g << ")";
  }
};

/**
 * Kummer: split iff (D1 D2^2 / P)_3 = 1.
 * PaperLiteral: split iff chi_p(D) = (D1 / P)_3 = 1.
 */
enum class LambdaMode { Kummer, PaperLiteral };

inline const char* to_string(LambdaMode m) { return m == LambdaMode::Kummer ? "kummer" : "paper"; }

/// Alternative fixed choices: the conjugate prime at p, and/or D1 and D2 exchanged.
struct RegistryVariant {
  bool conjugate_prime = false;
  bool swap_roles = false;
};

/// A label with its 3-split factorization resolved once.
struct FieldData {
  FieldLabel label;
  i64 D = 0;
  ThreeSplitFactorization factorization;
};

inline FieldData field_data(const FieldLabel& l, const PrimeRegistry& registry = default_registry()) {
  return {l, l.D(), three_split_factorization(l, registry)};
}

namespace detail {

inline PrimeAbove symbol_prime(i64 p, const PrimeRegistry& registry, const RegistryVariant& v) {
  if (p == 3) throw DomainError("cubic symbol at p = 3 is not defined; see splitting_type");
  const PrimeAbove P = registry.prime(p);
  return v.conjugate_prime ? conjugate_prime(P) : P;
}

inline std::pair<EisensteinInteger, EisensteinInteger> roles(const FieldData& fd, const RegistryVariant& v) {
  const auto& f = fd.factorization;
  return v.swap_roles ? std::pair{f.D2, f.D1} : std::pair{f.D1, f.D2};
}

}  // namespace detail

/// (D1 D2^2 / P)_3 for the registry prime P above p != 3.
inline CubicSymbol kummer_symbol(i64 p, const FieldData& fd, const PrimeRegistry& registry = default_registry(),
                                 const RegistryVariant& variant = {}) {
  const PrimeAbove P = detail::symbol_prime(p, registry, variant);
  const auto [d1, d2] = detail::roles(fd, variant);
  const ResidueMap rm(P);
  const ResidueElement r2 = rm.reduce(d2);
  return cubic_symbol_of_residue(rm, rm.mul(rm.reduce(d1), rm.mul(r2, r2)));
}

inline CubicSymbol kummer_symbol(i64 p, const FieldLabel& l, const PrimeRegistry& registry = default_registry()) {
  return kummer_symbol(p, field_data(l, registry), registry);
}

/// chi_p(D) = (D1 / P)_3.
inline CubicSymbol paper_chi(i64 p, const FieldData& fd, const PrimeRegistry& registry = default_registry(),
                             const RegistryVariant& variant = {}) {
  const PrimeAbove P = detail::symbol_prime(p, registry, variant);
  return cubic_residue_symbol(detail::roles(fd, variant).first, P);
}

inline CubicSymbol paper_chi(i64 p, const FieldLabel& l, const PrimeRegistry& registry = default_registry()) {
  return paper_chi(p, field_data(l, registry), registry);
}

/**
 * Splitting of p in K_D. Primes dividing D ramify. At p = 3 (with 3 not
 * dividing D) every element counts as a cube, so 3 is taken to split, in
 * both modes.
 */
inline SplittingType splitting_type(i64 p, const FieldData& fd, LambdaMode mode,
                                    const PrimeRegistry& registry = default_registry(),
                                    const RegistryVariant& variant = {}) {
  if (fd.D % p == 0) return SplittingType::ramified();
  if (p == 3) return SplittingType::split();
  const CubicSymbol s = mode == LambdaMode::Kummer ? kummer_symbol(p, fd, registry, variant)
                                                   : paper_chi(p, fd, registry, variant);
  if (s.is_zero()) return SplittingType::ramified();
  return s.is_one() ? SplittingType::split() : SplittingType::inert();
}

inline SplittingType splitting_type(i64 p, const FieldLabel& l, LambdaMode mode,
                                    const PrimeRegistry& registry = default_registry()) {
  return splitting_type(p, field_data(l, registry), mode, registry);
}

/// lambda(p^m) from the local factor of L_D: 0 ramified, 2 split, inert -1 unless 3 | m.
inline int lambda_from_splitting(const SplittingType& t, int m) {
  if (t == SplittingType::ramified()) return 0;
  if (t == SplittingType::split()) return 2;
  return m % 3 == 0 ? 2 : -1;
}

inline int lambda_coefficient(i64 p, int m, const FieldData& fd, LambdaMode mode,
                              const PrimeRegistry& registry = default_registry(), const RegistryVariant& variant = {}) {
  if (m < 1) throw DomainError("lambda_coefficient: m must be positive");
  return lambda_from_splitting(splitting_type(p, fd, mode, registry, variant), m);
}

inline int lambda_coefficient(i64 p, int m, const FieldLabel& l, LambdaMode mode,
                              const PrimeRegistry& registry = default_registry()) {
  return lambda_coefficient(p, m, field_data(l, registry), mode, registry);
}

/// log of the local Euler factor of L_D at p.
inline double log_local_factor(const SplittingType& t, double p, double s) {
  const double x = std::pow(p, -s);
  if (t == SplittingType::split()) return -2.0 * std::log1p(-x);
  if (t == SplittingType::inert()) return -std::log1p(x + x * x);
  return 0.0;
}

/// Euler product of L_D(s) truncated to primes <= P0.
inline double euler_value(double s, const FieldLabel& l, i64 P0, LambdaMode mode = LambdaMode::Kummer,
                          const PrimeRegistry& registry = default_registry()) {
  if (s < 1.2) throw DomainError("euler_value: s must be at least 1.2");
  if (P0 > 10'000'000) throw DomainError("euler_value: P0 must be at most 1e7");
  const FieldData fd = field_data(l, registry);
  CompensatedSum sum;
  for (i64 p : primes_up_to(P0)) sum += log_local_factor(splitting_type(p, fd, mode, registry), static_cast<double>(p), s);
  return std::exp(sum.value());
}

}  // namespace cyclic3
