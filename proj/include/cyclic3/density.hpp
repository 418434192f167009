#pragma once

// One-level density of the zeros of L_D through the explicit formula, its
// family average over F_3(X), the Katz-Sarnak reference predictions and the
// nearest-prediction symmetry classifier.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cyclic3/classify.hpp"
#include "cyclic3/lfunc.hpp"
#include "cyclic3/numerics.hpp"
#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

// ---------------------------------------------------------------------------
// Test functions.

/// weight * (sin(pi beta x) / (pi beta x))^2.
struct FejerAtom {
  double weight = 1.0;
  double beta = 0.2;
};

/**
 * An even test function f with compactly supported transform
 * fhat(u) = int f(x) exp(-2 pi i x u) dx, held as a finite linear
 * combination of Fejer kernels so that f, fhat and the large-|x| shape of f
 * are all available in closed form.
 */
class TestFunctionPair {
 public:
  TestFunctionPair() = default;
  explicit TestFunctionPair(std::vector<FejerAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("TestFunctionPair: no atoms");
    for (const FejerAtom& a : atoms_) {
      if (!(a.beta > 0.0 && a.beta < 1.0)) throw DomainError("TestFunctionPair: beta must lie in (0, 1)");
      if (!std::isfinite(a.weight)) throw DomainError("TestFunctionPair: non-finite weight");
    }
    for (const FejerAtom& a : atoms_) beta_ = std::max(beta_, a.beta);
    f0_ = f(0.0);
    fhat0_ = fhat(0.0);
  }

  /// Support radius of fhat.
  double beta() const noexcept { return beta_; }
  double f_at_0() const noexcept { return f0_; }
  double fhat_at_0() const noexcept { return fhat0_; }
  const std::vector<FejerAtom>& atoms() const noexcept { return atoms_; }

  double f(double x) const {
    CompensatedSum s;
    for (const FejerAtom& a : atoms_) s += a.weight * sinc_squared(std::numbers::pi * a.beta * x);
    return s.value();
  }

  double fhat(double u) const {
    CompensatedSum s;
    for (const FejerAtom& a : atoms_) s += a.weight * std::max(0.0, 1.0 - std::fabs(u) / a.beta) / a.beta;
    return s.value();
  }

  /// int_{-c}^{c} fhat.
  double fhat_integral(double c) const {
    CompensatedSum s;
    for (const FejerAtom& a : atoms_) {
      const double m = std::min(std::fabs(c), a.beta);
      s += a.weight * (2.0 / a.beta) * (m - m * m / (2.0 * a.beta));
    }
    return s.value();
  }

  TestFunctionPair scaled(double k) const {
    std::vector<FejerAtom> out = atoms_;
    for (FejerAtom& a : out) a.weight *= k;
    return TestFunctionPair(std::move(out));
  }

  friend TestFunctionPair operator+(const TestFunctionPair& x, const TestFunctionPair& y) {
    std::vector<FejerAtom> out = x.atoms_;
    out.insert(out.end(), y.atoms_.begin(), y.atoms_.end());
    return TestFunctionPair(std::move(out));
  }

 private:
  static double sinc_squared(double t) {
    if (std::fabs(t) < 1e-4) {
      const double t2 = t * t;
      return 1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0;
    }
    const double s = std::sin(t) / t;
    return s * s;
  }

  std::vector<FejerAtom> atoms_;
  double beta_ = 0.0;
  double f0_ = 0.0;
  double fhat0_ = 0.0;
};

inline TestFunctionPair fejer_pair(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("fejer_pair: beta must lie in (0, 1)");
  return TestFunctionPair({FejerAtom{1.0, beta}});
}

namespace detail {

// int_Y^inf cos(k y) g(y) dy for smooth slowly decaying g, from two
// integrations by parts.
inline double oscillatory_tail(double k, double Y, double g, double dg) {
  return -std::sin(k * Y) * g / k - std::cos(k * Y) * dg / (k * k);
}

// int_Y^inf of a single Fejer kernel, written as c (1 - cos(k y)) / y^2.
inline double fejer_tail(const FejerAtom& a, double Y) {
  const double k = 2.0 * std::numbers::pi * a.beta;
  const double c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * a.beta * a.beta);
  return a.weight * c * (1.0 / Y - oscillatory_tail(k, Y, 1.0 / (Y * Y), -2.0 / (Y * Y * Y)));
}

}  // namespace detail

/// int_{-inf}^{inf} f by quadrature (independent of the closed form fhat(0)).
inline double integrate_f(const TestFunctionPair& tf, double Y = 2000.0) {
  const int panels = static_cast<int>(std::ceil(2.0 * Y * tf.beta()));
  const double body = integrate_adaptive([&](double y) { return tf.f(y); }, 0.0, Y, 1e-10, panels);
  CompensatedSum tail;
  for (const FejerAtom& a : tf.atoms()) tail += detail::fejer_tail(a, Y);
  return 2.0 * (body + tail.value());
}

// ---------------------------------------------------------------------------
// Katz-Sarnak kernels.

enum class KernelType { U, Sp, O, SOeven, SOodd };

inline constexpr std::array<KernelType, 5> kAllKernels = {KernelType::U, KernelType::Sp, KernelType::O,
                                                          KernelType::SOeven, KernelType::SOodd};

inline const char* to_string(KernelType k) {
  switch (k) {
    case KernelType::U: return "U";
    case KernelType::Sp: return "Sp";
    case KernelType::O: return "O";
    case KernelType::SOeven: return "SOeven";
    case KernelType::SOodd: return "SOodd";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, KernelType k) { return os << to_string(k); }

/// W(G)(t) = smooth(t) + mass * delta_0(t).
struct KernelValue {
  double smooth = 0.0;
  double mass = 0.0;
};

namespace detail {

inline double sine_ratio(double t) {
  const double x = 2.0 * std::numbers::pi * t;
  if (std::fabs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail

inline KernelValue kernel_value(KernelType G, double t) {
  const double s = detail::sine_ratio(t);
  switch (G) {
    case KernelType::U: return {1.0, 0.0};
    case KernelType::Sp: return {1.0 - s, 0.0};
    case KernelType::O: return {1.0, 0.5};
    case KernelType::SOeven: return {1.0 + s, 0.0};
    case KernelType::SOodd: return {1.0 - s, 1.0};
  }
  return {};
}

/// int f W(G), evaluated on the Fourier side.
inline double kernel_integral(KernelType G, const TestFunctionPair& tf) {
  const double h0 = tf.fhat_at_0();
  const double half = 0.5 * tf.fhat_integral(1.0);
  switch (G) {
    case KernelType::U: return h0;
    case KernelType::Sp: return h0 - half;
    case KernelType::O: return h0 + 0.5 * tf.f_at_0();
    case KernelType::SOeven: return h0 + half;
    case KernelType::SOodd: return h0 + tf.f_at_0() - half;
  }
  return 0.0;
}

/// int f W(G) by direct quadrature in t.
inline double kernel_integral_quadrature(KernelType G, const TestFunctionPair& tf, double Y = 2000.0) {
  const double whole = integrate_f(tf, Y);
  // int f(t) sin(2 pi t)/(2 pi t); the part beyond Y is below 1e-7.
  const int panels = static_cast<int>(std::ceil(2.0 * Y * std::max(1.0, tf.beta())));
  const double sine_part =
      2.0 * integrate_adaptive([&](double t) { return tf.f(t) * detail::sine_ratio(t); }, 0.0, Y, 1e-10, panels);
  const double mass = kernel_value(G, 0.0).mass * tf.f_at_0();
  switch (G) {
    case KernelType::U:
    case KernelType::O: return whole + mass;
    case KernelType::Sp:
    case KernelType::SOodd: return whole - sine_part + mass;
    case KernelType::SOeven: return whole + sine_part + mass;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Explicit formula.

/// 2 Re Psi_R(1/2 + ix) + Re Psi_R(3/2 + ix) doubled over x and -x, Psi_R = Gamma_R'/Gamma_R.
inline double archimedean_weight(double x) {
  const double z = 0.5 * x;
  return -3.0 * std::log(std::numbers::pi) + 2.0 * digamma(std::complex<double>(0.25, z)).real() +
         digamma(std::complex<double>(0.75, z)).real();
}

namespace detail {

// 2 int_0^inf f_atom(y) B(y / L) dy for one Fejer atom.
inline double gamma_integral_atom(const FejerAtom& a, double L) {
  const double beta = a.beta;
  const double Y = 50.0 / beta;
  const double k = 2.0 * std::numbers::pi * beta;
  const double c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * beta * beta);
  const TestFunctionPair single({FejerAtom{1.0, beta}});

  const double body =
      integrate_adaptive([&](double y) { return single.f(y) * archimedean_weight(y / L); }, 0.0, Y, 2e-11 / beta, 100);

  // Beyond Y: f = c (1 - cos(k y)) / y^2 exactly.
  auto g = [&](double y) { return archimedean_weight(y / L) / (y * y); };
  const double smooth =
      integrate_adaptive([&](double v) { return archimedean_weight(Y * std::exp(v) / L) / (Y * std::exp(v)); }, 0.0,
                         60.0, 1e-12, 60);
  const double h = 1e-3 * Y;
  const double dg = (g(Y + h) - g(Y - h)) / (2.0 * h);
  const double tail = c * (smooth - oscillatory_tail(k, Y, g(Y), dg));
  return 2.0 * a.weight * (body + tail);
}

}  // namespace detail

/// C~_f(D) = (1 / log Delta) int f(y) B(2 pi y / log Delta) dy for the given discriminant.
inline double gamma_term_for_discriminant(double discriminant, const TestFunctionPair& tf) {
  if (!(discriminant > 1.0)) throw DomainError("gamma_term: discriminant must exceed 1");
  const double logd = std::log(discriminant);
  const double L = logd / (2.0 * std::numbers::pi);
  CompensatedSum s;
  for (const FejerAtom& a : tf.atoms()) s += detail::gamma_integral_atom(a, L);
  return s.value() / logd;
}

inline double gamma_term(const FieldLabel& l, const TestFunctionPair& tf) {
  validate(l);
  return gamma_term_for_discriminant(static_cast<double>(conductor_discriminant(l).discriminant), tf);
}

/// One summand of the prime sum.
struct PrimeTerm {
  i64 prime_power = 0;
  i64 p = 0;
  int m = 0;
  int lambda = 0;
  double value = 0.0;  ///< (2 / log Delta) lambda log p p^(-m/2) fhat(m log p / log Delta)
};

/// Prime powers p^m with m log p < beta log Delta, increasing.
inline std::vector<std::pair<i64, int>> prime_powers_below(double log_bound, std::span<const i64> primes) {
  std::vector<std::pair<i64, int>> out;
  for (i64 p : primes) {
    const double lp = std::log(static_cast<double>(p));
    if (lp >= log_bound) break;
    for (int m = 1; m * lp < log_bound; ++m) out.emplace_back(p, m);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return ipow(x.first, x.second) < ipow(y.first, y.second);
  });
  return out;
}

namespace detail {

inline std::vector<i64> primes_for_support(double log_discriminant, double beta) {
  return primes_up_to(static_cast<i64>(std::ceil(std::exp(beta * log_discriminant))) + 1);
}

}  // namespace detail

inline std::vector<PrimeTerm> prime_sum_terms(const FieldData& fd, const TestFunctionPair& tf, LambdaMode mode,
                                              const PrimeRegistry& registry, std::span<const i64> primes) {
  const double logd = std::log(static_cast<double>(conductor_discriminant(fd.label).discriminant));
  std::vector<PrimeTerm> out;
  for (const auto& [p, m] : prime_powers_below(tf.beta() * logd, primes)) {
    const double lp = std::log(static_cast<double>(p));
    const int lam = lambda_coefficient(p, m, fd, mode, registry);
    const double v = 2.0 / logd * lam * lp * std::pow(static_cast<double>(p), -0.5 * m) * tf.fhat(m * lp / logd);
    out.push_back({ipow(p, m), p, m, lam, v});
  }
  return out;
}

inline std::vector<PrimeTerm> prime_sum_terms(const FieldLabel& l, const TestFunctionPair& tf, LambdaMode mode,
                                              const PrimeRegistry& registry = default_registry()) {
  const FieldData fd = field_data(l, registry);
  const double logd = std::log(static_cast<double>(conductor_discriminant(l).discriminant));
  const std::vector<i64> primes = detail::primes_for_support(logd, tf.beta());
  return prime_sum_terms(fd, tf, mode, registry, primes);
}

inline double sum_terms(const std::vector<PrimeTerm>& terms) {
  CompensatedSum s;
  for (const PrimeTerm& t : terms) s += t.value;
  return s.value();
}

inline double prime_sum(const FieldLabel& l, const TestFunctionPair& tf, LambdaMode mode,
                        const PrimeRegistry& registry = default_registry()) {
  return sum_terms(prime_sum_terms(l, tf, mode, registry));
}

struct DensityBreakdown {
  FieldLabel label;
  i64 conductor = 0;
  i64 discriminant = 0;
  double archimedean = 0.0;
  double gamma_term = 0.0;
  double prime_sum = 0.0;
  double total = 0.0;
};

inline DensityBreakdown make_breakdown(const FieldLabel& l, const ConductorDiscriminant& cd, double archimedean,
                                       double gamma, double primes) {
  return {l, cd.conductor, cd.discriminant, archimedean, gamma, primes, archimedean - primes + gamma};
}

inline DensityBreakdown one_level_density(const FieldLabel& l, const TestFunctionPair& tf, LambdaMode mode,
                                          const PrimeRegistry& registry = default_registry()) {
  const ConductorDiscriminant cd = conductor_discriminant(l);
  return make_breakdown(l, cd, tf.fhat_at_0(), gamma_term(l, tf), prime_sum(l, tf, mode, registry));
}

// ---------------------------------------------------------------------------
// Family level.

class EmptyFamily : public DomainError {
 public:
  using DomainError::DomainError;
};

struct FamilyAverage {
  double average = 0.0;     ///< mean total
  double T = 0.0;           ///< mean prime_sum
  double mean_gamma = 0.0;  ///< mean gamma_term
  double archimedean = 0.0;
  std::size_t count = 0;
  std::vector<DensityBreakdown> rows;  ///< sorted by (conductor, D)
};

namespace detail {

inline std::vector<FieldRecord> sorted_records(std::vector<FieldRecord> records) {
  std::sort(records.begin(), records.end(), record_order);
  return records;
}

}  // namespace detail

/// Family average over the given records (reduced in (conductor, D) order whatever the input order).
inline FamilyAverage family_average(std::vector<FieldRecord> records, const TestFunctionPair& tf, LambdaMode mode,
                                    const PrimeRegistry& registry = default_registry()) {
  if (records.empty()) throw EmptyFamily("family_average: the family is empty");
  records = detail::sorted_records(std::move(records));

  double max_logd = 0.0;
  for (const FieldRecord& r : records) max_logd = std::max(max_logd, std::log(static_cast<double>(r.discriminant)));
  const std::vector<i64> primes = detail::primes_for_support(max_logd, tf.beta());

  FamilyAverage out;
  std::map<i64, double> gamma_cache;
  CompensatedSum total, primesum, gamma;
  for (const FieldRecord& r : records) {
    auto it = gamma_cache.find(r.discriminant);
    if (it == gamma_cache.end()) {
      it = gamma_cache.emplace(r.discriminant, gamma_term_for_discriminant(static_cast<double>(r.discriminant), tf))
               .first;
    }
    const FieldData fd = field_data(r.label, registry);
    const double ps = sum_terms(prime_sum_terms(fd, tf, mode, registry, primes));
    const DensityBreakdown b =
        make_breakdown(r.label, {r.conductor, r.discriminant}, tf.fhat_at_0(), it->second, ps);
    total += b.total;
    primesum += b.prime_sum;
    gamma += b.gamma_term;
    out.rows.push_back(b);
  }
  const double n = static_cast<double>(records.size());
  out.count = records.size();
  out.average = total.value() / n;
  out.T = primesum.value() / n;
  out.mean_gamma = gamma.value() / n;
  out.archimedean = tf.fhat_at_0();
  return out;
}

inline FamilyAverage family_average(i64 X, const TestFunctionPair& tf, LambdaMode mode,
                                    const PrimeRegistry& registry = default_registry()) {
  std::vector<FieldRecord> records = enumerate_family(X, registry);
  if (records.empty()) throw EmptyFamily("family_average: F_3(" + std::to_string(X) + ") is empty");
  return family_average(std::move(records), tf, mode, registry);
}

/// sum over p^(2k) < Delta^beta of (2 log p / (p^k log Delta)) fhat(2k log p / log Delta).
inline double even_power_sum(double discriminant, const TestFunctionPair& tf, std::span<const i64> primes) {
  const double logd = std::log(discriminant);
  CompensatedSum s;
  for (const auto& [p, m] : prime_powers_below(tf.beta() * logd, primes)) {
    if (m % 2 != 0) continue;
    const double lp = std::log(static_cast<double>(p));
    s += 2.0 * lp / (std::pow(static_cast<double>(p), m / 2) * logd) * tf.fhat(m * lp / logd);
  }
  return s.value();
}

using ReferenceMap = std::map<KernelType, double>;

/// Predicted T for each symmetry type, with the family's own truncation.
inline ReferenceMap reference_statistics(std::vector<FieldRecord> records, const TestFunctionPair& tf) {
  if (records.empty()) throw EmptyFamily("reference_statistics: the family is empty");
  records = detail::sorted_records(std::move(records));
  double max_logd = 0.0;
  for (const FieldRecord& r : records) max_logd = std::max(max_logd, std::log(static_cast<double>(r.discriminant)));
  const std::vector<i64> primes = detail::primes_for_support(max_logd, tf.beta());
  CompensatedSum s;
  for (const FieldRecord& r : records) s += even_power_sum(static_cast<double>(r.discriminant), tf, primes);
  const double sp = s.value() / static_cast<double>(records.size());
  return {{KernelType::U, 0.0},
          {KernelType::Sp, sp},
          {KernelType::O, -sp},
          {KernelType::SOeven, -sp},
          {KernelType::SOodd, -sp}};
}

inline ReferenceMap reference_statistics(i64 X, const TestFunctionPair& tf) {
  return reference_statistics(enumerate_family(X), tf);
}

struct SymmetryVerdict {
  KernelType best = KernelType::U;
  /// |T - ref(best)| - |T - ref(runner-up)|, runner-up taken among predictions
  /// with a different value; never positive.
  double margin = 0.0;
  KernelType runner_up = KernelType::U;
  bool ambiguous = false;
  std::vector<KernelType> tied;  ///< kernels sharing the best prediction value
};

inline SymmetryVerdict classify_symmetry(double T, const ReferenceMap& refs) {
  if (refs.empty()) throw DomainError("classify_symmetry: no references");
  constexpr double kTie = 1e-12;
  SymmetryVerdict v;
  double best_d = INFINITY;
  for (KernelType k : kAllKernels) {
    auto it = refs.find(k);
    if (it == refs.end()) continue;
    const double d = std::fabs(T - it->second);
    if (d < best_d - kTie) {
      best_d = d;
      v.best = k;
    }
  }
  const double best_ref = refs.at(v.best);
  double second_d = INFINITY;
  for (const auto& [k, ref] : refs) {
    if (std::fabs(ref - best_ref) <= kTie) {
      v.tied.push_back(k);
      continue;
    }
    const double d = std::fabs(T - ref);
    if (d < second_d) {
      second_d = d;
      v.runner_up = k;
    }
  }
  if (std::isinf(second_d)) {
    v.margin = 0.0;
    v.ambiguous = true;
    return v;
  }
  v.margin = best_d - second_d;
  v.ambiguous = std::fabs(v.margin) < kTie;
  if (v.ambiguous && refs.count(KernelType::U) != 0 &&
      std::fabs(T - refs.at(KernelType::U)) <= std::max(best_d, second_d) + kTie) {
    // Ties go to U when U is among the nearest.
    v.best = KernelType::U;
  }
  return v;
}

}  // namespace cyclic3
