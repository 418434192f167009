#pragma once

// Floating-point building blocks: compensated summation, the digamma
// function (real and complex), and Gauss-Legendre / Gauss-Kronrod
// quadrature.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

/// Neumaier (improved Kahan) summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    comp_ += std::fabs(sum_) >= std::fabs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Digamma.

namespace detail {

// psi(z) - log z + 1/(2z), asymptotic tail for |z| >= 10.
template <class T>
T digamma_asymptotic_tail(T z) {
  const T z2 = T(1.0) / (z * z);
  // Coefficients -B_{2k} / (2k), k = 1..8.
  static constexpr std::array<double, 8> c = {-1.0 / 12.0,     1.0 / 120.0, -1.0 / 252.0,          1.0 / 240.0,
                                              -1.0 / 132.0,    691.0 / 32760.0, -1.0 / 12.0, 3617.0 / 8160.0};
  T acc = T(c[7]);
  for (int k = 6; k >= 0; --k) acc = acc * z2 + T(c[static_cast<std::size_t>(k)]);
  return acc * z2;
}

template <class T>
T digamma_shifted(T z) {
  T acc = T(0.0);
  while (std::abs(z) < 10.0 || std::real(z) < 0.5) {
    acc -= T(1.0) / z;
    z += T(1.0);
  }
  return acc + std::log(z) - T(0.5) / z + digamma_asymptotic_tail(z);
}

}  // namespace detail

/// psi(x) for real x that is not a non-positive integer.
inline double digamma(double x) {
  if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("digamma: pole at non-positive integer");
  if (x < 0.5) return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  return detail::digamma_shifted(x);
}

/// psi(z) for complex z away from the poles 0, -1, -2, ...
inline std::complex<double> digamma(std::complex<double> z) {
  if (z.imag() == 0.0) return digamma(z.real());
  // Far from the real axis cot(pi z) overflows; the upward shift is used instead.
  if (z.real() < 0.5 && std::fabs(z.imag()) < 20.0) {
    const std::complex<double> piz = std::numbers::pi * z;
    return digamma(1.0 - z) - std::numbers::pi * std::cos(piz) / std::sin(piz);
  }
  return detail::digamma_shifted(z);
}

// ---------------------------------------------------------------------------
// Quadrature.

struct GaussRule {
  std::vector<double> nodes;    ///< on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

/// Fixed-rule integral of g over [a, b].
template <class Fn>
double integrate_fixed(const GaussRule& rule, Fn&& g, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return half * s.value();
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                               0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                               0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                               0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                               0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                               0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                               0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
  double magnitude;  ///< integral of |g|
};

template <class Fn>
GkResult gk15(Fn& g, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const double fc = g(mid);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double mag = std::fabs(fc) * kWgk[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fl = g(mid - dx), fr = g(mid + dx);
    kronrod += kWgk[j] * (fl + fr);
    mag += kWgk[j] * (std::fabs(fl) + std::fabs(fr));
    if (j % 2 == 1) gauss += kWg[j / 2] * (fl + fr);
  }
  return {kronrod * half, std::fabs((kronrod - gauss) * half), mag * std::fabs(half)};
}

template <class Fn>
double gk_adaptive(Fn& g, double a, double b, double tol, int depth, bool& converged) {
  const GkResult r = gk15(g, a, b);
  // Below the rounding floor further bisection cannot help.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * r.magnitude;
  if (r.error <= std::max(tol, floor) || depth <= 0) {
    if (r.error > tol) converged = false;
    return r.value;
  }
  const double m = 0.5 * (a + b);
  return gk_adaptive(g, a, m, 0.5 * tol, depth - 1, converged) + gk_adaptive(g, m, b, 0.5 * tol, depth - 1, converged);
}

}  // namespace detail

/**
 * Adaptive Gauss-Kronrod (7/15) over [a, b] split into `panels` equal
 * pieces, each refined by bisection until its error estimate is below its
 * share of `abs_tol`. Throws QuadratureError if refinement runs out.
 */
template <class Fn>
double integrate_adaptive(Fn&& g, double a, double b, double abs_tol, int panels = 1, int max_depth = 30) {
  CompensatedSum s;
  bool converged = true;
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    s += detail::gk_adaptive(g, lo, hi, abs_tol / panels, max_depth, converged);
  }
  if (!converged) throw QuadratureError("integrate_adaptive: tolerance not reached");
  return s.value();
}

}  // namespace cyclic3
