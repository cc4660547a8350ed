#include "vwstat/chi_square.hpp"

#include <cmath>
#include <limits>

#include "vwstat/errors.hpp"

namespace vwstat {

namespace {

constexpr int kMaxIterations = 1000;
constexpr Real kEps = 1e-16;

// Series expansion, valid for x < a + 1.
Real gamma_p_series(Real a, Real x) {
  Real denom = a;
  Real term = 1.0 / a;
  Real sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
Real gamma_q_fraction(Real a, Real x) {
  constexpr Real tiny = std::numeric_limits<Real>::min() / kEps;
  Real b = x + 1.0 - a;
  Real c = 1.0 / tiny;
  Real d = 1.0 / b;
  Real h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const Real an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Real delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

Real gamma_q(Real a, Real x) {
  if (x <= 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

Real chi2_log_pdf(int dof, Real x) {
  const Real k = 0.5 * dof;
  return (k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) - std::lgamma(k);
}

}  // namespace

Real regularized_gamma_p(Real a, Real x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

Real chi2_cdf(int dof, Real x) {
  if (dof < 1) throw DomainError("chi-square needs dof >= 1");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

Real chi2_quantile(int dof, Real prob) {
  if (dof < 1) throw DomainError("chi-square needs dof >= 1");
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("probability must lie in (0, 1)", {prob});

  const Real a = 0.5 * dof;
  // Work on whichever tail is better conditioned.
  const bool upper = prob > 0.5;
  const Real target = upper ? 1.0 - prob : prob;
  auto residual = [&](Real x) {
    return upper ? gamma_q(a, 0.5 * x) - target : regularized_gamma_p(a, 0.5 * x) - target;
  };

  // Wilson-Hilferty starting point.
  const Real z = [&] {
    // Rational approximation of the normal quantile; only seeds the iteration.
    const Real p = prob;
    const Real t = std::sqrt(-2.0 * std::log(p < 0.5 ? p : 1.0 - p));
    const Real approx = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                                (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
    return p < 0.5 ? -approx : approx;
  }();
  const Real h = 2.0 / (9.0 * dof);
  Real x = dof * std::pow(std::max(1.0 - h + z * std::sqrt(h), 0.01), 3.0);

  Real lo = 0.0;
  Real hi = std::max(2.0 * x, 1.0);
  while (residual(hi) * (upper ? -1.0 : 1.0) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) break;
  }
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const Real f = residual(x);
    // P is increasing in x, Q decreasing.
    const Real increasing = upper ? -f : f;
    if (increasing > 0.0) hi = x; else lo = x;
    if (f == 0.0) break;

    const Real slope = std::exp(chi2_log_pdf(dof, x)) * (upper ? -1.0 : 1.0);
    Real next = x - f / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const Real step = std::abs(next - x);
    x = next;
    if (step <= 1e-15 * std::max(x, std::numeric_limits<Real>::min()) || hi - lo <= 1e-15 * hi) break;
  }
  return x;
}

}  // namespace vwstat
