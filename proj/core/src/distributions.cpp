// SPDX-License-Identifier: Apache-2.0
#include "rsm/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr int kMaxIter = 300;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

// Series for P(a, x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw NumericalFailure("incomplete gamma: series did not converge");
}

// Modified Lentz continued fraction for Q(a, x), x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= kEps)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw NumericalFailure("incomplete gamma: continued fraction did not converge");
}

// Generic safeguarded Newton inversion of a CDF on a positive bracket.
template <typename Cdf, typename Pdf>
double invert_cdf(double q, double x0, double lo, double hi, Cdf cdf, Pdf pdf) {
  // grow hi until the target is bracketed
  for (int i = 0; i < 200 && cdf(hi) < q; ++i) hi *= 2.0;
  double x = std::min(std::max(x0, lo), hi);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double f = cdf(x) - q;
    if (std::abs(f) <= 1e-14) return x;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double density = pdf(x);
    double next = density > 0.0 ? x - f / density : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == x) return x;  // bracket exhausted at rounding
    x = next;
  }
  return x;
}

}  // namespace

double lower_regularized_gamma(double a, double x) {
  if (!(a > 0.0)) throw InvalidArgument("lower_regularized_gamma: a must be positive");
  if (x < 0.0) throw InvalidArgument("lower_regularized_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double upper_regularized_gamma(double a, double x) {
  if (!(a > 0.0)) throw InvalidArgument("upper_regularized_gamma: a must be positive");
  if (x < 0.0) throw InvalidArgument("upper_regularized_gamma: x must be nonnegative");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double normal_cdf(double x) {
  // Phi(x) = erfc(-x/sqrt2)/2 with erfc expressed through Q(1/2, t^2).
  const double t = x / std::sqrt(2.0);
  if (t >= 0.0) {
    if (t == 0.0) return 0.5;
    return 1.0 - 0.5 * upper_regularized_gamma(0.5, t * t);
  }
  return 0.5 * upper_regularized_gamma(0.5, t * t);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidAlpha("normal_quantile: q outside (0, 1)");
  if (q == 0.5) return 0.0;
  if (q < 0.5) return -normal_quantile(1.0 - q);
  // Crude logistic start is enough for the safeguarded Newton.
  const double x0 = std::sqrt(-2.0 * std::log(1.0 - q)) - 1.0;
  return invert_cdf(
      q, std::max(x0, 1e-8), 0.0, 42.0, [](double x) { return normal_cdf(x); },
      [](double x) { return normal_pdf(x); });
}

double chi_squared_cdf(double x, int dof) {
  if (dof < 1) throw InvalidArgument("chi_squared_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return lower_regularized_gamma(dof / 2.0, x / 2.0);
}

double chi_squared_pdf(double x, int dof) {
  if (dof < 1) throw InvalidArgument("chi_squared_pdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  const double half = dof / 2.0;
  return std::exp((half - 1.0) * std::log(x) - x / 2.0 - half * std::log(2.0) -
                  std::lgamma(half));
}

double chi_squared_quantile(double q, int dof) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidAlpha("chi_squared_quantile: q outside (0, 1)");
  if (dof < 1) throw InvalidArgument("chi_squared_quantile: dof must be >= 1");
  // Wilson-Hilferty initial guess
  const double z = normal_quantile(q);
  const double k = static_cast<double>(dof);
  const double wh = k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3);
  return invert_cdf(
      q, std::max(wh, 1e-8), 0.0, std::max(4.0 * k, 16.0),
      [dof](double x) { return chi_squared_cdf(x, dof); },
      [dof](double x) { return chi_squared_pdf(x, dof); });
}

}  // namespace rsm
