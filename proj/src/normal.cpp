#include "selinf/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selinf {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrtPi = 0.5641895835477563;  // 1/sqrt(pi)
constexpr double kLn2 = 0.6931471805599453;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double erfcx_pos(double z) {
  if (z < 0.0) throw std::invalid_argument("erfcx_pos: negative argument");
  if (z <= 25.0) return std::exp(z * z) * std::erfc(z);
  // asymptotic series erfcx(z) = 1/(z sqrt(pi)) * sum (-1)^k (2k-1)!!/(2z^2)^k
  const double iz2 = 1.0 / (2.0 * z * z);
  double term = 1.0, sum = 1.0, fac = 1.0;
  for (int k = 1; k <= 6; ++k) {
    fac *= (2 * k - 1);
    term *= -iz2;
    sum += fac * term;
  }
  return kInvSqrtPi / z * sum;
}

double log_normal_cdf(double x) {
  if (x >= -1.0) return std::log(normal_cdf(x));
  // Phi(x) = exp(-x^2/2) erfcx(-x/sqrt(2)) / 2
  const double z = -x / kSqrt2;
  return -0.5 * x * x + std::log(erfcx_pos(z)) - kLn2;
}

double log_gauss_mass(double lo, double hi) {
  if (!(hi > lo)) return -std::numeric_limits<double>::infinity();
  if (lo >= 0.0) return log_gauss_mass(-hi, -lo);
  if (hi <= 0.0) {
    // both in the left tail: Phi(hi) - Phi(lo), hi dominates
    const double lh = log_normal_cdf(hi);
    const double ll = log_normal_cdf(lo);
    return lh + std::log1p(-std::exp(ll - lh));
  }
  // interval straddles 0: 1 - Phi(lo) - Phi(-hi)
  return std::log1p(-(normal_cdf(lo) + normal_cdf(-hi)));
}

// Wichura's AS 241 (PPND16): relative error ~1e-16 over (0,1).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must lie strictly in (0,1)");
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

}  // namespace selinf
