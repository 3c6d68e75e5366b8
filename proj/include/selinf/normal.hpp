#pragma once

// Standard normal distribution function, its inverse, and log-scale tail
// helpers used by the truncated-normal machinery.

namespace selinf {

// Phi(x), computed through erfc so far tails keep relative accuracy.
double normal_cdf(double x);

// 1 - Phi(x) = Phi(-x).
double normal_sf(double x);

// Inverse of normal_cdf on (0,1).  Throws std::domain_error at 0 or 1,
// where the result is unbounded.
double normal_quantile(double p);

// log(Phi(x)), stable down to x ~ -1e9 (uses the scaled complementary
// error function below the central range).
double log_normal_cdf(double x);

// log P(lo < Z <= hi) for standard normal Z; -inf when hi <= lo.
double log_gauss_mass(double lo, double hi);

// exp(z^2) * erfc(z) for z >= 0 without overflow.
double erfcx_pos(double z);

}  // namespace selinf
