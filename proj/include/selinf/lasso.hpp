#pragma once

// Post-selection inference for lasso coefficients: coordinate-descent
// solver, per-variable truncation bounds conditional on (non-)selection,
// truncated-normal p-values and confidence intervals, and lambda-path
// tracing.  The lasso objective is (1/2)||y - X b||^2 + lambda ||b||_1
// with no 1/n factor; lambda values quoted elsewhere follow the same
// convention.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "selinf/core.hpp"

namespace selinf {

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct LinearModelData {
  Eigen::MatrixXd X;  // n x m, full column rank
  Eigen::VectorXd y;
  double sigma2;      // known noise variance
  std::vector<std::string> names;  // optional column names, size m or empty
};

// Cyclic coordinate descent from the zero vector; satisfies the KKT
// conditions at tolerance tol on exit.  Throws on non-convergence.
Eigen::VectorXd lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda, double tol = 1e-10);

struct TruncatedNormalSpec {
  enum class Region { outside, inside };  // outside: (-inf,a] u [b,inf); inside: (a,b)

  TruncatedNormalSpec(double mean, double sd, Region region, double a, double b);

  double mean;
  double sd;
  Region region;
  double a;
  double b;
};

// P(Z <= x | Z in region) for Z ~ N(mean, sd^2); log-space tail ratios.
double truncnorm_cdf(double x, const TruncatedNormalSpec& spec);
// P(Z > x | Z in region), computed directly rather than as 1 - cdf.
double truncnorm_sf(double x, const TruncatedNormalSpec& spec);

struct PosiQuantities {
  int i;            // 1-based variable index
  double beta_hat;  // eta_i' y
  double eta_norm2; // ||eta_i||^2
  double a;
  double b;         // a < b for lambda > 0; a == b when lambda == 0
  bool selected;    // from the full-design active set
};

PosiQuantities posi_quantities(const LinearModelData& data, double lambda, int i);

// Two-sided p-value 2*min(F, 1-F) under N(null_value, sigma2*||eta||^2)
// truncated to the selection (outside) or non-selection (inside) region.
double selective_pvalue(const PosiQuantities& q, double sigma2, double null_value);

struct Interval {
  double lo;
  double hi;  // +-inf marks an endpoint past the search cap
};

// Endpoints solve F(beta_hat; theta) = 1 - alpha/2 and alpha/2 in theta.
// The bracket grows geometrically from 10 to 1e6 standard errors; beyond
// the cap the endpoint reports as unbounded.
Interval selective_ci(const PosiQuantities& q, double sigma2, double level);

struct PathRecord {
  int variable;  // 1-based
  double lambda;
  bool selected;
  double beta_hat;
  double p_value;
  double ci_lo;
  double ci_hi;
  bool active_set_changed;  // differs from the previous grid point
};

// Inference for every variable at a single penalty (lambda >= 0).
std::vector<PathRecord> lasso_inference(const LinearModelData& data, double lambda,
                                        double level);

// One record per (variable, lambda) over a strictly increasing positive grid.
std::vector<PathRecord> lambda_path(const LinearModelData& data,
                                    const std::vector<double>& grid, double level);

struct LoadOptions {
  std::string response;
  std::vector<std::string> exclude;  // column names to drop; absent names ignored
  std::optional<double> sigma2_override;
  bool standardize = true;  // center X and scale columns to unit Euclidean norm
};

// Delimited text (tab or comma), header row required, numeric cells only.
// y is centered; sigma2 defaults to the full-model OLS estimate.
LinearModelData load_regression_data(const std::string& path, const LoadOptions& options);

}  // namespace selinf
