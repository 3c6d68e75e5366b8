#include "selinf/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "selinf/normal.hpp"

namespace selinf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogMassFloor = -690.7755278982137;  // log(1e-300)
constexpr int kMaxSweeps = 100000;

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

double logsumexp2(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

Eigen::VectorXd lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda, double tol) {
  if (lambda < 0.0) throw std::invalid_argument("lasso_fit: lambda must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("lasso_fit: tol must be positive");
  const Eigen::Index m = X.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  if (m == 0) return beta;
  if (X.rows() != y.size())
    throw std::invalid_argument("lasso_fit: dimension mismatch");

  Eigen::VectorXd col_norm2(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    col_norm2[j] = X.col(j).squaredNorm();
    if (col_norm2[j] <= 0.0)
      throw std::invalid_argument("lasso_fit: zero design column");
  }

  Eigen::VectorXd resid = y;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_step = 0.0, max_coef = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double z = X.col(j).dot(resid) + col_norm2[j] * beta[j];
      const double updated = soft_threshold(z, lambda) / col_norm2[j];
      const double step = updated - beta[j];
      if (step != 0.0) {
        resid -= step * X.col(j);
        beta[j] = updated;
      }
      max_step = std::max(max_step, std::fabs(step));
      max_coef = std::max(max_coef, std::fabs(updated));
    }
    if (max_step < tol * (1.0 + max_coef)) return beta;
  }
  std::ostringstream msg;
  msg << "lasso_fit: no convergence after " << kMaxSweeps << " sweeps"
      << " (n=" << X.rows() << ", m=" << m << ", lambda=" << lambda
      << ", tol=" << tol << ")";
  throw std::runtime_error(msg.str());
}

TruncatedNormalSpec::TruncatedNormalSpec(double mean_in, double sd_in, Region region_in,
                                         double a_in, double b_in)
    : mean(mean_in), sd(sd_in), region(region_in), a(a_in), b(b_in) {
  if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean))
    throw std::invalid_argument("TruncatedNormalSpec: bad mean/sd");
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("TruncatedNormalSpec: requires a <= b");
  if (region == Region::inside && !(a < b))
    throw std::invalid_argument("TruncatedNormalSpec: inside region requires a < b");
  // positive mass check, tolerance 1e-300 in probability
  const double lo = (a - mean) / sd, hi = (b - mean) / sd;
  const double log_mass = region == Region::outside
                              ? logsumexp2(log_normal_cdf(lo), log_normal_cdf(-hi))
                              : log_gauss_mass(lo, hi);
  if (!(log_mass > kLogMassFloor))
    throw std::runtime_error("TruncatedNormalSpec: region mass below 1e-300");
}

namespace {

// Both conditional tails of the truncated normal, each computed on its own
// well-conditioned side.  This core works entirely in log space and stays
// exact even when the region mass underflows a double (as happens during
// confidence-interval bracket expansion up to 1e6 standard errors); it only
// rejects regions that are empty at log-space precision.
struct TruncTails {
  double cdf;
  double sf;
};

TruncTails trunc_tails(double x, double mean, double sd, bool outside, double a,
                       double b) {
  const double lo = (a - mean) / sd;
  const double hi = (b - mean) / sd;
  const double z = (x - mean) / sd;

  if (outside) {
    const double log_lower = log_normal_cdf(lo);        // mass of (-inf, a]
    const double log_upper = log_normal_cdf(-hi);       // mass of [b, inf)
    const double log_total = logsumexp2(log_lower, log_upper);
    if (log_total == -kInf)
      throw std::runtime_error("truncnorm: empty truncation region");
    if (z <= lo) {
      const double cdf = std::exp(log_normal_cdf(z) - log_total);
      const double sf = std::exp(logsumexp2(log_gauss_mass(z, lo), log_upper) - log_total);
      return {cdf, sf};
    }
    if (z >= hi) {
      const double sf = std::exp(log_normal_cdf(-z) - log_total);
      const double cdf = std::exp(logsumexp2(log_lower, log_gauss_mass(hi, z)) - log_total);
      return {cdf, sf};
    }
    // x sits in the zero-mass gap
    return {std::exp(log_lower - log_total), std::exp(log_upper - log_total)};
  }

  const double log_total = log_gauss_mass(lo, hi);
  if (log_total == -kInf)
    throw std::runtime_error("truncnorm: empty truncation region");
  if (z <= lo) return {0.0, 1.0};
  if (z >= hi) return {1.0, 0.0};
  return {std::exp(log_gauss_mass(lo, z) - log_total),
          std::exp(log_gauss_mass(z, hi) - log_total)};
}

TruncTails trunc_tails(double x, const TruncatedNormalSpec& spec) {
  const double lo = (spec.a - spec.mean) / spec.sd;
  const double hi = (spec.b - spec.mean) / spec.sd;
  const double log_total =
      spec.region == TruncatedNormalSpec::Region::outside
          ? logsumexp2(log_normal_cdf(lo), log_normal_cdf(-hi))
          : log_gauss_mass(lo, hi);
  if (!(log_total > kLogMassFloor))
    throw std::runtime_error("truncnorm: region mass below 1e-300");
  return trunc_tails(x, spec.mean, spec.sd,
                     spec.region == TruncatedNormalSpec::Region::outside, spec.a,
                     spec.b);
}

}  // namespace

double truncnorm_cdf(double x, const TruncatedNormalSpec& spec) {
  if (!std::isfinite(x)) throw std::invalid_argument("truncnorm_cdf: x must be finite");
  const TruncTails t = trunc_tails(x, spec);
  return std::min(1.0, std::max(0.0, t.sf < t.cdf ? 1.0 - t.sf : t.cdf));
}

double truncnorm_sf(double x, const TruncatedNormalSpec& spec) {
  if (!std::isfinite(x)) throw std::invalid_argument("truncnorm_sf: x must be finite");
  const TruncTails t = trunc_tails(x, spec);
  return std::min(1.0, std::max(0.0, t.cdf < t.sf ? 1.0 - t.cdf : t.sf));
}

PosiQuantities posi_quantities(const LinearModelData& data, double lambda, int i) {
  const Eigen::Index n = data.X.rows(), m = data.X.cols();
  if (i < 1 || i > m) throw std::invalid_argument("posi_quantities: index out of range");
  if (lambda < 0.0) throw std::invalid_argument("posi_quantities: lambda must be >= 0");
  if (m > n) throw std::invalid_argument("posi_quantities: needs m <= n");

  const Eigen::MatrixXd xtx = data.X.transpose() * data.X;
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("posi_quantities: design is rank deficient");

  const Eigen::Index col = i - 1;
  Eigen::VectorXd e_i = Eigen::VectorXd::Zero(m);
  e_i[col] = 1.0;
  const Eigen::VectorXd w = llt.solve(e_i);      // (X'X)^-1 e_i
  const Eigen::VectorXd eta = data.X * w;
  const double eta_norm2 = w[col];               // e_i'(X'X)^-1 e_i
  const double beta_hat = eta.dot(data.y);
  const Eigen::VectorXd v = data.y - eta * (beta_hat / eta_norm2);

  Eigen::MatrixXd x_rest(n, m - 1);
  x_rest.leftCols(col) = data.X.leftCols(col);
  x_rest.rightCols(m - 1 - col) = data.X.rightCols(m - 1 - col);
  const Eigen::VectorXd beta_rest = lasso_fit(x_rest, v, lambda);
  const Eigen::VectorXd r = x_rest * beta_rest - v;
  const double xitr = data.X.col(col).dot(r);
  const double a = eta_norm2 * (xitr - lambda);
  const double b = eta_norm2 * (xitr + lambda);

  const Eigen::VectorXd full_fit = lasso_fit(data.X, data.y, lambda);
  return {i, beta_hat, eta_norm2, a, b, full_fit[col] != 0.0};
}

double selective_pvalue(const PosiQuantities& q, double sigma2, double null_value) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("selective_pvalue: sigma2 must be > 0");
  const double sd = std::sqrt(sigma2 * q.eta_norm2);
  const TruncTails t = trunc_tails(q.beta_hat, null_value, sd, q.selected, q.a, q.b);
  return std::min(1.0, 2.0 * std::min(t.cdf, t.sf));
}

Interval selective_ci(const PosiQuantities& q, double sigma2, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("selective_ci: level must lie in (0,1)");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("selective_ci: sigma2 must be > 0");
  const double alpha = 1.0 - level;
  const double se = std::sqrt(sigma2 * q.eta_norm2);
  const double cap = 1e6 * se;

  // F(theta) = P_theta(Z <= beta_hat | region), decreasing in theta
  auto cdf_at = [&](double theta) {
    const TruncTails t = trunc_tails(q.beta_hat, theta, se, q.selected, q.a, q.b);
    return t.sf < t.cdf ? 1.0 - t.sf : t.cdf;
  };

  // Solves F(theta) = target; returns +-inf when the bracket cap is reached.
  auto solve = [&](double target) {
    double lo = q.beta_hat - 10.0 * se;
    double hi = q.beta_hat + 10.0 * se;
    double width = 10.0 * se;
    while (cdf_at(lo) < target) {
      width *= 2.0;
      if (width > cap) return -kInf;
      lo = q.beta_hat - width;
    }
    width = 10.0 * se;
    while (cdf_at(hi) > target) {
      width *= 2.0;
      if (width > cap) return kInf;
      hi = q.beta_hat + width;
    }
    for (int iter = 0; iter < 300 && hi - lo > 1e-10 * se; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (cdf_at(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  return {solve(1.0 - alpha / 2.0), solve(alpha / 2.0)};
}

std::vector<PathRecord> lasso_inference(const LinearModelData& data, double lambda,
                                        double level) {
  const int m = static_cast<int>(data.X.cols());
  std::vector<PathRecord> records;
  records.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    const PosiQuantities q = posi_quantities(data, lambda, i);
    const Interval ci = selective_ci(q, data.sigma2, level);
    records.push_back({i, lambda, q.selected, q.beta_hat,
                       selective_pvalue(q, data.sigma2, 0.0), ci.lo, ci.hi, false});
  }
  return records;
}

std::vector<PathRecord> lambda_path(const LinearModelData& data,
                                    const std::vector<double>& grid, double level) {
  if (grid.empty()) throw std::invalid_argument("lambda_path: empty grid");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] > 0.0)) throw std::invalid_argument("lambda_path: grid must be positive");
    if (g > 0 && !(grid[g] > grid[g - 1]))
      throw std::invalid_argument("lambda_path: grid must be strictly increasing");
  }
  const int m = static_cast<int>(data.X.cols());
  std::vector<PathRecord> all;
  all.reserve(grid.size() * static_cast<std::size_t>(m));
  std::vector<bool> previous_active;
  for (double lambda : grid) {
    std::vector<PathRecord> records = lasso_inference(data, lambda, level);
    std::vector<bool> active(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) active[static_cast<std::size_t>(i)] = records[static_cast<std::size_t>(i)].selected;
    const bool changed = !previous_active.empty() && active != previous_active;
    for (auto& rec : records) rec.active_set_changed = changed;
    previous_active = std::move(active);
    all.insert(all.end(), records.begin(), records.end());
  }
  return all;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delim)) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == delim) fields.emplace_back();
  return fields;
}

}  // namespace

LinearModelData load_regression_data(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);

  std::string header;
  if (!std::getline(in, header)) throw DataError(path + ": empty file");
  const char delim = header.find('\t') != std::string::npos ? '\t' : ',';

  std::vector<std::string> names = split_line(header, delim);
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c].empty()) names[c] = "_col" + std::to_string(c);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line, delim);
    if (fields.size() != names.size())
      throw DataError(path + ": row " + std::to_string(lineno) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(names.size()));
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (std::count(options.exclude.begin(), options.exclude.end(), names[c])) continue;
      try {
        std::size_t used = 0;
        row[c] = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw DataError(path + ": non-numeric cell at row " + std::to_string(lineno) +
                        ", column '" + names[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": no data rows");

  std::vector<int> predictor_cols;
  int response_col = -1;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (std::count(options.exclude.begin(), options.exclude.end(), names[c])) continue;
    if (names[c] == options.response) {
      response_col = static_cast<int>(c);
    } else {
      predictor_cols.push_back(static_cast<int>(c));
    }
  }
  if (response_col < 0)
    throw DataError(path + ": response column '" + options.response + "' not found");

  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(predictor_cols.size());
  if (n <= m)
    throw DataError(path + ": needs more rows than predictors (n=" +
                    std::to_string(n) + ", m=" + std::to_string(m) + ")");

  Eigen::MatrixXd X(n, m);
  Eigen::VectorXd y(n);
  std::vector<std::string> kept_names;
  for (int j = 0; j < m; ++j) kept_names.push_back(names[static_cast<std::size_t>(predictor_cols[static_cast<std::size_t>(j)])]);
  for (int r = 0; r < n; ++r) {
    y[r] = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(response_col)];
    for (int j = 0; j < m; ++j)
      X(r, j) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(predictor_cols[static_cast<std::size_t>(j)])];
  }

  y.array() -= y.mean();
  X.rowwise() -= X.colwise().mean();
  if (options.standardize) {
    for (int j = 0; j < m; ++j) {
      const double norm = X.col(j).norm();
      if (norm <= 0.0)
        throw DataError(path + ": column '" + kept_names[static_cast<std::size_t>(j)] + "' is constant");
      X.col(j) /= norm;
    }
  }

  double sigma2;
  if (options.sigma2_override) {
    sigma2 = *options.sigma2_override;
    if (!(sigma2 > 0.0)) throw DataError("sigma2 override must be positive");
  } else {
    // full OLS model; centering stands in for the intercept
    const Eigen::VectorXd ols = (X.transpose() * X).llt().solve(X.transpose() * y);
    const double rss = (y - X * ols).squaredNorm();
    sigma2 = rss / (n - m - 1);
  }
  return {std::move(X), std::move(y), sigma2, std::move(kept_names)};
}

}  // namespace selinf
