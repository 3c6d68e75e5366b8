#include "selinf/datasplit.hpp"

#include <cmath>
#include <stdexcept>

#include "selinf/normal.hpp"

namespace selinf {

namespace {
void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of range");
}
void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda out of range");
}
}  // namespace

SplitPValues::SplitPValues(PVector selection_half, PVector inference_half)
    : p1(std::move(selection_half)), p2(std::move(inference_half)) {
  if (p1.size() != p2.size())
    throw std::invalid_argument("SplitPValues: halves must have equal length");
}

IndexSet split_select(const SplitPValues& sp, double lambda) {
  check_lambda(lambda);
  std::vector<int> members;
  for (int i = 1; i <= sp.size(); ++i)
    if (sp.p1.p(i) <= lambda) members.push_back(i);
  return IndexSet(std::move(members), sp.size());
}

IndexSet split_conditional_reject(const SplitPValues& sp, const IndexSet& selected,
                                  double alpha) {
  check_alpha(alpha);
  if (selected.universe_size() != sp.size())
    throw std::invalid_argument("split_conditional_reject: universe size mismatch");
  if (selected.is_empty()) return IndexSet::empty(sp.size());
  const double threshold = alpha / selected.size();
  std::vector<int> members;
  for (int i : selected.members())
    if (sp.p2.p(i) <= threshold) members.push_back(i);
  return IndexSet(std::move(members), sp.size());
}

PVector q_values(const SplitPValues& sp, double lambda) {
  check_lambda(lambda);
  std::vector<double> q(static_cast<std::size_t>(sp.size()));
  for (int i = 1; i <= sp.size(); ++i)
    q[static_cast<std::size_t>(i) - 1] =
        sp.p1.p(i) <= lambda ? lambda * sp.p2.p(i) : 1.0;
  return PVector(std::move(q));
}

IndexSet split_unconditional_reject(const PVector& q, double alpha) {
  check_alpha(alpha);
  const double threshold = alpha / q.size();
  std::vector<int> members;
  for (int i = 1; i <= q.size(); ++i)
    if (q.p(i) <= threshold) members.push_back(i);
  return IndexSet(std::move(members), q.size());
}

double fisher_combine(double p_a, double p_b) {
  if (!(p_a > 0.0 && p_a <= 1.0 && p_b > 0.0 && p_b <= 1.0))
    throw std::invalid_argument("fisher_combine: p-values must lie in (0,1]");
  const double stat = -2.0 * (std::log(p_a) + std::log(p_b));
  // chi-square with 4 df: survival = exp(-s/2) (1 + s/2)
  return std::exp(-0.5 * stat) * (1.0 + 0.5 * stat);
}

namespace {

IndexSet pair_set(bool first, bool second) {
  std::vector<int> members;
  if (first) members.push_back(1);
  if (second) members.push_back(2);
  return IndexSet(std::move(members), 2);
}

void check_directional(const DirectionalConfig& cfg) {
  check_alpha(cfg.alpha);
  if (!(cfg.delta >= 0.0) || !std::isfinite(cfg.delta))
    throw std::invalid_argument("DirectionalConfig: delta must be finite and >= 0");
}

IndexSet directional_at_level(double x1, double x2, double delta, double level) {
  const double cutoff = delta + normal_quantile(1.0 - level);
  return pair_set(x1 < 0.0 && -x2 > cutoff, x1 >= 0.0 && x2 > cutoff);
}

}  // namespace

IndexSet directional_conditional(double x1, double x2, const DirectionalConfig& cfg) {
  check_directional(cfg);
  return directional_at_level(x1, x2, cfg.delta, cfg.alpha);
}

IndexSet directional_improved(double x1, double x2, const DirectionalConfig& cfg) {
  check_directional(cfg);
  return directional_at_level(x1, x2, cfg.delta, solve_alpha_prime(cfg.alpha, cfg.delta));
}

double solve_alpha_prime(double alpha, double delta) {
  check_alpha(alpha);
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("solve_alpha_prime: delta must be finite and >= 0");
  if (delta == 0.0) return alpha;  // the equation collapses to alpha' = alpha

  const double phi_delta = normal_cdf(delta);
  auto lhs = [&](double ap) {
    const double z = normal_quantile(1.0 - ap);
    return ap * phi_delta + normal_cdf(-2.0 * delta - z) * (1.0 - phi_delta);
  };
  // lhs is increasing in alpha'; root lies in [alpha, 1)
  double lo = alpha, hi = 1.0 - 1e-14;
  if (lhs(lo) >= alpha) return alpha;
  if (lhs(hi) < alpha)
    throw std::runtime_error("solve_alpha_prime: bracket failure");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) < alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace selinf
