#include "selinf/procedures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace selinf {

namespace {

void check_alpha(double alpha, double upper = 1.0) {
  if (!(alpha > 0.0 && alpha < upper))
    throw std::invalid_argument("alpha out of range");
}

IndexSet pair_set(bool first, bool second) {
  std::vector<int> members;
  if (first) members.push_back(1);
  if (second) members.push_back(2);
  return IndexSet(std::move(members), 2);
}

}  // namespace

IndexSet bonferroni(const PVector& p, double alpha) {
  check_alpha(alpha);
  const double threshold = alpha / p.size();
  std::vector<int> members;
  for (int i = 1; i <= p.size(); ++i)
    if (p.p(i) <= threshold) members.push_back(i);
  return IndexSet(std::move(members), p.size());
}

IndexSet hochberg2(double p1, double p2, double alpha) {
  check_alpha(alpha);
  const bool both = p1 <= alpha && p2 <= alpha;
  return pair_set(both || p1 <= alpha / 2, both || p2 <= alpha / 2);
}

IndexSet bh(const PVector& p, double alpha) {
  check_alpha(alpha);
  const int n = p.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p.p(a) < p.p(b); });
  int k = 0;
  for (int i = n; i >= 1; --i) {
    if (p.p(order[static_cast<std::size_t>(i) - 1]) <= i * alpha / n) {
      k = i;
      break;
    }
  }
  if (k == 0) return IndexSet::empty(n);
  // all p-values <= p_(k); exactly k of them by maximality of k
  const double cutoff = p.p(order[static_cast<std::size_t>(k) - 1]);
  std::vector<int> members;
  for (int i = 1; i <= n; ++i)
    if (p.p(i) <= cutoff) members.push_back(i);
  return IndexSet(std::move(members), n);
}

IndexSet mabh2(double p1, double p2, double alpha) {
  check_alpha(alpha, 0.5 + 1e-15);
  const double lo = std::min(p1, p2), hi = std::max(p1, p2);
  const bool both = (p1 <= alpha && p2 <= alpha) || (lo <= alpha / 2 && hi <= 2 * alpha);
  return pair_set(both || p1 <= alpha / 2, both || p2 <= alpha / 2);
}

IndexSet fixed_sequence_fdr2(double p_first, double p_second, double alpha) {
  check_alpha(alpha, 0.5 + 1e-15);
  const bool first = p_first <= alpha;
  return pair_set(first, first && p_second <= 2 * alpha);
}

IndexSet mixture_improvement(const IndexSet& rejected,
                             const MixtureImprovementConfig& cfg,
                             RngStream& stream) {
  if (!(cfg.q >= 0.0 && cfg.q <= 1.0))
    throw std::invalid_argument("mixture_improvement: q must lie in [0,1]");
  if (!rejected.subset_of(cfg.fallback))
    throw std::invalid_argument("mixture_improvement: R must be a subset of the fallback");
  return stream.uniform01() < cfg.q ? rejected : cfg.fallback;
}

double prop1_q(double alpha, double delta) {
  check_alpha(alpha);
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("prop1_q: delta out of range");
  if (delta >= 1.0 - alpha) return 0.0;
  return (1.0 - alpha - delta) / ((1.0 - alpha) * (1.0 - delta));
}

IndexSet fwer_recycle(const IndexSet& rejected, const IndexSet& selected,
                      int universe_size, double alpha, RngStream& stream) {
  check_alpha(alpha);
  if (rejected.universe_size() != universe_size ||
      selected.universe_size() != universe_size)
    throw std::invalid_argument("fwer_recycle: universe size mismatch");
  if (!rejected.subset_of(selected))
    throw std::invalid_argument("fwer_recycle: R must be a subset of S");
  const bool expand = stream.uniform01() < alpha;
  if (expand && rejected == selected) return IndexSet::full(universe_size);
  return rejected;
}

}  // namespace selinf
