#include "selinf/winner.hpp"

#include <cmath>
#include <stdexcept>

#include "selinf/procedures.hpp"

namespace selinf {

namespace {

void check_inputs(const PVector& p, double alpha) {
  if (p.size() < 2) throw std::invalid_argument("winner procedures need n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of range");
}

double min_other(const PVector& p, int i) {
  double best = 2.0;
  for (int j = 1; j <= p.size(); ++j)
    if (j != i && p.p(j) < best) best = p.p(j);
  return best;
}

}  // namespace

int winner_select(const PVector& p) {
  if (p.size() < 2) throw std::invalid_argument("winner_select: needs n >= 2");
  int best = 1;
  for (int i = 2; i <= p.size(); ++i)
    if (p.p(i) < p.p(best)) best = i;
  return best;
}

double winner_adjust_selected(const PVector& p, int i) {
  if (i != winner_select(p))
    throw std::invalid_argument("winner_adjust_selected: index is not the winner");
  const double runner_up = min_other(p, i);
  if (runner_up == 0.0) {
    // only reachable with p_i = 0 as well; 0/0 resolved in favor of rejection
    return 0.0;
  }
  return p.p(i) / runner_up;
}

double winner_adjust_nonselected(double p_j, double p_i) {
  if (p_i >= 1.0)
    throw std::invalid_argument("winner_adjust_nonselected: degenerate p_i = 1");
  if (p_j < p_i)
    throw std::invalid_argument("winner_adjust_nonselected: requires p_j >= p_i");
  return (p_j - p_i) / (1.0 - p_i);
}

WinnerResult procedure_a(const PVector& p, double alpha) {
  check_inputs(p, alpha);
  const int w = winner_select(p);
  const double adj = winner_adjust_selected(p, w);
  IndexSet rejected = adj <= alpha ? IndexSet({w}, p.size()) : IndexSet::empty(p.size());
  return {w, adj, std::move(rejected), 'A'};
}

WinnerResult procedure_b(const PVector& p, double alpha) {
  check_inputs(p, alpha);
  const int n = p.size();
  const double level2 = n * alpha / (n - 1);
  if (level2 >= 1.0)
    throw std::invalid_argument("procedure_b: n*alpha/(n-1) must stay below 1");
  WinnerResult step1 = procedure_a(p, alpha);
  step1.procedure = 'B';
  if (step1.rejected.is_empty()) return step1;

  const int w = step1.winner;
  std::vector<double> adjusted;
  std::vector<int> original;  // map BH positions back to hypothesis indices
  adjusted.reserve(static_cast<std::size_t>(n) - 1);
  for (int j = 1; j <= n; ++j) {
    if (j == w) continue;
    adjusted.push_back(winner_adjust_nonselected(p.p(j), p.p(w)));
    original.push_back(j);
  }
  IndexSet step2 = bh(PVector(std::move(adjusted)), level2);
  std::vector<int> members{w};
  for (int pos : step2.members()) members.push_back(original[static_cast<std::size_t>(pos) - 1]);
  return {w, step1.adjusted_p_winner, IndexSet(std::move(members), n), 'B'};
}

WinnerResult procedure_c(const PVector& p, double alpha) {
  check_inputs(p, alpha);
  const int w = winner_select(p);
  const double threshold = -std::expm1(std::log1p(-alpha) / p.size());
  IndexSet rejected =
      p.p(w) <= threshold ? IndexSet({w}, p.size()) : IndexSet::empty(p.size());
  return {w, winner_adjust_selected(p, w), std::move(rejected), 'C'};
}

IndexSet procedure_d(const PVector& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of range");
  return bh(p, alpha);
}

}  // namespace selinf
