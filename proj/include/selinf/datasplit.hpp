#pragma once

// Data splitting: threshold selection on the first half, conditional
// Bonferroni on the second half, the unconditional Q-value rewrite, Fisher
// combination, and the directional two-hypothesis example with its
// calibrated-level closed-testing improvement.

#include "selinf/core.hpp"

namespace selinf {

struct SplitPValues {
  PVector p1;  // selection half
  PVector p2;  // inference half

  SplitPValues(PVector selection_half, PVector inference_half);
  int size() const { return p1.size(); }
};

// S = {i : p1_i <= lambda}
IndexSet split_select(const SplitPValues& sp, double lambda);

// R = {i in S : p2_i <= alpha/|S|}
IndexSet split_conditional_reject(const SplitPValues& sp, const IndexSet& selected,
                                  double alpha);

// Q_i = lambda * p2_i when p1_i <= lambda, else 1.
PVector q_values(const SplitPValues& sp, double lambda);

// R' = {i : q_i <= alpha/n}
IndexSet split_unconditional_reject(const PVector& q, double alpha);

// Chi-square(4) survival at -2(ln p_a + ln p_b); inputs must be positive.
double fisher_combine(double p_a, double p_b);

struct DirectionalConfig {
  double delta;  // half-width of the overlap H1: mu >= -delta, H2: mu <= delta
  double alpha;
};

// S from the sign of x1; one-sided test of the selected hypothesis on x2.
IndexSet directional_conditional(double x1, double x2, const DirectionalConfig& cfg);

// Closed-testing form at the calibrated level alpha' >= alpha.
IndexSet directional_improved(double x1, double x2, const DirectionalConfig& cfg);

// Root of  a' Phi(delta) + Phi(-2 delta - z_{a'}) (1 - Phi(delta)) = alpha
// in [alpha, 1); bisection to 1e-10.
double solve_alpha_prime(double alpha, double delta);

}  // namespace selinf
