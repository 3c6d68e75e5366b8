#pragma once

// Conditioning on the winner: selection of the smallest p-value, the
// ratio/residual selection adjustments, and Procedures A-D.

#include "selinf/core.hpp"

namespace selinf {

struct WinnerResult {
  int winner;
  double adjusted_p_winner;  // p_w / min_{j != w} p_j
  IndexSet rejected;
  char procedure;  // 'A', 'B' or 'C'
};

// argmin index, ties broken by lowest index; needs at least two hypotheses.
int winner_select(const PVector& p);

// p_i / min_{j != i} p_j for the winning index i.
double winner_adjust_selected(const PVector& p, int i);

// (p_j - p_i) / (1 - p_i) for a losing index, p_i the winner's value.
double winner_adjust_nonselected(double p_j, double p_i);

// Rejects the winner iff its adjusted p-value is at most alpha.
WinnerResult procedure_a(const PVector& p, double alpha);

// Procedure A, then a BH step at level n*alpha/(n-1) on the losers'
// adjusted p-values when the winner fell.
WinnerResult procedure_b(const PVector& p, double alpha);

// Rejects the winner iff p_winner <= 1-(1-alpha)^(1/n).
WinnerResult procedure_c(const PVector& p, double alpha);

// Plain BH on the raw p-values.
IndexSet procedure_d(const PVector& p, double alpha);

}  // namespace selinf
