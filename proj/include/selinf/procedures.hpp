#pragma once

// Classical multiple-testing procedures on a p-value family, plus the
// randomized wrappers that uniformly improve conditional selective
// procedures (mixture with a fallback set, and FWER alpha-recycling).

#include "selinf/core.hpp"

namespace selinf {

// {i : p_i <= alpha/n}
IndexSet bonferroni(const PVector& p, double alpha);

// Hochberg/Hommel rule for two hypotheses: each H_i if p_i <= alpha/2,
// both if both <= alpha.
IndexSet hochberg2(double p1, double p2, double alpha);

// Benjamini-Hochberg step-up.
IndexSet bh(const PVector& p, double alpha);

// Minimally adaptive BH for two hypotheses: each H_i if p_i <= alpha/2;
// both if both <= alpha, or the smallest <= alpha/2 and the largest <= 2*alpha.
IndexSet mabh2(double p1, double p2, double alpha);

// Gatekeeping pair: first at alpha, then second at 2*alpha.
IndexSet fixed_sequence_fdr2(double p_first, double p_second, double alpha);

struct MixtureImprovementConfig {
  double q;           // probability of keeping R
  IndexSet fallback;  // returned otherwise; must contain R
};

// R with probability q, fallback otherwise.
IndexSet mixture_improvement(const IndexSet& rejected,
                             const MixtureImprovementConfig& cfg,
                             RngStream& stream);

// q = (1-alpha-delta) / ((1-alpha)(1-delta)) when delta < 1-alpha, else 0.
double prop1_q(double alpha, double delta);

// With probability alpha, expands R to the full universe when R == S.
IndexSet fwer_recycle(const IndexSet& rejected, const IndexSet& selected,
                      int universe_size, double alpha, RngStream& stream);

}  // namespace selinf
