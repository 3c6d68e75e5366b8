#pragma once

// Two-hypothesis toy setting: threshold selection S = {i: p_i <= lambda},
// selection-adjusted p-values, the three conditional selective procedures,
// and their conditional/selective uniform improvements.

#include "selinf/core.hpp"

namespace selinf {

enum class ToyVariant {
  cond_sel_fwer,
  cond_sel_fdr,
  cond_sel_fcr,
  cond_improved_fdr,
  selective_improved_fdr,
  mabh,
};

const char* to_string(ToyVariant variant);
ToyVariant toy_variant_from_string(const std::string& name);  // "cond-sel-fdr", ...

struct ToyConfig {
  double lambda;
  double alpha;

  // alpha / (2*lambda - lambda^2)
  double alpha_prime() const;
  // throws when the pair is invalid for the given variant
  void validate(ToyVariant variant) const;
};

// {i : p_i <= lambda}; two hypotheses.
IndexSet toy_select(const PVector& p, double lambda);

// p/lambda when selected, (p - lambda)/(1 - lambda) otherwise.
double toy_adjust(double p_i, double lambda, bool selected);

// Rejection region of the requested variant at the point (p1, p2).
IndexSet toy_reject(double p1, double p2, const ToyConfig& cfg, ToyVariant variant);

}  // namespace selinf
