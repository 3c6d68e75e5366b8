#include "selinf/toy.hpp"

#include <stdexcept>

#include "selinf/procedures.hpp"

namespace selinf {

const char* to_string(ToyVariant variant) {
  switch (variant) {
    case ToyVariant::cond_sel_fwer: return "cond-sel-fwer";
    case ToyVariant::cond_sel_fdr: return "cond-sel-fdr";
    case ToyVariant::cond_sel_fcr: return "cond-sel-fcr";
    case ToyVariant::cond_improved_fdr: return "cond-improved-fdr";
    case ToyVariant::selective_improved_fdr: return "selective-improved-fdr";
    case ToyVariant::mabh: return "mabh";
  }
  throw std::logic_error("to_string(ToyVariant): unreachable");
}

ToyVariant toy_variant_from_string(const std::string& name) {
  for (ToyVariant v : {ToyVariant::cond_sel_fwer, ToyVariant::cond_sel_fdr,
                       ToyVariant::cond_sel_fcr, ToyVariant::cond_improved_fdr,
                       ToyVariant::selective_improved_fdr, ToyVariant::mabh})
    if (name == to_string(v)) return v;
  throw std::invalid_argument("unknown toy variant: " + name);
}

double ToyConfig::alpha_prime() const {
  return alpha / (2.0 * lambda - lambda * lambda);
}

void ToyConfig::validate(ToyVariant variant) const {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("ToyConfig: lambda must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ToyConfig: alpha must lie in (0,1)");
  if (variant == ToyVariant::selective_improved_fdr) {
    if (lambda < 2.0 * alpha)
      throw std::invalid_argument("ToyConfig: selective improvement needs lambda >= 2*alpha");
    const double ap = alpha_prime();
    if (!(ap > 0.0 && ap < 1.0))
      throw std::invalid_argument("ToyConfig: derived alpha' outside (0,1)");
  }
  if ((variant == ToyVariant::mabh || variant == ToyVariant::cond_sel_fdr ||
       variant == ToyVariant::cond_improved_fdr) && alpha > 0.5)
    throw std::invalid_argument("ToyConfig: MABH-based variants need alpha <= 1/2");
}

IndexSet toy_select(const PVector& p, double lambda) {
  if (p.size() != 2) throw std::invalid_argument("toy_select: two hypotheses expected");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("toy_select: lambda must lie in (0,1)");
  std::vector<int> members;
  for (int i = 1; i <= 2; ++i)
    if (p.p(i) <= lambda) members.push_back(i);
  return IndexSet(std::move(members), 2);
}

double toy_adjust(double p_i, double lambda, bool selected) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("toy_adjust: lambda must lie in (0,1)");
  if (!(p_i >= 0.0 && p_i <= 1.0))
    throw std::invalid_argument("toy_adjust: p outside [0,1]");
  if (selected && p_i > lambda)
    throw std::invalid_argument("toy_adjust: selected requires p <= lambda");
  if (!selected && p_i <= lambda)
    throw std::invalid_argument("toy_adjust: not selected requires p > lambda");
  return selected ? p_i / lambda : (p_i - lambda) / (1.0 - lambda);
}

namespace {

IndexSet pair_set(bool first, bool second) {
  std::vector<int> members;
  if (first) members.push_back(1);
  if (second) members.push_back(2);
  return IndexSet(std::move(members), 2);
}

// Lemma 1 region at working level alpha' with the follow-up at 2*alpha.
IndexSet selective_improved(double p1, double p2, const ToyConfig& cfg) {
  const double ap = cfg.alpha_prime();
  const double lam = cfg.lambda;
  // ties: treat index 1 as the smaller
  const int lo_idx = (p2 < p1) ? 2 : 1;
  const double lo = (lo_idx == 1) ? p1 : p2;
  const double hi = (lo_idx == 1) ? p2 : p1;
  const bool reject_lo = lo <= lam * ap / 2.0 ||
                         (lo <= lam * ap && hi <= lam * ap) ||
                         (lo <= lam * ap && hi > lam);
  const bool reject_hi = reject_lo && hi <= 2.0 * cfg.alpha;
  if (lo_idx == 1) return pair_set(reject_lo, reject_hi);
  return pair_set(reject_hi, reject_lo);
}

}  // namespace

IndexSet toy_reject(double p1, double p2, const ToyConfig& cfg, ToyVariant variant) {
  cfg.validate(variant);
  if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
    throw std::invalid_argument("toy_reject: p-values outside [0,1]");

  const double lam = cfg.lambda;
  const double alpha = cfg.alpha;
  const bool sel1 = p1 <= lam, sel2 = p2 <= lam;

  switch (variant) {
    case ToyVariant::mabh:
      return mabh2(p1, p2, alpha);

    case ToyVariant::selective_improved_fdr:
      return selective_improved(p1, p2, cfg);

    case ToyVariant::cond_sel_fwer:
    case ToyVariant::cond_sel_fdr: {
      if (sel1 && sel2) {
        const double a1 = toy_adjust(p1, lam, true), a2 = toy_adjust(p2, lam, true);
        return variant == ToyVariant::cond_sel_fwer ? hochberg2(a1, a2, alpha)
                                                    : mabh2(a1, a2, alpha);
      }
      if (sel1) return pair_set(toy_adjust(p1, lam, true) <= alpha, false);
      if (sel2) return pair_set(false, toy_adjust(p2, lam, true) <= alpha);
      return IndexSet::empty(2);
    }

    case ToyVariant::cond_sel_fcr:
      return pair_set(sel1 && toy_adjust(p1, lam, true) <= alpha,
                      sel2 && toy_adjust(p2, lam, true) <= alpha);

    case ToyVariant::cond_improved_fdr: {
      if (sel1 && sel2)
        return mabh2(toy_adjust(p1, lam, true), toy_adjust(p2, lam, true), alpha);
      if (!sel1 && !sel2)
        return mabh2(toy_adjust(p1, lam, false), toy_adjust(p2, lam, false), alpha);
      // |S| = 1: fixed sequence, the selected hypothesis first
      if (sel1) {
        IndexSet r = fixed_sequence_fdr2(toy_adjust(p1, lam, true),
                                         toy_adjust(p2, lam, false), alpha);
        return pair_set(r.contains(1), r.contains(2));
      }
      IndexSet r = fixed_sequence_fdr2(toy_adjust(p2, lam, true),
                                       toy_adjust(p1, lam, false), alpha);
      return pair_set(r.contains(2), r.contains(1));
    }
  }
  throw std::logic_error("toy_reject: unreachable");
}

}  // namespace selinf
