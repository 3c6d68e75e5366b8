#pragma once

// Deterministic Monte Carlo suites reproducing the quantitative results:
// the winner-procedure comparison, the two-variable lasso coverage table,
// toy error control with exhaustive region checks, data-split dominance,
// and the directional calibration.  Replicate r always draws from
// RngStream(seed, global replicate id), so results are independent of the
// worker count.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "selinf/core.hpp"
#include "selinf/toy.hpp"

namespace selinf {

struct ErrorRateEstimate {
  double value = 0.0;
  double mc_se = 0.0;   // sample standard deviation / sqrt(replicates)
  long replicates = 0;
};

ErrorRateEstimate estimate_mean(const std::vector<double>& values);

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 12345;
  long replicates = 10000;
  double alpha = 0.05;
  int workers = 1;
  // scenario parameters; each suite validates the ones it uses
  int n = 100;             // hypothesis count (winner, datasplit)
  double shift = 3.0;      // alternative mean shift
  int alternatives = 10;   // winner: largest k; datasplit: alternative count
  double lambda = 0.5;     // selection threshold or lasso penalty
  double rho = 0.95;       // design correlation (liu example)
  double sigma2 = 1.0;     // noise variance (liu example)
  double beta = 5.0;       // true coefficient, both variables (liu example)
  double delta = 0.5;      // directional overlap half-width
  int grid_n = 400;        // toy region grid resolution
};

ExperimentConfig winner_config();
ExperimentConfig liu_config();
ExperimentConfig toy_config();
ExperimentConfig datasplit_config();
ExperimentConfig directional_config();

// --- winner (Procedures A-D over k = 0..alternatives signals) ------------

struct WinnerRow {
  int k;
  char procedure;
  double mean_rejections;
  double mc_se;
};

struct WinnerTable {
  std::vector<WinnerRow> rows;
  long dominance_violations = 0;  // replicates where B did not contain A
  std::vector<std::uint64_t> violating_replicates;
  void write_csv(std::ostream& out) const;
};

WinnerTable run_winner_experiment(const ExperimentConfig& cfg);

// --- liu example (two correlated variables, Table-style estimates) -------

struct LiuRow {
  std::string quantity;
  ErrorRateEstimate estimate;
};

struct LiuTable {
  std::vector<LiuRow> rows;
  long consistency_violations = 0;  // selected flag vs beta_hat outside (a,b)
  const ErrorRateEstimate& at(const std::string& quantity) const;
  void write_csv(std::ostream& out) const;
};

LiuTable run_liu_example(const ExperimentConfig& cfg);

// --- toy suite (error rates per variant/truth, exhaustive grid checks) ---

struct ToyErrorRow {
  ToyVariant variant;
  std::string truth;         // "TT","TF","FT","FF"  (T = null hypothesis)
  std::string conditioning;  // "all","S={}","S={1}","S={2}","S={1,2}"
  std::string error_kind;    // "FDR","FWER","FCR"
  ErrorRateEstimate estimate;
};

struct ToyTable {
  std::vector<ToyErrorRow> rows;
  long grid_dominance_violations = 0;
  long grid_intersection_violations = 0;
  int grid_n = 0;
  const ErrorRateEstimate& at(ToyVariant variant, const std::string& truth,
                              const std::string& conditioning) const;
  void write_csv(std::ostream& out) const;
};

ToyTable run_toy_suite(const ExperimentConfig& cfg);

// --- data splitting (Eq. 4 vs Eq. 5, dominance and Q-value validity) -----

struct DatasplitTable {
  ErrorRateEstimate fwer_conditional;    // Eq. (4)
  ErrorRateEstimate fwer_unconditional;  // Eq. (5)
  std::vector<std::pair<double, ErrorRateEstimate>> q_validity;  // t, P(Q<=t)
  long dominance_violations = 0;
  std::vector<std::uint64_t> violating_replicates;
  void write_csv(std::ostream& out) const;
};

DatasplitTable run_datasplit_suite(const ExperimentConfig& cfg);

// --- directional example (conditional vs calibrated closed testing) ------

struct DirectionalRow {
  double mu;
  ErrorRateEstimate conditional_fwer;
  ErrorRateEstimate improved_fwer;
};

struct DirectionalTable {
  std::vector<DirectionalRow> rows;
  double alpha_prime = 0.0;
  long dominance_violations = 0;  // improved must contain conditional
  std::vector<std::uint64_t> violating_replicates;
  void write_csv(std::ostream& out) const;
};

DirectionalTable run_directional_suite(const ExperimentConfig& cfg);

}  // namespace selinf
