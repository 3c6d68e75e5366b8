#include <cmath>
#include <sstream>

#include "doctest.h"
#include "selinf/simlab.hpp"

using namespace selinf;

namespace {

template <class Table>
std::string csv_of(const Table& table) {
  std::ostringstream out;
  table.write_csv(out);
  return out.str();
}

}  // namespace

TEST_CASE("estimate_mean matches the sample-sd definition") {
  const ErrorRateEstimate est = estimate_mean({0.0, 1.0, 1.0, 0.0});
  CHECK(est.value == doctest::Approx(0.5));
  CHECK(est.mc_se == doctest::Approx(std::sqrt(1.0 / 3.0) / 2.0));
  CHECK(est.replicates == 4);
  CHECK(estimate_mean({}).replicates == 0);
  CHECK(estimate_mean({0.7}).mc_se == 0.0);
}

TEST_CASE("winner experiment: shape, dominance, and per-k sanity") {
  ExperimentConfig cfg = winner_config();
  cfg.replicates = 400;
  cfg.seed = 7;
  const WinnerTable table = run_winner_experiment(cfg);
  CHECK(table.rows.size() == 44);  // 11 k-values x 4 procedures
  CHECK(table.dominance_violations == 0);
  for (const auto& row : table.rows) {
    CHECK(row.mean_rejections >= 0.0);
    if (row.procedure == 'A' || row.procedure == 'C')
      CHECK(row.mean_rejections <= 1.0);
  }
}

TEST_CASE("suites are bit-reproducible and worker-count invariant") {
  ExperimentConfig cfg = winner_config();
  cfg.replicates = 300;
  cfg.seed = 99;
  const std::string once = csv_of(run_winner_experiment(cfg));
  const std::string twice = csv_of(run_winner_experiment(cfg));
  CHECK(once == twice);
  cfg.workers = 3;
  CHECK(csv_of(run_winner_experiment(cfg)) == once);

  ExperimentConfig toy = toy_config();
  toy.replicates = 500;
  toy.grid_n = 40;
  const std::string toy_once = csv_of(run_toy_suite(toy));
  toy.workers = 4;
  CHECK(csv_of(run_toy_suite(toy)) == toy_once);

  ExperimentConfig liu = liu_config();
  liu.replicates = 300;
  const std::string liu_once = csv_of(run_liu_example(liu));
  liu.workers = 2;
  CHECK(csv_of(run_liu_example(liu)) == liu_once);

  ExperimentConfig split = datasplit_config();
  split.replicates = 400;
  const std::string split_once = csv_of(run_datasplit_suite(split));
  split.workers = 5;
  CHECK(csv_of(run_datasplit_suite(split)) == split_once);

  ExperimentConfig dir = directional_config();
  dir.replicates = 400;
  const std::string dir_once = csv_of(run_directional_suite(dir));
  dir.workers = 2;
  CHECK(csv_of(run_directional_suite(dir)) == dir_once);
}

TEST_CASE("different seeds change the draws") {
  ExperimentConfig cfg = winner_config();
  cfg.replicates = 300;
  cfg.seed = 1;
  const std::string a = csv_of(run_winner_experiment(cfg));
  cfg.seed = 2;
  CHECK(csv_of(run_winner_experiment(cfg)) != a);
}

TEST_CASE("toy suite: grid checks clean, estimates under control at small scale") {
  ExperimentConfig cfg = toy_config();
  cfg.replicates = 4000;
  cfg.grid_n = 100;
  const ToyTable table = run_toy_suite(cfg);
  CHECK(table.grid_dominance_violations == 0);
  CHECK(table.grid_intersection_violations == 0);
  // overall error of each variant under the global null within 5 se of alpha
  for (ToyVariant v : {ToyVariant::cond_sel_fwer, ToyVariant::cond_sel_fdr,
                       ToyVariant::cond_sel_fcr, ToyVariant::cond_improved_fdr,
                       ToyVariant::selective_improved_fdr, ToyVariant::mabh}) {
    const ErrorRateEstimate est = table.at(v, "TT", "all");
    CHECK(est.value <= cfg.alpha + 5 * est.mc_se);
  }
  // conditional rows exist and attach counts
  const ErrorRateEstimate cond = table.at(ToyVariant::cond_sel_fdr, "TT", "S={1,2}");
  CHECK(cond.replicates > 0);
}

TEST_CASE("datasplit suite: dominance never violated, q-grid attached") {
  ExperimentConfig cfg = datasplit_config();
  cfg.replicates = 3000;
  const DatasplitTable table = run_datasplit_suite(cfg);
  CHECK(table.dominance_violations == 0);
  CHECK(table.q_validity.size() == 20);
  for (const auto& [t, est] : table.q_validity)
    CHECK(est.value <= t + 4 * est.mc_se + 1e-12);

  ExperimentConfig null_cfg = cfg;
  null_cfg.alternatives = 0;
  const DatasplitTable null_table = run_datasplit_suite(null_cfg);
  CHECK(null_table.fwer_conditional.value <=
        cfg.alpha + 4 * null_table.fwer_conditional.mc_se);
  CHECK(null_table.fwer_unconditional.value <=
        cfg.alpha + 4 * null_table.fwer_unconditional.mc_se);
}

TEST_CASE("directional suite: dominance clean, conditional below improved") {
  ExperimentConfig cfg = directional_config();
  cfg.replicates = 20000;
  const DirectionalTable table = run_directional_suite(cfg);
  CHECK(table.dominance_violations == 0);
  CHECK(table.rows.size() == 5);
  CHECK(table.alpha_prime > cfg.alpha);
  for (const auto& row : table.rows) {
    CHECK(row.conditional_fwer.value <= row.improved_fwer.value + 1e-12);
    CHECK(row.improved_fwer.value <= cfg.alpha + 4 * row.improved_fwer.mc_se);
  }
}

TEST_CASE("liu example at reduced scale remains near Table values") {
  ExperimentConfig cfg = liu_config();
  cfg.replicates = 8000;
  cfg.workers = 4;
  const LiuTable table = run_liu_example(cfg);
  CHECK(table.consistency_violations == 0);
  CHECK(table.at("p_s12").value == doctest::Approx(0.878187).epsilon(0.03));
  CHECK(table.at("p_single_avg").value == doctest::Approx(0.0609).epsilon(0.15));
  CHECK(table.at("coverage_given_both").value == doctest::Approx(0.9355).epsilon(0.02));
  CHECK(table.at("eq6_coverage_1").value == doctest::Approx(0.9).epsilon(0.02));
  CHECK(table.at("fcr").value == doctest::Approx(0.1312).epsilon(0.15));
}
