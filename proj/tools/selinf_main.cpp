// Command-line front end: single-shot procedure evaluation, experiment
// suites, lasso inference, and level calibration.  Exit codes: 0 success,
// 2 usage error, 3 failed per-replicate assertion, 4 data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "selinf/csv.hpp"
#include "selinf/datasplit.hpp"
#include "selinf/lasso.hpp"
#include "selinf/procedures.hpp"
#include "selinf/simlab.hpp"
#include "selinf/toy.hpp"
#include "selinf/winner.hpp"

namespace {

using namespace selinf;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAssertion = 3;
constexpr int kExitData = 4;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SELINFER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric SELINFER_SEED\n";
    }
  }
  return 12345;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  return out;
}

// CSV-safe rejection-set encoding: members joined by ';'
std::string encode_set(const IndexSet& set) {
  std::string s;
  for (int i : set.members()) {
    if (!s.empty()) s += ';';
    s += std::to_string(i);
  }
  return s;
}

template <class Table>
int finish_sim(const Table& table, const std::string& out_path,
               long violations, const std::vector<std::uint64_t>& ids,
               const char* what) {
  auto out = open_out(out_path);
  table.write_csv(out);
  if (violations > 0) {
    std::cerr << "ASSERTION FAILED: " << violations << ' ' << what
              << " violation(s); replicate ids:";
    for (std::uint64_t id : ids) std::cerr << ' ' << id;
    std::cerr << '\n';
    return kExitAssertion;
  }
  return kExitOk;
}

struct SimArgs {
  std::string suite;
  std::string out;
  std::uint64_t seed = default_seed();
  long reps = -1;
  int workers = 1;
  double alpha = -1, lambda = -1, shift = -1, delta = -1, rho = -2, beta = -1;
  int n = -1, alternatives = -1, grid_n = -1;
};

ExperimentConfig build_config(const SimArgs& args) {
  ExperimentConfig cfg;
  if (args.suite == "winner") cfg = winner_config();
  else if (args.suite == "liu-example") cfg = liu_config();
  else if (args.suite == "toy") cfg = toy_config();
  else if (args.suite == "datasplit") cfg = datasplit_config();
  else if (args.suite == "directional") cfg = directional_config();
  else throw CLI::ValidationError("--suite", "unknown suite: " + args.suite);
  cfg.seed = args.seed;
  cfg.workers = args.workers;
  if (args.reps > 0) cfg.replicates = args.reps;
  if (args.alpha >= 0) cfg.alpha = args.alpha;
  if (args.lambda >= 0) cfg.lambda = args.lambda;
  if (args.shift >= 0) cfg.shift = args.shift;
  if (args.delta >= 0) cfg.delta = args.delta;
  if (args.rho > -1) cfg.rho = args.rho;
  if (args.beta >= 0) cfg.beta = args.beta;
  if (args.n > 0) cfg.n = args.n;
  if (args.alternatives >= 0) cfg.alternatives = args.alternatives;
  if (args.grid_n > 0) cfg.grid_n = args.grid_n;
  return cfg;
}

int run_sim(const SimArgs& args) {
  const ExperimentConfig cfg = build_config(args);
  if (args.suite == "winner") {
    const WinnerTable table = run_winner_experiment(cfg);
    for (const auto& row : table.rows)
      if (row.procedure == 'D')
        std::cout << "k=" << row.k << " D mean rejections " << row.mean_rejections
                  << " (se " << row.mc_se << ")\n";
    return finish_sim(table, args.out, table.dominance_violations,
                      table.violating_replicates, "B-contains-A");
  }
  if (args.suite == "liu-example") {
    const LiuTable table = run_liu_example(cfg);
    for (const auto& row : table.rows)
      std::cout << row.quantity << " = " << row.estimate.value << " (se "
                << row.estimate.mc_se << ", n=" << row.estimate.replicates << ")\n";
    return finish_sim(table, args.out, table.consistency_violations, {},
                      "truncation-consistency");
  }
  if (args.suite == "toy") {
    const ToyTable table = run_toy_suite(cfg);
    for (const auto& row : table.rows)
      if (row.conditioning == "all")
        std::cout << to_string(row.variant) << ' ' << row.truth << ' ' << row.error_kind
                  << " = " << row.estimate.value << " (se " << row.estimate.mc_se << ")\n";
    std::cout << "grid " << table.grid_n << "x" << table.grid_n << ": "
              << table.grid_dominance_violations << " dominance, "
              << table.grid_intersection_violations << " intersection violations\n";
    return finish_sim(table, args.out,
                      table.grid_dominance_violations + table.grid_intersection_violations,
                      {}, "grid");
  }
  if (args.suite == "datasplit") {
    const DatasplitTable table = run_datasplit_suite(cfg);
    std::cout << "FWER eq4 = " << table.fwer_conditional.value << " (se "
              << table.fwer_conditional.mc_se << ")\n";
    std::cout << "FWER eq5 = " << table.fwer_unconditional.value << " (se "
              << table.fwer_unconditional.mc_se << ")\n";
    return finish_sim(table, args.out, table.dominance_violations,
                      table.violating_replicates, "dominance");
  }
  const DirectionalTable table = run_directional_suite(cfg);
  std::cout << "alpha' = " << table.alpha_prime << '\n';
  for (const auto& row : table.rows)
    std::cout << "mu=" << row.mu << " conditional FWER " << row.conditional_fwer.value
              << ", improved FWER " << row.improved_fwer.value << '\n';
  return finish_sim(table, args.out, table.dominance_violations,
                    table.violating_replicates, "improved-contains-conditional");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selective inference procedures, experiments, and lasso inference"};
  app.require_subcommand(1);

  // toy ---------------------------------------------------------------
  auto* toy_cmd = app.add_subcommand("toy", "two-hypothesis toy procedures");
  double toy_p1 = -1, toy_p2 = -1, toy_lambda = 0.7, toy_alpha = 0.3;
  std::string toy_variant, toy_out;
  int toy_grid = 0;
  toy_cmd->add_option("--p1", toy_p1, "first p-value");
  toy_cmd->add_option("--p2", toy_p2, "second p-value");
  toy_cmd->add_option("--lambda", toy_lambda, "selection threshold")->required();
  toy_cmd->add_option("--alpha", toy_alpha, "level")->required();
  toy_cmd->add_option("--variant", toy_variant,
                      "cond-sel-fwer|cond-sel-fdr|cond-sel-fcr|cond-improved-fdr|"
                      "selective-improved-fdr|mabh");
  toy_cmd->add_option("--grid", toy_grid, "emit an NxN region grid for all variants");
  toy_cmd->add_option("--out", toy_out, "output CSV (grid mode)");

  // winner ------------------------------------------------------------
  auto* winner_cmd = app.add_subcommand("winner", "procedures A-D on one p-vector");
  std::vector<double> winner_p;
  double winner_alpha = 0.05;
  winner_cmd->add_option("--p", winner_p, "p-values")->required()->expected(-2);
  winner_cmd->add_option("--alpha", winner_alpha, "level");

  // datasplit ---------------------------------------------------------
  auto* split_cmd = app.add_subcommand("datasplit", "conditional vs Q-value rejection");
  std::vector<double> split_p1, split_p2;
  double split_lambda = 0.5, split_alpha = 0.05;
  split_cmd->add_option("--p1", split_p1, "selection-half p-values")->required()->expected(-1);
  split_cmd->add_option("--p2", split_p2, "inference-half p-values")->required()->expected(-1);
  split_cmd->add_option("--lambda", split_lambda, "selection threshold");
  split_cmd->add_option("--alpha", split_alpha, "level");

  // lasso ---------------------------------------------------------------
  auto* lasso_cmd = app.add_subcommand("lasso", "post-selection inference at fixed penalty");
  std::string lasso_data, lasso_response, lasso_out;
  std::vector<std::string> lasso_exclude;
  double lasso_lambda = -1, lasso_level = 0.9, lasso_sigma2 = -1;
  std::vector<double> lasso_path_spec;
  bool lasso_no_standardize = false;
  lasso_cmd->add_option("--data", lasso_data, "delimited data file")->required();
  lasso_cmd->add_option("--response", lasso_response, "response column name")->required();
  lasso_cmd->add_option("--lambda", lasso_lambda, "single penalty value");
  lasso_cmd->add_option("--path", lasso_path_spec, "LMIN LMAX STEPS")->expected(3);
  lasso_cmd->add_option("--level", lasso_level, "confidence level (default 0.9)");
  lasso_cmd->add_option("--sigma2", lasso_sigma2, "noise variance override");
  lasso_cmd->add_option("--exclude", lasso_exclude, "columns to drop");
  lasso_cmd->add_flag("--no-standardize", lasso_no_standardize,
                      "keep predictor columns at their original scale");
  lasso_cmd->add_option("--out", lasso_out, "output CSV (default stdout)");

  // sim -----------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("sim", "run a named experiment suite");
  SimArgs sim;
  sim_cmd->add_option("--suite", sim.suite, "winner|liu-example|toy|datasplit|directional")
      ->required();
  sim_cmd->add_option("--seed", sim.seed, "RNG seed (default SELINFER_SEED or 12345)");
  sim_cmd->add_option("--reps", sim.reps, "replicate count");
  sim_cmd->add_option("--workers", sim.workers, "worker threads");
  sim_cmd->add_option("--out", sim.out, "output CSV")->required();
  sim_cmd->add_option("--alpha", sim.alpha, "level");
  sim_cmd->add_option("--lambda", sim.lambda, "selection threshold / lasso penalty");
  sim_cmd->add_option("--shift", sim.shift, "alternative mean shift");
  sim_cmd->add_option("--delta", sim.delta, "directional overlap half-width");
  sim_cmd->add_option("--rho", sim.rho, "design correlation");
  sim_cmd->add_option("--beta", sim.beta, "true coefficient (liu example)");
  sim_cmd->add_option("--n", sim.n, "hypothesis count");
  sim_cmd->add_option("--alternatives", sim.alternatives, "alternative count / max k");
  sim_cmd->add_option("--grid", sim.grid_n, "toy region grid resolution");

  // calibrate -------------------------------------------------------------
  auto* cal_cmd = app.add_subcommand("calibrate", "directional alpha' calibration");
  double cal_alpha = 0.05, cal_delta = 0.5;
  cal_cmd->add_option("--alpha", cal_alpha, "target level")->required();
  cal_cmd->add_option("--delta", cal_delta, "overlap half-width")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*toy_cmd) {
      if (toy_grid > 0) {
        if (toy_out.empty()) throw std::invalid_argument("grid mode needs --out");
        auto out = open_out(toy_out);
        out << "p1,p2,variant,rejected_set\n";
        const ToyConfig cfg{toy_lambda, toy_alpha};
        for (int a = 0; a < toy_grid; ++a) {
          const double p1 = (a + 0.5) / toy_grid;
          for (int b = 0; b < toy_grid; ++b) {
            const double p2 = (b + 0.5) / toy_grid;
            for (ToyVariant v :
                 {ToyVariant::cond_sel_fwer, ToyVariant::cond_sel_fdr,
                  ToyVariant::cond_sel_fcr, ToyVariant::cond_improved_fdr,
                  ToyVariant::selective_improved_fdr, ToyVariant::mabh})
              out << csv::num(p1) << ',' << csv::num(p2) << ',' << to_string(v) << ','
                  << encode_set(toy_reject(p1, p2, cfg, v)) << '\n';
          }
        }
        return kExitOk;
      }
      if (toy_p1 < 0 || toy_p2 < 0 || toy_variant.empty())
        throw std::invalid_argument("single mode needs --p1 --p2 --variant");
      const ToyConfig cfg{toy_lambda, toy_alpha};
      const IndexSet rejected =
          toy_reject(toy_p1, toy_p2, cfg, toy_variant_from_string(toy_variant));
      std::cout << "R=" << rejected.to_string() << '\n';
      return kExitOk;
    }

    if (*winner_cmd) {
      const PVector p(winner_p);
      const WinnerResult a = procedure_a(p, winner_alpha);
      const WinnerResult b = procedure_b(p, winner_alpha);
      const WinnerResult c = procedure_c(p, winner_alpha);
      const IndexSet d = procedure_d(p, winner_alpha);
      std::cout << "winner=" << a.winner << " adjusted_p=" << a.adjusted_p_winner << '\n';
      std::cout << "A: R=" << a.rejected.to_string() << '\n';
      std::cout << "B: R=" << b.rejected.to_string() << '\n';
      std::cout << "C: R=" << c.rejected.to_string() << '\n';
      std::cout << "D: R=" << d.to_string() << '\n';
      return kExitOk;
    }

    if (*split_cmd) {
      const SplitPValues sp{PVector(split_p1), PVector(split_p2)};
      const IndexSet selected = split_select(sp, split_lambda);
      const IndexSet r4 = split_conditional_reject(sp, selected, split_alpha);
      const PVector q = q_values(sp, split_lambda);
      const IndexSet r5 = split_unconditional_reject(q, split_alpha);
      std::cout << "S=" << selected.to_string() << '\n';
      std::cout << "R_conditional=" << r4.to_string() << '\n';
      std::cout << "R_unconditional=" << r5.to_string() << '\n';
      std::cout << "Q=";
      for (int i = 1; i <= q.size(); ++i) std::cout << (i > 1 ? "," : "") << q.p(i);
      std::cout << '\n';
      return kExitOk;
    }

    if (*lasso_cmd) {
      LoadOptions options;
      options.response = lasso_response;
      options.exclude = lasso_exclude;
      options.standardize = !lasso_no_standardize;
      if (lasso_sigma2 > 0) options.sigma2_override = lasso_sigma2;
      const LinearModelData data = load_regression_data(lasso_data, options);

      std::vector<PathRecord> records;
      if (!lasso_path_spec.empty()) {
        const int steps = static_cast<int>(lasso_path_spec[2]);
        if (steps < 2) throw std::invalid_argument("--path needs STEPS >= 2");
        std::vector<double> grid(static_cast<std::size_t>(steps));
        for (int g = 0; g < steps; ++g)
          grid[static_cast<std::size_t>(g)] =
              lasso_path_spec[0] +
              (lasso_path_spec[1] - lasso_path_spec[0]) * g / (steps - 1);
        records = lambda_path(data, grid, lasso_level);
        for (const auto& rec : records)
          if (rec.active_set_changed && rec.variable == 1)
            std::cout << "active set changes at lambda=" << rec.lambda << '\n';
      } else {
        if (lasso_lambda < 0) throw std::invalid_argument("need --lambda or --path");
        records = lasso_inference(data, lasso_lambda, lasso_level);
      }

      std::ofstream file;
      if (!lasso_out.empty()) file = open_out(lasso_out);
      std::ostream& out = lasso_out.empty() ? std::cout : file;
      out << "variable,lambda,selected,beta_hat,p_value,ci_lo,ci_hi\n";
      for (const auto& rec : records) {
        const std::string name =
            data.names.empty() ? std::to_string(rec.variable)
                               : data.names[static_cast<std::size_t>(rec.variable) - 1];
        out << name << ',' << csv::num(rec.lambda) << ',' << (rec.selected ? 1 : 0)
            << ',' << csv::num(rec.beta_hat) << ',' << csv::num(rec.p_value) << ','
            << csv::num(rec.ci_lo) << ',' << csv::num(rec.ci_hi) << '\n';
      }
      return kExitOk;
    }

    if (*sim_cmd) return run_sim(sim);

    if (*cal_cmd) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", solve_alpha_prime(cal_alpha, cal_delta));
      std::cout << buf << '\n';
      return kExitOk;
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
