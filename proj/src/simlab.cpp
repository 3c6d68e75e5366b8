#include "selinf/simlab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "selinf/csv.hpp"
#include "selinf/datasplit.hpp"
#include "selinf/lasso.hpp"
#include "selinf/normal.hpp"
#include "selinf/procedures.hpp"
#include "selinf/winner.hpp"

namespace selinf {

namespace {

constexpr std::size_t kMaxRecordedViolations = 1000;

// Runs body(r) for r in [0, total), split over contiguous chunks.  Callers
// write results into preallocated per-replicate slots, so the reduction
// order (and hence every reported byte) is independent of the worker count.
template <class Body>
void parallel_replicates(long total, int workers, const Body& body) {
  workers = std::max(1, workers);
  if (workers == 1 || total < 2 * workers) {
    for (long r = 0; r < total; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long begin = w * chunk, end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (long r = begin; r < end; ++r) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// p-value of a one-sided normal test under a mean shift
double alternative_pvalue(RngStream& stream, double shift) {
  return normal_cdf(-(stream.normal() + shift));
}

void record_violation(std::vector<std::uint64_t>& ids, std::uint64_t id) {
  if (ids.size() < kMaxRecordedViolations) ids.push_back(id);
}

}  // namespace

ErrorRateEstimate estimate_mean(const std::vector<double>& values) {
  const long n = static_cast<long>(values.size());
  if (n == 0) return {0.0, 0.0, 0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0, 1};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

ExperimentConfig winner_config() {
  ExperimentConfig cfg;
  cfg.name = "winner";
  cfg.replicates = 10000;
  cfg.alpha = 0.05;
  cfg.n = 100;
  cfg.shift = 3.0;
  cfg.alternatives = 10;
  return cfg;
}

ExperimentConfig liu_config() {
  ExperimentConfig cfg;
  cfg.name = "liu-example";
  cfg.replicates = 1000000;
  cfg.alpha = 0.10;
  cfg.lambda = 0.2;
  cfg.rho = 0.95;
  cfg.sigma2 = 1.0;
  cfg.beta = 5.0;
  return cfg;
}

ExperimentConfig toy_config() {
  ExperimentConfig cfg;
  cfg.name = "toy";
  cfg.replicates = 100000;
  cfg.alpha = 0.3;
  cfg.lambda = 0.7;
  cfg.shift = 3.0;
  cfg.grid_n = 400;
  return cfg;
}

ExperimentConfig datasplit_config() {
  ExperimentConfig cfg;
  cfg.name = "datasplit";
  cfg.replicates = 100000;
  cfg.alpha = 0.05;
  cfg.n = 20;
  cfg.lambda = 0.5;
  cfg.alternatives = 10;
  cfg.shift = 3.0;
  return cfg;
}

ExperimentConfig directional_config() {
  ExperimentConfig cfg;
  cfg.name = "directional";
  cfg.replicates = 100000;
  cfg.alpha = 0.05;
  cfg.delta = 0.5;
  return cfg;
}

// --------------------------------------------------------------------------
// winner

WinnerTable run_winner_experiment(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, "winner: replicates >= 1");
  require(cfg.n >= 2, "winner: n >= 2");
  require(cfg.alternatives >= 0 && cfg.alternatives <= cfg.n, "winner: 0 <= k <= n");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "winner: alpha in (0,1)");
  require(cfg.n * cfg.alpha / (cfg.n - 1) < 1.0, "winner: n*alpha/(n-1) below 1");

  const int scenario_count = cfg.alternatives + 1;
  const long reps = cfg.replicates;
  std::vector<std::array<std::uint8_t, 4>> counts(
      static_cast<std::size_t>(scenario_count) * static_cast<std::size_t>(reps));
  std::vector<std::uint8_t> dominated(counts.size(), 1);

  parallel_replicates(static_cast<long>(counts.size()), cfg.workers, [&](long id) {
    const int k = static_cast<int>(id / reps);
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(id));
    std::vector<double> p(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i)
      p[static_cast<std::size_t>(i)] = i < k ? alternative_pvalue(stream, cfg.shift)
                                             : stream.uniform01();
    const PVector pv(std::move(p));
    const WinnerResult a = procedure_a(pv, cfg.alpha);
    const WinnerResult b = procedure_b(pv, cfg.alpha);
    const WinnerResult c = procedure_c(pv, cfg.alpha);
    const IndexSet d = procedure_d(pv, cfg.alpha);
    counts[static_cast<std::size_t>(id)] = {
        static_cast<std::uint8_t>(a.rejected.size()),
        static_cast<std::uint8_t>(b.rejected.size()),
        static_cast<std::uint8_t>(c.rejected.size()),
        static_cast<std::uint8_t>(d.size())};
    dominated[static_cast<std::size_t>(id)] = a.rejected.subset_of(b.rejected) ? 1 : 0;
  });

  WinnerTable table;
  for (int k = 0; k < scenario_count; ++k) {
    for (int proc = 0; proc < 4; ++proc) {
      std::vector<double> values(static_cast<std::size_t>(reps));
      for (long r = 0; r < reps; ++r)
        values[static_cast<std::size_t>(r)] =
            counts[static_cast<std::size_t>(k) * static_cast<std::size_t>(reps) +
                   static_cast<std::size_t>(r)][static_cast<std::size_t>(proc)];
      const ErrorRateEstimate est = estimate_mean(values);
      table.rows.push_back({k, "ABCD"[proc], est.value, est.mc_se});
    }
  }
  for (std::size_t id = 0; id < dominated.size(); ++id) {
    if (!dominated[id]) {
      ++table.dominance_violations;
      record_violation(table.violating_replicates, id);
    }
  }
  return table;
}

void WinnerTable::write_csv(std::ostream& out) const {
  out << "k_alternatives,procedure,mean_rejections,mc_se\n";
  for (const auto& row : rows)
    out << row.k << ',' << row.procedure << ',' << csv::num(row.mean_rejections)
        << ',' << csv::num(row.mc_se) << '\n';
}

// --------------------------------------------------------------------------
// liu example

namespace {

struct LiuRecord {
  std::uint8_t s_code;  // 0 empty, 1 {1}, 2 {2}, 3 {1,2}
  bool cover90[2];
  bool cover95[2];
  bool consistent;
};

}  // namespace

LiuTable run_liu_example(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, "liu: replicates >= 1");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "liu: alpha in (0,1)");
  require(cfg.rho > -1.0 && cfg.rho < 1.0, "liu: rho in (-1,1)");
  require(cfg.sigma2 > 0.0, "liu: sigma2 > 0");
  require(cfg.lambda > 0.0, "liu: lambda > 0");

  const double c = std::sqrt((1.0 + cfg.rho) / 2.0);
  const double s = std::sqrt((1.0 - cfg.rho) / 2.0);
  Eigen::MatrixXd X(2, 2);
  X << c, c, -s, s;
  const Eigen::Vector2d beta(cfg.beta, cfg.beta);
  const Eigen::Vector2d mu = X * beta;
  const double level = 1.0 - cfg.alpha;
  const double adjusted_level = 1.0 - cfg.alpha / 2.0;
  const double sigma = std::sqrt(cfg.sigma2);

  std::vector<LiuRecord> records(static_cast<std::size_t>(cfg.replicates));
  parallel_replicates(cfg.replicates, cfg.workers, [&](long r) {
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    LinearModelData data;
    data.X = X;
    data.sigma2 = cfg.sigma2;
    data.y = mu + sigma * Eigen::Vector2d(stream.normal(), stream.normal());

    LiuRecord rec{0, {false, false}, {false, false}, true};
    for (int i = 1; i <= 2; ++i) {
      const PosiQuantities q = posi_quantities(data, cfg.lambda, i);
      const bool outside = q.beta_hat <= q.a || q.beta_hat >= q.b;
      rec.consistent = rec.consistent && outside == q.selected;
      if (!q.selected) continue;
      rec.s_code |= static_cast<std::uint8_t>(1 << (i - 1));
      const Interval ci90 = selective_ci(q, cfg.sigma2, level);
      rec.cover90[i - 1] = ci90.lo <= beta[i - 1] && beta[i - 1] <= ci90.hi;
      const Interval ci95 = selective_ci(q, cfg.sigma2, adjusted_level);
      rec.cover95[i - 1] = ci95.lo <= beta[i - 1] && beta[i - 1] <= ci95.hi;
    }
    records[static_cast<std::size_t>(r)] = rec;
  });

  // fixed-order reductions
  std::vector<double> is_s1, is_s2, is_s12, is_empty, single_avg;
  std::vector<double> cov_single, cov_both, eq6_1, eq6_2, fcr, simultaneous, cond_sim;
  is_s1.reserve(records.size());
  long consistency_violations = 0;
  for (const LiuRecord& rec : records) {
    if (!rec.consistent) ++consistency_violations;
    const bool s1 = rec.s_code == 1, s2 = rec.s_code == 2, s12 = rec.s_code == 3;
    is_s1.push_back(s1);
    is_s2.push_back(s2);
    is_s12.push_back(s12);
    is_empty.push_back(rec.s_code == 0);
    single_avg.push_back(0.5 * (s1 + s2));
    if (s1) cov_single.push_back(rec.cover90[0]);
    if (s2) cov_single.push_back(rec.cover90[1]);
    if (s12) {
      cov_both.push_back(0.5 * (rec.cover90[0] + rec.cover90[1]));
      cond_sim.push_back(rec.cover95[0] && rec.cover95[1]);
    }
    if (s1 || s12) eq6_1.push_back(rec.cover90[0]);
    if (s2 || s12) eq6_2.push_back(rec.cover90[1]);
    const int selected_count = (rec.s_code & 1) + (rec.s_code >> 1);
    int missed = 0;
    if (rec.s_code & 1) missed += !rec.cover90[0];
    if (rec.s_code & 2) missed += !rec.cover90[1];
    fcr.push_back(static_cast<double>(missed) / std::max(selected_count, 1));
    if (s12)
      simultaneous.push_back(rec.cover95[0] && rec.cover95[1]);
    else if (s1)
      simultaneous.push_back(rec.cover90[0]);
    else if (s2)
      simultaneous.push_back(rec.cover90[1]);
    else
      simultaneous.push_back(1.0);  // empty selection covers vacuously
  }

  LiuTable table;
  table.consistency_violations = consistency_violations;
  table.rows = {
      {"p_s_empty", estimate_mean(is_empty)},
      {"p_s1", estimate_mean(is_s1)},
      {"p_s2", estimate_mean(is_s2)},
      {"p_single_avg", estimate_mean(single_avg)},
      {"p_s12", estimate_mean(is_s12)},
      {"coverage_given_single", estimate_mean(cov_single)},
      {"coverage_given_both", estimate_mean(cov_both)},
      {"eq6_coverage_1", estimate_mean(eq6_1)},
      {"eq6_coverage_2", estimate_mean(eq6_2)},
      {"fcr", estimate_mean(fcr)},
      {"simultaneous_adjusted", estimate_mean(simultaneous)},
      {"cond_simultaneous_95_given_both", estimate_mean(cond_sim)},
  };
  return table;
}

const ErrorRateEstimate& LiuTable::at(const std::string& quantity) const {
  for (const auto& row : rows)
    if (row.quantity == quantity) return row.estimate;
  throw std::out_of_range("LiuTable: unknown quantity " + quantity);
}

void LiuTable::write_csv(std::ostream& out) const {
  out << "quantity,estimate,mc_se,count\n";
  for (const auto& row : rows)
    out << row.quantity << ',' << csv::num(row.estimate.value) << ','
        << csv::num(row.estimate.mc_se) << ',' << row.estimate.replicates << '\n';
}

// --------------------------------------------------------------------------
// toy suite

namespace {

constexpr std::array<ToyVariant, 6> kToyVariants = {
    ToyVariant::cond_sel_fwer,        ToyVariant::cond_sel_fdr,
    ToyVariant::cond_sel_fcr,         ToyVariant::cond_improved_fdr,
    ToyVariant::selective_improved_fdr, ToyVariant::mabh,
};

const char* toy_error_kind(ToyVariant variant) {
  switch (variant) {
    case ToyVariant::cond_sel_fwer: return "FWER";
    case ToyVariant::cond_sel_fcr: return "FCR";
    default: return "FDR";
  }
}

const char* s_event_name(int code) {
  switch (code) {
    case 0: return "S={}";
    case 1: return "S={1}";
    case 2: return "S={2}";
    default: return "S={1,2}";
  }
}

// midpoint grid nudged off every rejection threshold
std::vector<double> toy_grid_points(int grid_n, const ToyConfig& cfg) {
  const double ap = cfg.alpha_prime();
  const double lam = cfg.lambda, alpha = cfg.alpha;
  const std::vector<double> thresholds = {
      lam,         lam * alpha,      lam * alpha / 2, 2 * lam * alpha,
      lam * ap,    lam * ap / 2,     2 * alpha,       alpha,
      alpha / 2,   lam + (1 - lam) * alpha,           lam + (1 - lam) * alpha / 2,
      lam + 2 * (1 - lam) * alpha};
  std::vector<double> points(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) {
    double p = (k + 0.5) / grid_n;
    for (double t : thresholds)
      if (std::fabs(p - t) < 1e-9) p += 1e-7;
    points[static_cast<std::size_t>(k)] = p;
  }
  return points;
}

}  // namespace

ToyTable run_toy_suite(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, "toy: replicates >= 1");
  require(cfg.grid_n >= 2, "toy: grid_n >= 2");
  const ToyConfig toy_cfg{cfg.lambda, cfg.alpha};
  for (ToyVariant v : kToyVariants) toy_cfg.validate(v);

  const std::array<std::array<bool, 2>, 4> truth_flags = {{
      {true, true}, {true, false}, {false, true}, {false, false}}};
  const std::array<const char*, 4> truth_names = {"TT", "TF", "FT", "FF"};

  const long reps = cfg.replicates;
  struct Record {
    std::uint8_t s_code;
    std::array<double, 6> error;
  };
  std::vector<Record> records(4 * static_cast<std::size_t>(reps));

  parallel_replicates(static_cast<long>(records.size()), cfg.workers, [&](long id) {
    const int truth_idx = static_cast<int>(id / reps);
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(id));
    const auto& nulls = truth_flags[static_cast<std::size_t>(truth_idx)];
    double p[2];
    for (int i = 0; i < 2; ++i)
      p[i] = nulls[static_cast<std::size_t>(i)] ? stream.uniform01()
                                                : alternative_pvalue(stream, cfg.shift);
    const TruthMask truth({nulls[0], nulls[1]});
    const IndexSet selected = toy_select(PVector({p[0], p[1]}), cfg.lambda);
    Record rec;
    rec.s_code = static_cast<std::uint8_t>((selected.contains(1) ? 1 : 0) |
                                           (selected.contains(2) ? 2 : 0));
    for (std::size_t v = 0; v < kToyVariants.size(); ++v) {
      const ToyVariant variant = kToyVariants[v];
      const IndexSet rejected = toy_reject(p[0], p[1], toy_cfg, variant);
      const ErrorRateKind kind = variant == ToyVariant::cond_sel_fwer
                                     ? ErrorRateKind::fwer()
                                 : variant == ToyVariant::cond_sel_fcr
                                     ? ErrorRateKind::fcr_style()
                                     : ErrorRateKind::fdr();
      rec.error[v] = error_value(kind, rejected, selected, truth);
    }
    records[static_cast<std::size_t>(id)] = rec;
  });

  ToyTable table;
  table.grid_n = cfg.grid_n;
  for (int truth_idx = 0; truth_idx < 4; ++truth_idx) {
    const std::size_t base = static_cast<std::size_t>(truth_idx) * static_cast<std::size_t>(reps);
    for (std::size_t v = 0; v < kToyVariants.size(); ++v) {
      std::vector<double> overall;
      std::array<std::vector<double>, 4> by_event;
      overall.reserve(static_cast<std::size_t>(reps));
      for (long r = 0; r < reps; ++r) {
        const Record& rec = records[base + static_cast<std::size_t>(r)];
        overall.push_back(rec.error[v]);
        by_event[rec.s_code].push_back(rec.error[v]);
      }
      const ToyVariant variant = kToyVariants[v];
      table.rows.push_back({variant, truth_names[static_cast<std::size_t>(truth_idx)], "all",
                            toy_error_kind(variant), estimate_mean(overall)});
      for (int code = 0; code < 4; ++code)
        table.rows.push_back({variant, truth_names[static_cast<std::size_t>(truth_idx)],
                              s_event_name(code), toy_error_kind(variant),
                              estimate_mean(by_event[static_cast<std::size_t>(code)])});
    }
  }

  // exhaustive region checks: dominance and the intersection identity
  const std::vector<double> points = toy_grid_points(cfg.grid_n, toy_cfg);
  for (double p1 : points) {
    for (double p2 : points) {
      const IndexSet base = toy_reject(p1, p2, toy_cfg, ToyVariant::cond_sel_fdr);
      const IndexSet cond = toy_reject(p1, p2, toy_cfg, ToyVariant::cond_improved_fdr);
      const IndexSet sel = toy_reject(p1, p2, toy_cfg, ToyVariant::selective_improved_fdr);
      if (!base.subset_of(cond)) ++table.grid_dominance_violations;
      if (!base.subset_of(sel)) ++table.grid_dominance_violations;
      for (int i = 1; i <= 2; ++i)
        if (base.contains(i) != (cond.contains(i) && sel.contains(i)))
          ++table.grid_intersection_violations;
    }
  }
  return table;
}

const ErrorRateEstimate& ToyTable::at(ToyVariant variant, const std::string& truth,
                                      const std::string& conditioning) const {
  for (const auto& row : rows)
    if (row.variant == variant && row.truth == truth && row.conditioning == conditioning)
      return row.estimate;
  throw std::out_of_range("ToyTable: no such row");
}

void ToyTable::write_csv(std::ostream& out) const {
  out << "variant,truth,conditioning,error_kind,estimate,mc_se,count\n";
  for (const auto& row : rows)
    out << to_string(row.variant) << ',' << row.truth << ',' << row.conditioning << ','
        << row.error_kind << ',' << csv::num(row.estimate.value) << ','
        << csv::num(row.estimate.mc_se) << ',' << row.estimate.replicates << '\n';
}

// --------------------------------------------------------------------------
// data splitting

DatasplitTable run_datasplit_suite(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, "datasplit: replicates >= 1");
  require(cfg.n >= 1, "datasplit: n >= 1");
  require(cfg.alternatives >= 0 && cfg.alternatives <= cfg.n, "datasplit: 0 <= k <= n");
  require(cfg.lambda > 0.0 && cfg.lambda < 1.0, "datasplit: lambda in (0,1)");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "datasplit: alpha in (0,1)");

  const int n = cfg.n, k_alt = cfg.alternatives;
  const int null_count = n - k_alt;
  std::vector<double> t_grid(20);
  for (int j = 0; j < 20; ++j) t_grid[static_cast<std::size_t>(j)] = (j + 0.5) / 20.0;

  struct Record {
    bool false_rejection_eq4;
    bool false_rejection_eq5;
    bool dominance_ok;
    std::array<double, 20> q_below;  // fraction of null Q-values <= t
  };
  std::vector<Record> records(static_cast<std::size_t>(cfg.replicates));

  parallel_replicates(cfg.replicates, cfg.workers, [&](long r) {
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    auto draw_half = [&] {
      std::vector<double> p(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] = i < k_alt ? alternative_pvalue(stream, cfg.shift)
                                                   : stream.uniform01();
      return PVector(std::move(p));
    };
    PVector p1 = draw_half();
    PVector p2 = draw_half();
    const SplitPValues sp(std::move(p1), std::move(p2));
    const IndexSet selected = split_select(sp, cfg.lambda);
    const IndexSet r4 = split_conditional_reject(sp, selected, cfg.alpha);
    const PVector q = q_values(sp, cfg.lambda);
    const IndexSet r5 = split_unconditional_reject(q, cfg.alpha);

    Record rec{};
    rec.dominance_ok = selected.size() <= cfg.lambda * n ? r5.subset_of(r4)
                                                         : r4.subset_of(r5);
    for (int i = k_alt + 1; i <= n; ++i) {
      rec.false_rejection_eq4 = rec.false_rejection_eq4 || r4.contains(i);
      rec.false_rejection_eq5 = rec.false_rejection_eq5 || r5.contains(i);
    }
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      int below = 0;
      for (int i = k_alt + 1; i <= n; ++i)
        if (q.p(i) <= t_grid[j]) ++below;
      rec.q_below[j] = null_count > 0 ? static_cast<double>(below) / null_count : 0.0;
    }
    records[static_cast<std::size_t>(r)] = rec;
  });

  DatasplitTable table;
  std::vector<double> f4, f5;
  f4.reserve(records.size());
  f5.reserve(records.size());
  for (std::size_t id = 0; id < records.size(); ++id) {
    f4.push_back(records[id].false_rejection_eq4);
    f5.push_back(records[id].false_rejection_eq5);
    if (!records[id].dominance_ok) {
      ++table.dominance_violations;
      record_violation(table.violating_replicates, id);
    }
  }
  table.fwer_conditional = estimate_mean(f4);
  table.fwer_unconditional = estimate_mean(f5);
  if (null_count > 0) {
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      std::vector<double> col;
      col.reserve(records.size());
      for (const Record& rec : records) col.push_back(rec.q_below[j]);
      table.q_validity.emplace_back(t_grid[j], estimate_mean(col));
    }
  }
  return table;
}

void DatasplitTable::write_csv(std::ostream& out) const {
  out << "quantity,t,estimate,mc_se,count\n";
  out << "fwer_conditional_eq4,," << csv::num(fwer_conditional.value) << ','
      << csv::num(fwer_conditional.mc_se) << ',' << fwer_conditional.replicates << '\n';
  out << "fwer_unconditional_eq5,," << csv::num(fwer_unconditional.value) << ','
      << csv::num(fwer_unconditional.mc_se) << ',' << fwer_unconditional.replicates << '\n';
  out << "dominance_violations,," << dominance_violations << ",,\n";
  for (const auto& [t, est] : q_validity)
    out << "q_below_t," << csv::num(t) << ',' << csv::num(est.value) << ','
        << csv::num(est.mc_se) << ',' << est.replicates << '\n';
}

// --------------------------------------------------------------------------
// directional

DirectionalTable run_directional_suite(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, "directional: replicates >= 1");
  require(cfg.delta >= 0.0, "directional: delta >= 0");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "directional: alpha in (0,1)");

  const DirectionalConfig dir_cfg{cfg.delta, cfg.alpha};
  const std::array<double, 5> mus = {-2 * cfg.delta, -cfg.delta, 0.0, cfg.delta,
                                     2 * cfg.delta};
  const long reps = cfg.replicates;

  struct Record {
    bool false_cond;
    bool false_impr;
    bool dominance_ok;
  };
  std::vector<Record> records(mus.size() * static_cast<std::size_t>(reps));

  parallel_replicates(static_cast<long>(records.size()), cfg.workers, [&](long id) {
    const std::size_t mu_idx = static_cast<std::size_t>(id / reps);
    const double mu = mus[mu_idx];
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(id));
    const double x1 = mu + stream.normal();
    const double x2 = mu + stream.normal();
    const IndexSet cond = directional_conditional(x1, x2, dir_cfg);
    const IndexSet impr = directional_improved(x1, x2, dir_cfg);
    const bool h1_true = mu >= -cfg.delta, h2_true = mu <= cfg.delta;
    records[static_cast<std::size_t>(id)] = {
        (h1_true && cond.contains(1)) || (h2_true && cond.contains(2)),
        (h1_true && impr.contains(1)) || (h2_true && impr.contains(2)),
        cond.subset_of(impr)};
  });

  DirectionalTable table;
  table.alpha_prime = solve_alpha_prime(cfg.alpha, cfg.delta);
  for (std::size_t mu_idx = 0; mu_idx < mus.size(); ++mu_idx) {
    std::vector<double> fc, fi;
    fc.reserve(static_cast<std::size_t>(reps));
    for (long r = 0; r < reps; ++r) {
      const Record& rec = records[mu_idx * static_cast<std::size_t>(reps) +
                                  static_cast<std::size_t>(r)];
      fc.push_back(rec.false_cond);
      fi.push_back(rec.false_impr);
    }
    table.rows.push_back({mus[mu_idx], estimate_mean(fc), estimate_mean(fi)});
  }
  for (std::size_t id = 0; id < records.size(); ++id) {
    if (!records[id].dominance_ok) {
      ++table.dominance_violations;
      record_violation(table.violating_replicates, id);
    }
  }
  return table;
}

void DirectionalTable::write_csv(std::ostream& out) const {
  out << "mu,procedure,fwer,mc_se,count\n";
  for (const auto& row : rows) {
    out << csv::num(row.mu) << ",conditional," << csv::num(row.conditional_fwer.value)
        << ',' << csv::num(row.conditional_fwer.mc_se) << ','
        << row.conditional_fwer.replicates << '\n';
    out << csv::num(row.mu) << ",improved," << csv::num(row.improved_fwer.value) << ','
        << csv::num(row.improved_fwer.mc_se) << ',' << row.improved_fwer.replicates
        << '\n';
  }
}

}  // namespace selinf
