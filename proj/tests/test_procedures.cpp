#include <cmath>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "selinf/core.hpp"
#include "selinf/procedures.hpp"

using namespace selinf;

TEST_CASE("bonferroni thresholds at alpha/n") {
  CHECK(bonferroni(PVector({0.02, 0.2}), 0.05) == IndexSet({1}, 2));
  CHECK(bonferroni(PVector({0.5, 0.5}), 0.05) == IndexSet::empty(2));
  CHECK(bonferroni(PVector({0.024, 0.026}), 0.05) == IndexSet({1}, 2));
  CHECK(bonferroni(PVector({0.025, 0.026}), 0.05) == IndexSet({1}, 2));  // boundary
}

TEST_CASE("hochberg2 two-hypothesis rule") {
  CHECK(hochberg2(0.01, 0.5, 0.1) == IndexSet({1}, 2));
  CHECK(hochberg2(0.08, 0.09, 0.1) == IndexSet({1, 2}, 2));
  CHECK(hochberg2(0.2, 0.3, 0.1) == IndexSet::empty(2));
}

TEST_CASE("bh step-up") {
  CHECK(bh(PVector({0.01, 0.02, 0.5, 0.6}), 0.05) == IndexSet({1, 2}, 4));
  CHECK(bh(PVector({1.0, 1.0, 1.0}), 0.05) == IndexSet::empty(3));
  CHECK(bh(PVector({0.04}), 0.05) == IndexSet({1}, 1));
}

TEST_CASE("bh rejection set is invariant to tie ordering") {
  // duplicates at the step-up boundary: permuting equal entries cannot matter
  const std::vector<double> base = {0.02, 0.02, 0.01, 0.9};
  const std::vector<double> swapped = {0.02, 0.01, 0.02, 0.9};
  const IndexSet r1 = bh(PVector(base), 0.05);
  const IndexSet r2 = bh(PVector(swapped), 0.05);
  CHECK(r1.size() == r2.size());
  CHECK(r1.size() == 3);
}

TEST_CASE("mabh2 matches the stated rule") {
  CHECK(mabh2(0.04, 0.55, 0.1) == IndexSet({1}, 2));
  CHECK(mabh2(0.04, 0.15, 0.1) == IndexSet({1, 2}, 2));
  CHECK(mabh2(0.09, 0.095, 0.1) == IndexSet({1, 2}, 2));
  CHECK(mabh2(0.3, 0.4, 0.1) == IndexSet::empty(2));
}

TEST_CASE("fixed_sequence_fdr2 gatekeeps") {
  CHECK(fixed_sequence_fdr2(0.05, 0.15, 0.1) == IndexSet({1, 2}, 2));
  CHECK(fixed_sequence_fdr2(0.05, 0.5, 0.1) == IndexSet({1}, 2));
  CHECK(fixed_sequence_fdr2(0.2, 0.01, 0.1) == IndexSet::empty(2));
}

TEST_CASE("bh and mabh2 are monotone in each p-value") {
  const double alpha = 0.1;
  for (int a = 0; a < 40; ++a) {
    for (int b = 0; b < 40; ++b) {
      const double p1 = (a + 0.5) / 40, p2 = (b + 0.5) / 40;
      const IndexSet m = mabh2(p1, p2, alpha);
      const IndexSet m_lower = mabh2(p1 * 0.5, p2, alpha);
      CHECK(m.subset_of(m_lower));
      const IndexSet r = bh(PVector({p1, p2}), alpha);
      const IndexSet r_lower = bh(PVector({p1, p2 * 0.5}), alpha);
      CHECK(r.subset_of(r_lower));
    }
  }
}

TEST_CASE("mabh2 contains the two-hypothesis BH region on a 200x200 grid") {
  const double alpha = 0.1;
  long violations = 0;
  for (int a = 0; a < 200; ++a) {
    for (int b = 0; b < 200; ++b) {
      const double p1 = (a + 0.5) / 200, p2 = (b + 0.5) / 200;
      if (!bh(PVector({p1, p2}), alpha).subset_of(mabh2(p1, p2, alpha))) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("null-uniform error control of bh and hochberg2") {
  const double alpha = 0.05;
  const int reps = 40000, n = 8;
  double fdr_sum = 0.0, fdr_sq = 0.0, fwer_sum = 0.0, fwer_sq = 0.0;
  const TruthMask all_null_n(std::vector<bool>(n, true));
  const TruthMask all_null_2({true, true});
  for (int r = 0; r < reps; ++r) {
    RngStream stream(4242, static_cast<std::uint64_t>(r));
    std::vector<double> p(n);
    for (auto& x : p) x = stream.uniform01();
    const double v = fdp(bh(PVector(p), alpha), all_null_n);
    fdr_sum += v;
    fdr_sq += v * v;
    const IndexSet h = hochberg2(stream.uniform01(), stream.uniform01(), alpha);
    const double w = fdp(h, all_null_2) > 0 ? 1.0 : 0.0;
    fwer_sum += w;
    fwer_sq += w * w;
  }
  const double fdr = fdr_sum / reps;
  const double fdr_se = std::sqrt((fdr_sq / reps - fdr * fdr) / (reps - 1));
  CHECK(fdr <= alpha + 3 * fdr_se);
  const double fwer = fwer_sum / reps;
  const double fwer_se = std::sqrt((fwer_sq / reps - fwer * fwer) / (reps - 1));
  CHECK(fwer <= alpha + 3 * fwer_se);
}

TEST_CASE("mixture_improvement endpoints and frequency") {
  RngStream stream(5, 1);
  const IndexSet r({1}, 3);
  const IndexSet fallback({1, 2, 3}, 3);
  CHECK(mixture_improvement(r, {1.0, fallback}, stream) == r);
  CHECK(mixture_improvement(r, {0.0, fallback}, stream) == fallback);
  CHECK_THROWS_AS(mixture_improvement(IndexSet({2}, 3), {0.5, IndexSet({1}, 3)}, stream),
                  std::invalid_argument);

  const int reps = 100000;
  int fallback_count = 0;
  for (int i = 0; i < reps; ++i) {
    RngStream s(5, static_cast<std::uint64_t>(i));
    const IndexSet out = mixture_improvement(r, {0.5, fallback}, s);
    CHECK((out == r || out == fallback));
    if (out == fallback) ++fallback_count;
  }
  CHECK(std::fabs(static_cast<double>(fallback_count) / reps - 0.5) < 0.007);
}

TEST_CASE("prop1_q formula and edge cases") {
  CHECK(prop1_q(0.05, 0.96) == 0.0);  // delta >= 1 - alpha
  CHECK(prop1_q(0.05, 0.05) == doctest::Approx(0.997229916897507).epsilon(1e-12));
  CHECK(prop1_q(0.05, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fwer_recycle expands only when R equals S") {
  RngStream stream(11, 0);
  const IndexSet r({1}, 4);
  const IndexSet s({1, 2}, 4);
  for (int i = 0; i < 50; ++i) CHECK(fwer_recycle(r, s, 4, 0.3, stream) == r);
  CHECK(fwer_recycle(IndexSet::full(4), IndexSet::full(4), 4, 0.3, stream) ==
        IndexSet::full(4));

  const double alpha = 0.3;
  const int reps = 100000;
  int expanded = 0;
  for (int i = 0; i < reps; ++i) {
    RngStream s2(11, static_cast<std::uint64_t>(i));
    if (fwer_recycle(s, s, 4, alpha, s2) == IndexSet::full(4)) ++expanded;
  }
  const double freq = static_cast<double>(expanded) / reps;
  CHECK(std::fabs(freq - alpha) < 4 * std::sqrt(alpha * (1 - alpha) / reps));
  CHECK_THROWS_AS(fwer_recycle(s, r, 4, 0.3, stream), std::invalid_argument);
}
