#pragma once

// Shared domain types: p-value vectors, index sets over a fixed hypothesis
// universe, truth masks, error-rate functionals, and the deterministic
// per-stream random number generator.  Hypothesis indices are 1-based
// everywhere in the public interface.

#include <cstdint>
#include <string>
#include <vector>

namespace selinf {

class PVector {
 public:
  explicit PVector(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double p(int i) const;  // 1-based
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

class IndexSet {
 public:
  IndexSet(std::vector<int> members, int universe_size);
  static IndexSet empty(int universe_size);
  static IndexSet full(int universe_size);

  int universe_size() const { return universe_size_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool is_empty() const { return members_.empty(); }
  bool contains(int i) const;
  bool subset_of(const IndexSet& other) const;
  const std::vector<int>& members() const { return members_; }
  std::string to_string() const;  // "{1,3}"

  bool operator==(const IndexSet& other) const {
    return universe_size_ == other.universe_size_ && members_ == other.members_;
  }

 private:
  std::vector<int> members_;  // sorted, duplicate-free, values in 1..n
  int universe_size_;
};

class TruthMask {
 public:
  explicit TruthMask(std::vector<bool> is_null);

  int size() const { return static_cast<int>(is_null_.size()); }
  bool is_null(int i) const;  // 1-based
  int null_count_in(const IndexSet& set) const;

 private:
  std::vector<bool> is_null_;
};

struct ErrorRateKind {
  enum class Tag { fdr, fwer, fdx, fcr_style };
  Tag tag;
  double gamma = 0.0;  // only meaningful for fdx

  static ErrorRateKind fdr() { return {Tag::fdr}; }
  static ErrorRateKind fwer() { return {Tag::fwer}; }
  static ErrorRateKind fdx(double gamma);
  static ErrorRateKind fcr_style() { return {Tag::fcr_style}; }
};

// |R cap T| / (|R| v 1)
double fdp(const IndexSet& rejected, const TruthMask& truth);

// FDR -> fdp; FWER -> 1{fdp>0}; FDX(g) -> 1{fdp>g}; FCR_STYLE -> |R cap T|/(|S| v 1).
// FCR_STYLE additionally requires R to be a subset of S.
double error_value(const ErrorRateKind& kind, const IndexSet& rejected,
                   const IndexSet& selected, const TruthMask& truth);

// Deterministic, platform-independent stream generator.  Equal
// (seed, stream_id) pairs reproduce the same draw sequence; distinct
// stream ids give statistically independent streams (one per replicate).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1), 53-bit resolution
  double normal();     // inverse-transform, strictly finite

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace selinf
