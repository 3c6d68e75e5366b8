#include "selinf/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "selinf/normal.hpp"

namespace selinf {

PVector::PVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("PVector: needs length >= 1");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0))  // also rejects NaN
      throw std::invalid_argument("PVector: entries must be finite and in [0,1]");
  }
}

double PVector::p(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("PVector: index out of range");
  return values_[static_cast<std::size_t>(i) - 1];
}

IndexSet::IndexSet(std::vector<int> members, int universe_size)
    : members_(std::move(members)), universe_size_(universe_size) {
  if (universe_size_ < 1) throw std::invalid_argument("IndexSet: universe must be nonempty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("IndexSet: duplicate index");
  if (!members_.empty() && (members_.front() < 1 || members_.back() > universe_size_))
    throw std::invalid_argument("IndexSet: index outside 1..n");
}

IndexSet IndexSet::empty(int universe_size) { return IndexSet({}, universe_size); }

IndexSet IndexSet::full(int universe_size) {
  std::vector<int> all(static_cast<std::size_t>(universe_size));
  for (int i = 0; i < universe_size; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(std::move(all), universe_size);
}

bool IndexSet::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

bool IndexSet::subset_of(const IndexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::string IndexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) out << ',';
    out << members_[k];
  }
  out << '}';
  return out.str();
}

TruthMask::TruthMask(std::vector<bool> is_null) : is_null_(std::move(is_null)) {
  if (is_null_.empty()) throw std::invalid_argument("TruthMask: needs length >= 1");
}

bool TruthMask::is_null(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("TruthMask: index out of range");
  return is_null_[static_cast<std::size_t>(i) - 1];
}

int TruthMask::null_count_in(const IndexSet& set) const {
  int count = 0;
  for (int i : set.members())
    if (is_null(i)) ++count;
  return count;
}

ErrorRateKind ErrorRateKind::fdx(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("ErrorRateKind: FDX gamma must lie in (0,1)");
  return {Tag::fdx, gamma};
}

double fdp(const IndexSet& rejected, const TruthMask& truth) {
  if (rejected.universe_size() != truth.size())
    throw std::invalid_argument("fdp: universe size mismatch");
  const int false_count = truth.null_count_in(rejected);
  return static_cast<double>(false_count) / std::max(rejected.size(), 1);
}

double error_value(const ErrorRateKind& kind, const IndexSet& rejected,
                   const IndexSet& selected, const TruthMask& truth) {
  if (rejected.universe_size() != truth.size() ||
      selected.universe_size() != truth.size())
    throw std::invalid_argument("error_value: universe size mismatch");
  switch (kind.tag) {
    case ErrorRateKind::Tag::fdr:
      return fdp(rejected, truth);
    case ErrorRateKind::Tag::fwer:
      return fdp(rejected, truth) > 0.0 ? 1.0 : 0.0;
    case ErrorRateKind::Tag::fdx:
      return fdp(rejected, truth) > kind.gamma ? 1.0 : 0.0;
    case ErrorRateKind::Tag::fcr_style: {
      if (!rejected.subset_of(selected))
        throw std::invalid_argument("error_value: FCR_STYLE requires R subset of S");
      const int false_count = truth.null_count_in(rejected);
      return static_cast<double>(false_count) / std::max(selected.size(), 1);
    }
  }
  throw std::logic_error("error_value: unreachable");
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // xoshiro256++ state filled from a splitmix64 chain over (seed, stream_id)
  std::uint64_t mix = seed ^ (stream_id * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL);
  for (auto& word : state_) word = splitmix64(mix);
  bool all_zero = true;
  for (auto word : state_) all_zero = all_zero && word == 0;
  if (all_zero) state_[0] = 0x8764000B7B572E5BULL;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  // (u + 0.5) * 2^-53 lies strictly inside (0,1), keeping the quantile finite
  const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  return normal_quantile(u);
}

}  // namespace selinf
