#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rpsi/balance.hpp"

namespace rpsi {

// (sub-run index, offset within sub-run): the coordinate system of all
// constant-work permutation steps.
struct Coords {
  uint32_t run = 0;
  uint32_t offset = 0;

  friend bool operator==(const Coords&, const Coords&) = default;
};

// Scan instrumentation shared by MoveTable::step and PsiIndex::step.
struct ScanCounter {
  uint64_t steps = 0;
  uint64_t probes_total = 0;
  uint64_t probes_max = 0;

  void note(uint64_t probes) {
    ++steps;
    probes_total += probes;
    if (probes > probes_max) probes_max = probes;
  }
};

// Per-sub-run rows (head, image, sub-run of image): evaluates a
// permutation in coordinate form. The gap guarantee of the balanced
// decomposition bounds the forward scan in step() by 2d probes.
class MoveTable {
 public:
  MoveTable() = default;

  // The balanced runs must verify (balance_runs output does by
  // construction); rows follow its sub-run structure.
  static MoveTable build(const BalancedRuns& balanced,
                         const PermutationOracle& perm);

  // pi(j) for j at coords c, plus the coords of pi(j). A linear scan of
  // at most 2d head comparisons replaces the doubling search; d is a
  // small constant, so the O(log d) refinement buys nothing here.
  std::pair<Coords, uint64_t> step(Coords c,
                                   ScanCounter* counter = nullptr) const;

  // Coords of an absolute position, by binary search over the heads
  // (O(log r'), entry point only).
  Coords locate(uint64_t j) const;

  uint64_t length() const { return n_; }
  uint64_t run_count() const { return heads_.size(); }
  uint32_t d() const { return d_; }
  uint64_t head(uint64_t k) const { return heads_[k]; }
  uint64_t image(uint64_t k) const { return images_[k]; }
  uint32_t target_run(uint64_t k) const { return targets_[k]; }
  uint64_t run_length(uint64_t k) const {
    return (k + 1 < heads_.size() ? heads_[k + 1] : n_) - heads_[k];
  }

 private:
  std::vector<uint32_t> heads_;
  std::vector<uint32_t> images_;
  std::vector<uint32_t> targets_;
  uint64_t n_ = 0;
  uint32_t d_ = 0;
};

}  // namespace rpsi
