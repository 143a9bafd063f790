#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpsi/suffix.hpp"

namespace rpsi {

// Result of splitting a run decomposition so that every gap between
// consecutive codomain heads (sorted Q', final wrap interval [q_max, n)
// included) holds fewer than 2d domain heads, while growing the head
// set by at most a d/(d-1) factor.
struct BalancedRuns {
  uint32_t d = 0;
  std::vector<uint32_t> p_heads;         // P', sorted, seed included
  std::vector<uint32_t> q_heads_sorted;  // sorted Q' = pi(P')
  std::vector<uint32_t> seed_heads;      // the decomposition that was split
  const PermutationOracle* perm = nullptr;  // non-owning
};

// Splits gaps by repeatedly inserting the preimage of the (d+1)-th
// smallest head inside any gap holding >= 2d of them. Never changes any
// permutation value. Throws std::invalid_argument if d < 2 or the
// decomposition does not match the permutation; throws
// std::runtime_error if growth exceeds d|P|/(d-1) + 1 (pivot bug guard).
BalancedRuns balance_runs(const RunDecomposition& runs,
                          const PermutationOracle& perm, uint32_t d);

struct BalanceReport {
  uint64_t max_gap_occupancy = 0;  // must be < 2d
  uint64_t worst_gap_lo = 0;       // interval attaining the max
  uint64_t worst_gap_hi = 0;
  double growth_ratio = 0.0;       // |P'| / |seed|, must be <= d/(d-1)
  bool seed_subset_ok = false;
  bool image_set_ok = false;
  bool gaps_ok = false;
  bool growth_ok = false;
  bool pass = false;

  std::string to_string() const;
};

// Direct brute-force check of both guarantees plus the subset and
// image-set invariants; independent of the construction's bookkeeping.
BalanceReport verify_balanced(const BalancedRuns& balanced);

}  // namespace rpsi
