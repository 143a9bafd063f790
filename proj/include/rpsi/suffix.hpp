#pragma once

#include <cstdint>
#include <vector>

#include "rpsi/text.hpp"

namespace rpsi {

struct SuffixStructures {
  std::vector<uint32_t> sa;   // rank -> text position
  std::vector<uint32_t> isa;  // text position -> rank
  std::vector<uint8_t> bwt;   // bwt[i] = text[(sa[i] - 1) mod n]
  uint64_t runs = 0;          // r: maximal equal-symbol runs of the BWT
};

// Prefix-doubling construction (radix passes, O(n log n)). The sort
// order follows the text's recorded convention.
SuffixStructures build_suffix_structures(const Text& text);

enum class PermKind : uint8_t { LF, Phi, PhiInv, Psi };

struct PermutationOracle {
  std::vector<uint32_t> values;  // explicit pi
  PermKind kind = PermKind::Psi;

  uint64_t size() const { return values.size(); }
  uint32_t operator()(uint64_t i) const { return values[i]; }
};

// Explicit permutation per the defining formulas:
//   LF(i)     = ISA[(SA[i] - 1) mod n]
//   Psi(i)    = ISA[(SA[i] + 1) mod n]
//   Phi(i)    = SA[(ISA[i] - 1) mod n]
//   PhiInv(i) = SA[(ISA[i] + 1) mod n]
PermutationOracle oracle(const SuffixStructures& structures, PermKind kind);

// A run decomposition of a permutation: head positions P (0 always a
// head) and their images Q aligned index-wise. Off-head positions
// satisfy pi(i) = pi(i-1) + 1.
struct RunDecomposition {
  std::vector<uint32_t> p_heads;
  std::vector<uint32_t> q_values;  // q_values[k] = pi(p_heads[k])
};

// Minimal decomposition: P = {0} u {i : pi(i) != pi(i-1) + 1}.
RunDecomposition run_decompose(const PermutationOracle& perm);

// Decomposition of LF or Psi whose boundaries include the BWT run
// boundaries (the union of the minimal heads with the BWT-run-induced
// heads; for LF those are the run starts themselves, for Psi their
// LF-images). Always valid; equals the induced decomposition whenever
// the BWT runs split the permutation cleanly, which is what aligns the
// sub-run boundaries with the F/L run structure.
RunDecomposition bwt_aligned_runs(const SuffixStructures& structures,
                                  const PermutationOracle& perm);

// True iff p_heads contains 0 and every off-head position increments.
bool is_valid_decomposition(const RunDecomposition& runs,
                            const PermutationOracle& perm);

}  // namespace rpsi
