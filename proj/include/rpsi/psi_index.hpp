#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rpsi/bitvec.hpp"
#include "rpsi/move_table.hpp"
#include "rpsi/suffix.hpp"
#include "rpsi/text.hpp"

namespace rpsi {

// tau sorts the F-column sub-runs by the psi values of their heads; its
// inverse is a stable sort of the sub-run symbol sequence, so tau falls
// into sigma increasing substrings (one per symbol). Stored as an
// explicit packed array: true constant-time evaluation, r'·ceil(log2 r')
// bits. The reference quantities are exposed by the space report.
struct TauPermutation {
  PackedInts values;                // tau(i) for i in F order
  std::vector<uint8_t> symbols;     // F symbol of each F sub-run
  std::vector<uint64_t> block_start;  // sigma+1 offsets, symbols grouped

  uint64_t size() const { return values.size(); }
  uint64_t operator()(uint64_t i) const { return values.get(i); }
};

struct SpaceReport {
  uint64_t n = 0, sigma = 0, d = 0, r_prime = 0;
  uint64_t tau_bits = 0;
  uint64_t bl_bits = 0, bl_overhead_bits = 0;
  uint64_t bf_bits = 0, bf_overhead_bits = 0;
  uint64_t bfl_bits = 0, bfl_overhead_bits = 0;
  uint64_t metadata_bits = 0;
  uint64_t tau_inverse_bits = 0;  // inverse-step acceleration, rebuildable
  uint64_t total_bits = 0;
  double ref_r_log_n_over_r = 0.0;
  double ref_r_log_sigma = 0.0;
  double ref_r_log_r = 0.0;

  std::string to_string() const;
};

struct IndexVerifyReport {
  uint64_t positions_checked = 0;
  uint64_t mismatches = 0;
  uint64_t coord_mismatches = 0;     // scan coords vs rank-path coords
  uint64_t max_probes = 0;
  bool structure_ok = false;         // counts, head alignment, interleave
  bool cycle_ok = false;             // n-step traversal returns to start
  bool tau_blocks_increasing = false;  // informational; see note in build
  bool pass = false;

  std::string to_string() const;
};

struct StepDetail {
  uint64_t value = 0;        // psi(j)
  Coords next;               // (i', g')
  uint64_t lower_bound = 0;  // l, first F sub-run overlapping psi(j)'s L run
  uint64_t probes = 0;
};

// Constant-time psi steps from tau + B_L + B_F + B_FL in compressed
// space. B_F marks sub-run boundaries in the F column (the head set P'),
// B_L marks them in the BWT (the image set Q'), and B_FL interleaves the
// two boundary lists (0 = F, 1 = L, 0 before 1 on a tie).
class PsiIndex {
 public:
  PsiIndex() = default;

  // Full pipeline: suffix structures, psi oracle, BWT-aligned run
  // decomposition, gap-bounded run balancing with parameter d.
  // Throws std::invalid_argument if d < 2.
  static PsiIndex build(const Text& text, uint32_t d);

  // Assemble from verbatim structures (deserialization, fixtures).
  // Validates that tau is a permutation and the components agree on r'.
  static PsiIndex from_components(uint64_t n, uint64_t sigma, uint32_t d,
                                  Convention convention,
                                  std::array<uint8_t, 256> alphabet_map,
                                  std::vector<uint8_t> char_of_subrun,
                                  std::vector<uint32_t> tau_flat,
                                  SparseBits bf, SparseBits bl,
                                  PlainBits bfl);

  // psi(j) = B_L.select1(tau(i)+1) + g, then the coords of psi(j) via a
  // bounded scan of F heads upward from the interleave lower bound.
  std::pair<Coords, uint64_t> step(Coords c,
                                   ScanCounter* counter = nullptr) const;
  StepDetail step_detail(Coords c) const;

  uint64_t tau(uint64_t i) const;           // constant-time lookup
  Coords coords_of(uint64_t j) const;       // O(log r') entry point
  uint64_t position_of(Coords c) const;

  // Inverse step: LF(p) = B_F.select1(tau^{-1}(k)+1) + g for p in the
  // k-th L sub-run. Entry by predecessor on B_L, off the constant-time
  // path, and the forward scan bound does not apply to this direction.
  uint64_t lf_value(uint64_t p) const;

  SpaceReport space_report() const;

  // Exhaustive equivalence against the explicit psi oracle, coordinate
  // self-consistency, the rank-path cross-check for i', the structural
  // invariants, probe bounds, and the n-cycle traversal.
  IndexVerifyReport verify(const PermutationOracle& psi_oracle) const;

  uint64_t length() const { return n_; }
  uint64_t sigma() const { return sigma_; }
  uint32_t d() const { return d_; }
  uint64_t run_count() const { return r_; }
  Convention convention() const { return convention_; }
  const std::array<uint8_t, 256>& alphabet_map() const {
    return alphabet_map_;
  }
  const TauPermutation& tau_perm() const { return tau_; }
  const SparseBits& bl() const { return bl_; }
  const SparseBits& bf() const { return bf_; }
  const PlainBits& bfl() const { return bfl_; }

 private:
  void finish_components();  // block_start, tau inverse, validation

  uint64_t n_ = 0;
  uint64_t sigma_ = 0;
  uint32_t d_ = 0;
  uint64_t r_ = 0;
  Convention convention_ = Convention::SuffixOrder;
  std::array<uint8_t, 256> alphabet_map_{};
  TauPermutation tau_;
  SparseBits bl_;
  SparseBits bf_;
  PlainBits bfl_;
  std::vector<uint32_t> tau_inv_;

  uint64_t f_run_length(uint64_t k) const;
};

}  // namespace rpsi
