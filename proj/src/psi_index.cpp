#include "rpsi/psi_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rpsi/balance.hpp"

namespace rpsi {

namespace {

uint8_t width_for(uint64_t max_value) {
  return max_value == 0 ? 1 : static_cast<uint8_t>(std::bit_width(max_value));
}

}  // namespace

PsiIndex PsiIndex::build(const Text& text, uint32_t d) {
  if (d < 2) throw std::invalid_argument("splitting parameter d must be >= 2");

  const SuffixStructures s = build_suffix_structures(text);
  const PermutationOracle psi = oracle(s, PermKind::Psi);
  const RunDecomposition runs = bwt_aligned_runs(s, psi);
  const BalancedRuns balanced = balance_runs(runs, psi, d);

  const uint64_t r = balanced.p_heads.size();
  const auto& p = balanced.p_heads;
  const auto& q = balanced.q_heads_sorted;

  std::vector<uint32_t> tau_flat(r);
  std::vector<uint8_t> chars(r);
  for (uint64_t i = 0; i < r; ++i) {
    const uint32_t image = psi.values[p[i]];
    const auto it = std::lower_bound(q.begin(), q.end(), image);
    tau_flat[i] = static_cast<uint32_t>(it - q.begin());
    chars[i] = text.data[s.sa[p[i]]];  // F column symbol at the head
  }

  // Interleave of the two boundary lists; F boundary first on a tie.
  std::vector<bool> fl;
  fl.reserve(2 * r);
  for (uint64_t a = 0, b = 0; a < r || b < r;) {
    if (b >= r || (a < r && p[a] <= q[b])) {
      fl.push_back(false);
      ++a;
    } else {
      fl.push_back(true);
      ++b;
    }
  }

  std::vector<uint64_t> p64(p.begin(), p.end()), q64(q.begin(), q.end());
  return from_components(text.n, text.sigma, d, text.convention,
                         text.alphabet_map, std::move(chars),
                         std::move(tau_flat),
                         SparseBits::from_positions(p64, text.n),
                         SparseBits::from_positions(q64, text.n),
                         PlainBits::from_bools(fl));
}

PsiIndex PsiIndex::from_components(uint64_t n, uint64_t sigma, uint32_t d,
                                   Convention convention,
                                   std::array<uint8_t, 256> alphabet_map,
                                   std::vector<uint8_t> char_of_subrun,
                                   std::vector<uint32_t> tau_flat,
                                   SparseBits bf, SparseBits bl,
                                   PlainBits bfl) {
  PsiIndex idx;
  idx.n_ = n;
  idx.sigma_ = sigma;
  idx.d_ = d;
  idx.r_ = tau_flat.size();
  idx.convention_ = convention;
  idx.alphabet_map_ = alphabet_map;
  idx.bf_ = std::move(bf);
  idx.bl_ = std::move(bl);
  idx.bfl_ = std::move(bfl);

  std::vector<uint64_t> tau64(tau_flat.begin(), tau_flat.end());
  idx.tau_.values =
      PackedInts::pack(tau64, width_for(idx.r_ > 0 ? idx.r_ - 1 : 0));
  idx.tau_.symbols = std::move(char_of_subrun);
  idx.finish_components();
  return idx;
}

void PsiIndex::finish_components() {
  if (r_ == 0 || n_ == 0) throw std::invalid_argument("index must be nonempty");
  if (tau_.symbols.size() != r_)
    throw std::invalid_argument("sub-run symbol count != r'");
  if (bf_.count() != r_ || bl_.count() != r_)
    throw std::invalid_argument("boundary bitvectors must store r' positions");
  if (bf_.universe() != n_ || bl_.universe() != n_)
    throw std::invalid_argument("boundary bitvectors must span the text");
  // Position 0 heads both orders: the first sub-run starts there, and
  // the image intervals partition [0, n) so one of them starts at 0.
  if (bf_.select(1) != 0 || bl_.select(1) != 0)
    throw std::invalid_argument("boundary lists must start at position 0");
  if (bfl_.size() != 2 * r_ || bfl_.count(true) != r_)
    throw std::invalid_argument("interleave must hold r' zeros and r' ones");

  tau_inv_.assign(r_, 0);
  std::vector<bool> seen(r_, false);
  for (uint64_t i = 0; i < r_; ++i) {
    const uint64_t t = tau_.values.get(i);
    if (t >= r_ || seen[t])
      throw std::invalid_argument("tau is not a permutation");
    seen[t] = true;
    tau_inv_[t] = static_cast<uint32_t>(i);
  }

  tau_.block_start.assign(sigma_ + 1, 0);
  for (uint64_t i = 0; i < r_; ++i) {
    if (i > 0 && tau_.symbols[i] < tau_.symbols[i - 1])
      throw std::invalid_argument("sub-run symbols must be non-decreasing");
    if (tau_.symbols[i] >= sigma_)
      throw std::invalid_argument("sub-run symbol out of alphabet");
    ++tau_.block_start[tau_.symbols[i] + 1];
  }
  for (uint64_t c = 0; c < sigma_; ++c)
    tau_.block_start[c + 1] += tau_.block_start[c];
}

uint64_t PsiIndex::f_run_length(uint64_t k) const {
  return (k + 1 < r_ ? bf_.select(k + 2) : n_) - bf_.select(k + 1);
}

std::pair<Coords, uint64_t> PsiIndex::step(Coords c,
                                           ScanCounter* counter) const {
  if (c.run >= r_ || c.offset >= f_run_length(c.run))
    throw std::out_of_range("coords out of range");

  const uint64_t t = tau_.values.get(c.run);
  const uint64_t value = bl_.select(t + 1) + c.offset;

  // l = rank0(select1(t+1)) - 1 under the inclusive convention, i.e.
  // select1(t+1) - (t+1): the first F sub-run overlapping the L sub-run
  // of psi(j). The true sub-run is < 2d probes above it.
  uint64_t k = bfl_.select(true, t + 1) - (t + 1);
  uint64_t probes = 0;
  while (k + 1 < r_) {
    ++probes;
    if (bf_.select(k + 2) <= value)
      ++k;
    else
      break;
  }
  if (counter) counter->note(probes);

  return {Coords{static_cast<uint32_t>(k),
                 static_cast<uint32_t>(value - bf_.select(k + 1))},
          value};
}

StepDetail PsiIndex::step_detail(Coords c) const {
  if (c.run >= r_ || c.offset >= f_run_length(c.run))
    throw std::out_of_range("coords out of range");
  StepDetail out;
  const uint64_t t = tau_.values.get(c.run);
  out.value = bl_.select(t + 1) + c.offset;
  out.lower_bound = bfl_.select(true, t + 1) - (t + 1);
  uint64_t k = out.lower_bound;
  while (k + 1 < r_) {
    ++out.probes;
    if (bf_.select(k + 2) <= out.value)
      ++k;
    else
      break;
  }
  out.next = Coords{static_cast<uint32_t>(k),
                    static_cast<uint32_t>(out.value - bf_.select(k + 1))};
  return out;
}

uint64_t PsiIndex::tau(uint64_t i) const {
  if (i >= r_) throw std::out_of_range("sub-run index out of range");
  return tau_.values.get(i);
}

Coords PsiIndex::coords_of(uint64_t j) const {
  if (j >= n_) throw std::out_of_range("position out of range");
  const auto [ordinal, head] = bf_.pred(j);
  return Coords{static_cast<uint32_t>(ordinal - 1),
                static_cast<uint32_t>(j - head)};
}

uint64_t PsiIndex::position_of(Coords c) const {
  if (c.run >= r_ || c.offset >= f_run_length(c.run))
    throw std::out_of_range("coords out of range");
  return bf_.select(c.run + 1) + c.offset;
}

uint64_t PsiIndex::lf_value(uint64_t p) const {
  if (p >= n_) throw std::out_of_range("position out of range");
  const auto [ordinal, head] = bl_.pred(p);
  return bf_.select(tau_inv_[ordinal - 1] + 1) + (p - head);
}

SpaceReport PsiIndex::space_report() const {
  SpaceReport rep;
  rep.n = n_;
  rep.sigma = sigma_;
  rep.d = d_;
  rep.r_prime = r_;
  rep.tau_bits = tau_.values.data_bits() + 8 * tau_.symbols.size() +
                 64 * tau_.block_start.size();
  rep.bl_bits = bl_.data_bits();
  rep.bl_overhead_bits = bl_.directory_bits();
  rep.bf_bits = bf_.data_bits();
  rep.bf_overhead_bits = bf_.directory_bits();
  rep.bfl_bits = bfl_.data_bits();
  rep.bfl_overhead_bits = bfl_.directory_bits();
  rep.metadata_bits = 4 * 64 + 8 + 256 * 8;
  rep.tau_inverse_bits = 32 * tau_inv_.size();
  rep.total_bits = rep.tau_bits + rep.bl_bits + rep.bl_overhead_bits +
                   rep.bf_bits + rep.bf_overhead_bits + rep.bfl_bits +
                   rep.bfl_overhead_bits + rep.metadata_bits;
  const double rd = static_cast<double>(r_);
  rep.ref_r_log_n_over_r =
      rd * std::log2(static_cast<double>(n_) / rd > 1.0
                         ? static_cast<double>(n_) / rd
                         : 1.0);
  rep.ref_r_log_sigma = rd * std::log2(std::max<double>(sigma_, 2));
  rep.ref_r_log_r = rd * std::log2(std::max<double>(r_, 2));
  return rep;
}

std::string SpaceReport::to_string() const {
  std::ostringstream os;
  os << "n=" << n << " sigma=" << sigma << " d=" << d << " r'=" << r_prime
     << "\n";
  os << "  tau        " << tau_bits << " bits\n";
  os << "  B_L        " << bl_bits << " bits (+" << bl_overhead_bits
     << " directory)\n";
  os << "  B_F        " << bf_bits << " bits (+" << bf_overhead_bits
     << " directory)\n";
  os << "  B_FL       " << bfl_bits << " bits (+" << bfl_overhead_bits
     << " directory)\n";
  os << "  metadata   " << metadata_bits << " bits\n";
  os << "  tau^-1     " << tau_inverse_bits << " bits (rebuildable)\n";
  os << "  total      " << total_bits << " bits\n";
  os << "  reference: r'*log2(n/r')=" << ref_r_log_n_over_r
     << " r'*log2(sigma)=" << ref_r_log_sigma
     << " r'*log2(r')=" << ref_r_log_r;
  return os.str();
}

IndexVerifyReport PsiIndex::verify(const PermutationOracle& psi_oracle) const {
  IndexVerifyReport rep;
  if (psi_oracle.size() != n_) return rep;

  // Structural invariants: boundary counts, head alignment
  // bl.select1(tau(i)+1) = psi(bf.select1(i+1)), and the interleave
  // reproducing the merge of the two boundary lists.
  bool structure = bl_.count() == r_ && bf_.count() == r_ &&
                   bfl_.size() == 2 * r_ && bfl_.count(true) == r_;
  for (uint64_t i = 0; structure && i < r_; ++i) {
    if (bl_.select(tau_.values.get(i) + 1) !=
        psi_oracle.values[bf_.select(i + 1)])
      structure = false;
  }
  if (structure) {
    const auto p = bf_.decode();
    const auto q = bl_.decode();
    std::string merged;
    merged.reserve(2 * r_);
    for (uint64_t a = 0, b = 0; a < r_ || b < r_;) {
      if (b >= r_ || (a < r_ && p[a] <= q[b])) {
        merged.push_back('0');
        ++a;
      } else {
        merged.push_back('1');
        ++b;
      }
    }
    structure = merged == bfl_.to_string();
  }
  rep.structure_ok = structure;

  rep.tau_blocks_increasing = true;
  for (uint64_t c = 0; c < sigma_; ++c) {
    for (uint64_t i = tau_.block_start[c] + 1; i < tau_.block_start[c + 1];
         ++i) {
      if (tau_.values.get(i) <= tau_.values.get(i - 1))
        rep.tau_blocks_increasing = false;
    }
  }

  // Exhaustive sweep: oracle equivalence, coordinate self-consistency,
  // and the sparse-rank route for i' (the omega(1) path the interleave
  // sidesteps) as an independent cross-check of the scan.
  uint64_t mismatches = 0, coord_mismatches = 0, max_probes = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    reduction(+ : mismatches, coord_mismatches) reduction(max : max_probes)
#endif
  for (int64_t j = 0; j < static_cast<int64_t>(n_); ++j) {
    const Coords c = coords_of(static_cast<uint64_t>(j));
    ScanCounter counter;
    const auto [next, value] = step(c, &counter);
    if (counter.probes_max > max_probes) max_probes = counter.probes_max;
    if (value != psi_oracle.values[j]) ++mismatches;
    if (value >= n_) {
      ++coord_mismatches;  // misaligned intervals can run past the text
      continue;
    }
    const auto [rank_ord, rank_head] = bf_.pred(value);
    if (next.run != rank_ord - 1 || next.offset != value - rank_head ||
        bf_.select(next.run + 1) + next.offset != value)
      ++coord_mismatches;
  }
  rep.positions_checked = n_;
  rep.mismatches = mismatches;
  rep.coord_mismatches = coord_mismatches;
  rep.max_probes = max_probes;

  // psi is one n-cycle: conjugate, via SA, to i -> i+1 (mod n).
  std::vector<bool> visited(n_, false);
  Coords c = coords_of(0);
  const uint64_t start = 0;
  bool cycle = true;
  uint64_t pos = start;
  try {
    for (uint64_t step_i = 0; step_i < n_; ++step_i) {
      if (pos >= n_ || visited[pos]) {
        cycle = false;
        break;
      }
      visited[pos] = true;
      const auto [next, value] = step(c);
      c = next;
      pos = value;
    }
  } catch (const std::out_of_range&) {
    cycle = false;  // a broken index can step outside its own coords
  }
  rep.cycle_ok = cycle && pos == start;

  rep.pass = rep.structure_ok && rep.cycle_ok && rep.mismatches == 0 &&
             rep.coord_mismatches == 0 && rep.max_probes <= 2ull * d_;
  return rep;
}

std::string IndexVerifyReport::to_string() const {
  std::ostringstream os;
  os << "checked " << positions_checked << " positions, " << mismatches
     << " value mismatches, " << coord_mismatches << " coord mismatches, "
     << "max probes " << max_probes << ", structure "
     << (structure_ok ? "ok" : "BAD") << ", cycle "
     << (cycle_ok ? "ok" : "BAD") << ", tau blocks "
     << (tau_blocks_increasing ? "increasing" : "not increasing") << " => "
     << (pass ? "pass" : "FAIL");
  return os.str();
}

}  // namespace rpsi
