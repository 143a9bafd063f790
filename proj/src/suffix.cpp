#include "rpsi/suffix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rpsi {

SuffixStructures build_suffix_structures(const Text& text) {
  const uint32_t n = static_cast<uint32_t>(text.n);
  const bool rotation = text.convention == Convention::RotationOrder;

  std::vector<uint32_t> rank(text.data.begin(), text.data.end());
  std::vector<uint32_t> key2(n), order(n), tmp(n), new_rank(n);
  std::vector<uint32_t> cnt;

  // Initial order: counting sort by symbol, ties by position.
  cnt.assign(text.sigma + 1, 0);
  for (uint32_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
  std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
  for (uint32_t i = 0; i < n; ++i) order[cnt[rank[i]]++] = i;

  for (uint32_t k = 1; k < n; k <<= 1) {
    // Second key: rank k symbols later; 0 means past the end (suffix
    // order only; the shorter suffix sorts first).
    for (uint32_t i = 0; i < n; ++i) {
      if (rotation)
        key2[i] = rank[(i + k) % n] + 1;
      else
        key2[i] = i + k < n ? rank[i + k] + 1 : 0;
    }

    // Radix: counting sort by key2 (ties by position), then stably by
    // rank. Full-key ties therefore stay position-ascending, which is
    // the rotation tie-break.
    cnt.assign(n + 2, 0);
    for (uint32_t i = 0; i < n; ++i) ++cnt[key2[i] + 1];
    std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
    for (uint32_t i = 0; i < n; ++i) tmp[cnt[key2[i]]++] = i;

    cnt.assign(n + 1, 0);
    for (uint32_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
    std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
    for (uint32_t j = 0; j < n; ++j) order[cnt[rank[tmp[j]]]++] = tmp[j];

    uint32_t r = 0;
    new_rank[order[0]] = 0;
    for (uint32_t j = 1; j < n; ++j) {
      const uint32_t a = order[j - 1], b = order[j];
      if (rank[a] != rank[b] || key2[a] != key2[b]) ++r;
      new_rank[b] = r;
    }
    rank.swap(new_rank);
    if (r == n - 1) break;
  }

  SuffixStructures s;
  s.sa = std::move(order);
  s.isa.resize(n);
  for (uint32_t j = 0; j < n; ++j) s.isa[s.sa[j]] = j;
  s.bwt.resize(n);
  for (uint32_t j = 0; j < n; ++j)
    s.bwt[j] = text.data[(s.sa[j] + n - 1) % n];
  s.runs = 1;
  for (uint32_t j = 1; j < n; ++j) s.runs += s.bwt[j] != s.bwt[j - 1];
  return s;
}

PermutationOracle oracle(const SuffixStructures& s, PermKind kind) {
  const uint32_t n = static_cast<uint32_t>(s.sa.size());
  PermutationOracle out;
  out.kind = kind;
  out.values.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    switch (kind) {
      case PermKind::LF:
        out.values[i] = s.isa[(s.sa[i] + n - 1) % n];
        break;
      case PermKind::Psi:
        out.values[i] = s.isa[(s.sa[i] + 1) % n];
        break;
      case PermKind::Phi:
        out.values[i] = s.sa[(s.isa[i] + n - 1) % n];
        break;
      case PermKind::PhiInv:
        out.values[i] = s.sa[(s.isa[i] + 1) % n];
        break;
    }
  }
  return out;
}

RunDecomposition run_decompose(const PermutationOracle& perm) {
  const auto& pi = perm.values;
  RunDecomposition runs;
  runs.p_heads.push_back(0);
  for (uint32_t i = 1; i < pi.size(); ++i)
    if (pi[i] != pi[i - 1] + 1) runs.p_heads.push_back(i);
  runs.q_values.reserve(runs.p_heads.size());
  for (uint32_t h : runs.p_heads) runs.q_values.push_back(pi[h]);
  return runs;
}

RunDecomposition bwt_aligned_runs(const SuffixStructures& s,
                                  const PermutationOracle& perm) {
  if (perm.kind != PermKind::LF && perm.kind != PermKind::Psi)
    throw std::invalid_argument("BWT-aligned runs apply to LF and Psi only");
  const uint32_t n = static_cast<uint32_t>(s.sa.size());

  std::vector<uint32_t> heads;
  for (uint32_t j = 0; j < n; ++j) {
    if (j == 0 || s.bwt[j] != s.bwt[j - 1]) {
      // Run start j induces a boundary at j for LF, at LF(j) for Psi.
      heads.push_back(perm.kind == PermKind::LF
                          ? j
                          : s.isa[(s.sa[j] + n - 1) % n]);
    }
  }
  const auto& pi = perm.values;
  heads.push_back(0);
  for (uint32_t i = 1; i < n; ++i)
    if (pi[i] != pi[i - 1] + 1) heads.push_back(i);
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

  RunDecomposition runs;
  runs.p_heads = std::move(heads);
  runs.q_values.reserve(runs.p_heads.size());
  for (uint32_t h : runs.p_heads) runs.q_values.push_back(pi[h]);
  return runs;
}

bool is_valid_decomposition(const RunDecomposition& runs,
                            const PermutationOracle& perm) {
  if (runs.p_heads.empty() || runs.p_heads.front() != 0) return false;
  if (runs.q_values.size() != runs.p_heads.size()) return false;
  const auto& pi = perm.values;
  size_t k = 0;
  for (uint32_t i = 0; i < pi.size(); ++i) {
    const bool is_head = k < runs.p_heads.size() && runs.p_heads[k] == i;
    if (is_head) {
      if (runs.q_values[k] != pi[i]) return false;
      ++k;
    } else if (i > 0 && pi[i] != pi[i - 1] + 1) {
      return false;
    }
  }
  return k == runs.p_heads.size();
}

}  // namespace rpsi
