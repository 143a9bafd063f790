#include "rpsi/balance.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rpsi {

namespace {

// Fenwick tree over positions holding 0/1 membership, with prefix
// counts and k-th member selection by binary descent.
class MemberCounts {
 public:
  explicit MemberCounts(uint64_t n) : n_(n), tree_(n + 1, 0) {
    log_ = 0;
    while ((1ull << (log_ + 1)) <= n_) ++log_;
  }

  void add(uint64_t pos) {
    for (uint64_t i = pos + 1; i <= n_; i += i & (~i + 1)) ++tree_[i];
  }

  // members in [0, pos]
  uint64_t prefix(uint64_t pos) const {
    uint64_t s = 0;
    for (uint64_t i = pos + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  uint64_t count(uint64_t lo, uint64_t hi) const {  // members in [lo, hi]
    return prefix(hi) - (lo ? prefix(lo - 1) : 0);
  }

  // position of the k-th member overall, k >= 1
  uint64_t kth(uint64_t k) const {
    uint64_t pos = 0;
    for (uint64_t step = 1ull << log_; step > 0; step >>= 1) {
      if (pos + step <= n_ && tree_[pos + step] < k) {
        pos += step;
        k -= tree_[pos];
      }
    }
    return pos;  // 0-based position
  }

 private:
  uint64_t n_;
  unsigned log_;
  std::vector<uint32_t> tree_;
};

}  // namespace

BalancedRuns balance_runs(const RunDecomposition& runs,
                          const PermutationOracle& perm, uint32_t d) {
  if (d < 2) throw std::invalid_argument("splitting parameter d must be >= 2");
  if (!is_valid_decomposition(runs, perm))
    throw std::invalid_argument("run decomposition does not match permutation");

  const uint64_t n = perm.size();
  const uint64_t seed = runs.p_heads.size();
  std::vector<uint32_t> inverse(n);
  for (uint32_t i = 0; i < n; ++i) inverse[perm.values[i]] = i;

  MemberCounts members(n);
  for (uint32_t h : runs.p_heads) members.add(h);

  std::set<uint32_t> q_set(runs.q_values.begin(), runs.q_values.end());
  std::vector<uint32_t> inserted_heads;
  std::vector<uint32_t> pending(q_set.begin(), q_set.end());

  while (!pending.empty()) {
    const uint32_t q = pending.back();
    pending.pop_back();
    auto next = q_set.upper_bound(q);
    const uint64_t gap_end = next == q_set.end() ? n : *next;  // [q, gap_end)
    if (members.count(q, gap_end - 1) < 2ull * d) continue;

    // Split at the (d+1)-th smallest head in the gap: its image joins
    // Q', leaving d heads on the left and >= d on the right.
    const uint64_t before = q ? members.prefix(q - 1) : 0;
    const uint32_t x = static_cast<uint32_t>(members.kth(before + d + 1));
    const uint32_t new_head = inverse[x];
    members.add(new_head);
    inserted_heads.push_back(new_head);
    q_set.insert(x);

    if ((seed + inserted_heads.size()) * (d - 1) > uint64_t{d} * seed + (d - 1))
      throw std::runtime_error("run splitting exceeded the growth bound");

    pending.push_back(q);
    pending.push_back(x);
    // The gap that now contains new_head gained a member.
    auto it = q_set.upper_bound(new_head);
    if (it != q_set.begin()) pending.push_back(*std::prev(it));
  }

  BalancedRuns b;
  b.d = d;
  b.seed_heads = runs.p_heads;
  b.perm = &perm;
  b.p_heads = runs.p_heads;
  std::sort(inserted_heads.begin(), inserted_heads.end());
  b.p_heads.insert(b.p_heads.end(), inserted_heads.begin(),
                   inserted_heads.end());
  std::inplace_merge(b.p_heads.begin(),
                     b.p_heads.end() - inserted_heads.size(), b.p_heads.end());
  b.q_heads_sorted.assign(q_set.begin(), q_set.end());
  return b;
}

BalanceReport verify_balanced(const BalancedRuns& b) {
  BalanceReport rep;
  if (b.perm == nullptr || b.p_heads.empty()) return rep;
  const auto& pi = b.perm->values;
  const uint64_t n = pi.size();

  rep.seed_subset_ok =
      std::includes(b.p_heads.begin(), b.p_heads.end(), b.seed_heads.begin(),
                    b.seed_heads.end());

  std::vector<uint32_t> images;
  images.reserve(b.p_heads.size());
  for (uint32_t h : b.p_heads) images.push_back(pi[h]);
  std::sort(images.begin(), images.end());
  rep.image_set_ok = images == b.q_heads_sorted;

  // Occupancy of every codomain gap, wrap interval included, counted
  // directly against the sorted head list.
  const auto& q = b.q_heads_sorted;
  for (size_t k = 0; k < q.size(); ++k) {
    const uint64_t lo = q[k];
    const uint64_t hi = k + 1 < q.size() ? q[k + 1] : n;
    const auto first =
        std::lower_bound(b.p_heads.begin(), b.p_heads.end(), lo);
    const auto last = std::lower_bound(b.p_heads.begin(), b.p_heads.end(), hi);
    const uint64_t occ = static_cast<uint64_t>(last - first);
    if (occ > rep.max_gap_occupancy) {
      rep.max_gap_occupancy = occ;
      rep.worst_gap_lo = lo;
      rep.worst_gap_hi = hi;
    }
  }
  rep.gaps_ok = rep.max_gap_occupancy < 2ull * b.d;

  rep.growth_ratio = b.seed_heads.empty()
                         ? 0.0
                         : static_cast<double>(b.p_heads.size()) /
                               static_cast<double>(b.seed_heads.size());
  rep.growth_ok = b.p_heads.size() * (b.d - 1) <=
                  uint64_t{b.d} * b.seed_heads.size();

  rep.pass = rep.seed_subset_ok && rep.image_set_ok && rep.gaps_ok &&
             rep.growth_ok;
  return rep;
}

std::string BalanceReport::to_string() const {
  std::ostringstream os;
  os << "max gap occupancy " << max_gap_occupancy << " in [" << worst_gap_lo
     << ", " << worst_gap_hi << "), growth " << growth_ratio
     << (seed_subset_ok ? "" : ", seed not preserved")
     << (image_set_ok ? "" : ", image set mismatch")
     << (gaps_ok ? "" : ", gap bound violated")
     << (growth_ok ? "" : ", growth bound violated") << " => "
     << (pass ? "pass" : "FAIL");
  return os.str();
}

}  // namespace rpsi
