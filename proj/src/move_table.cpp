#include "rpsi/move_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpsi {

MoveTable MoveTable::build(const BalancedRuns& balanced,
                           const PermutationOracle& perm) {
  MoveTable t;
  t.n_ = perm.size();
  t.d_ = balanced.d;
  t.heads_ = balanced.p_heads;
  t.images_.reserve(t.heads_.size());
  t.targets_.resize(t.heads_.size());
  for (uint32_t h : t.heads_) t.images_.push_back(perm.values[h]);
  for (size_t k = 0; k < t.heads_.size(); ++k) {
    const auto it =
        std::upper_bound(t.heads_.begin(), t.heads_.end(), t.images_[k]);
    t.targets_[k] = static_cast<uint32_t>(it - t.heads_.begin()) - 1;
  }
  return t;
}

std::pair<Coords, uint64_t> MoveTable::step(Coords c,
                                            ScanCounter* counter) const {
  if (c.run >= heads_.size() || c.offset >= run_length(c.run))
    throw std::out_of_range("coords out of range");

  const uint64_t value = images_[c.run] + c.offset;
  uint32_t k = targets_[c.run];
  uint64_t probes = 0;
  while (k + 1 < heads_.size() && heads_[k + 1] <= value) {
    ++k;
    ++probes;
  }
  if (k + 1 < heads_.size()) ++probes;  // the comparison that stopped us
  if (counter) counter->note(probes);

  return {Coords{k, static_cast<uint32_t>(value - heads_[k])}, value};
}

Coords MoveTable::locate(uint64_t j) const {
  if (j >= n_) throw std::out_of_range("position out of range");
  const auto it = std::upper_bound(heads_.begin(), heads_.end(), j);
  const uint32_t k = static_cast<uint32_t>(it - heads_.begin()) - 1;
  return Coords{k, static_cast<uint32_t>(j - heads_[k])};
}

}  // namespace rpsi
