#pragma once

#include <cstdint>
#include <vector>

#include "rpsi/move_table.hpp"
#include "rpsi/psi_index.hpp"

namespace rpsi {
namespace sweep {

// Full-domain materialization of a permutation through its queryable
// structure: out[j] = pi(j) for every j. Each position is independent
// (entry lookup plus one step), so the sweep splits freely across
// threads. The serial variants are the reference the parallel kernels
// are tested against.

std::vector<uint32_t> psi_values_serial(const PsiIndex& index,
                                        ScanCounter* counter = nullptr);
std::vector<uint32_t> psi_values_parallel(const PsiIndex& index,
                                          ScanCounter* counter = nullptr);

std::vector<uint32_t> move_values_serial(const MoveTable& table,
                                         ScanCounter* counter = nullptr);
std::vector<uint32_t> move_values_parallel(const MoveTable& table,
                                           ScanCounter* counter = nullptr);

// LF materialized through the inverse direction of a psi index.
std::vector<uint32_t> lf_values_serial(const PsiIndex& index);
std::vector<uint32_t> lf_values_parallel(const PsiIndex& index);

uint64_t count_mismatches(const std::vector<uint32_t>& got,
                          const PermutationOracle& want);

bool openmp_enabled();
int thread_count();

}  // namespace sweep
}  // namespace rpsi
