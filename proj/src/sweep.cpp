#include "rpsi/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rpsi {
namespace sweep {

namespace {

template <typename Stepper>
std::vector<uint32_t> run_serial(uint64_t n, ScanCounter* counter,
                                 Stepper&& stepper) {
  std::vector<uint32_t> out(n);
  ScanCounter local;
  for (uint64_t j = 0; j < n; ++j) out[j] = stepper(j, &local);
  if (counter) {
    counter->steps += local.steps;
    counter->probes_total += local.probes_total;
    if (local.probes_max > counter->probes_max)
      counter->probes_max = local.probes_max;
  }
  return out;
}

template <typename Stepper>
std::vector<uint32_t> run_parallel(uint64_t n, ScanCounter* counter,
                                   Stepper&& stepper) {
#ifndef _OPENMP
  return run_serial(n, counter, stepper);
#else
  std::vector<uint32_t> out(n);
  uint64_t steps = 0, probes_total = 0, probes_max = 0;
#pragma omp parallel
  {
    ScanCounter local;
#pragma omp for schedule(static)
    for (int64_t j = 0; j < static_cast<int64_t>(n); ++j)
      out[j] = stepper(static_cast<uint64_t>(j), &local);
#pragma omp critical
    {
      steps += local.steps;
      probes_total += local.probes_total;
      if (local.probes_max > probes_max) probes_max = local.probes_max;
    }
  }
  if (counter) {
    counter->steps += steps;
    counter->probes_total += probes_total;
    if (probes_max > counter->probes_max) counter->probes_max = probes_max;
  }
  return out;
#endif
}

}  // namespace

std::vector<uint32_t> psi_values_serial(const PsiIndex& index,
                                        ScanCounter* counter) {
  return run_serial(index.length(), counter,
                    [&](uint64_t j, ScanCounter* c) -> uint32_t {
                      return static_cast<uint32_t>(
                          index.step(index.coords_of(j), c).second);
                    });
}

std::vector<uint32_t> psi_values_parallel(const PsiIndex& index,
                                          ScanCounter* counter) {
  return run_parallel(index.length(), counter,
                      [&](uint64_t j, ScanCounter* c) -> uint32_t {
                        return static_cast<uint32_t>(
                            index.step(index.coords_of(j), c).second);
                      });
}

std::vector<uint32_t> move_values_serial(const MoveTable& table,
                                         ScanCounter* counter) {
  return run_serial(table.length(), counter,
                    [&](uint64_t j, ScanCounter* c) -> uint32_t {
                      return static_cast<uint32_t>(
                          table.step(table.locate(j), c).second);
                    });
}

std::vector<uint32_t> move_values_parallel(const MoveTable& table,
                                           ScanCounter* counter) {
  return run_parallel(table.length(), counter,
                      [&](uint64_t j, ScanCounter* c) -> uint32_t {
                        return static_cast<uint32_t>(
                            table.step(table.locate(j), c).second);
                      });
}

std::vector<uint32_t> lf_values_serial(const PsiIndex& index) {
  return run_serial(index.length(), nullptr,
                    [&](uint64_t j, ScanCounter*) -> uint32_t {
                      return static_cast<uint32_t>(index.lf_value(j));
                    });
}

std::vector<uint32_t> lf_values_parallel(const PsiIndex& index) {
  return run_parallel(index.length(), nullptr,
                      [&](uint64_t j, ScanCounter*) -> uint32_t {
                        return static_cast<uint32_t>(index.lf_value(j));
                      });
}

uint64_t count_mismatches(const std::vector<uint32_t>& got,
                          const PermutationOracle& want) {
  if (got.size() != want.values.size()) return got.size() + 1;
  uint64_t bad = 0;
  for (uint64_t j = 0; j < got.size(); ++j) bad += got[j] != want.values[j];
  return bad;
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sweep
}  // namespace rpsi
