// Compares the serial and OpenMP sweep kernels on a generated text:
// full-domain psi materialization through the index and LF through a
// move table. The two variants must agree exactly; timings show what
// the parallel for buys on this machine.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpsi/balance.hpp"
#include "rpsi/move_table.hpp"
#include "rpsi/psi_index.hpp"
#include "rpsi/suffix.hpp"
#include "rpsi/sweep.hpp"
#include "rpsi/text.hpp"

using namespace rpsi;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP sweep kernel benchmark"};
  uint64_t n = 1 << 20, sigma = 4, d = 4, seed = 7;
  int reps = 3;
  app.add_option("--n", n, "text length")->default_val(1 << 20);
  app.add_option("--sigma", sigma, "alphabet size")->default_val(4);
  app.add_option("--d", d, "splitting parameter")->default_val(4);
  app.add_option("--reps", reps, "repetitions, best taken")->default_val(3);
  app.add_option("--seed", seed, "text generator seed")->default_val(7);
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::vector<uint8_t> bytes(n - 1);
  std::uniform_int_distribution<int> dist(1, static_cast<int>(sigma));
  for (auto& b : bytes) b = static_cast<uint8_t>(dist(rng));
  bytes.push_back(0);  // unique terminator

  const Text text =
      ingest_text(std::span(bytes), Convention::SuffixOrder, false);
  std::printf("n=%llu sigma=%u d=%llu openmp=%s threads=%d\n",
              static_cast<unsigned long long>(text.n), text.sigma,
              static_cast<unsigned long long>(d),
              sweep::openmp_enabled() ? "yes" : "no", sweep::thread_count());

  const PsiIndex index = PsiIndex::build(text, static_cast<uint32_t>(d));
  const SuffixStructures s = build_suffix_structures(text);
  const PermutationOracle lf = oracle(s, PermKind::LF);
  const MoveTable table = MoveTable::build(
      balance_runs(bwt_aligned_runs(s, lf), lf, static_cast<uint32_t>(d)),
      lf);

  std::vector<uint32_t> serial_out, parallel_out;
  const double psi_serial =
      time_ms([&] { serial_out = sweep::psi_values_serial(index); }, reps);
  const double psi_parallel =
      time_ms([&] { parallel_out = sweep::psi_values_parallel(index); }, reps);
  if (serial_out != parallel_out) {
    std::printf("FAIL: psi sweep kernels disagree\n");
    return 1;
  }
  std::printf("psi sweep   serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
              psi_serial, psi_parallel, psi_serial / psi_parallel);

  const double lf_serial =
      time_ms([&] { serial_out = sweep::move_values_serial(table); }, reps);
  const double lf_parallel =
      time_ms([&] { parallel_out = sweep::move_values_parallel(table); },
              reps);
  if (serial_out != parallel_out) {
    std::printf("FAIL: move sweep kernels disagree\n");
    return 1;
  }
  std::printf("move sweep  serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
              lf_serial, lf_parallel, lf_serial / lf_parallel);
  return 0;
}
