#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "rpsi/balance.hpp"
#include "rpsi/move_table.hpp"
#include "rpsi/psi_index.hpp"
#include "rpsi/suffix.hpp"
#include "rpsi/sweep.hpp"
#include "rpsi/text.hpp"

using namespace rpsi;

TEST_CASE("parallel kernels agree with serial references and oracles") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 6; ++round) {
    const auto bytes =
        testor::random_terminated_text(rng, 2000 + rng() % 30000,
                                       1 + rng() % 16);
    const Text t = ingest_text(std::span(bytes), Convention::SuffixOrder);
    const auto s = build_suffix_structures(t);
    const auto psi = oracle(s, PermKind::Psi);
    const auto lf = oracle(s, PermKind::LF);
    const uint32_t d = 2 + rng() % 7;
    const auto idx = PsiIndex::build(t, d);

    ScanCounter serial_counter, parallel_counter;
    const auto serial = sweep::psi_values_serial(idx, &serial_counter);
    const auto parallel = sweep::psi_values_parallel(idx, &parallel_counter);
    REQUIRE(serial == parallel);
    REQUIRE(sweep::count_mismatches(serial, psi) == 0);
    CHECK(serial_counter.steps == t.n);
    CHECK(parallel_counter.steps == t.n);
    CHECK(serial_counter.probes_max == parallel_counter.probes_max);
    CHECK(serial_counter.probes_total == parallel_counter.probes_total);
    CHECK(serial_counter.probes_max <= 2ull * d);

    const auto table =
        MoveTable::build(balance_runs(bwt_aligned_runs(s, lf), lf, d), lf);
    const auto mv_serial = sweep::move_values_serial(table);
    const auto mv_parallel = sweep::move_values_parallel(table);
    REQUIRE(mv_serial == mv_parallel);
    REQUIRE(sweep::count_mismatches(mv_serial, lf) == 0);

    const auto lf_s = sweep::lf_values_serial(idx);
    const auto lf_p = sweep::lf_values_parallel(idx);
    REQUIRE(lf_s == lf_p);
    REQUIRE(sweep::count_mismatches(lf_s, lf) == 0);
  }
}

TEST_CASE("simultaneous readers see identical answers") {
  std::mt19937_64 rng(62);
  const auto bytes = testor::random_terminated_text(rng, 20000, 8);
  const Text t = ingest_text(std::span(bytes), Convention::SuffixOrder);
  const auto idx = PsiIndex::build(t, 4);
  const auto expected = sweep::psi_values_serial(idx);

  std::vector<std::thread> readers;
  std::array<uint64_t, 4> bad{};
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&, r] {
      // Each reader walks its own cursor over a shifted position order.
      for (uint64_t j = 0; j < idx.length(); ++j) {
        const uint64_t p = (j * 7919 + r) % idx.length();
        if (idx.step(idx.coords_of(p)).second != expected[p]) ++bad[r];
      }
    });
  }
  for (auto& th : readers) th.join();
  for (uint64_t b : bad) CHECK(b == 0);
}

TEST_CASE("mismatch counter reports differences") {
  PermutationOracle pi;
  pi.values = {1, 2, 0};
  CHECK(sweep::count_mismatches({1, 2, 0}, pi) == 0);
  CHECK(sweep::count_mismatches({1, 0, 2}, pi) == 2);
  CHECK(sweep::count_mismatches({1, 2}, pi) != 0);
}
