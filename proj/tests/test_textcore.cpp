#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "example_fixture.hpp"
#include "rpsi/suffix.hpp"
#include "rpsi/text.hpp"

using namespace rpsi;

TEST_CASE("ingest remaps densely preserving byte order") {
  const Text example = ingest_text(fixture::kText, Convention::SuffixOrder);
  CHECK(example.n == 45);
  CHECK(example.sigma == 5);
  CHECK(example.alphabet_map['$'] == 0);
  CHECK(example.alphabet_map['A'] == 1);
  CHECK(example.alphabet_map['C'] == 2);
  CHECK(example.alphabet_map['G'] == 3);
  CHECK(example.alphabet_map['T'] == 4);

  const Text single = ingest_text("a", Convention::SuffixOrder);
  CHECK(single.n == 1);
  CHECK(single.sigma == 1);

  const Text abab = ingest_text("abab", Convention::SuffixOrder);
  CHECK(abab.n == 4);
  CHECK(abab.sigma == 2);
  CHECK(abab.alphabet_map['a'] == 0);
  CHECK(abab.alphabet_map['b'] == 1);
  CHECK(abab.data == std::vector<uint8_t>{0, 1, 0, 1});

  CHECK_THROWS_WITH_AS(ingest_text("", Convention::SuffixOrder), "empty text",
                       std::invalid_argument);
}

TEST_CASE("ingest with appended sentinel") {
  const Text t = ingest_text("cab", Convention::SuffixOrder, true);
  CHECK(t.n == 4);
  CHECK(t.sigma == 4);
  CHECK(t.sentinel_appended);
  CHECK(t.data == std::vector<uint8_t>{3, 1, 2, 0});
  CHECK(t.alphabet_map['a'] == 1);
}

TEST_CASE("suffix array fixtures") {
  const Text abaab = ingest_text("abaab", Convention::SuffixOrder);
  CHECK(build_suffix_structures(abaab).sa ==
        std::vector<uint32_t>{2, 3, 0, 4, 1});

  const Text aaa = ingest_text("aaa", Convention::RotationOrder);
  CHECK(build_suffix_structures(aaa).sa == std::vector<uint32_t>{0, 1, 2});
}

TEST_CASE("worked-example run counts per convention") {
  const Text rot = ingest_text(fixture::kText, Convention::RotationOrder);
  const auto srot = build_suffix_structures(rot);
  CHECK(srot.runs == 13);

  const Text suf = ingest_text(fixture::kText, Convention::SuffixOrder);
  const auto ssuf = build_suffix_structures(suf);
  CHECK(ssuf.runs == 12);
  CHECK(srot.sa != ssuf.sa);  // five '$' symbols: the orders differ
}

TEST_CASE("suffix array matches the comparison-sort oracle") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 150; ++round) {
    const size_t n = 1 + rng() % 512;
    const unsigned sigma = 1 + rng() % 32;
    std::vector<uint8_t> bytes(n);
    for (auto& b : bytes) b = static_cast<uint8_t>(rng() % sigma);
    const Convention conv = round % 2 == 0 ? Convention::SuffixOrder
                                           : Convention::RotationOrder;
    const Text t = ingest_text(std::span(bytes), conv);
    const auto s = build_suffix_structures(t);
    CHECK(s.sa == testor::naive_sa(t.data, conv));
    for (uint32_t i = 0; i < t.n; ++i) {
      REQUIRE(s.isa[s.sa[i]] == i);
      REQUIRE(s.bwt[i] == t.data[(s.sa[i] + t.n - 1) % t.n]);
    }
  }
}

TEST_CASE("oracles satisfy the defining formulas and invert each other") {
  std::mt19937_64 rng(12);

  // Positionwise evaluation on the worked small example.
  const Text abaab = ingest_text("abaab", Convention::SuffixOrder);
  const auto s = build_suffix_structures(abaab);
  const auto psi = oracle(s, PermKind::Psi);
  for (uint32_t i = 0; i < 5; ++i)
    CHECK(psi.values[i] == s.isa[(s.sa[i] + 1) % 5]);

  const Text single = ingest_text("x", Convention::SuffixOrder);
  const auto s1 = build_suffix_structures(single);
  for (PermKind k :
       {PermKind::LF, PermKind::Phi, PermKind::PhiInv, PermKind::Psi})
    CHECK(oracle(s1, k).values == std::vector<uint32_t>{0});

  for (int round = 0; round < 40; ++round) {
    const auto bytes = testor::random_terminated_text(rng, 1 + rng() % 600,
                                                      1 + rng() % 16);
    const Convention conv = round % 2 == 0 ? Convention::SuffixOrder
                                           : Convention::RotationOrder;
    const Text t = ingest_text(std::span(bytes), conv);
    const auto st = build_suffix_structures(t);
    const auto lf = oracle(st, PermKind::LF);
    const auto ps = oracle(st, PermKind::Psi);
    const auto phi = oracle(st, PermKind::Phi);
    const auto phi_inv = oracle(st, PermKind::PhiInv);

    std::vector<bool> seen(t.n, false);
    for (uint32_t i = 0; i < t.n; ++i) {
      REQUIRE(ps.values[lf.values[i]] == i);
      REQUIRE(lf.values[ps.values[i]] == i);
      REQUIRE(phi_inv.values[phi.values[i]] == i);
      REQUIRE_FALSE(seen[ps.values[i]]);
      seen[ps.values[i]] = true;
    }

    // psi is one n-cycle.
    uint32_t pos = 0;
    for (uint64_t k = 0; k + 1 < t.n; ++k) {
      pos = ps.values[pos];
      REQUIRE(pos != 0);
    }
    CHECK(ps.values[pos] == 0);
  }
}

TEST_CASE("psi splits into at most r runs on terminated texts") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 60; ++round) {
    const auto bytes =
        testor::random_terminated_text(rng, 1 + rng() % 800, 1 + rng() % 30);
    for (Convention conv :
         {Convention::SuffixOrder, Convention::RotationOrder}) {
      const Text t = ingest_text(std::span(bytes), conv);
      const auto s = build_suffix_structures(t);
      const auto runs = run_decompose(oracle(s, PermKind::Psi));
      CHECK(runs.p_heads.size() <= s.runs);
    }
  }
}

TEST_CASE("run decomposition fixtures") {
  PermutationOracle identity;
  identity.values.resize(9);
  std::iota(identity.values.begin(), identity.values.end(), 0);
  const auto rid = run_decompose(identity);
  CHECK(rid.p_heads == std::vector<uint32_t>{0});
  CHECK(rid.q_values == std::vector<uint32_t>{0});

  PermutationOracle reversal;
  reversal.values = {3, 2, 1, 0};
  CHECK(run_decompose(reversal).p_heads ==
        std::vector<uint32_t>{0, 1, 2, 3});
}

TEST_CASE("worked-example psi decomposition matches the reference boundaries") {
  const Text t = ingest_text(fixture::kText, Convention::RotationOrder);
  const auto s = build_suffix_structures(t);
  const auto psi = oracle(s, PermKind::Psi);

  // The minimal decomposition undercounts the reference set: psi(25)=psi(24)+1
  // merges two of the 13 boxes, so a boundary only appears once the
  // BWT-run structure is overlaid.
  const auto minimal = run_decompose(psi);
  CHECK(minimal.p_heads.size() == 12);

  const auto aligned = bwt_aligned_runs(s, psi);
  const auto expect = fixture::one_positions(fixture::kBF);
  REQUIRE(aligned.p_heads.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i)
    CHECK(aligned.p_heads[i] == expect[i]);
  CHECK(std::includes(aligned.p_heads.begin(), aligned.p_heads.end(),
                      minimal.p_heads.begin(), minimal.p_heads.end()));

  std::vector<uint32_t> q_sorted(aligned.q_values);
  std::sort(q_sorted.begin(), q_sorted.end());
  const auto expect_q = fixture::one_positions(fixture::kBL);
  REQUIRE(q_sorted.size() == expect_q.size());
  for (size_t i = 0; i < expect_q.size(); ++i)
    CHECK(q_sorted[i] == expect_q[i]);

  CHECK(is_valid_decomposition(minimal, psi));
  CHECK(is_valid_decomposition(aligned, psi));
}

TEST_CASE("validity check rejects broken decompositions") {
  PermutationOracle pi;
  pi.values = {2, 3, 0, 1};
  RunDecomposition good{{0, 2}, {2, 0}};
  CHECK(is_valid_decomposition(good, pi));
  RunDecomposition no_zero{{2}, {0}};
  CHECK_FALSE(is_valid_decomposition(no_zero, pi));
  RunDecomposition missing_break{{0}, {2}};
  CHECK_FALSE(is_valid_decomposition(missing_break, pi));
  RunDecomposition wrong_q{{0, 2}, {2, 1}};
  CHECK_FALSE(is_valid_decomposition(wrong_q, pi));
}

TEST_CASE("bwt-aligned runs are valid on random texts, both conventions") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 40; ++round) {
    const size_t n = 1 + rng() % 400;
    std::vector<uint8_t> bytes(n);
    for (auto& b : bytes) b = static_cast<uint8_t>(rng() % 3);
    for (Convention conv :
         {Convention::SuffixOrder, Convention::RotationOrder}) {
      const Text t = ingest_text(std::span(bytes), conv);
      const auto s = build_suffix_structures(t);
      for (PermKind kind : {PermKind::LF, PermKind::Psi}) {
        const auto perm = oracle(s, kind);
        CHECK(is_valid_decomposition(bwt_aligned_runs(s, perm), perm));
      }
    }
  }
}
