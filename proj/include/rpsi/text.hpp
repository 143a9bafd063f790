#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rpsi {

// Which order the suffix array sorts by. SuffixOrder compares plain
// suffixes (a proper prefix sorts first); RotationOrder compares full
// cyclic rotations, ties broken by starting position.
enum class Convention : uint8_t { SuffixOrder = 0, RotationOrder = 1 };

struct Text {
  std::vector<uint8_t> data;  // symbols in the dense alphabet [0, sigma)
  uint64_t n = 0;
  uint32_t sigma = 0;
  std::array<uint8_t, 256> alphabet_map{};  // original byte -> dense symbol
                                            // (0 for bytes that never occur)
  Convention convention = Convention::SuffixOrder;
  bool sentinel_appended = false;
};

// Densely remaps the input bytes preserving byte order. With
// append_sentinel, a fresh minimal symbol (dense code 0) is appended and
// every input byte shifts up by one code.
// Throws std::invalid_argument on empty input.
Text ingest_text(std::span<const uint8_t> bytes, Convention convention,
                 bool append_sentinel = false);

Text ingest_text(std::string_view bytes, Convention convention,
                 bool append_sentinel = false);

}  // namespace rpsi
