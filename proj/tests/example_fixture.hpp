// Worked-example fixtures: the text, its printed boundary bitvectors,
// the interleave, and the tau table, frozen here and shared by the unit
// and acceptance suites.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fixture {

inline const std::string kText =
    "GATTACAT$AGATACAT$GATACAT$GATTAGAT$GATTAGATA$";

inline const std::string kBL =
    "101100000001100100000010000010001000011010100";
inline const std::string kBF =
    "110001100000100001010010010000001010000000110";
inline const std::string kBFL = "01011001011000101010111010";

inline const std::vector<uint32_t> kTau = {3, 7, 1,  6, 8, 10, 12,
                                           4, 5, 0, 2, 9, 11};

// F symbols of the 13 sub-runs in the dense alphabet $,A,C,G,T -> 0..4.
inline const std::vector<uint8_t> kSubrunSymbols = {0, 0, 1, 1, 1, 1, 1,
                                                    2, 3, 4, 4, 4, 4};

inline std::vector<uint64_t> one_positions(const std::string& bits) {
  std::vector<uint64_t> out;
  for (uint64_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') out.push_back(i);
  return out;
}

}  // namespace fixture
