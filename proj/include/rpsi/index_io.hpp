#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rpsi/psi_index.hpp"

namespace rpsi {

// On-disk layout (all integers little-endian):
//   magic "RPSIIDX1", version u32 = 1, convention u8, 3 reserved zero
//   bytes, n/sigma/d/r' as u64, 256-byte alphabet map, r' sub-run
//   symbols, r' tau entries as u32, then for B_F and B_L in that order:
//   low width u8, count u64, packed low words, high bit-length u64,
//   packed high words; then B_FL bit-length u64 and packed words; and a
//   trailing FNV-1a-64 checksum of every preceding byte.
inline constexpr char kIndexMagic[8] = {'R', 'P', 'S', 'I',
                                        'I', 'D', 'X', '1'};
inline constexpr uint32_t kIndexVersion = 1;

uint64_t fnv1a64(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_index(const PsiIndex& index);
PsiIndex deserialize_index(std::span<const uint8_t> bytes);

// File wrappers; throw std::runtime_error on I/O or format problems.
void save_index(const PsiIndex& index, const std::filesystem::path& path);
PsiIndex load_index(const std::filesystem::path& path);

}  // namespace rpsi
