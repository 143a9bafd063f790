#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace rpsi {

// Rank/select convention used throughout: rank_b(p) counts b-bits at
// positions 0..p inclusive; select_b(x) is the 0-based position of the
// x-th b-bit, x counted from 1.

// Fixed-width packed integer array.
class PackedInts {
 public:
  PackedInts() = default;
  PackedInts(uint8_t width, uint64_t count);

  static PackedInts pack(const std::vector<uint64_t>& values, uint8_t width);

  void set(uint64_t i, uint64_t v);
  uint64_t get(uint64_t i) const;

  uint8_t width() const { return width_; }
  uint64_t size() const { return count_; }
  uint64_t data_bits() const { return static_cast<uint64_t>(width_) * count_; }
  const std::vector<uint64_t>& words() const { return words_; }
  static uint64_t word_count(uint8_t width, uint64_t count);

  static PackedInts from_words(uint8_t width, uint64_t count,
                               std::vector<uint64_t> words);

 private:
  uint8_t width_ = 0;
  uint64_t count_ = 0;
  std::vector<uint64_t> words_;
};

// Plain bitvector with two-level rank directory (absolute superblock
// counts + in-superblock word counts) and sampled select (every 64th
// occurrence of each bit value, forward word scan in between). The scan
// between samples is word-bounded only for the densities this project
// stores (interleaves and Elias-Fano high parts); a true constant-time
// select directory would replace the samples if that ever changes.
class PlainBits {
 public:
  PlainBits() = default;

  static PlainBits from_bools(const std::vector<bool>& bits);
  static PlainBits from_positions(const std::vector<uint64_t>& one_positions,
                                  uint64_t length);
  static PlainBits from_string(std::string_view bits);  // '0'/'1'
  static PlainBits from_words(std::vector<uint64_t> words, uint64_t length);

  uint64_t size() const { return len_; }
  uint64_t count(bool b) const { return b ? ones_ : len_ - ones_; }
  bool get(uint64_t p) const;

  // Count of b at positions [0, p]. Throws std::out_of_range if p >= size.
  uint64_t rank(bool b, uint64_t p) const;
  // Position of the x-th b (1 <= x <= count(b)). Throws std::out_of_range.
  uint64_t select(bool b, uint64_t x) const;

  const std::vector<uint64_t>& words() const { return words_; }
  uint64_t data_bits() const { return len_; }
  uint64_t directory_bits() const;

  std::string to_string() const;

 private:
  void build_directories();

  std::vector<uint64_t> words_;
  uint64_t len_ = 0;
  uint64_t ones_ = 0;
  std::vector<uint64_t> super_;   // absolute 1-count before each superblock
  std::vector<uint16_t> block_;   // 1-count before word, within superblock
  std::vector<uint64_t> sel1_;    // position of the (64k+1)-th 1
  std::vector<uint64_t> sel0_;    // position of the (64k+1)-th 0
};

// Elias-Fano encoding of a strictly increasing position list over
// universe [0, m): low bits of width w = floor(log2(m/c)) plus high
// parts in unary inside a PlainBits, giving constant-work select.
class SparseBits {
 public:
  SparseBits() = default;

  // Throws std::invalid_argument on a non-increasing or out-of-universe
  // input. An empty list is allowed; every select then throws.
  static SparseBits from_positions(const std::vector<uint64_t>& positions,
                                   uint64_t universe);

  uint64_t universe() const { return universe_; }
  uint64_t count() const { return count_; }

  // x-th stored position, 1 <= x <= count. One select on the high bits
  // plus one low-bits read.
  uint64_t select(uint64_t x) const;

  // Largest stored position <= p and its 1-based ordinal, by binary
  // search over select; O(log c), off the constant-time path.
  // Throws std::out_of_range if p precedes the first stored position.
  std::pair<uint64_t, uint64_t> pred(uint64_t p) const;  // (ordinal, position)

  std::vector<uint64_t> decode() const;

  uint8_t low_width() const { return low_width_; }
  const PackedInts& low() const { return low_; }
  const PlainBits& high() const { return high_; }
  uint64_t data_bits() const { return low_.data_bits() + high_.data_bits(); }
  uint64_t directory_bits() const { return high_.directory_bits(); }

  static SparseBits from_parts(uint64_t universe, uint64_t count,
                               uint8_t low_width, PackedInts low,
                               PlainBits high);

 private:
  uint64_t universe_ = 0;
  uint64_t count_ = 0;
  uint8_t low_width_ = 0;
  PackedInts low_;
  PlainBits high_;
};

}  // namespace rpsi
