#include "rpsi/bitvec.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace rpsi {

namespace {

constexpr uint64_t kWordsPerSuper = 8;  // 512-bit superblocks

uint64_t div_ceil(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

// 1-based k-th set bit within a word; caller guarantees popcount >= k.
unsigned kth_set_bit(uint64_t word, unsigned k) {
  for (unsigned i = 1; i < k; ++i) word &= word - 1;
  return static_cast<unsigned>(std::countr_zero(word));
}

}  // namespace

// ---------------------------------------------------------------- PackedInts

PackedInts::PackedInts(uint8_t width, uint64_t count)
    : width_(width), count_(count), words_(word_count(width, count), 0) {}

uint64_t PackedInts::word_count(uint8_t width, uint64_t count) {
  return width == 0 ? 0 : div_ceil(count * width, 64);
}

PackedInts PackedInts::pack(const std::vector<uint64_t>& values,
                            uint8_t width) {
  PackedInts out(width, values.size());
  for (uint64_t i = 0; i < values.size(); ++i) out.set(i, values[i]);
  return out;
}

void PackedInts::set(uint64_t i, uint64_t v) {
  if (width_ == 0) return;
  const uint64_t bit = i * width_;
  const uint64_t w = bit >> 6;
  const unsigned off = bit & 63;
  const uint64_t mask = width_ == 64 ? ~0ull : (1ull << width_) - 1;
  v &= mask;
  words_[w] = (words_[w] & ~(mask << off)) | (v << off);
  if (off + width_ > 64) {
    const unsigned spill = off + width_ - 64;
    const uint64_t hi_mask = (1ull << spill) - 1;
    words_[w + 1] = (words_[w + 1] & ~hi_mask) | (v >> (width_ - spill));
  }
}

uint64_t PackedInts::get(uint64_t i) const {
  if (width_ == 0) return 0;
  const uint64_t bit = i * width_;
  const uint64_t w = bit >> 6;
  const unsigned off = bit & 63;
  const uint64_t mask = width_ == 64 ? ~0ull : (1ull << width_) - 1;
  uint64_t v = words_[w] >> off;
  if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
  return v & mask;
}

PackedInts PackedInts::from_words(uint8_t width, uint64_t count,
                                  std::vector<uint64_t> words) {
  if (words.size() != word_count(width, count))
    throw std::invalid_argument("packed ints: word count mismatch");
  PackedInts out;
  out.width_ = width;
  out.count_ = count;
  out.words_ = std::move(words);
  return out;
}

// ----------------------------------------------------------------- PlainBits

PlainBits PlainBits::from_bools(const std::vector<bool>& bits) {
  std::vector<uint64_t> words(div_ceil(bits.size(), 64), 0);
  for (uint64_t i = 0; i < bits.size(); ++i)
    if (bits[i]) words[i >> 6] |= 1ull << (i & 63);
  return from_words(std::move(words), bits.size());
}

PlainBits PlainBits::from_positions(const std::vector<uint64_t>& one_positions,
                                    uint64_t length) {
  std::vector<uint64_t> words(div_ceil(length, 64), 0);
  for (uint64_t p : one_positions) {
    if (p >= length) throw std::invalid_argument("bit position out of range");
    words[p >> 6] |= 1ull << (p & 63);
  }
  return from_words(std::move(words), length);
}

PlainBits PlainBits::from_string(std::string_view bits) {
  std::vector<uint64_t> words(div_ceil(bits.size(), 64), 0);
  for (uint64_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      words[i >> 6] |= 1ull << (i & 63);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string must be over {0,1}");
  }
  return from_words(std::move(words), bits.size());
}

PlainBits PlainBits::from_words(std::vector<uint64_t> words, uint64_t length) {
  if (words.size() != div_ceil(length, 64))
    throw std::invalid_argument("plain bits: word count mismatch");
  if (length & 63) words.back() &= (1ull << (length & 63)) - 1;  // clear tail
  PlainBits out;
  out.words_ = std::move(words);
  out.len_ = length;
  out.build_directories();
  return out;
}

bool PlainBits::get(uint64_t p) const {
  if (p >= len_) throw std::out_of_range("bit position out of range");
  return (words_[p >> 6] >> (p & 63)) & 1;
}

void PlainBits::build_directories() {
  super_.assign(div_ceil(words_.size(), kWordsPerSuper) + 1, 0);
  block_.assign(words_.size(), 0);
  sel1_.clear();
  sel0_.clear();
  uint64_t total = 0;
  uint64_t in_super = 0;
  for (uint64_t w = 0; w < words_.size(); ++w) {
    if (w % kWordsPerSuper == 0) {
      super_[w / kWordsPerSuper] = total;
      in_super = 0;
    }
    block_[w] = static_cast<uint16_t>(in_super);
    const uint64_t pc = std::popcount(words_[w]);
    total += pc;
    in_super += pc;
  }
  super_[div_ceil(words_.size(), kWordsPerSuper)] = total;
  ones_ = total;

  uint64_t seen1 = 0, seen0 = 0;
  for (uint64_t p = 0; p < len_; ++p) {
    if ((words_[p >> 6] >> (p & 63)) & 1) {
      if (seen1 % 64 == 0) sel1_.push_back(p);
      ++seen1;
    } else {
      if (seen0 % 64 == 0) sel0_.push_back(p);
      ++seen0;
    }
  }
}

uint64_t PlainBits::rank(bool b, uint64_t p) const {
  if (p >= len_) throw std::out_of_range("rank position out of range");
  const uint64_t w = p >> 6;
  const unsigned off = static_cast<unsigned>(p & 63);
  const uint64_t mask = off == 63 ? ~0ull : (2ull << off) - 1;
  const uint64_t r1 = super_[w / kWordsPerSuper] + block_[w] +
                      std::popcount(words_[w] & mask);
  return b ? r1 : (p + 1) - r1;
}

uint64_t PlainBits::select(bool b, uint64_t x) const {
  if (x == 0 || x > count(b)) throw std::out_of_range("select out of range");
  const auto& samples = b ? sel1_ : sel0_;
  const uint64_t start = samples[(x - 1) >> 6];
  uint64_t need = (x - 1) & 63;  // b's still wanted strictly after `start`
  if (need == 0) return start;

  uint64_t w = start >> 6;
  uint64_t word = b ? words_[w] : ~words_[w];
  // Keep bits strictly after `start` in its word.
  const unsigned off = static_cast<unsigned>(start & 63);
  word &= off == 63 ? 0ull : ~((2ull << off) - 1);
  for (;;) {
    if (w == words_.size() - 1 && (len_ & 63))
      word &= (1ull << (len_ & 63)) - 1;
    const uint64_t pc = std::popcount(word);
    if (need <= pc)
      return (w << 6) + kth_set_bit(word, static_cast<unsigned>(need));
    need -= pc;
    ++w;
    word = b ? words_[w] : ~words_[w];
  }
}

uint64_t PlainBits::directory_bits() const {
  return 64 * super_.size() + 16 * block_.size() +
         64 * (sel1_.size() + sel0_.size());
}

std::string PlainBits::to_string() const {
  std::string s(len_, '0');
  for (uint64_t p = 0; p < len_; ++p)
    if ((words_[p >> 6] >> (p & 63)) & 1) s[p] = '1';
  return s;
}

// ---------------------------------------------------------------- SparseBits

SparseBits SparseBits::from_positions(const std::vector<uint64_t>& positions,
                                      uint64_t universe) {
  const uint64_t c = positions.size();
  for (uint64_t i = 0; i < c; ++i) {
    if (positions[i] >= universe)
      throw std::invalid_argument("sparse bits: position beyond universe");
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::invalid_argument("sparse bits: positions must increase");
  }

  SparseBits out;
  out.universe_ = universe;
  out.count_ = c;
  if (c == 0) {
    out.high_ = PlainBits::from_words({}, 0);
    return out;
  }

  const uint64_t ratio = universe / c;
  out.low_width_ =
      ratio >= 1 ? static_cast<uint8_t>(std::bit_width(ratio) - 1) : 0;
  const uint8_t w = out.low_width_;

  out.low_ = PackedInts(w, c);
  std::vector<uint64_t> high_ones(c);
  for (uint64_t i = 0; i < c; ++i) {
    if (w > 0) out.low_.set(i, positions[i] & ((1ull << w) - 1));
    high_ones[i] = (positions[i] >> w) + i;
  }
  const uint64_t high_len = c + (universe >> w) + 1;
  out.high_ = PlainBits::from_positions(high_ones, high_len);
  return out;
}

uint64_t SparseBits::select(uint64_t x) const {
  if (x == 0 || x > count_)
    throw std::out_of_range("sparse select out of range");
  const uint64_t high_part = high_.select(true, x) - (x - 1);
  const uint64_t low_part = low_width_ ? low_.get(x - 1) : 0;
  return (high_part << low_width_) | low_part;
}

std::pair<uint64_t, uint64_t> SparseBits::pred(uint64_t p) const {
  if (count_ == 0 || p < select(1))
    throw std::out_of_range("no stored position at or before p");
  uint64_t lo = 1, hi = count_;  // select(lo) <= p
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo + 1) / 2;
    if (select(mid) <= p)
      lo = mid;
    else
      hi = mid - 1;
  }
  return {lo, select(lo)};
}

std::vector<uint64_t> SparseBits::decode() const {
  std::vector<uint64_t> out(count_);
  for (uint64_t x = 1; x <= count_; ++x) out[x - 1] = select(x);
  return out;
}

SparseBits SparseBits::from_parts(uint64_t universe, uint64_t count,
                                  uint8_t low_width, PackedInts low,
                                  PlainBits high) {
  SparseBits out;
  out.universe_ = universe;
  out.count_ = count;
  out.low_width_ = low_width;
  out.low_ = std::move(low);
  out.high_ = std::move(high);
  if (count > 0) {
    if (out.high_.count(true) != count)
      throw std::invalid_argument("sparse bits: high ones != count");
    uint64_t prev = 0;
    for (uint64_t x = 1; x <= count; ++x) {
      const uint64_t p = out.select(x);
      if (p >= universe || (x > 1 && p <= prev))
        throw std::invalid_argument("sparse bits: decoded list invalid");
      prev = p;
    }
  }
  return out;
}

}  // namespace rpsi
