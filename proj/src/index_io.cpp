#include "rpsi/index_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace rpsi {

namespace {

class Writer {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back((v >> (8 * i)) & 0xff);
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back((v >> (8 * i)) & 0xff);
  }
  void bytes(const uint8_t* p, size_t len) {
    buf_.insert(buf_.end(), p, p + len);
  }
  void words(const std::vector<uint64_t>& ws) {
    for (uint64_t w : ws) u64(w);
  }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint8_t u8() { return take(1)[0]; }
  uint32_t u32() {
    auto p = take(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(p[i]) << (8 * i);
    return v;
  }
  uint64_t u64() {
    auto p = take(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return v;
  }
  std::span<const uint8_t> take(size_t len) {
    if (len > bytes_.size() - pos_)
      throw std::runtime_error("truncated index file");
    auto out = bytes_.subspan(pos_, len);
    pos_ += len;
    return out;
  }
  std::vector<uint64_t> words(uint64_t count) {
    if (count > remaining() / 8)
      throw std::runtime_error("truncated index file");
    std::vector<uint64_t> out(count);
    for (uint64_t i = 0; i < count; ++i) out[i] = u64();
    return out;
  }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

void write_sparse(Writer& w, const SparseBits& v) {
  w.u8(v.low_width());
  w.u64(v.count());
  w.words(v.low().words());
  w.u64(v.high().size());
  w.words(v.high().words());
}

SparseBits read_sparse(Reader& r, uint64_t universe) {
  const uint8_t width = r.u8();
  const uint64_t count = r.u64();
  auto low_words = r.words(PackedInts::word_count(width, count));
  auto low = PackedInts::from_words(width, count, std::move(low_words));
  const uint64_t high_len = r.u64();
  auto high_words = r.words((high_len + 63) / 64);
  auto high = PlainBits::from_words(std::move(high_words), high_len);
  return SparseBits::from_parts(universe, count, width, std::move(low),
                                std::move(high));
}

}  // namespace

uint64_t fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 14695981039346656037ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<uint8_t> serialize_index(const PsiIndex& index) {
  const uint64_t r = index.run_count();
  if (r >= (1ull << 32))
    throw std::runtime_error("r' exceeds the u32 tau entry limit");

  Writer w;
  w.bytes(reinterpret_cast<const uint8_t*>(kIndexMagic), 8);
  w.u32(kIndexVersion);
  w.u8(static_cast<uint8_t>(index.convention()));
  w.u8(0);
  w.u8(0);
  w.u8(0);
  w.u64(index.length());
  w.u64(index.sigma());
  w.u64(index.d());
  w.u64(r);
  w.bytes(index.alphabet_map().data(), 256);
  w.bytes(index.tau_perm().symbols.data(), r);
  for (uint64_t i = 0; i < r; ++i)
    w.u32(static_cast<uint32_t>(index.tau_perm().values.get(i)));
  write_sparse(w, index.bf());
  write_sparse(w, index.bl());
  w.u64(index.bfl().size());
  w.words(index.bfl().words());

  auto buf = w.take();
  const uint64_t checksum = fnv1a64(buf);
  Writer tail;
  tail.u64(checksum);
  auto t = tail.take();
  buf.insert(buf.end(), t.begin(), t.end());
  return buf;
}

PsiIndex deserialize_index(std::span<const uint8_t> bytes) {
  if (bytes.size() < 8 + 4 + 4 + 4 * 8 + 256 + 8)
    throw std::runtime_error("truncated index file");

  const auto body = bytes.first(bytes.size() - 8);
  Reader tail(bytes.subspan(bytes.size() - 8));
  if (fnv1a64(body) != tail.u64())
    throw std::runtime_error("index checksum mismatch");

  Reader r(body);
  const auto magic = r.take(8);
  if (std::memcmp(magic.data(), kIndexMagic, 8) != 0)
    throw std::runtime_error("not an index file (bad magic)");
  if (r.u32() != kIndexVersion)
    throw std::runtime_error("unsupported index version");
  const uint8_t conv_byte = r.u8();
  if (conv_byte > 1) throw std::runtime_error("bad convention byte");
  r.take(3);  // reserved

  const uint64_t n = r.u64();
  const uint64_t sigma = r.u64();
  const uint64_t d = r.u64();
  const uint64_t rr = r.u64();
  if (d < 2 || rr == 0 || sigma == 0 || sigma > 256 || rr > n)
    throw std::runtime_error("implausible index header");
  // Symbols plus u32 tau entries must still fit in what follows.
  if (rr > r.remaining() / 5)
    throw std::runtime_error("truncated index file");

  std::array<uint8_t, 256> amap{};
  auto amap_bytes = r.take(256);
  std::memcpy(amap.data(), amap_bytes.data(), 256);

  auto sym_bytes = r.take(rr);
  std::vector<uint8_t> symbols(sym_bytes.begin(), sym_bytes.end());
  std::vector<uint32_t> tau(rr);
  for (uint64_t i = 0; i < rr; ++i) tau[i] = r.u32();

  auto bf = read_sparse(r, n);
  auto bl = read_sparse(r, n);
  const uint64_t bfl_len = r.u64();
  auto bfl_words = r.words((bfl_len + 63) / 64);
  auto bfl = PlainBits::from_words(std::move(bfl_words), bfl_len);
  if (r.remaining() != 0)
    throw std::runtime_error("trailing bytes in index file");

  try {
    return PsiIndex::from_components(
        n, sigma, static_cast<uint32_t>(d), static_cast<Convention>(conv_byte),
        amap, std::move(symbols), std::move(tau), std::move(bf),
        std::move(bl), std::move(bfl));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("inconsistent index file: ") +
                             e.what());
  }
}

void save_index(const PsiIndex& index, const std::filesystem::path& path) {
  const auto buf = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PsiIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto size = in.tellg();
  in.seekg(0);
  std::vector<uint8_t> buf(static_cast<size_t>(size));
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size()));
  if (!in) throw std::runtime_error("read failed: " + path.string());
  return deserialize_index(buf);
}

}  // namespace rpsi
