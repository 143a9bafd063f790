#include "rpsi/text.hpp"

#include <limits>
#include <stdexcept>
#include <string_view>

namespace rpsi {

Text ingest_text(std::span<const uint8_t> bytes, Convention convention,
                 bool append_sentinel) {
  if (bytes.empty()) throw std::invalid_argument("empty text");
  if (bytes.size() >= std::numeric_limits<uint32_t>::max())
    throw std::invalid_argument("text too large (positions are 32-bit)");

  std::array<bool, 256> present{};
  for (uint8_t b : bytes) present[b] = true;

  Text t;
  t.convention = convention;
  t.sentinel_appended = append_sentinel;

  uint32_t next = append_sentinel ? 1 : 0;
  for (int b = 0; b < 256; ++b)
    if (present[b]) t.alphabet_map[b] = static_cast<uint8_t>(next++);
  if (next > 256)
    throw std::invalid_argument("alphabet is full, cannot append sentinel");
  t.sigma = next;

  t.data.reserve(bytes.size() + (append_sentinel ? 1 : 0));
  for (uint8_t b : bytes) t.data.push_back(t.alphabet_map[b]);
  if (append_sentinel) t.data.push_back(0);
  t.n = t.data.size();
  return t;
}

Text ingest_text(std::string_view bytes, Convention convention,
                 bool append_sentinel) {
  return ingest_text(
      std::span<const uint8_t>(
          reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()),
      convention, append_sentinel);
}

}  // namespace rpsi
