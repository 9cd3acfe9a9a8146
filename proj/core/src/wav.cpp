#include "irlink/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "irlink/error.hpp"

namespace irlink::wav {
namespace {

void put_u16(std::ostream& os, std::uint16_t v) {
  const std::array<char, 2> b{static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b.data(), 2);
}

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
  os.write(b.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

void write(std::ostream& os, const Signal& signal, double full_scale_v) {
  detail::require(std::isfinite(full_scale_v) && full_scale_v > 0.0, "WAV full scale must be > 0");
  const double rate = std::round(signal.sample_rate());
  detail::require(rate >= 1.0 && rate <= 4294967295.0, "WAV sample rate out of range");
  const auto data_bytes = static_cast<std::uint32_t>(signal.size() * 2);

  os.write("RIFF", 4);
  put_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  put_u32(os, 16);
  put_u16(os, 1);  // PCM
  put_u16(os, 1);  // mono
  put_u32(os, static_cast<std::uint32_t>(rate));
  put_u32(os, static_cast<std::uint32_t>(rate) * 2);
  put_u16(os, 2);
  put_u16(os, 16);
  os.write("data", 4);
  put_u32(os, data_bytes);
  for (double v : signal.samples()) {
    const double scaled = std::clamp(v / full_scale_v, -1.0, 1.0) * 32767.0;
    const auto s = static_cast<std::int16_t>(std::lround(scaled));
    put_u16(os, static_cast<std::uint16_t>(s));
  }
}

Signal read(std::istream& is, double full_scale_v) {
  detail::require(std::isfinite(full_scale_v) && full_scale_v > 0.0, "WAV full scale must be > 0");
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  if (bytes.size() < 12 || std::string(bytes.begin(), bytes.begin() + 4) != "RIFF" ||
      std::string(bytes.begin() + 8, bytes.begin() + 12) != "WAVE")
    throw InvalidInput("not a RIFF/WAVE file");

  std::uint16_t channels = 0, bits = 0, format = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                         bytes.begin() + static_cast<std::ptrdiff_t>(pos + 4));
    const std::size_t len = get_u32(&bytes[pos + 4]);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) throw InvalidInput("truncated WAV chunk '" + id + "'");
    if (id == "fmt ") {
      if (len < 16) throw InvalidInput("WAV fmt chunk too short");
      format = get_u16(&bytes[body]);
      channels = get_u16(&bytes[body + 2]);
      rate = get_u32(&bytes[body + 4]);
      bits = get_u16(&bytes[body + 14]);
    } else if (id == "data") {
      data = &bytes[body];
      data_len = len;
    }
    pos = body + len + (len & 1);
  }
  if (format != 1 || bits != 16) throw InvalidInput("only 16-bit PCM WAV is supported");
  if (channels == 0 || rate == 0) throw InvalidInput("WAV header has zero channels or sample rate");
  if (data == nullptr) throw InvalidInput("WAV file has no data chunk");

  const std::size_t frame = 2u * channels;
  const std::size_t frames = data_len / frame;
  if (frames == 0) throw InvalidInput("WAV file contains no samples");
  std::vector<double> samples(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const auto s = static_cast<std::int16_t>(get_u16(data + i * frame));
    samples[i] = static_cast<double>(s) / 32767.0 * full_scale_v;
  }
  return {std::move(samples), static_cast<double>(rate)};
}

}  // namespace irlink::wav
