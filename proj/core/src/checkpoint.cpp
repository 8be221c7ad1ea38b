#include "strip/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace strip {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <typename T>
T take(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw ValidationError("checkpoint: truncated record");
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  pos += sizeof(T);
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

constexpr std::size_t kMagicLength = sizeof(kCheckpointMagic) - 1;

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const SpectralField& field) {
  const Grid& g = field.grid();
  std::vector<std::uint8_t> out;
  out.reserve(kMagicLength + 24 + g.size() * 16);
  out.insert(out.end(), kCheckpointMagic, kCheckpointMagic + kMagicLength);
  put<std::int64_t>(out, g.nx);
  put<std::int64_t>(out, g.ny);
  put<double>(out, g.lx);
  for (int k = -g.nx / 2 + 1; k <= g.nx / 2; ++k) {
    for (const Complex& c : field.profile(g.row_of(k))) {
      put<double>(out, c.real());
      put<double>(out, c.imag());
    }
  }
  return out;
}

SpectralField decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kMagicLength ||
      std::memcmp(bytes.data(), kCheckpointMagic, kMagicLength) != 0) {
    throw ValidationError("checkpoint: bad magic (expected STRP1)");
  }
  std::size_t pos = kMagicLength;
  const auto nx = take<std::int64_t>(bytes, pos);
  const auto ny = take<std::int64_t>(bytes, pos);
  const auto lx = take<double>(bytes, pos);
  if (nx <= 0 || ny <= 0 || nx > (1 << 20) || ny > (1 << 20)) {
    throw ValidationError("checkpoint: implausible dimensions");
  }
  Grid g(static_cast<int>(nx), static_cast<int>(ny), lx);
  if (bytes.size() != pos + g.size() * 16) {
    throw ValidationError("checkpoint: payload size does not match header (" +
                          std::to_string(bytes.size()) + " bytes)");
  }
  SpectralField field(g, true);
  for (int k = -g.nx / 2 + 1; k <= g.nx / 2; ++k) {
    for (Complex& c : field.profile(g.row_of(k))) {
      const double re = take<double>(bytes, pos);
      const double im = take<double>(bytes, pos);
      c = {re, im};
    }
  }
  field.set_real_valued(field.conjugate_symmetry_defect() <= 1e-12 * std::max(1.0, field.max_abs()));
  return field;
}

void write_checkpoint(const std::filesystem::path& path, const SpectralField& field) {
  const auto bytes = encode_checkpoint(field);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open checkpoint for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("failed writing checkpoint: " + path.string());
}

SpectralField read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open checkpoint: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace strip
