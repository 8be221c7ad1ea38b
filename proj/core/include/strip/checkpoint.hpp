#pragma once

// Field checkpoints: a flat little-endian record
//
//   "STRP1" | nx:int64 | ny:int64 | lx:float64 | coefficients
//
// Coefficients are (real, imag) float64 pairs, k-index major with k ascending
// from -nx/2 + 1 to nx/2, and y index j = 0 .. ny-1 inside each k row.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "strip/grid.hpp"

namespace strip {

inline constexpr char kCheckpointMagic[] = "STRP1";

std::vector<std::uint8_t> encode_checkpoint(const SpectralField& field);
SpectralField decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void write_checkpoint(const std::filesystem::path& path, const SpectralField& field);
SpectralField read_checkpoint(const std::filesystem::path& path);

}  // namespace strip
