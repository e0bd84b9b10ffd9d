#pragma once

#include <string>

#include "gsr/signal.hpp"

namespace gsr {

/// Reads a P5 (binary) or P2 (ASCII) PGM file with maxval 255 and maps pixels
/// to [0, 1] via v/255. Throws parse_error (with byte offset) on malformed
/// input.
Signal read_pgm(const std::string& path);

/// Writes a P5 PGM with maxval 255; values are clamped to [0, 1] and rounded
/// to 8 bits.
void write_pgm(const Signal& image, const std::string& path);

} // namespace gsr
