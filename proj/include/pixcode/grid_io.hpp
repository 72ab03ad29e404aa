#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Grid text format: "order N" on the first line, then N lines of N
/// space-separated tokens from {-1, 0, 1}. Lines end in '\n', no trailing
/// whitespace.
std::string to_grid_text(const PixelMatrix& m);

/// Strict reader for to_grid_text output. Throws InvalidInputError on any
/// deviation (unknown token, wrong count, trailing whitespace).
PixelMatrix parse_grid_text(std::string_view text);

PixelMatrix read_grid_file(const std::filesystem::path& path);
void write_grid_file(const std::filesystem::path& path, const PixelMatrix& m);

/// Whole-file helpers shared by the other readers and writers. Both throw
/// IoError carrying the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pixcode
