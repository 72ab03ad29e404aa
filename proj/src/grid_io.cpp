#include "pixcode/grid_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "pixcode/errors.hpp"

namespace pixcode {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      throw InvalidInputError("grid text: last line not terminated by \\n");
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t sp = line.find(' ', start);
    tokens.push_back(line.substr(start, sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return tokens;
}

}  // namespace

std::string to_grid_text(const PixelMatrix& m) {
  std::string out = "order " + std::to_string(m.order()) + "\n";
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) {
      if (j) out += ' ';
      out += std::to_string(int{m(i, j)});
    }
    out += '\n';
  }
  return out;
}

PixelMatrix parse_grid_text(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || !lines[0].starts_with("order ")) {
    throw InvalidInputError("grid text: missing 'order N' header");
  }
  const std::string_view num = lines[0].substr(6);
  int order = 0;
  if (num.empty() || num.size() > 6) {
    throw InvalidInputError("grid text: bad order");
  }
  for (char c : num) {
    if (c < '0' || c > '9') throw InvalidInputError("grid text: bad order");
    order = order * 10 + (c - '0');
  }
  if (order < 1) throw InvalidInputError("grid text: order must be >= 1");
  if (static_cast<int>(lines.size()) != order + 1) {
    throw InvalidInputError("grid text: expected " + std::to_string(order) +
                            " rows, got " + std::to_string(lines.size() - 1));
  }
  TritGrid cells(order, order);
  for (int i = 0; i < order; ++i) {
    const auto tokens = split_spaces(lines[i + 1]);
    if (static_cast<int>(tokens.size()) != order) {
      throw InvalidInputError("grid text: row " + std::to_string(i) +
                              " has " + std::to_string(tokens.size()) +
                              " tokens");
    }
    for (int j = 0; j < order; ++j) {
      const auto t = tokens[j];
      if (t == "1") {
        cells(i, j) = 1;
      } else if (t == "-1") {
        cells(i, j) = -1;
      } else if (t == "0") {
        cells(i, j) = 0;
      } else {
        throw InvalidInputError("grid text: invalid token '" +
                                std::string(t) + "'");
      }
    }
  }
  return PixelMatrix(std::move(cells));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

PixelMatrix read_grid_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_grid_text(text);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

void write_grid_file(const std::filesystem::path& path, const PixelMatrix& m) {
  write_text_file(path, to_grid_text(m));
}

}  // namespace pixcode
