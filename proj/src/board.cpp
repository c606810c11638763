#include "star/board.hpp"

#include <array>
#include <cstdio>
#include <vector>

#include "star/errors.hpp"

namespace star {

std::string_view color_name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Blue: return "blue";
  }
  return "?";
}

std::optional<Color> parse_color_name(std::string_view name) {
  for (Color c : kColors) {
    if (color_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string pair_name(int pair) {
  const auto& [a, b] = kColorPairs.at(static_cast<std::size_t>(pair));
  return std::string(color_name(a)) + "-" + std::string(color_name(b));
}

std::optional<int> parse_pair_name(std::string_view name) {
  const auto dash = name.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  const auto a = parse_color_name(name.substr(0, dash));
  const auto b = parse_color_name(name.substr(dash + 1));
  if (!a || !b) return std::nullopt;
  return pair_index(*a, *b);
}

Board::Board(int width, int height) {
  if (width < 4 || height < 4) {
    throw ConfigError("board must be at least 4x4, got " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
  cells_ = CellGrid::Zero(height, width);
}

std::optional<Color> Board::at(int row, int col) const {
  const auto v = cells_(row, col);
  if (v == 0) return std::nullopt;
  return static_cast<Color>(v);
}

void Board::set(int row, int col, std::optional<Color> c) {
  cells_(row, col) = c ? static_cast<std::uint8_t>(*c) : std::uint8_t{0};
}

int Board::clear_full_rows() {
  int write = height() - 1;
  int cleared = 0;
  for (int read = height() - 1; read >= 0; --read) {
    if (row_full(read)) {
      ++cleared;
      continue;
    }
    if (write != read) cells_.row(write) = cells_.row(read);
    --write;
  }
  for (; write >= 0; --write) cells_.row(write).setZero();
  return cleared;
}

int Board::column_height(int col) const {
  for (int r = 0; r < height(); ++r) {
    if (cells_(r, col) != 0) return height() - r;
  }
  return 0;
}

Board Board::mirrored() const {
  Board out(width(), height());
  out.cells_ = cells_.rowwise().reverse();
  return out;
}

std::string Board::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>((width() + 1) * height()));
  for (int r = 0; r < height(); ++r) {
    for (int c = 0; c < width(); ++c) {
      const auto v = at(r, c);
      out.push_back(v ? color_char(*v) : '.');
    }
    out.push_back('\n');
  }
  return out;
}

Board Board::from_text(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) rows.push_back(line);
    start = end + 1;
  }
  if (rows.empty()) throw ConfigError("board text is empty");
  const int width = static_cast<int>(rows.front().size());
  Board board(width, static_cast<int>(rows.size()));
  for (int r = 0; r < board.height(); ++r) {
    if (static_cast<int>(rows[r].size()) != width) {
      throw ConfigError("board text row " + std::to_string(r) +
                        " has inconsistent width");
    }
    for (int c = 0; c < width; ++c) {
      const char ch = rows[r][c];
      if (ch == '.') continue;
      const auto color = color_from_char(ch);
      if (!color) {
        throw ConfigError(std::string("invalid board character '") + ch + "'");
      }
      board.set(r, c, color);
    }
  }
  return board;
}

std::uint64_t Board::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(width()));
  mix(static_cast<std::uint64_t>(height()));
  for (int r = 0; r < height(); ++r) {
    for (int c = 0; c < width(); ++c) mix(cells_(r, c));
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf.data(), 16);
}

}  // namespace star
