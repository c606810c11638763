#include "star/piece.hpp"

#include <algorithm>

namespace star {
namespace {

Orientation normalize(std::array<Cell, 4> cells) {
  int min_r = cells[0].row, min_c = cells[0].col;
  for (const auto& c : cells) {
    min_r = std::min(min_r, c.row);
    min_c = std::min(min_c, c.col);
  }
  int max_r = 0, max_c = 0;
  for (auto& c : cells) {
    c.row -= min_r;
    c.col -= min_c;
    max_r = std::max(max_r, c.row);
    max_c = std::max(max_c, c.col);
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return {cells, max_r + 1, max_c + 1};
}

// Clockwise quarter turn: (r, c) -> (c, -r).
Orientation rotate(const Orientation& o) {
  std::array<Cell, 4> turned{};
  for (std::size_t i = 0; i < 4; ++i) {
    turned[i] = {o.cells[i].col, -o.cells[i].row};
  }
  return normalize(turned);
}

std::vector<Orientation> build(std::array<Cell, 4> spawn) {
  std::vector<Orientation> out;
  Orientation o = normalize(spawn);
  for (int k = 0; k < 4; ++k) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& x) {
      return x.cells == o.cells;
    });
    if (!seen) out.push_back(o);
    o = rotate(o);
  }
  return out;
}

const std::array<std::vector<Orientation>, 7>& table() {
  static const std::array<std::vector<Orientation>, 7> t = {
      build({{{0, 0}, {0, 1}, {0, 2}, {0, 3}}}),  // I
      build({{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}),  // O
      build({{{0, 0}, {0, 1}, {0, 2}, {1, 1}}}),  // T
      build({{{0, 1}, {0, 2}, {1, 0}, {1, 1}}}),  // S
      build({{{0, 0}, {0, 1}, {1, 1}, {1, 2}}}),  // Z
      build({{{0, 0}, {1, 0}, {1, 1}, {1, 2}}}),  // J
      build({{{0, 2}, {1, 0}, {1, 1}, {1, 2}}}),  // L
  };
  return t;
}

}  // namespace

std::span<const Orientation> orientations(Shape shape) {
  return table()[static_cast<std::size_t>(shape)];
}

char shape_char(Shape shape) {
  static constexpr std::string_view kChars = "IOTSZJL";
  return kChars[static_cast<std::size_t>(shape)];
}

std::optional<Shape> shape_from_char(char ch) {
  for (Shape s : kShapes) {
    if (shape_char(s) == ch) return s;
  }
  return std::nullopt;
}

}  // namespace star
