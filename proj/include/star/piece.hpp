#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "star/color.hpp"

namespace star {

enum class Shape : std::uint8_t { I, O, T, S, Z, J, L };

inline constexpr std::array<Shape, 7> kShapes = {
    Shape::I, Shape::O, Shape::T, Shape::S, Shape::Z, Shape::J, Shape::L};

struct Cell {
  int row;
  int col;
  bool operator==(const Cell&) const = default;
};

// One orientation of a tetromino, normalized so the minimum row and column
// are both zero. Rows grow downward.
struct Orientation {
  std::array<Cell, 4> cells;
  int rows;
  int cols;
};

struct Piece {
  Shape shape;
  Color color;
  bool operator==(const Piece&) const = default;
};

// Distinct orientations of `shape` (1 for O, 2 for I/S/Z, 4 for T/J/L).
std::span<const Orientation> orientations(Shape shape);

char shape_char(Shape shape);
std::optional<Shape> shape_from_char(char ch);

}  // namespace star
