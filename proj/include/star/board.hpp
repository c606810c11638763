#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "star/color.hpp"

namespace star {

// Cell codes: 0 is empty, otherwise the underlying value of Color.
using CellGrid =
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Colored Tetris well. Row 0 is the top row.
class Board {
 public:
  static constexpr int kDefaultWidth = 10;
  static constexpr int kDefaultHeight = 20;

  Board() : Board(kDefaultWidth, kDefaultHeight) {}
  Board(int width, int height);

  int width() const { return static_cast<int>(cells_.cols()); }
  int height() const { return static_cast<int>(cells_.rows()); }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < height() && col >= 0 && col < width();
  }
  bool filled(int row, int col) const { return cells_(row, col) != 0; }
  std::optional<Color> at(int row, int col) const;
  void set(int row, int col, std::optional<Color> c);

  const CellGrid& cells() const { return cells_; }

  bool row_full(int row) const { return (cells_.row(row) != 0).all(); }
  bool empty() const { return (cells_ == 0).all(); }
  int filled_count() const { return static_cast<int>((cells_ != 0).count()); }

  // Removes every full row, shifting rows above down. Returns rows removed.
  int clear_full_rows();

  // Height of column `col` measured from the floor (0 when empty).
  int column_height(int col) const;

  Board mirrored() const;

  // Row-major text grid over {., R, G, B}, top row first, '\n' after each row.
  std::string to_text() const;
  static Board from_text(std::string_view text);

  // FNV-1a over dimensions and cells.
  std::uint64_t hash() const;

  bool operator==(const Board& other) const {
    return width() == other.width() && height() == other.height() &&
           (cells_ == other.cells_).all();
  }

 private:
  CellGrid cells_;
};

std::string hash_hex(std::uint64_t h);

}  // namespace star
