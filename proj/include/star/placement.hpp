#pragma once

#include <array>
#include <optional>
#include <vector>

#include "star/board.hpp"
#include "star/piece.hpp"

namespace star {

// Drop-to-rest placement of the current piece: orientation index into
// orientations(piece.shape) and the column of the piece's leftmost cell.
struct PlacementAction {
  int rotation = 0;
  int column = 0;
  auto operator<=>(const PlacementAction&) const = default;
};

struct PlacementResult {
  Board board;                   // settled, post-clear
  int rows_cleared = 0;
  std::array<Cell, 4> landed{};  // piece cells before clearing
};

// Resting top row of the piece dropped straight down from the top of the
// well, or nullopt when the spawn position already collides or the piece
// does not fit horizontally.
std::optional<int> resting_row(const Board& board, const Piece& piece,
                               PlacementAction a);

// Ordered by (rotation, column) ascending.
std::vector<PlacementAction> legal_placements(const Board& board,
                                              const Piece& piece);

bool is_legal(const Board& board, const Piece& piece, PlacementAction a);

// Throws IllegalPlacement when `a` is not legal on `board`.
PlacementResult apply_placement(const Board& board, const Piece& piece,
                                PlacementAction a);

}  // namespace star
