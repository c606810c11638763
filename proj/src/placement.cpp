#include "star/placement.hpp"

#include <string>

#include "star/errors.hpp"

namespace star {
namespace {

bool fits(const Board& board, const Orientation& o, int top, int left) {
  for (const auto& c : o.cells) {
    const int r = top + c.row;
    const int col = left + c.col;
    if (!board.in_bounds(r, col) || board.filled(r, col)) return false;
  }
  return true;
}

}  // namespace

std::optional<int> resting_row(const Board& board, const Piece& piece,
                               PlacementAction a) {
  const auto rots = orientations(piece.shape);
  if (a.rotation < 0 || a.rotation >= static_cast<int>(rots.size())) {
    return std::nullopt;
  }
  const auto& o = rots[static_cast<std::size_t>(a.rotation)];
  if (a.column < 0 || a.column + o.cols > board.width()) return std::nullopt;
  if (!fits(board, o, 0, a.column)) return std::nullopt;
  int top = 0;
  while (fits(board, o, top + 1, a.column)) ++top;
  return top;
}

std::vector<PlacementAction> legal_placements(const Board& board,
                                              const Piece& piece) {
  std::vector<PlacementAction> out;
  const int n_rot = static_cast<int>(orientations(piece.shape).size());
  for (int rot = 0; rot < n_rot; ++rot) {
    for (int col = 0; col < board.width(); ++col) {
      if (resting_row(board, piece, {rot, col})) out.push_back({rot, col});
    }
  }
  return out;
}

bool is_legal(const Board& board, const Piece& piece, PlacementAction a) {
  return resting_row(board, piece, a).has_value();
}

PlacementResult apply_placement(const Board& board, const Piece& piece,
                                PlacementAction a) {
  const auto top = resting_row(board, piece, a);
  if (!top) {
    throw IllegalPlacement("illegal placement (rotation " +
                           std::to_string(a.rotation) + ", column " +
                           std::to_string(a.column) + ") for piece " +
                           shape_char(piece.shape));
  }
  const auto& o = orientations(piece.shape)[static_cast<std::size_t>(a.rotation)];
  PlacementResult result{board, 0, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    const Cell cell{*top + o.cells[i].row, a.column + o.cells[i].col};
    result.landed[i] = cell;
    result.board.set(cell.row, cell.col, piece.color);
  }
  result.rows_cleared = result.board.clear_full_rows();
  return result;
}

}  // namespace star
