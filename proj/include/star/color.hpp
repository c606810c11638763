#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace star {

enum class Color : std::uint8_t { Red = 1, Green = 2, Blue = 3 };

inline constexpr std::array<Color, 3> kColors = {Color::Red, Color::Green,
                                                 Color::Blue};
inline constexpr int kNumColors = 3;

// Unordered color pairs, including same-color pairs.
inline constexpr int kNumColorPairs = kNumColors * (kNumColors + 1) / 2;

// Dense per-pair vectors. Layout: RR, RG, RB, GG, GB, BB.
template <typename Scalar>
using PairVector = Eigen::Matrix<Scalar, kNumColorPairs, 1>;
using PairCounts = PairVector<int>;

constexpr int color_index(Color c) { return static_cast<int>(c) - 1; }

constexpr int pair_index(Color a, Color b) {
  int i = color_index(a);
  int j = color_index(b);
  if (i > j) std::swap(i, j);
  // Row-major upper triangle.
  return i * kNumColors - i * (i - 1) / 2 + (j - i);
}

constexpr std::array<std::pair<Color, Color>, kNumColorPairs> kColorPairs = {{
    {Color::Red, Color::Red},
    {Color::Red, Color::Green},
    {Color::Red, Color::Blue},
    {Color::Green, Color::Green},
    {Color::Green, Color::Blue},
    {Color::Blue, Color::Blue},
}};

constexpr char color_char(Color c) {
  switch (c) {
    case Color::Red: return 'R';
    case Color::Green: return 'G';
    case Color::Blue: return 'B';
  }
  return '?';
}

constexpr std::optional<Color> color_from_char(char ch) {
  switch (ch) {
    case 'R': return Color::Red;
    case 'G': return Color::Green;
    case 'B': return Color::Blue;
    default: return std::nullopt;
  }
}

std::string_view color_name(Color c);
std::optional<Color> parse_color_name(std::string_view name);

// "red-blue" style key for an unordered pair.
std::string pair_name(int pair);
std::optional<int> parse_pair_name(std::string_view name);

}  // namespace star
