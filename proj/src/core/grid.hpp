#pragma once

#include <cstddef>
#include <vector>

#include "geometry.hpp"

namespace uso {

// Regular grid of square cells. Cell (i, j) has i along x and j along y,
// both counted from the origin; storage is row-major, index = j * nx + i.
struct GridSpec {
  Point2D origin;
  double cell = 0.5;
  int nx = 0;
  int ny = 0;

  // Smallest grid of `cell`-sized squares starting at (0,0) that covers the court.
  static GridSpec covering(const FieldSpec& field, double cell);

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  Point2D center(int i, int j) const {
    return {origin.x + (i + 0.5) * cell, origin.y + (j + 0.5) * cell};
  }
  Point2D center(std::size_t idx) const {
    return center(static_cast<int>(idx % static_cast<std::size_t>(nx)),
                  static_cast<int>(idx / static_cast<std::size_t>(nx)));
  }
  bool cell_in_court(int i, int j, const FieldSpec& field) const;
  // Flags for every cell: true when the whole square lies inside the court.
  std::vector<unsigned char> court_mask(const FieldSpec& field) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace uso
