#include "grid.hpp"

#include <cmath>

#include "error.hpp"

namespace uso {

GridSpec GridSpec::covering(const FieldSpec& field, double cell) {
  if (!(cell > 0.0)) throw Error(ErrorKind::Config, "grid cell must be positive");
  GridSpec g;
  g.origin = {0.0, 0.0};
  g.cell = cell;
  g.nx = static_cast<int>(std::ceil(field.length / cell - 1e-9));
  g.ny = static_cast<int>(std::ceil(field.width / cell - 1e-9));
  return g;
}

bool GridSpec::cell_in_court(int i, int j, const FieldSpec& field) const {
  constexpr double slack = 1e-9;
  const double x0 = origin.x + i * cell;
  const double y0 = origin.y + j * cell;
  return x0 >= -slack && y0 >= -slack && x0 + cell <= field.length + slack &&
         y0 + cell <= field.width + slack;
}

std::vector<unsigned char> GridSpec::court_mask(const FieldSpec& field) const {
  std::vector<unsigned char> mask(size(), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) mask[index(i, j)] = cell_in_court(i, j, field) ? 1 : 0;
  return mask;
}

}  // namespace uso
