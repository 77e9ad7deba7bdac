#include "uso_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "tracking.hpp"

namespace uso {

namespace {

void require_in_court(const FieldSpec& field, Point2D p, double tolerance) {
  if (!field.contains(p, tolerance)) {
    std::ostringstream msg;
    msg << "(" << p.x << ", " << p.y << ") is outside the court";
    throw Error(ErrorKind::OutOfCourt, msg.str());
  }
}

}  // namespace

double w_area(const FieldSpec& field, Point2D p) {
  require_in_court(field, p, 0.0);
  if (in_attacking_endzone(field, p)) return 1.0;
  return endzone_angle(field, p) / std::numbers::pi;
}

double w_distance(const FieldSpec& field, Point2D p, Point2D holder, DistanceWeight mode) {
  require_in_court(field, p, kOutOfBoundsTolerance);
  require_in_court(field, holder, kOutOfBoundsTolerance);
  const double ratio = distance(p, holder) / field.diagonal();
  if (mode == DistanceWeight::Increasing) return std::min(1.0, ratio);
  return std::max(0.0, 1.0 - ratio);
}

double UsoField::value_at(Point2D p) const {
  const int i = std::clamp(static_cast<int>(std::floor((p.x - grid.origin.x) / grid.cell)), 0,
                           grid.nx - 1);
  const int j = std::clamp(static_cast<int>(std::floor((p.y - grid.origin.y) / grid.cell)), 0,
                           grid.ny - 1);
  return values[grid.index(i, j)];
}

UsoField uso_from_ppcf(const PitchControlField& ppcf, const FieldSpec& field, Point2D holder,
                       DistanceWeight mode) {
  UsoField out;
  out.grid = ppcf.grid;
  out.in_court = ppcf.in_court;
  out.values.assign(ppcf.grid.size(), 0.0);
  bool seen = false;
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    if (!out.in_court[idx]) continue;
    const Point2D c = out.grid.center(idx);
    const double v = ppcf.offense[idx] * w_area(field, c) * w_distance(field, c, holder, mode);
    out.values[idx] = v;
    if (!seen || v > out.score) {
      out.score = v;
      out.argmax_index = idx;
      seen = true;
    }
  }
  out.argmax = out.grid.center(out.argmax_index);
  return out;
}

UsoField uso_field(const Frame& frame, PlayerId holder_id, const GridSpec& grid,
                   const FieldSpec& field, const ModelParams& params, DistanceWeight mode,
                   unsigned threads) {
  const auto ppcf = compute_ppcf_grid(frame, holder_id, grid, field, params, threads);
  return uso_from_ppcf(ppcf, field, frame.find(holder_id)->position, mode);
}

std::vector<UsoScore> uso_score_series(const SetRecord& set, const FieldSpec& field,
                                       const ModelParams& params, DistanceWeight mode,
                                       unsigned threads) {
  const auto holders = resolve_holders(set, params);
  const auto grid = GridSpec::covering(field, params.grid_cell);
  std::vector<UsoScore> out(set.frames.size());
  parallel_for(set.frames.size(), threads, [&](std::size_t t) {
    const auto f = uso_field(set.frames[t], holders[t], grid, field, params, mode, 1);
    out[t] = {set.frames[t].index, f.score, f.argmax};
  });
  return out;
}

}  // namespace uso
