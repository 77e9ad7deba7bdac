#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "pitch_control.hpp"
#include "types.hpp"

namespace uso {

// Direction of the pass-distance weight. Decreasing penalizes long passes;
// Increasing reproduces the opposite reading of "normalized distance".
enum class DistanceWeight { Decreasing, Increasing };

// 1 inside the attacking end zone, otherwise the end-zone angle over pi.
double w_area(const FieldSpec& field, Point2D p);

// 1 - d / diagonal (clamped at 0), or d / diagonal for Increasing.
// Points may sit up to kOutOfBoundsTolerance outside the lines.
double w_distance(const FieldSpec& field, Point2D p, Point2D holder,
                  DistanceWeight mode = DistanceWeight::Decreasing);

struct UsoField {
  GridSpec grid;
  std::vector<double> values;
  std::vector<unsigned char> in_court;
  double score = 0.0;
  std::size_t argmax_index = 0;
  Point2D argmax;

  double value_at(Point2D p) const;  // value of the cell containing p
};

UsoField uso_from_ppcf(const PitchControlField& ppcf, const FieldSpec& field, Point2D holder,
                       DistanceWeight mode = DistanceWeight::Decreasing);

UsoField uso_field(const Frame& frame, PlayerId holder_id, const GridSpec& grid,
                   const FieldSpec& field, const ModelParams& params,
                   DistanceWeight mode = DistanceWeight::Decreasing, unsigned threads = 1);

struct UsoScore {
  std::int64_t frame = 0;
  double score = 0.0;
  Point2D argmax;

  friend bool operator==(const UsoScore&, const UsoScore&) = default;
};

// One entry per frame, in frame order. Holders come from resolve_holders.
std::vector<UsoScore> uso_score_series(const SetRecord& set, const FieldSpec& field,
                                       const ModelParams& params,
                                       DistanceWeight mode = DistanceWeight::Decreasing,
                                       unsigned threads = 1);

}  // namespace uso
