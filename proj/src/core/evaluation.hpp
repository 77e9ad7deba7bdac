#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracking.hpp"
#include "uso_metric.hpp"

namespace uso {

inline constexpr std::int64_t kHistoryFrames = 30;

// Mean USO Score over frames 30-21, 20-11 and 10-1 before `release_frame`
// (offset k maps to frame release_frame - k). `series` is indexed by frame.
std::array<double, 3> window_means(std::span<const UsoScore> series, std::int64_t release_frame);

struct GapMetrics {
  double dist_from_max = 0.0;
  double uso_difference = 0.0;
};

// Distance from the field's argmax to the pass point, and the score minus the
// stored value of the cell containing the pass point.
GapMetrics pass_gap_metrics(const UsoField& field_at_release, const PassEvent& pass,
                            const FieldSpec& field);

struct PassEvaluation {
  std::string set_id;
  PassRank rank = PassRank::Last;
  Outcome outcome = Outcome::Score;
  std::optional<std::array<double, 3>> window_means;  // empty: fewer than 30 prior frames
  double dist_from_max = 0.0;
  double uso_difference = 0.0;
};

PassEvaluation evaluate_pass(const std::string& set_id, Outcome outcome, const RankedPass& pass,
                             std::span<const UsoScore> series, const UsoField& field_at_release,
                             const FieldSpec& field);

struct AggregateRow {
  PassRank rank = PassRank::Last;
  Outcome outcome = Outcome::Score;
  std::optional<std::array<double, 3>> window_means;
  double dist_from_max = 0.0;
  double uso_difference = 0.0;
  std::size_t n_sets = 0;
  std::size_t n_window_sets = 0;
};

struct AggregateReport {
  std::vector<AggregateRow> rows;   // Third last -> Last, Score before Turnover
  std::vector<std::string> notes;   // passes left out of the window means
};

// Groups by (rank, outcome) and averages. Within a group the evaluations are
// summed in set_id order, so the result does not depend on input order.
AggregateReport aggregate(std::span<const PassEvaluation> evaluations);

AggregateReport aggregate_report(std::span<const SetRecord> sets, const FieldSpec& field,
                                 const ModelParams& params,
                                 DistanceWeight mode = DistanceWeight::Decreasing,
                                 unsigned threads = 1);

enum class ReportFormat { Csv, Markdown };

std::string render_report(const AggregateReport& report, ReportFormat format);

}  // namespace uso
