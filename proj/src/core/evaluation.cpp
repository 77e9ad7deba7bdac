#include "evaluation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace uso {

std::array<double, 3> window_means(std::span<const UsoScore> series, std::int64_t release_frame) {
  if (release_frame < kHistoryFrames) {
    throw Error(ErrorKind::InsufficientHistory,
                "release at frame " + std::to_string(release_frame) + " has fewer than " +
                    std::to_string(kHistoryFrames) + " prior frames");
  }
  if (release_frame > static_cast<std::int64_t>(series.size())) {
    throw Error(ErrorKind::FrameOutOfRange,
                "release frame " + std::to_string(release_frame) + " is past the series end");
  }
  std::array<double, 3> means{};
  // Windows cover offsets 30-21, 20-11, 10-1; frames are summed oldest first.
  for (int w = 0; w < 3; ++w) {
    const std::int64_t first = release_frame - kHistoryFrames + 10 * w;
    double sum = 0.0;
    for (std::int64_t f = first; f < first + 10; ++f) sum += series[static_cast<std::size_t>(f)].score;
    means[static_cast<std::size_t>(w)] = sum / 10.0;
  }
  return means;
}

GapMetrics pass_gap_metrics(const UsoField& field_at_release, const PassEvent& pass,
                            const FieldSpec& field) {
  if (!field.contains(pass.reception_point, kOutOfBoundsTolerance)) {
    std::ostringstream msg;
    msg << "pass point (" << pass.reception_point.x << ", " << pass.reception_point.y
        << ") is outside the court";
    throw Error(ErrorKind::OutOfCourt, msg.str());
  }
  return {distance(field_at_release.argmax, pass.reception_point),
          field_at_release.score - field_at_release.value_at(pass.reception_point)};
}

PassEvaluation evaluate_pass(const std::string& set_id, Outcome outcome, const RankedPass& pass,
                             std::span<const UsoScore> series, const UsoField& field_at_release,
                             const FieldSpec& field) {
  PassEvaluation ev;
  ev.set_id = set_id;
  ev.rank = pass.rank;
  ev.outcome = outcome;
  if (pass.pass.release_frame >= kHistoryFrames) {
    ev.window_means = window_means(series, pass.pass.release_frame);
  }
  const auto gap = pass_gap_metrics(field_at_release, pass.pass, field);
  ev.dist_from_max = gap.dist_from_max;
  ev.uso_difference = gap.uso_difference;
  return ev;
}

namespace {

int rank_order(PassRank r) {
  switch (r) {
    case PassRank::ThirdLast: return 0;
    case PassRank::SecondLast: return 1;
    case PassRank::Last: return 2;
  }
  return 3;
}

}  // namespace

AggregateReport aggregate(std::span<const PassEvaluation> evaluations) {
  std::map<std::pair<int, int>, std::vector<const PassEvaluation*>> groups;
  for (const auto& ev : evaluations) {
    groups[{rank_order(ev.rank), ev.outcome == Outcome::Score ? 0 : 1}].push_back(&ev);
  }
  AggregateReport report;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const PassEvaluation* a, const PassEvaluation* b) { return a->set_id < b->set_id; });
    AggregateRow row;
    row.rank = members.front()->rank;
    row.outcome = members.front()->outcome;
    row.n_sets = members.size();
    std::array<double, 3> window_sum{};
    for (const auto* ev : members) {
      row.dist_from_max += ev->dist_from_max;
      row.uso_difference += ev->uso_difference;
      if (ev->window_means) {
        ++row.n_window_sets;
        for (std::size_t w = 0; w < 3; ++w) window_sum[w] += (*ev->window_means)[w];
      } else {
        report.notes.push_back("set " + ev->set_id + ", " + to_string(ev->rank) +
                               " pass: fewer than 30 frames before release, "
                               "left out of the window means");
      }
    }
    const double n = static_cast<double>(row.n_sets);
    row.dist_from_max /= n;
    row.uso_difference /= n;
    if (row.n_window_sets > 0) {
      const double nw = static_cast<double>(row.n_window_sets);
      row.window_means = std::array<double, 3>{window_sum[0] / nw, window_sum[1] / nw,
                                               window_sum[2] / nw};
    }
    report.rows.push_back(row);
  }
  return report;
}

AggregateReport aggregate_report(std::span<const SetRecord> sets, const FieldSpec& field,
                                 const ModelParams& params, DistanceWeight mode,
                                 unsigned threads) {
  const auto grid = GridSpec::covering(field, params.grid_cell);
  std::vector<PassEvaluation> evaluations;
  for (const auto& set : sets) {
    if (set.passes.empty()) continue;
    const auto holders = resolve_holders(set, params);
    const auto series = uso_score_series(set, field, params, mode, threads);
    for (const auto& ranked : last_n_passes(set, 3)) {
      const auto release = static_cast<std::size_t>(ranked.pass.release_frame);
      const auto at_release =
          uso_field(set.frames[release], holders[release], grid, field, params, mode, threads);
      evaluations.push_back(evaluate_pass(set.set_id, set.outcome, ranked, series, at_release, field));
    }
  }
  if (evaluations.empty()) {
    throw Error(ErrorKind::NoEvaluablePasses, "none of the sets contains a pass");
  }
  return aggregate(evaluations);
}

std::string render_report(const AggregateReport& report, ReportFormat format) {
  const auto num = [](double v) { return text::fixed_half_up(v, 3); };
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "pass_rank,outcome,mean_30_21,mean_20_11,mean_10_1,dist_from_max_m,uso_difference,n_sets\n";
    for (const auto& r : report.rows) {
      out << to_string(r.rank) << ',' << to_string(r.outcome);
      for (std::size_t w = 0; w < 3; ++w) out << ',' << (r.window_means ? num((*r.window_means)[w]) : "NA");
      out << ',' << num(r.dist_from_max) << ',' << num(r.uso_difference) << ',' << r.n_sets << '\n';
    }
    return out.str();
  }
  out << "| Pass | Result | 30-21 | 20-11 | 10-1 | Dist. from the max. (m) | USO difference | Sets |\n"
      << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : report.rows) {
    out << "| " << to_string(r.rank) << " | " << to_string(r.outcome) << " |";
    for (std::size_t w = 0; w < 3; ++w) out << ' ' << (r.window_means ? num((*r.window_means)[w]) : "NA") << " |";
    out << ' ' << num(r.dist_from_max) << " | " << num(r.uso_difference) << " | " << r.n_sets << " |\n";
  }
  if (!report.notes.empty()) {
    out << '\n';
    for (const auto& note : report.notes) out << "- " << note << '\n';
  }
  return out.str();
}

}  // namespace uso
