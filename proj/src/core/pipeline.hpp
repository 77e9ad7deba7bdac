#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "evaluation.hpp"
#include "synth.hpp"
#include "tracking.hpp"

namespace uso {

// File-level commands behind the CLI. Every command writes the resolved
// configuration to `<out>/config.txt`.

struct IngestRequest {
  std::string tracking_path;
  std::optional<std::string> events_path;
  // Either nine numbers (a homography) or `px py cx cy` correspondence lines.
  std::optional<std::string> homography_path;
  AttackDirection direction = AttackDirection::PlusX;
  // Needed only when there is no events file.
  std::optional<Outcome> outcome;
  std::optional<std::string> set_id;
  std::string out_dir;
};

SetRecord run_ingest(const IngestRequest& req, const RunConfig& cfg);

// Reads a homography file or fits one from a correspondence file.
Homography load_homography_or_fit(const std::string& path);

// Writes `<out>/uso_series.csv` (frame,score,argmax_x,argmax_y) and, with
// dump_grids, the USO layer of every frame under `<out>/grids/`.
void run_compute(const SetRecord& set, const RunConfig& cfg, const std::string& out_dir,
                 bool dump_grids, unsigned threads);

std::string render_series(std::span<const UsoScore> series);

// Writes `<out>/report.csv` or `<out>/report.md`, plus `<out>/report_notes.txt`
// when passes were left out of the window means.
AggregateReport run_evaluate(std::span<const SetRecord> sets, const RunConfig& cfg,
                             ReportFormat format, const std::string& out_dir, unsigned threads);

enum class Layer { PpcfOffense, PpcfDefense, WArea, WDistance, Uso };

Layer parse_layer(std::string_view name);
const char* to_string(Layer layer);

struct LayerGrid {
  GridSpec grid;
  std::vector<double> values;
};

LayerGrid compute_layer(const SetRecord& set, std::int64_t frame, Layer layer,
                        const RunConfig& cfg, unsigned threads);

// CSV: ny rows by nx columns, top row is the largest y, six decimals.
std::string render_grid_csv(const LayerGrid& g);
// Plain PGM (P2), same orientation, value round(cell * 255).
std::string render_grid_pgm(const LayerGrid& g);

// Writes `<out>/<layer>_frame_<NNNNNN>.csv` and `.pgm`.
void run_heatmap(const SetRecord& set, std::int64_t frame, Layer layer, const RunConfig& cfg,
                 const std::string& out_dir, unsigned threads);

// Writes the scenario set to `<out>/<scenario>/`.
SetRecord run_synth(Scenario scenario, const RunConfig& cfg, const std::string& out_dir);

}  // namespace uso
