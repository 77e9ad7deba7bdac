#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace uso {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void prepare_out_dir(const std::string& out_dir, const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir + ": " + ec.message());
  write_file(fs::path(out_dir) / "config.txt", cfg.render());
}

std::string frame_file(Layer layer, std::int64_t frame, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_frame_%06lld.", static_cast<long long>(frame));
  return std::string(to_string(layer)) + buf + ext;
}

}  // namespace

Homography load_homography_or_fit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::vector<std::size_t> tokens_per_line;
  std::string line;
  std::size_t total = 0;
  while (std::getline(in, line)) {
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::istringstream ls{std::string(trimmed)};
    std::string tok;
    std::size_t n = 0;
    while (ls >> tok) ++n;
    tokens_per_line.push_back(n);
    total += n;
  }
  const bool correspondences =
      !tokens_per_line.empty() &&
      std::all_of(tokens_per_line.begin(), tokens_per_line.end(), [](std::size_t n) { return n == 4; });
  if (correspondences && total != 9) {
    const auto pairs = read_correspondences(path);
    return estimate_homography(pairs);
  }
  return read_homography(path);
}

SetRecord run_ingest(const IngestRequest& req, const RunConfig& cfg) {
  cfg.validate();
  std::optional<Homography> h;
  if (req.homography_path) h = load_homography_or_fit(*req.homography_path);

  SetRecord set;
  set.fps = cfg.params.fps;
  set.set_id = req.set_id ? *req.set_id : fs::path(req.out_dir).filename().string();
  auto frames = parse_tracking_csv(req.tracking_path, set.fps, h ? &*h : nullptr);
  for (auto& f : frames) f = standardize_direction(f, req.direction, cfg.field);
  set.frames = estimate_velocities(frames, set.fps, cfg.velocity_window, cfg.params.max_speed);

  if (req.events_path) {
    auto events = parse_events_csv(*req.events_path);
    if (req.direction == AttackDirection::MinusX) {
      for (auto& p : events.passes) p.reception_point.x = cfg.field.length - p.reception_point.x;
    }
    set.passes = std::move(events.passes);
    set.outcome = events.outcome;
  } else {
    if (!req.outcome) {
      throw Error(ErrorKind::SchemaError, "without an events file the set outcome must be given");
    }
    set.passes = detect_passes(set, cfg.params);
    set.outcome = *req.outcome;
  }
  validate_set(set);
  prepare_out_dir(req.out_dir, cfg);
  save_set(req.out_dir, set);
  return set;
}

std::string render_series(std::span<const UsoScore> series) {
  std::string out = "frame,score,argmax_x,argmax_y\n";
  for (const auto& s : series) {
    out += std::to_string(s.frame) + ',' + text::shortest(s.score) + ',' +
           text::shortest(s.argmax.x) + ',' + text::shortest(s.argmax.y) + '\n';
  }
  return out;
}

void run_compute(const SetRecord& set, const RunConfig& cfg, const std::string& out_dir,
                 bool dump_grids, unsigned threads) {
  cfg.validate();
  const auto holders = resolve_holders(set, cfg.params);
  const auto grid = GridSpec::covering(cfg.field, cfg.params.grid_cell);
  std::vector<UsoScore> series(set.frames.size());
  std::vector<std::pair<std::string, std::string>> dumps(dump_grids ? set.frames.size() : 0);
  parallel_for(set.frames.size(), threads, [&](std::size_t t) {
    const auto field = uso_field(set.frames[t], holders[t], grid, cfg.field, cfg.params,
                                 cfg.distance_weight, 1);
    series[t] = {set.frames[t].index, field.score, field.argmax};
    if (dump_grids) {
      const LayerGrid layer{field.grid, field.values};
      dumps[t] = {render_grid_csv(layer), render_grid_pgm(layer)};
    }
  });

  prepare_out_dir(out_dir, cfg);
  write_file(fs::path(out_dir) / "uso_series.csv", render_series(series));
  if (dump_grids) {
    const fs::path dir = fs::path(out_dir) / "grids";
    fs::create_directories(dir);
    for (std::size_t t = 0; t < dumps.size(); ++t) {
      write_file(dir / frame_file(Layer::Uso, set.frames[t].index, "csv"), dumps[t].first);
      write_file(dir / frame_file(Layer::Uso, set.frames[t].index, "pgm"), dumps[t].second);
    }
  }
}

AggregateReport run_evaluate(std::span<const SetRecord> sets, const RunConfig& cfg,
                             ReportFormat format, const std::string& out_dir, unsigned threads) {
  cfg.validate();
  const auto report = aggregate_report(sets, cfg.field, cfg.params, cfg.distance_weight, threads);
  prepare_out_dir(out_dir, cfg);
  const char* name = format == ReportFormat::Csv ? "report.csv" : "report.md";
  write_file(fs::path(out_dir) / name, render_report(report, format));
  const fs::path notes = fs::path(out_dir) / "report_notes.txt";
  if (!report.notes.empty()) {
    std::string text;
    for (const auto& n : report.notes) text += n + '\n';
    write_file(notes, text);
  } else {
    fs::remove(notes);
  }
  return report;
}

Layer parse_layer(std::string_view name) {
  if (name == "ppcf_off") return Layer::PpcfOffense;
  if (name == "ppcf_def") return Layer::PpcfDefense;
  if (name == "w_area") return Layer::WArea;
  if (name == "w_distance") return Layer::WDistance;
  if (name == "uso") return Layer::Uso;
  throw Error(ErrorKind::Config, "unknown layer `" + std::string(name) + "`");
}

const char* to_string(Layer layer) {
  switch (layer) {
    case Layer::PpcfOffense: return "ppcf_off";
    case Layer::PpcfDefense: return "ppcf_def";
    case Layer::WArea: return "w_area";
    case Layer::WDistance: return "w_distance";
    case Layer::Uso: return "uso";
  }
  return "?";
}

LayerGrid compute_layer(const SetRecord& set, std::int64_t frame, Layer layer,
                        const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  if (frame < 0 || frame >= static_cast<std::int64_t>(set.frames.size())) {
    throw Error(ErrorKind::FrameOutOfRange, "frame " + std::to_string(frame) + " not in set " +
                                                set.set_id + " (0.." +
                                                std::to_string(set.frames.size() - 1) + ")");
  }
  const auto t = static_cast<std::size_t>(frame);
  const auto holders = resolve_holders(set, cfg.params);
  const Frame& f = set.frames[t];
  const Point2D holder = f.find(holders[t])->position;
  const auto grid = GridSpec::covering(cfg.field, cfg.params.grid_cell);
  LayerGrid out{grid, std::vector<double>(grid.size(), 0.0)};

  if (layer == Layer::WArea || layer == Layer::WDistance) {
    const auto mask = grid.court_mask(cfg.field);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (!mask[idx]) continue;
      const Point2D c = grid.center(idx);
      out.values[idx] = layer == Layer::WArea
                            ? w_area(cfg.field, c)
                            : w_distance(cfg.field, c, holder, cfg.distance_weight);
    }
    return out;
  }
  const auto ppcf = compute_ppcf_grid(f, holders[t], grid, cfg.field, cfg.params, threads);
  switch (layer) {
    case Layer::PpcfOffense: out.values = ppcf.offense; break;
    case Layer::PpcfDefense: out.values = ppcf.defense; break;
    default: out.values = uso_from_ppcf(ppcf, cfg.field, holder, cfg.distance_weight).values; break;
  }
  return out;
}

std::string render_grid_csv(const LayerGrid& g) {
  std::string out;
  for (int j = g.grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.grid.nx; ++i) {
      if (i > 0) out += ',';
      out += text::fixed_half_up(g.values[g.grid.index(i, j)], 6);
    }
    out += '\n';
  }
  return out;
}

std::string render_grid_pgm(const LayerGrid& g) {
  std::string out = "P2\n" + std::to_string(g.grid.nx) + ' ' + std::to_string(g.grid.ny) + "\n255\n";
  for (int j = g.grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.grid.nx; ++i) {
      if (i > 0) out += ' ';
      const double v = std::clamp(g.values[g.grid.index(i, j)], 0.0, 1.0);
      out += std::to_string(std::lround(v * 255.0));
    }
    out += '\n';
  }
  return out;
}

void run_heatmap(const SetRecord& set, std::int64_t frame, Layer layer, const RunConfig& cfg,
                 const std::string& out_dir, unsigned threads) {
  const auto g = compute_layer(set, frame, layer, cfg, threads);
  prepare_out_dir(out_dir, cfg);
  write_file(fs::path(out_dir) / frame_file(layer, frame, "csv"), render_grid_csv(g));
  write_file(fs::path(out_dir) / frame_file(layer, frame, "pgm"), render_grid_pgm(g));
}

SetRecord run_synth(Scenario scenario, const RunConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  auto set = make_scenario(scenario, cfg);
  prepare_out_dir(out_dir, cfg);
  save_set((fs::path(out_dir) / to_string(scenario)).string(), set);
  return set;
}

}  // namespace uso
