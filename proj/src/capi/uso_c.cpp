#include "uso/uso.h"

#include <exception>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/pipeline.hpp"

struct uso_config {
  uso::RunConfig cfg;
  std::string text;
};

struct uso_set {
  uso::SetRecord record;
};

namespace {

thread_local std::string g_last_error;

int status_for(uso::ErrorKind kind) {
  using uso::ErrorKind;
  switch (kind) {
    case ErrorKind::Config:
      return USO_ERR_CONFIG;
    case ErrorKind::InsideEndzone:
    case ErrorKind::HolderNotFound:
    case ErrorKind::OutOfCourt:
    case ErrorKind::NoHolderEver:
      return USO_ERR_COMPUTE;
    case ErrorKind::InsufficientHistory:
    case ErrorKind::NoEvaluablePasses:
      return USO_ERR_EVALUATE;
    default:
      return USO_ERR_INPUT;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return USO_OK;
  } catch (const uso::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return USO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return USO_ERR_INTERNAL;
  }
}

int null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return USO_ERR_INPUT;
}

unsigned resolve_threads(unsigned threads) { return threads == 0 ? uso::default_threads() : threads; }

}  // namespace

extern "C" {

const char* uso_last_error(void) { return g_last_error.c_str(); }

uso_config* uso_config_new(void) {
  try {
    return new uso_config{};
  } catch (...) {
    return nullptr;
  }
}

void uso_config_free(uso_config* cfg) { delete cfg; }

int uso_config_set(uso_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_argument("uso_config_set");
  return guarded([&] {
    uso::RunConfig next = cfg->cfg;
    next.set(key, value);
    next.validate();
    cfg->cfg = std::move(next);
  });
}

int uso_config_load(uso_config* cfg, const char* path) {
  if (!cfg || !path) return null_argument("uso_config_load");
  return guarded([&] { cfg->cfg.load_file(path); });
}

const char* uso_config_text(uso_config* cfg) {
  if (!cfg) return "";
  cfg->text = cfg->cfg.render();
  return cfg->text.c_str();
}

int uso_set_load(const char* dir, uso_set** out) {
  if (!dir || !out) return null_argument("uso_set_load");
  *out = nullptr;
  return guarded([&] { *out = new uso_set{uso::load_set(dir)}; });
}

void uso_set_free(uso_set* set) { delete set; }

size_t uso_set_frame_count(const uso_set* set) { return set ? set->record.frames.size() : 0; }

size_t uso_set_pass_count(const uso_set* set) { return set ? set->record.passes.size() : 0; }

int uso_ingest(const uso_config* cfg, const char* tracking_path, const char* events_path,
               const char* homography_path, uso_direction direction, uso_outcome outcome,
               const char* set_id, const char* out_dir) {
  if (!cfg || !tracking_path || !out_dir) return null_argument("uso_ingest");
  return guarded([&] {
    uso::IngestRequest req;
    req.tracking_path = tracking_path;
    if (events_path) req.events_path = events_path;
    if (homography_path) req.homography_path = homography_path;
    req.direction = direction == USO_MINUSX ? uso::AttackDirection::MinusX : uso::AttackDirection::PlusX;
    if (outcome == USO_OUTCOME_SCORE) req.outcome = uso::Outcome::Score;
    if (outcome == USO_OUTCOME_TURNOVER) req.outcome = uso::Outcome::Turnover;
    if (set_id) req.set_id = set_id;
    req.out_dir = out_dir;
    uso::run_ingest(req, cfg->cfg);
  });
}

int uso_compute(const uso_config* cfg, const uso_set* set, const char* out_dir, int dump_grids,
                unsigned threads) {
  if (!cfg || !set || !out_dir) return null_argument("uso_compute");
  return guarded([&] {
    uso::run_compute(set->record, cfg->cfg, out_dir, dump_grids != 0, resolve_threads(threads));
  });
}

int uso_evaluate(const uso_config* cfg, const uso_set* const* sets, size_t count, uso_format format,
                 const char* out_dir, unsigned threads) {
  if (!cfg || (!sets && count > 0) || !out_dir) return null_argument("uso_evaluate");
  return guarded([&] {
    std::vector<uso::SetRecord> records;
    records.reserve(count);
    for (size_t i = 0; i < count; ++i) records.push_back(sets[i]->record);
    uso::run_evaluate(records, cfg->cfg,
                      format == USO_FORMAT_MARKDOWN ? uso::ReportFormat::Markdown
                                                    : uso::ReportFormat::Csv,
                      out_dir, resolve_threads(threads));
  });
}

int uso_heatmap(const uso_config* cfg, const uso_set* set, long long frame, const char* layer,
                const char* out_dir, unsigned threads) {
  if (!cfg || !set || !layer || !out_dir) return null_argument("uso_heatmap");
  return guarded([&] {
    uso::run_heatmap(set->record, frame, uso::parse_layer(layer), cfg->cfg, out_dir,
                     resolve_threads(threads));
  });
}

int uso_synth(const uso_config* cfg, const char* scenario, const char* out_dir) {
  if (!cfg || !scenario || !out_dir) return null_argument("uso_synth");
  return guarded([&] { uso::run_synth(uso::parse_scenario(scenario), cfg->cfg, out_dir); });
}

int uso_score_series(const uso_config* cfg, const uso_set* set, unsigned threads, double* scores,
                     size_t capacity) {
  if (!cfg || !set || (!scores && capacity > 0)) return null_argument("uso_score_series");
  return guarded([&] {
    cfg->cfg.validate();
    const auto series = uso::uso_score_series(set->record, cfg->cfg.field, cfg->cfg.params,
                                              cfg->cfg.distance_weight, resolve_threads(threads));
    for (size_t i = 0; i < series.size() && i < capacity; ++i) scores[i] = series[i].score;
  });
}

int uso_estimate_homography(const double* points, size_t n, double out[9]) {
  if ((!points && n > 0) || !out) return null_argument("uso_estimate_homography");
  return guarded([&] {
    std::vector<uso::Correspondence> pairs;
    for (size_t i = 0; i < n; ++i) {
      const double* r = points + 4 * i;
      pairs.push_back({{r[0], r[1]}, {r[2], r[3]}});
    }
    const auto h = uso::estimate_homography(pairs);
    for (int i = 0; i < 9; ++i) out[i] = h.matrix()[static_cast<size_t>(i)];
  });
}

int uso_project(const double h[9], double x, double y, double* out_x, double* out_y) {
  if (!h || !out_x || !out_y) return null_argument("uso_project");
  return guarded([&] {
    std::array<double, 9> m{};
    for (int i = 0; i < 9; ++i) m[static_cast<size_t>(i)] = h[i];
    const auto p = uso::project(uso::Homography(m), {x, y});
    *out_x = p.x;
    *out_y = p.y;
  });
}

}  // extern "C"
