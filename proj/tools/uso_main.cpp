// uso - command-line front end. Talks to the engine only through uso.h.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uso/uso.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string field;
  std::optional<double> fps;
  std::optional<double> grid_cell;
  std::string distance_weight;
  unsigned threads = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "flat key = value config file");
  cmd->add_option("--field", o.field, "official | threes | custom:L,W,E");
  cmd->add_option("--fps", o.fps, "frame rate (Hz)");
  cmd->add_option("--grid-cell", o.grid_cell, "grid cell size (m)");
  cmd->add_option("--distance-weight", o.distance_weight, "decreasing | increasing")
      ->check(CLI::IsMember({"decreasing", "increasing"}));
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "output directory")->required();
}

using ConfigPtr = std::unique_ptr<uso_config, decltype(&uso_config_free)>;
using SetPtr = std::unique_ptr<uso_set, decltype(&uso_set_free)>;

int fail(int status) {
  std::fprintf(stderr, "uso: %s\n", uso_last_error());
  return status;
}

// Defaults, then the config file, then flags.
int build_config(const CommonOptions& o, ConfigPtr& cfg) {
  cfg.reset(uso_config_new());
  if (!cfg) return USO_ERR_INTERNAL;
  if (!o.config_path.empty()) {
    if (int rc = uso_config_load(cfg.get(), o.config_path.c_str())) return rc;
  }
  const auto set = [&](const char* key, const std::string& value) {
    return value.empty() ? int{USO_OK} : uso_config_set(cfg.get(), key, value.c_str());
  };
  const auto num = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return std::string(buf);
  };
  for (const auto& [key, value] : std::vector<std::pair<const char*, std::string>>{
           {"field", o.field},
           {"fps", num(o.fps)},
           {"grid_cell", num(o.grid_cell)},
           {"distance_weight", o.distance_weight}}) {
    if (int rc = set(key, value)) return rc;
  }
  return USO_OK;
}

int load_set(const std::string& dir, SetPtr& out) {
  uso_set* raw = nullptr;
  const int rc = uso_set_load(dir.c_str(), &raw);
  out.reset(raw);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultimate pitch control and USO metrics"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* ingest = app.add_subcommand("ingest", "standardize raw tracking into a set directory");
  add_common(ingest, common);
  std::string tracking, events, homography, direction = "plusx", outcome, set_id;
  ingest->add_option("--tracking", tracking, "tracking CSV")->required();
  ingest->add_option("--events", events, "events CSV");
  ingest->add_option("--homography", homography, "homography or correspondence file");
  ingest->add_option("--direction", direction, "attacking direction in the input")
      ->check(CLI::IsMember({"plusx", "minusx"}));
  ingest->add_option("--outcome", outcome, "set outcome when no events file is given")
      ->check(CLI::IsMember({"score", "turnover"}));
  ingest->add_option("--set-id", set_id, "set identifier (default: output directory name)");

  auto* compute = app.add_subcommand("compute", "per-frame USO Score series");
  add_common(compute, common);
  std::string compute_set;
  bool dump_grids = false;
  compute->add_option("set", compute_set, "set directory")->required();
  compute->add_flag("--dump-grids", dump_grids, "write the USO grid of every frame");

  auto* evaluate = app.add_subcommand("evaluate", "pass-window report over sets");
  add_common(evaluate, common);
  std::vector<std::string> evaluate_sets;
  std::string format = "csv";
  evaluate->add_option("sets", evaluate_sets, "set directories")->required();
  evaluate->add_option("--format", format, "csv | markdown")->check(CLI::IsMember({"csv", "markdown"}));

  auto* heatmap = app.add_subcommand("heatmap", "export one layer of one frame");
  add_common(heatmap, common);
  std::string heatmap_set, layer;
  long long frame = 0;
  heatmap->add_option("set", heatmap_set, "set directory")->required();
  heatmap->add_option("--frame", frame, "frame index")->required();
  heatmap->add_option("--layer", layer, "ppcf_off | ppcf_def | w_area | w_distance | uso")
      ->required()
      ->check(CLI::IsMember({"ppcf_off", "ppcf_def", "w_area", "w_distance", "uso"}));

  auto* synth = app.add_subcommand("synth", "write a scripted scenario set");
  add_common(synth, common);
  std::string scenario;
  synth->add_option("scenario", scenario, "static | free_cut | marked_holder")
      ->required()
      ->check(CLI::IsMember({"static", "free_cut", "marked_holder"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : USO_ERR_CONFIG;
  }

  ConfigPtr cfg(nullptr, uso_config_free);
  if (int rc = build_config(common, cfg)) return fail(rc);

  if (ingest->parsed()) {
    const uso_outcome oc = outcome.empty()        ? USO_OUTCOME_UNSET
                           : outcome == "score" ? USO_OUTCOME_SCORE
                                                : USO_OUTCOME_TURNOVER;
    const int rc = uso_ingest(cfg.get(), tracking.c_str(), events.empty() ? nullptr : events.c_str(),
                              homography.empty() ? nullptr : homography.c_str(),
                              direction == "minusx" ? USO_MINUSX : USO_PLUSX, oc,
                              set_id.empty() ? nullptr : set_id.c_str(), common.out.c_str());
    return rc ? fail(rc) : 0;
  }
  if (compute->parsed()) {
    SetPtr set(nullptr, uso_set_free);
    if (int rc = load_set(compute_set, set)) return fail(rc);
    const int rc = uso_compute(cfg.get(), set.get(), common.out.c_str(), dump_grids ? 1 : 0, common.threads);
    return rc ? fail(rc) : 0;
  }
  if (evaluate->parsed()) {
    std::vector<SetPtr> owned;
    std::vector<const uso_set*> sets;
    for (const auto& dir : evaluate_sets) {
      SetPtr set(nullptr, uso_set_free);
      if (int rc = load_set(dir, set)) return fail(rc);
      sets.push_back(set.get());
      owned.push_back(std::move(set));
    }
    const int rc = uso_evaluate(cfg.get(), sets.data(), sets.size(),
                                format == "markdown" ? USO_FORMAT_MARKDOWN : USO_FORMAT_CSV,
                                common.out.c_str(), common.threads);
    return rc ? fail(rc) : 0;
  }
  if (heatmap->parsed()) {
    SetPtr set(nullptr, uso_set_free);
    if (int rc = load_set(heatmap_set, set)) return fail(rc);
    const int rc = uso_heatmap(cfg.get(), set.get(), frame, layer.c_str(), common.out.c_str(), common.threads);
    return rc ? fail(rc) : 0;
  }
  const int rc = uso_synth(cfg.get(), scenario.c_str(), common.out.c_str());
  return rc ? fail(rc) : 0;
}
