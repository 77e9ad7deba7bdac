#pragma once

#include <string>
#include <string_view>

#include "geometry.hpp"
#include "params.hpp"
#include "uso_metric.hpp"

namespace uso {

// Everything a run needs besides file paths. Built from defaults, then a flat
// `key = value` file, then command-line overrides; unknown keys are rejected.
struct RunConfig {
  std::string field_name = "threes";
  FieldSpec field = FieldSpec::threes();
  ModelParams params;
  DistanceWeight distance_weight = DistanceWeight::Decreasing;
  int velocity_window = 5;

  // Throws Error(Config) for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  void load_file(const std::string& path);
  void validate() const;

  // Resolved configuration in the same `key = value` syntax, fixed key order.
  std::string render() const;
};

// `official`, `threes`, or `custom:L,W,E`.
FieldSpec parse_field(std::string_view spec);

}  // namespace uso
