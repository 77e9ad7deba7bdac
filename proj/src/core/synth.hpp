#pragma once

#include <string_view>

#include "config.hpp"
#include "types.hpp"

namespace uso {

enum class Scenario {
  Static,        // nobody moves for 60 frames; three quick swings of the disc, turnover
  FreeCut,       // an unmarked cutter runs into the end zone over 60 frames and scores
  MarkedHolder,  // a defender parked 2 m from a stationary holder, stall-out turnover
};

Scenario parse_scenario(std::string_view name);
const char* to_string(Scenario s);

// Deterministic scripted set in the canonical frame of cfg.field, with
// velocities estimated the same way ingest does.
SetRecord make_scenario(Scenario scenario, const RunConfig& cfg);

}  // namespace uso
