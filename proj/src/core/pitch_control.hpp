#pragma once

#include <span>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "types.hpp"

namespace uso {

// Everyone except the disc holder and the defenders marking the holder
// (distance <= marker_exclusion_radius). Offense players are never dropped
// for proximity.
std::vector<PlayerState> eligible_players(const Frame& frame, PlayerId holder_id,
                                          const ModelParams& params);

// Reaction time, then a straight sprint at max_speed from where the player
// drifts to during the reaction.
double time_to_intercept(const PlayerState& p, Point2D target, const ModelParams& params);

// Logistic arrival law with slope pi / (sqrt(3) * sigma).
double arrival_probability(double t, double t_intercept, double sigma);

double disc_flight_time(Point2D origin, Point2D target, const ModelParams& params);

struct PlayerControl {
  PlayerId id;
  Team team;
  double control;
};

struct PpcfPoint {
  double offense = 0.0;
  double defense = 0.0;
  std::vector<PlayerControl> per_player;  // eligible players, by id
};

// Integrates dC_i/dt = (1 - sum_k C_k) * f_i(t) * lambda from the disc arrival
// time until sum_k C_k reaches 1 - epsilon or the horizon runs out.
//
// Each step of length dt holds the arrival probabilities at their midpoint
// value and integrates the shared (1 - sum C) factor exactly, which keeps the
// step stable when several players have already arrived (lambda * sum f * dt
// close to 1). The final step is cut where sum C crosses 1 - epsilon.
PpcfPoint compute_ppcf_at(const Frame& frame, PlayerId holder_id, Point2D target,
                          const ModelParams& params);

struct PitchControlField {
  GridSpec grid;
  std::vector<double> offense;
  std::vector<double> defense;
  std::vector<unsigned char> in_court;
};

// compute_ppcf_at at every in-court cell center; other cells stay 0 and are
// flagged out. Rows are split across `threads` workers; the result does not
// depend on the worker count.
PitchControlField compute_ppcf_grid(const Frame& frame, PlayerId holder_id, const GridSpec& grid,
                                    const FieldSpec& field, const ModelParams& params,
                                    unsigned threads = 1);

}  // namespace uso
