#pragma once

namespace uso {

// Constants of the intercept / arrival / control model and of the grid
// integration. Defaults are the conventional values of the soccer pitch
// control model; none of them are tuned for Ultimate except the marker radius.
struct ModelParams {
  double reaction_time = 0.7;     // s
  double max_speed = 5.0;         // m/s
  double sigma_arrival = 0.45;    // s
  double lambda_control = 4.3;    // 1/s
  double disc_speed = 15.0;       // m/s
  double dt = 0.04;               // s
  double horizon = 10.0;          // s
  double epsilon_converge = 0.01;
  double marker_exclusion_radius = 3.0;  // m, inclusive
  double hold_radius = 1.0;       // m
  double hold_speed = 2.0;        // m/s
  double grid_cell = 0.5;         // m
  double fps = 30.0;              // Hz

  // Throws Error(Config) naming the first offending field.
  void validate() const;
};

}  // namespace uso
