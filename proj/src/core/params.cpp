#include "params.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace uso {

void ModelParams::validate() const {
  const struct {
    const char* name;
    double value;
  } fields[] = {
      {"reaction_time", reaction_time}, {"max_speed", max_speed},
      {"sigma_arrival", sigma_arrival}, {"lambda_control", lambda_control},
      {"disc_speed", disc_speed},       {"dt", dt},
      {"horizon", horizon},             {"epsilon_converge", epsilon_converge},
      {"marker_exclusion_radius", marker_exclusion_radius},
      {"hold_radius", hold_radius},     {"hold_speed", hold_speed},
      {"grid_cell", grid_cell},         {"fps", fps},
  };
  for (const auto& f : fields) {
    if (!(f.value > 0.0) || !std::isfinite(f.value)) {
      throw Error(ErrorKind::Config, std::string(f.name) + " must be positive and finite");
    }
  }
  if (epsilon_converge > 0.1) throw Error(ErrorKind::Config, "epsilon_converge must be in (0, 0.1]");
}

}  // namespace uso
