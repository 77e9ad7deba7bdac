#include "config.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace uso {

namespace {

struct NumericKey {
  const char* name;
  double ModelParams::*field;
};

constexpr NumericKey kNumericKeys[] = {
    {"fps", &ModelParams::fps},
    {"grid_cell", &ModelParams::grid_cell},
    {"reaction_time", &ModelParams::reaction_time},
    {"max_speed", &ModelParams::max_speed},
    {"sigma_arrival", &ModelParams::sigma_arrival},
    {"lambda_control", &ModelParams::lambda_control},
    {"disc_speed", &ModelParams::disc_speed},
    {"dt", &ModelParams::dt},
    {"horizon", &ModelParams::horizon},
    {"epsilon_converge", &ModelParams::epsilon_converge},
    {"marker_exclusion_radius", &ModelParams::marker_exclusion_radius},
    {"hold_radius", &ModelParams::hold_radius},
    {"hold_speed", &ModelParams::hold_speed},
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::Config,
              "bad value `" + std::string(value) + "` for `" + std::string(key) + "`");
}

}  // namespace

FieldSpec parse_field(std::string_view spec) {
  spec = text::trim(spec);
  if (spec == "official") return FieldSpec::official();
  if (spec == "threes") return FieldSpec::threes();
  if (spec.starts_with("custom:")) {
    const auto parts = text::split(spec.substr(7), ',');
    if (parts.size() == 3) {
      const auto l = text::parse_double(parts[0]);
      const auto w = text::parse_double(parts[1]);
      const auto e = text::parse_double(parts[2]);
      if (l && w && e) {
        FieldSpec f{*l, *w, *e};
        f.validate();
        return f;
      }
    }
  }
  bad_value("field", spec);
}

void RunConfig::set(std::string_view key, std::string_view value) {
  key = text::trim(key);
  value = text::trim(value);
  if (key == "field") {
    field = parse_field(value);
    field_name = std::string(value);
    return;
  }
  if (key == "distance_weight") {
    if (value == "decreasing") {
      distance_weight = DistanceWeight::Decreasing;
    } else if (value == "increasing") {
      distance_weight = DistanceWeight::Increasing;
    } else {
      bad_value(key, value);
    }
    return;
  }
  if (key == "velocity_window") {
    const auto v = text::parse_int(value);
    if (!v || *v < 1 || *v % 2 == 0) bad_value(key, value);
    velocity_window = static_cast<int>(*v);
    return;
  }
  for (const auto& k : kNumericKeys) {
    if (key == k.name) {
      const auto v = text::parse_double(value);
      if (!v) bad_value(key, value);
      params.*(k.field) = *v;
      return;
    }
  }
  throw Error(ErrorKind::Config, "unknown config key `" + std::string(key) + "`");
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set(trimmed.substr(0, eq), trimmed.substr(eq + 1));
    } catch (const Error& e) {
      // e.what() already starts with "Config: ".
      const std::string detail = std::string(e.what()).substr(std::string_view("Config: ").size());
      throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": " + detail);
    }
  }
}

void RunConfig::validate() const {
  field.validate();
  params.validate();
  if (velocity_window < 1 || velocity_window % 2 == 0) {
    throw Error(ErrorKind::Config, "velocity_window must be a positive odd integer");
  }
}

std::string RunConfig::render() const {
  std::ostringstream out;
  out << "field = " << field_name << '\n';
  for (const auto& k : kNumericKeys) out << k.name << " = " << text::shortest(params.*(k.field)) << '\n';
  out << "distance_weight = "
      << (distance_weight == DistanceWeight::Decreasing ? "decreasing" : "increasing") << '\n';
  out << "velocity_window = " << velocity_window << '\n';
  return out.str();
}

}  // namespace uso
