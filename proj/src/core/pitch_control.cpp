#include "pitch_control.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "parallel.hpp"

namespace uso {

namespace {

const PlayerState& find_holder(const Frame& frame, PlayerId holder_id) {
  const PlayerState* holder = frame.find(holder_id);
  if (holder == nullptr) {
    throw Error(ErrorKind::HolderNotFound, "player " + std::to_string(holder_id) +
                                               " is not in frame " + std::to_string(frame.index));
  }
  return *holder;
}

struct Contender {
  PlayerId id;
  Team team;
  Point2D drift;  // position after the reaction time
};

// The eligible players of one frame, ready to race for any target.
class Race {
public:
  Race(const Frame& frame, PlayerId holder_id, const ModelParams& params)
      : params_(params),
        holder_(find_holder(frame, holder_id).position),
        slope_(std::numbers::pi / (std::sqrt(3.0) * params.sigma_arrival)),
        decay_(std::exp(-slope_ * params.dt)),
        steps_(static_cast<long>(std::floor(params.horizon / params.dt + 1e-9))) {
    for (const auto& p : eligible_players(frame, holder_id, params)) {
      contenders_.push_back({p.id, p.team, p.position + p.velocity * params.reaction_time});
    }
  }

  std::size_t size() const { return contenders_.size(); }
  const Contender& contender(std::size_t i) const { return contenders_[i]; }

  // Writes each contender's control into `control` (size() entries).
  void run(Point2D target, double* control, double* odds) const {
    const std::size_t n = contenders_.size();
    for (std::size_t i = 0; i < n; ++i) control[i] = 0.0;
    if (n == 0) return;

    const double t0 = distance(holder_, target) / params_.disc_speed;
    const double t_first = t0 + 0.5 * params_.dt;
    for (std::size_t i = 0; i < n; ++i) {
      const double t_int =
          params_.reaction_time + distance(contenders_[i].drift, target) / params_.max_speed;
      // odds = exp(-slope (t - t_int)), so f = 1 / (1 + odds).
      odds[i] = std::exp(-slope_ * (t_first - t_int));
    }

    const double eps = params_.epsilon_converge;
    const double rate = params_.lambda_control * params_.dt;
    double remaining = 1.0;  // 1 - sum C
    for (long s = 0; s < steps_; ++s) {
      double total_f = 0.0;
      for (std::size_t i = 0; i < n; ++i) total_f += 1.0 / (1.0 + odds[i]);
      if (total_f > 0.0) {
        double next = remaining * std::exp(-rate * total_f);
        const bool done = next <= eps;
        if (done) next = eps;
        const double share = (remaining - next) / total_f;
        for (std::size_t i = 0; i < n; ++i) control[i] += share / (1.0 + odds[i]);
        remaining = next;
        if (done) return;
      }
      for (std::size_t i = 0; i < n; ++i) odds[i] *= decay_;
    }
  }

private:
  ModelParams params_;
  Point2D holder_;
  double slope_;
  double decay_;
  long steps_;
  std::vector<Contender> contenders_;
};

}  // namespace

std::vector<PlayerState> eligible_players(const Frame& frame, PlayerId holder_id,
                                          const ModelParams& params) {
  const Point2D holder = find_holder(frame, holder_id).position;
  std::vector<PlayerState> out;
  for (const auto& p : frame.players) {
    if (p.id == holder_id) continue;
    if (p.team == Team::Defense && distance(p.position, holder) <= params.marker_exclusion_radius) {
      continue;
    }
    out.push_back(p);
  }
  return out;
}

double time_to_intercept(const PlayerState& p, Point2D target, const ModelParams& params) {
  const Point2D drift = p.position + p.velocity * params.reaction_time;
  return params.reaction_time + distance(drift, target) / params.max_speed;
}

double arrival_probability(double t, double t_intercept, double sigma) {
  return 1.0 / (1.0 + std::exp(-std::numbers::pi / std::sqrt(3.0) * (t - t_intercept) / sigma));
}

double disc_flight_time(Point2D origin, Point2D target, const ModelParams& params) {
  return distance(origin, target) / params.disc_speed;
}

PpcfPoint compute_ppcf_at(const Frame& frame, PlayerId holder_id, Point2D target,
                          const ModelParams& params) {
  const Race race(frame, holder_id, params);
  std::vector<double> control(race.size()), odds(race.size());
  race.run(target, control.data(), odds.data());
  PpcfPoint out;
  for (std::size_t i = 0; i < race.size(); ++i) {
    const auto& c = race.contender(i);
    (c.team == Team::Offense ? out.offense : out.defense) += control[i];
    out.per_player.push_back({c.id, c.team, control[i]});
  }
  return out;
}

PitchControlField compute_ppcf_grid(const Frame& frame, PlayerId holder_id, const GridSpec& grid,
                                    const FieldSpec& field, const ModelParams& params,
                                    unsigned threads) {
  const Race race(frame, holder_id, params);
  PitchControlField out{grid, std::vector<double>(grid.size(), 0.0),
                        std::vector<double>(grid.size(), 0.0), grid.court_mask(field)};
  parallel_for(static_cast<std::size_t>(grid.ny), threads, [&](std::size_t row) {
    std::vector<double> control(race.size()), odds(race.size());
    const int j = static_cast<int>(row);
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t idx = grid.index(i, j);
      if (!out.in_court[idx]) continue;
      race.run(grid.center(i, j), control.data(), odds.data());
      double off = 0.0, def = 0.0;
      for (std::size_t k = 0; k < race.size(); ++k) {
        (race.contender(k).team == Team::Offense ? off : def) += control[k];
      }
      out.offense[idx] = off;
      out.defense[idx] = def;
    }
  });
  return out;
}

}  // namespace uso
