#include "synth.hpp"

#include <functional>

#include "error.hpp"
#include "tracking.hpp"

namespace uso {

namespace {

struct Actor {
  PlayerId id;
  Team team;
  std::function<Point2D(int)> path;
};

Point2D lerp(Point2D a, Point2D b, double s) { return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s}; }

// Position at frame t of an actor that holds `from` until `start`, moves
// linearly to reach `to` at `end`, and keeps the same velocity until `stop`.
std::function<Point2D(int)> run(Point2D from, Point2D to, int start, int end, int stop) {
  return [=](int t) {
    const int clamped = std::min(std::max(t, start), stop);
    return lerp(from, to, static_cast<double>(clamped - start) / (end - start));
  };
}

std::function<Point2D(int)> still(Point2D p) {
  return [p](int) { return p; };
}

SetRecord assemble(const std::string& id, const RunConfig& cfg, int nframes,
                   const std::vector<Actor>& actors, const std::vector<PassEvent>& script,
                   PlayerId first_holder, Outcome outcome) {
  const auto position_of = [&](PlayerId pid, int t) {
    for (const auto& a : actors)
      if (a.id == pid) return a.path(t);
    throw Error(ErrorKind::SchemaError, "scenario references unknown player");
  };

  SetRecord set;
  set.set_id = id;
  set.fps = cfg.params.fps;
  set.outcome = outcome;
  for (int t = 0; t < nframes; ++t) {
    Frame f;
    f.index = t;
    f.time = t / set.fps;
    for (const auto& a : actors) f.players.push_back({a.id, a.team, a.path(t), {}});
    // Disc rests on the last receiver, or flies straight between the thrower
    // at release and the receiver at reception.
    PlayerId holder = first_holder;
    std::optional<Point2D> in_flight;
    for (const auto& p : script) {
      if (t >= p.reception_frame) {
        holder = p.receiver_id;
      } else if (t > p.release_frame) {
        const Point2D from = position_of(p.thrower_id, static_cast<int>(p.release_frame));
        const Point2D to = position_of(p.receiver_id, static_cast<int>(p.reception_frame));
        const double s = static_cast<double>(t - p.release_frame) /
                         static_cast<double>(p.reception_frame - p.release_frame);
        in_flight = lerp(from, to, s);
      }
    }
    f.disc.position = in_flight ? *in_flight : position_of(holder, t);
    set.frames.push_back(std::move(f));
  }
  set.frames = estimate_velocities(set.frames, set.fps, cfg.velocity_window, cfg.params.max_speed);
  for (auto p : script) {
    p.reception_point = position_of(p.receiver_id, static_cast<int>(p.reception_frame));
    set.passes.push_back(p);
  }
  validate_set(set);
  return set;
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  if (name == "static") return Scenario::Static;
  if (name == "free_cut") return Scenario::FreeCut;
  if (name == "marked_holder") return Scenario::MarkedHolder;
  throw Error(ErrorKind::Config, "unknown scenario `" + std::string(name) + "`");
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Static: return "static";
    case Scenario::FreeCut: return "free_cut";
    case Scenario::MarkedHolder: return "marked_holder";
  }
  return "?";
}

SetRecord make_scenario(Scenario scenario, const RunConfig& cfg) {
  const FieldSpec& f = cfg.field;
  const double mid = f.length / 2.0;
  const double cy = f.width / 2.0;
  const double front = f.front_line_x();

  switch (scenario) {
    case Scenario::Static: {
      const std::vector<Actor> actors{
          {1, Team::Offense, still({mid - 3.0, cy})},
          {2, Team::Offense, still({mid + 3.0, cy + 4.0})},
          {3, Team::Offense, still({mid + 3.0, cy - 4.0})},
          {4, Team::Defense, still({mid - 1.5, cy + 1.0})},
          {5, Team::Defense, still({mid + 5.0, cy + 5.0})},
          {6, Team::Defense, still({mid + 5.0, cy - 5.0})},
      };
      const std::vector<PassEvent> script{
          {0, 6, 1, 2, {}},
          {8, 14, 2, 3, {}},
          {45, 52, 3, 1, {}},
      };
      return assemble("static", cfg, 60, actors, script, 1, Outcome::Turnover);
    }
    case Scenario::FreeCut: {
      // The cutter breaks from the stack over frames 30..89, heading for the
      // end-zone front while a deep defender waits inside the end zone. The
      // huck is released at 89; the cutter keeps the same line and catches it
      // inside the end zone at 140. Shortly after the release the thrower follows up
      // the field and the deep defender closes on the receiver. Six frames of
      // rest follow.
      constexpr int cut_start = 30, release = 89, reception = 140, nframes = 147;
      const std::vector<Actor> actors{
          {1, Team::Offense, run({mid, cy}, {mid + 9.0, cy}, release + 5, reception, reception)},
          {2, Team::Offense,
           run({front - 14.0, cy + 6.0}, {front - 6.0, cy + 2.0}, cut_start, release, reception)},
          {3, Team::Offense, still({mid - 7.0, cy - 5.0})},
          {4, Team::Defense, still({mid + 1.5, cy + 1.2})},
          {5, Team::Defense,
           run({front + 4.0, cy}, {front + 2.5, cy - 0.5}, release + 5, reception, reception)},
          {6, Team::Defense, still({mid - 6.0, cy - 4.0})},
      };
      const std::vector<PassEvent> script{
          {0, 8, 1, 3, {}},
          {14, 22, 3, 1, {}},
          {release, reception, 1, 2, {}},
      };
      return assemble("free_cut", cfg, nframes, actors, script, 1, Outcome::Score);
    }
    case Scenario::MarkedHolder: {
      const std::vector<Actor> actors{
          {1, Team::Offense, still({mid, cy})},
          {2, Team::Offense, still({mid + 8.0, cy + 5.0})},
          {3, Team::Offense, still({mid + 6.0, cy - 6.0})},
          {4, Team::Defense, still({mid + 2.0, cy})},
          {5, Team::Defense, still({mid + 10.0, cy + 5.0})},
          {6, Team::Defense, still({mid + 7.0, cy - 7.0})},
      };
      return assemble("marked_holder", cfg, 60, actors, {}, 1, Outcome::Turnover);
    }
  }
  throw Error(ErrorKind::Config, "unknown scenario");
}

}  // namespace uso
