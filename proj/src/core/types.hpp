#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uso {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

// Velocity in m/s. Kept distinct from Point2D so positions and rates never mix.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline Point2D operator+(Point2D p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {v.x * s, v.y * s}; }

using PlayerId = std::int32_t;
inline constexpr PlayerId kDiscId = -1;

enum class Team { Offense, Defense };

struct PlayerState {
  PlayerId id = 0;
  Team team = Team::Offense;
  Point2D position;
  Vec2 velocity;

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct DiscState {
  Point2D position;
  Vec2 velocity;

  friend bool operator==(const DiscState&, const DiscState&) = default;
};

// One time sample. Players are kept sorted by id.
struct Frame {
  std::int64_t index = 0;
  double time = 0.0;
  std::vector<PlayerState> players;
  DiscState disc;

  const PlayerState* find(PlayerId id) const;
  friend bool operator==(const Frame&, const Frame&) = default;
};

struct PassEvent {
  std::int64_t release_frame = 0;
  std::int64_t reception_frame = 0;
  PlayerId thrower_id = 0;
  PlayerId receiver_id = 0;
  Point2D reception_point;

  friend bool operator==(const PassEvent&, const PassEvent&) = default;
};

enum class Outcome { Score, Turnover };

struct SetRecord {
  std::string set_id;
  double fps = 30.0;
  std::vector<Frame> frames;
  std::vector<PassEvent> passes;
  Outcome outcome = Outcome::Score;

  friend bool operator==(const SetRecord&, const SetRecord&) = default;
};

inline const PlayerState* Frame::find(PlayerId id) const {
  for (const auto& p : players) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

}  // namespace uso
