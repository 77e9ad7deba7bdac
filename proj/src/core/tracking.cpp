#include "tracking.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace uso {

namespace {

enum class TrackingLayout { Court, CourtWithVelocity, Pixel };

std::string where(const std::string& name, int line) { return name + ":" + std::to_string(line); }

[[noreturn]] void schema_error(const std::string& name, int line, const std::string& what) {
  throw Error(ErrorKind::SchemaError, where(name, line) + ": " + what);
}

struct FrameRows {
  std::vector<PlayerState> players;
  std::optional<DiscState> disc;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return in;
}

}  // namespace

std::vector<Frame> parse_tracking_csv(std::istream& in, const std::string& name, double fps,
                                      const Homography* homography) {
  std::string line;
  int lineno = 0;
  std::optional<TrackingLayout> layout;
  while (!layout && std::getline(in, line)) {
    ++lineno;
    const auto header = text::trim(line);
    if (header.empty()) continue;
    if (header == "frame,id,team,x,y") {
      layout = TrackingLayout::Court;
    } else if (header == "frame,id,team,x,y,vx,vy") {
      layout = TrackingLayout::CourtWithVelocity;
    } else if (header == "frame,id,team,x1,y1,x2,y2") {
      layout = TrackingLayout::Pixel;
      if (homography == nullptr) {
        schema_error(name, lineno, "pixel bounding boxes need a homography");
      }
    } else {
      schema_error(name, lineno, "unrecognized header `" + std::string(header) + "`");
    }
  }
  if (!layout) schema_error(name, lineno, "missing header");

  const std::size_t ncols = *layout == TrackingLayout::Court ? 5 : 7;
  std::map<std::int64_t, FrameRows> rows;
  std::map<PlayerId, Team> teams;
  while (std::getline(in, line)) {
    ++lineno;
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    const auto cols = text::split(trimmed, ',');
    if (cols.size() != ncols) {
      schema_error(name, lineno, "expected " + std::to_string(ncols) + " columns, got " +
                                     std::to_string(cols.size()));
    }
    const auto frame = text::parse_int(cols[0]);
    const auto id = text::parse_int(cols[1]);
    if (!frame || *frame < 0) schema_error(name, lineno, "bad frame index");
    if (!id) schema_error(name, lineno, "bad id");
    std::array<double, 4> v{};
    for (std::size_t i = 3; i < ncols; ++i) {
      const auto d = text::parse_double(cols[i]);
      if (!d) schema_error(name, lineno, "bad number `" + std::string(cols[i]) + "`");
      v[i - 3] = *d;
    }
    Point2D position{v[0], v[1]};
    Vec2 velocity;
    if (*layout == TrackingLayout::CourtWithVelocity) velocity = {v[2], v[3]};
    if (*layout == TrackingLayout::Pixel) {
      const BBox box{v[0], v[1], v[2], v[3]};
      if (!(box.x1 < box.x2 && box.y1 < box.y2)) schema_error(name, lineno, "empty bounding box");
      position = project(*homography, bbox_center(box));
    }

    auto& fr = rows[*frame];
    const auto team_tok = text::trim(cols[2]);
    if (team_tok == "disc") {
      if (*id != kDiscId) schema_error(name, lineno, "disc rows must use id -1");
      if (fr.disc) schema_error(name, lineno, "second disc row in frame " + std::to_string(*frame));
      fr.disc = DiscState{position, velocity};
      continue;
    }
    Team team;
    if (team_tok == "O") {
      team = Team::Offense;
    } else if (team_tok == "D") {
      team = Team::Defense;
    } else {
      schema_error(name, lineno, "team must be O, D or disc");
    }
    if (*id == kDiscId) schema_error(name, lineno, "id -1 is reserved for the disc");
    const auto pid = static_cast<PlayerId>(*id);
    if (auto [it, inserted] = teams.emplace(pid, team); !inserted && it->second != team) {
      schema_error(name, lineno, "player " + std::to_string(pid) + " changes team");
    }
    for (const auto& p : fr.players) {
      if (p.id == pid) {
        schema_error(name, lineno,
                     "duplicate player " + std::to_string(pid) + " in frame " + std::to_string(*frame));
      }
    }
    fr.players.push_back({pid, team, position, velocity});
  }

  std::vector<Frame> frames;
  frames.reserve(rows.size());
  std::int64_t expected = 0;
  for (auto& [index, fr] : rows) {
    if (index != expected) {
      throw Error(ErrorKind::NonContiguousFrames,
                  name + ": expected frame " + std::to_string(expected) + ", found " +
                      std::to_string(index));
    }
    ++expected;
    if (!fr.disc) {
      throw Error(ErrorKind::MissingEntity,
                  name + ": frame " + std::to_string(index) + " has no disc row");
    }
    for (const auto& [pid, team] : teams) {
      const bool present = std::any_of(fr.players.begin(), fr.players.end(),
                                       [&](const PlayerState& p) { return p.id == pid; });
      if (!present) {
        throw Error(ErrorKind::MissingEntity, name + ": frame " + std::to_string(index) +
                                                  " is missing player " + std::to_string(pid));
      }
    }
    std::sort(fr.players.begin(), fr.players.end(),
              [](const PlayerState& a, const PlayerState& b) { return a.id < b.id; });
    frames.push_back(Frame{index, static_cast<double>(index) / fps, std::move(fr.players), *fr.disc});
  }
  return frames;
}

std::vector<Frame> parse_tracking_csv(const std::string& path, double fps,
                                      const Homography* homography) {
  auto in = open_input(path);
  return parse_tracking_csv(in, path, fps, homography);
}

void write_tracking_csv(std::ostream& out, std::span<const Frame> frames) {
  out << "frame,id,team,x,y,vx,vy\n";
  for (const auto& f : frames) {
    for (const auto& p : f.players) {
      out << f.index << ',' << p.id << ',' << (p.team == Team::Offense ? "O" : "D") << ','
          << text::shortest(p.position.x) << ',' << text::shortest(p.position.y) << ','
          << text::shortest(p.velocity.x) << ',' << text::shortest(p.velocity.y) << '\n';
    }
    out << f.index << ',' << kDiscId << ",disc," << text::shortest(f.disc.position.x) << ','
        << text::shortest(f.disc.position.y) << ',' << text::shortest(f.disc.velocity.x) << ','
        << text::shortest(f.disc.velocity.y) << '\n';
  }
}

EventsFile parse_events_csv(std::istream& in, const std::string& name) {
  EventsFile out;
  bool have_outcome = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cols = text::split(trimmed, ',');
    const auto kind = text::trim(cols[0]);
    if (kind == "outcome") {
      if (cols.size() != 2) schema_error(name, lineno, "expected `outcome,score|turnover`");
      if (have_outcome) schema_error(name, lineno, "second outcome row");
      const auto value = text::trim(cols[1]);
      if (value == "score") {
        out.outcome = Outcome::Score;
      } else if (value == "turnover") {
        out.outcome = Outcome::Turnover;
      } else {
        schema_error(name, lineno, "outcome must be score or turnover");
      }
      have_outcome = true;
    } else if (kind == "pass") {
      if (cols.size() != 7) schema_error(name, lineno, "pass rows have 7 columns");
      const auto release = text::parse_int(cols[1]);
      const auto reception = text::parse_int(cols[2]);
      const auto thrower = text::parse_int(cols[3]);
      const auto receiver = text::parse_int(cols[4]);
      const auto rx = text::parse_double(cols[5]);
      const auto ry = text::parse_double(cols[6]);
      if (!release || !reception || !thrower || !receiver || !rx || !ry) {
        schema_error(name, lineno, "malformed pass row");
      }
      if (*release < 0 || *reception <= *release) {
        schema_error(name, lineno, "reception frame must follow release frame");
      }
      if (*thrower == *receiver) schema_error(name, lineno, "pass to self");
      PassEvent pass{*release, *reception, static_cast<PlayerId>(*thrower),
                     static_cast<PlayerId>(*receiver), {*rx, *ry}};
      if (!out.passes.empty() && pass.release_frame < out.passes.back().reception_frame) {
        throw Error(ErrorKind::NonChronological,
                    where(name, lineno) + ": pass released at frame " +
                        std::to_string(pass.release_frame) + " before the previous reception");
      }
      out.passes.push_back(pass);
    } else {
      schema_error(name, lineno, "unknown row kind `" + std::string(kind) + "`");
    }
  }
  if (!have_outcome) schema_error(name, lineno, "missing outcome row");
  return out;
}

EventsFile parse_events_csv(const std::string& path) {
  auto in = open_input(path);
  return parse_events_csv(in, path);
}

void write_events_csv(std::ostream& out, const SetRecord& set) {
  for (const auto& p : set.passes) {
    out << "pass," << p.release_frame << ',' << p.reception_frame << ',' << p.thrower_id << ','
        << p.receiver_id << ',' << text::shortest(p.reception_point.x) << ','
        << text::shortest(p.reception_point.y) << '\n';
  }
  out << "outcome," << (set.outcome == Outcome::Score ? "score" : "turnover") << '\n';
}

namespace {

template <typename Get, typename Set>
void differentiate(std::vector<Frame>& frames, double fps, int window, Get get, Set set) {
  const std::size_t n = frames.size();
  std::vector<Vec2> raw(n);
  for (std::size_t t = 0; t < n; ++t) {
    Point2D a, b;
    double scale = fps;
    if (t == 0) {
      a = get(frames[0]);
      b = get(frames[1]);
    } else if (t == n - 1) {
      a = get(frames[n - 2]);
      b = get(frames[n - 1]);
    } else {
      a = get(frames[t - 1]);
      b = get(frames[t + 1]);
      scale = fps / 2.0;
    }
    raw[t] = {(b.x - a.x) * scale, (b.y - a.y) * scale};
  }
  const std::size_t half = static_cast<std::size_t>(window / 2);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= half ? t - half : 0;
    const std::size_t hi = std::min(n - 1, t + half);
    Vec2 sum;
    for (std::size_t k = lo; k <= hi; ++k) {
      sum.x += raw[k].x;
      sum.y += raw[k].y;
    }
    const double count = static_cast<double>(hi - lo + 1);
    set(frames[t], Vec2{sum.x / count, sum.y / count});
  }
}

}  // namespace

std::vector<Frame> estimate_velocities(std::span<const Frame> frames, double fps, int window,
                                       double max_speed) {
  if (frames.size() < 2) {
    throw Error(ErrorKind::TooFewFrames,
                "velocity estimation needs 2 frames, got " + std::to_string(frames.size()));
  }
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorKind::Config, "velocity window must be a positive odd integer");
  }
  std::vector<Frame> out(frames.begin(), frames.end());
  const std::size_t nplayers = out.front().players.size();
  for (const auto& f : out) {
    if (f.players.size() != nplayers) {
      throw Error(ErrorKind::MissingEntity, "frame " + std::to_string(f.index) +
                                                " does not carry the same players");
    }
  }
  const double limit = 1.5 * max_speed;
  for (std::size_t i = 0; i < nplayers; ++i) {
    differentiate(
        out, fps, window, [i](const Frame& f) { return f.players[i].position; },
        [i, limit](Frame& f, Vec2 v) {
          const double speed = v.norm();
          if (speed > limit) v = v * (limit / speed);
          f.players[i].velocity = v;
        });
  }
  differentiate(
      out, fps, window, [](const Frame& f) { return f.disc.position; },
      [](Frame& f, Vec2 v) { f.disc.velocity = v; });
  return out;
}

std::optional<PlayerId> identify_disc_holder(const Frame& frame, const ModelParams& params) {
  if (frame.disc.velocity.norm() > params.hold_speed) return std::nullopt;
  std::optional<PlayerId> best;
  double best_dist = 0.0;
  for (const auto& p : frame.players) {
    if (p.team != Team::Offense) continue;
    const double d = distance(p.position, frame.disc.position);
    if (d > params.hold_radius) continue;
    if (!best || d < best_dist || (d == best_dist && p.id < *best)) {
      best = p.id;
      best_dist = d;
    }
  }
  return best;
}

std::vector<PassEvent> detect_passes(std::span<const std::optional<PlayerId>> holders,
                                     std::span<const Frame> frames) {
  std::vector<PassEvent> out;
  std::optional<PlayerId> last;
  std::size_t last_frame = 0;
  for (std::size_t t = 0; t < holders.size(); ++t) {
    if (!holders[t]) continue;
    const PlayerId h = *holders[t];
    if (last && h != *last && t > last_frame + 1) {
      const PlayerState* receiver = frames[t].find(h);
      out.push_back({frames[last_frame].index, frames[t].index, *last, h,
                     receiver ? receiver->position : frames[t].disc.position});
    }
    last = h;
    last_frame = t;
  }
  return out;
}

std::vector<PassEvent> detect_passes(const SetRecord& set, const ModelParams& params) {
  std::vector<std::optional<PlayerId>> holders;
  holders.reserve(set.frames.size());
  for (const auto& f : set.frames) holders.push_back(identify_disc_holder(f, params));
  return detect_passes(holders, set.frames);
}

const char* to_string(PassRank rank) {
  switch (rank) {
    case PassRank::Last: return "Last";
    case PassRank::SecondLast: return "Second last";
    case PassRank::ThirdLast: return "Third last";
  }
  return "?";
}

const char* to_string(Outcome outcome) { return outcome == Outcome::Score ? "Score" : "Turnover"; }

std::vector<RankedPass> last_n_passes(const SetRecord& set, std::size_t n) {
  if (set.passes.empty()) throw Error(ErrorKind::NoPasses, "set " + set.set_id + " has no passes");
  static constexpr PassRank ranks[] = {PassRank::Last, PassRank::SecondLast, PassRank::ThirdLast};
  const std::size_t count = std::min({n, set.passes.size(), std::size(ranks)});
  std::vector<RankedPass> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({set.passes[set.passes.size() - 1 - k], ranks[k]});
  }
  return out;
}

std::vector<PlayerId> resolve_holders(const SetRecord& set, const ModelParams& params) {
  const std::size_t n = set.frames.size();
  std::vector<std::optional<PlayerId>> pinned(n);
  for (const auto& p : set.passes) {
    for (auto t = p.release_frame; t < p.reception_frame && t < static_cast<std::int64_t>(n); ++t) {
      pinned[static_cast<std::size_t>(t)] = p.thrower_id;
    }
    if (p.reception_frame < static_cast<std::int64_t>(n)) {
      pinned[static_cast<std::size_t>(p.reception_frame)] = p.receiver_id;
    }
  }
  std::vector<std::optional<PlayerId>> resolved(n);
  std::optional<PlayerId> carry;
  for (std::size_t t = 0; t < n; ++t) {
    if (pinned[t]) {
      resolved[t] = pinned[t];
    } else if (auto h = identify_disc_holder(set.frames[t], params)) {
      resolved[t] = h;
    } else {
      resolved[t] = carry;
    }
    if (resolved[t]) carry = resolved[t];
  }
  if (!carry) {
    throw Error(ErrorKind::NoHolderEver, "set " + set.set_id + ": the disc is never held");
  }
  const auto first = std::find_if(resolved.begin(), resolved.end(),
                                  [](const auto& h) { return h.has_value(); });
  std::vector<PlayerId> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = resolved[t] ? *resolved[t] : **first;
  return out;
}

void validate_set(const SetRecord& set) {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::SchemaError, "set " + set.set_id + ": " + what);
  };
  if (set.frames.empty()) fail("no frames");
  if (!(set.fps > 0.0)) fail("fps must be positive");
  std::vector<std::pair<PlayerId, Team>> roster;
  for (const auto& p : set.frames.front().players) roster.emplace_back(p.id, p.team);
  for (std::size_t t = 0; t < set.frames.size(); ++t) {
    const auto& f = set.frames[t];
    if (f.index != static_cast<std::int64_t>(t)) {
      throw Error(ErrorKind::NonContiguousFrames,
                  "set " + set.set_id + ": frame " + std::to_string(t) + " has index " +
                      std::to_string(f.index));
    }
    if (f.players.size() != roster.size()) fail("frame " + std::to_string(t) + " changes roster");
    for (std::size_t i = 0; i < roster.size(); ++i) {
      if (f.players[i].id != roster[i].first || f.players[i].team != roster[i].second) {
        fail("frame " + std::to_string(t) + " changes roster");
      }
    }
  }
  const auto offense = [&](PlayerId id) {
    return std::any_of(roster.begin(), roster.end(), [&](const auto& r) {
      return r.first == id && r.second == Team::Offense;
    });
  };
  const auto nframes = static_cast<std::int64_t>(set.frames.size());
  for (std::size_t i = 0; i < set.passes.size(); ++i) {
    const auto& p = set.passes[i];
    const std::string label = "pass " + std::to_string(i);
    if (p.release_frame < 0 || p.reception_frame >= nframes) fail(label + " outside the frame range");
    if (p.reception_frame <= p.release_frame) fail(label + " is received before it is released");
    if (p.thrower_id == p.receiver_id) fail(label + " is a pass to self");
    if (!offense(p.thrower_id) || !offense(p.receiver_id)) {
      fail(label + " involves a player who is not on offense");
    }
    if (i > 0 && p.release_frame < set.passes[i - 1].reception_frame) {
      throw Error(ErrorKind::NonChronological, "set " + set.set_id + ": " + label);
    }
  }
}

void save_set(const std::string& dir, const SetRecord& set) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto open = [&](const char* file) {
    std::ofstream out(fs::path(dir) / file, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (fs::path(dir) / file).string());
    return out;
  };
  {
    auto out = open("tracking.csv");
    write_tracking_csv(out, set.frames);
  }
  {
    auto out = open("events.csv");
    write_events_csv(out, set);
  }
  auto out = open("set.cfg");
  out << "set_id = " << set.set_id << "\nfps = " << text::shortest(set.fps) << '\n';
}

SetRecord load_set(const std::string& dir) {
  namespace fs = std::filesystem;
  SetRecord set;
  set.set_id = fs::path(dir).filename().string();
  if (set.set_id.empty()) set.set_id = fs::path(dir).parent_path().filename().string();
  const auto cfg_path = (fs::path(dir) / "set.cfg").string();
  if (fs::exists(cfg_path)) {
    auto in = open_input(cfg_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto trimmed = text::trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string_view::npos) schema_error(cfg_path, lineno, "expected key = value");
      const auto key = text::trim(trimmed.substr(0, eq));
      const auto value = text::trim(trimmed.substr(eq + 1));
      if (key == "set_id") {
        set.set_id = std::string(value);
      } else if (key == "fps") {
        const auto fps = text::parse_double(value);
        if (!fps || *fps <= 0.0) schema_error(cfg_path, lineno, "bad fps");
        set.fps = *fps;
      } else {
        schema_error(cfg_path, lineno, "unknown key `" + std::string(key) + "`");
      }
    }
  }
  set.frames = parse_tracking_csv((fs::path(dir) / "tracking.csv").string(), set.fps);
  auto events = parse_events_csv((fs::path(dir) / "events.csv").string());
  set.passes = std::move(events.passes);
  set.outcome = events.outcome;
  validate_set(set);
  return set;
}

}  // namespace uso
