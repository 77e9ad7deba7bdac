#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "params.hpp"
#include "types.hpp"

namespace uso {

// Tracking CSV. Accepted headers:
//   frame,id,team,x,y            court coordinates
//   frame,id,team,x,y,vx,vy      court coordinates with velocities (canonical output)
//   frame,id,team,x1,y1,x2,y2    pixel bounding boxes; needs a homography
// team is O, D or disc (disc rows use id -1).
std::vector<Frame> parse_tracking_csv(std::istream& in, const std::string& name, double fps,
                                      const Homography* homography = nullptr);
std::vector<Frame> parse_tracking_csv(const std::string& path, double fps,
                                      const Homography* homography = nullptr);

void write_tracking_csv(std::ostream& out, std::span<const Frame> frames);

struct EventsFile {
  std::vector<PassEvent> passes;
  Outcome outcome = Outcome::Score;
};

// Rows: `pass,release,reception,thrower,receiver,rx,ry` and one `outcome,score|turnover`.
EventsFile parse_events_csv(std::istream& in, const std::string& name);
EventsFile parse_events_csv(const std::string& path);

void write_events_csv(std::ostream& out, const SetRecord& set);

// Central difference (one-sided at the ends), centered moving average over an
// odd `window`, then magnitude clamp to 1.5 * max_speed. Applies to players
// and the disc.
std::vector<Frame> estimate_velocities(std::span<const Frame> frames, double fps, int window,
                                       double max_speed);

std::optional<PlayerId> identify_disc_holder(const Frame& frame, const ModelParams& params);

// Pass detection from a per-frame holder sequence: A, one or more empty frames,
// then B != A.
std::vector<PassEvent> detect_passes(std::span<const std::optional<PlayerId>> holders,
                                     std::span<const Frame> frames);
std::vector<PassEvent> detect_passes(const SetRecord& set, const ModelParams& params);

enum class PassRank { Last, SecondLast, ThirdLast };

const char* to_string(PassRank rank);
const char* to_string(Outcome outcome);

struct RankedPass {
  PassEvent pass;
  PassRank rank;
};

// Final min(n, count) passes, Last first.
std::vector<RankedPass> last_n_passes(const SetRecord& set, std::size_t n = 3);

// Holder used for exclusion and weighting in every frame. Detected holders
// win; frames without one carry the previous holder, leading frames take the
// first holder seen. Frames inside a pass flight [release, reception) are
// pinned to the thrower, the reception frame to the receiver.
std::vector<PlayerId> resolve_holders(const SetRecord& set, const ModelParams& params);

// Checks frame contiguity, id sets, and pass invariants against the frames.
void validate_set(const SetRecord& set);

// A set on disk is a directory holding tracking.csv, events.csv and set.cfg.
void save_set(const std::string& dir, const SetRecord& set);
SetRecord load_set(const std::string& dir);

}  // namespace uso
