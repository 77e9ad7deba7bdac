#include "error.hpp"

namespace uso {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::PointAtInfinity: return "PointAtInfinity";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::InsideEndzone: return "InsideEndzone";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::MissingEntity: return "MissingEntity";
    case ErrorKind::NonContiguousFrames: return "NonContiguousFrames";
    case ErrorKind::NonChronological: return "NonChronological";
    case ErrorKind::TooFewFrames: return "TooFewFrames";
    case ErrorKind::NoPasses: return "NoPasses";
    case ErrorKind::Io: return "Io";
    case ErrorKind::HolderNotFound: return "HolderNotFound";
    case ErrorKind::OutOfCourt: return "OutOfCourt";
    case ErrorKind::NoHolderEver: return "NoHolderEver";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::NoEvaluablePasses: return "NoEvaluablePasses";
    case ErrorKind::FrameOutOfRange: return "FrameOutOfRange";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace uso
