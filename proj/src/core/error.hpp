#pragma once

#include <stdexcept>
#include <string>

namespace uso {

// Every failure raised by the core carries one of these kinds. The C API maps
// the kind onto an exit-code class (input / compute / evaluate / config).
enum class ErrorKind {
  // field_geometry
  DegenerateConfiguration,
  TooFewPoints,
  PointAtInfinity,
  OutOfBounds,
  InsideEndzone,
  // tracking_io
  SchemaError,
  MissingEntity,
  NonContiguousFrames,
  NonChronological,
  TooFewFrames,
  NoPasses,
  Io,
  // pitch_control / uso_metric
  HolderNotFound,
  OutOfCourt,
  NoHolderEver,
  // evaluation
  InsufficientHistory,
  NoEvaluablePasses,
  // pipeline
  FrameOutOfRange,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace uso
