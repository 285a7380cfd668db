#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stiefel {

enum class ErrorKind {
  DegeneratePair,
  AntipodalPair,
  NotClosed,
  NotNormalized,
  ZeroEdge,
  Degenerate,
  OnBoundary,
  SectionSingular,
  FrameInvalid,
  DegenerateProjection,
  DegeneratePlanes,
  TooLarge,
  SamplingFailure,
  InvalidDocument,
  InvalidArgument,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI)
// can map it to a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stiefel
