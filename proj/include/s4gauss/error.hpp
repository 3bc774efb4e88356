#pragma once

#include <stdexcept>
#include <string>

namespace s4g {

enum class ErrorKind {
  NonSkewInput,
  DegenerateFrame,
  OffSphere,
  OutOfDomain,
  DegenerateImmersion,
  NotConformal,
  FrameObstruction,
  BadLambda,
  ConfigError,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace s4g
