#include "s4gauss/error.hpp"

namespace s4g {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSkewInput: return "NonSkewInput";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::OffSphere: return "OffSphere";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorKind::NotConformal: return "NotConformal";
    case ErrorKind::FrameObstruction: return "FrameObstruction";
    case ErrorKind::BadLambda: return "BadLambda";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace s4g
