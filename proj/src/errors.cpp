#include "savskit/errors.hpp"

namespace savskit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage:
      return "usage";
    case ErrorKind::config:
      return "config";
    case ErrorKind::io:
      return "io";
    case ErrorKind::data:
      return "data";
    case ErrorKind::numerical:
      return "numerical";
  }
  return "unknown";
}

}  // namespace savskit
