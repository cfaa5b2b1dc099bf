#include "rvp/error.hpp"

namespace rvp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::NumericFailure: return "numeric_failure";
    case ErrorKind::Generation: return "generation";
  }
  return "unknown";
}

}  // namespace rvp
