#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rvp {

enum class ErrorKind {
  InvalidArgument,  // precondition or invariant violated by a caller
  Validation,       // document parsed but a field violates its invariant
  Parse,            // document is not well formed
  Io,
  NumericFailure,   // non-finite state during integration
  Generation,       // scenario generator could not satisfy its constraints
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidArgument, message);
}

}  // namespace rvp
