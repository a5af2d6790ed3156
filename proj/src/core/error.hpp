#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace entcorr {

// Every failure this library raises carries one of these categories so the
// C API can map exceptions onto stable status codes.
enum class ErrorCode {
  invalid_argument,
  parse,
  conditioning,
  not_converged,
  unsupported,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
inline void format_into(std::ostringstream&) {}
template <typename T, typename... Rest>
void format_into(std::ostringstream& os, const T& value, const Rest&... rest) {
  os << value;
  format_into(os, rest...);
}
}  // namespace detail

template <typename... Parts>
[[noreturn]] void fail(ErrorCode code, const Parts&... parts) {
  std::ostringstream os;
  os.precision(12);
  detail::format_into(os, parts...);
  throw Error(code, os.str());
}

template <typename... Parts>
void require(bool condition, ErrorCode code, const Parts&... parts) {
  if (!condition) fail(code, parts...);
}

}  // namespace entcorr
