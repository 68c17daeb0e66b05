#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xigap {

enum class ErrorKind {
  domain,
  capacity,
  precision,
  accuracy,
  pole_proximity,
  conditioning,
  degenerate,
  unsupported,
  too_few_zeros,
  window_mismatch,
  search_failure,
  validation,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::capacity: return "capacity error";
    case ErrorKind::precision: return "precision error";
    case ErrorKind::accuracy: return "accuracy error";
    case ErrorKind::pole_proximity: return "pole-proximity error";
    case ErrorKind::conditioning: return "conditioning error";
    case ErrorKind::degenerate: return "degenerate error";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::too_few_zeros: return "too few zeros";
    case ErrorKind::window_mismatch: return "window mismatch";
    case ErrorKind::search_failure: return "search failure";
    case ErrorKind::validation: return "validation error";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace xigap
