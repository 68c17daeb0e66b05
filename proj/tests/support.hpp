#pragma once

#include <optional>

#include "xigap/error.hpp"

// Kind of the xigap::Error thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<xigap::ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const xigap::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
