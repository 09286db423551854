#pragma once

#include <stdexcept>
#include <string>

namespace rcgcat {

// Bad command line or option combination; CLI exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data; CLI exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; CLI exit code 4.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require_invariant(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace rcgcat
