#pragma once

#include <stdexcept>
#include <string>

namespace qv {

// Every validation failure in the library throws this type with a message
// that names the offending object, so the CLI can map it to exit code 1/2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void check(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

}  // namespace qv
