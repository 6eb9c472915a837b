#pragma once

#include <stdexcept>

namespace lop {

// Instance text that does not follow the LOLIB convention.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid solver or generator configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A size guard was exceeded (e.g. exhaustive solve above its n cap).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lop
