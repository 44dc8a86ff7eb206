#pragma once

#include <stdexcept>

namespace qumeas {

// A computed probability left physical bounds by more than roundoff.
// Mapped to exit code 3 by the CLI.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad config file or flag value. Mapped to exit code 2 by the CLI.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A scan did not resolve enough structure for the requested estimate
// (e.g. a boundary with fewer than 3 oscillation cycles).
class insufficient_resolution_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qumeas
