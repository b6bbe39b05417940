#pragma once

#include <stdexcept>
#include <string>

namespace kwgraph {

// Error categories map onto CLI exit codes: config -> 1, data -> 2, io -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration (bad flag values, violated preconditions).
struct ConfigError : Error {
  using Error::Error;
};

// Input data that cannot be accepted (malformed records, unknown words, duplicates).
struct DataError : Error {
  using Error::Error;
};

// Filesystem and stream failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace kwgraph
