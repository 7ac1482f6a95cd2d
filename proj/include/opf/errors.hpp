#pragma once

#include <stdexcept>
#include <string>

namespace opf {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input. CLI exit code 1.
struct ParseError : Error {
  using Error::Error;
};

// A composition or element breaches a truncation bound. CLI exit code 2.
struct TruncationError : Error {
  using Error::Error;
};

}  // namespace opf
