#pragma once

#include <stdexcept>
#include <string>

namespace relcalc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unparsable files, bad references, invalid arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or term cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A time budget ran out before the computation finished.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace relcalc
