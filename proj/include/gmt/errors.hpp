#pragma once

#include <stdexcept>
#include <string>

namespace gmt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An enumeration or grid would exceed its configured size cap.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gmt
