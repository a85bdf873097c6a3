#pragma once

#include <stdexcept>
#include <string>

namespace digisurf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on a graph operation (unknown point, missing edge, ...).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// An exponential search or enumeration exceeded its documented size cutoff.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Input is not a digital manifold of the required dimension.
class ManifoldError : public Error {
 public:
  using Error::Error;
};

/// Malformed cover, polygon or quotient coordinate.
class CoverError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace digisurf
