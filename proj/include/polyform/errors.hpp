#pragma once

#include <stdexcept>
#include <string>

namespace polyform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Convex hull requested for coplanar or collinear input.
class DegenerateHull : public Error {
public:
  using Error::Error;
};

/// Two hull inputs coincide within 1e-12.
class DuplicatePoints : public Error {
public:
  using Error::Error;
};

/// An energy was evaluated on a configuration with coincident points.
class CoincidentPoints : public Error {
public:
  using Error::Error;
};

/// The configuration's constraint is not accepted by the energy model.
class ConstraintMismatch : public Error {
public:
  using Error::Error;
};

/// Operation not defined for the given model (e.g. gradient of the maximin objective).
class Unsupported : public Error {
public:
  using Error::Error;
};

/// Group order requested for a continuous group.
class InfiniteGroup : public Error {
public:
  using Error::Error;
};

/// Malformed input (bad parameters, unparsable files).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace polyform
