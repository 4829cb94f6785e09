#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bubblescope/vec.hpp"

namespace bubblescope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point handed to a retraction lies outside the tubular neighbourhood.
class TubeViolation : public Error {
 public:
  TubeViolation(const Point& y, double dist, double tube);
  Point point;
  double distance_to_manifold;
};

/// The discretisation cannot resolve the requested quantity.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Retraction failed on the boundary of a merged ball.
class DecompositionFailure : public Error {
 public:
  DecompositionFailure(const Point& where, const std::string& detail);
  Point point;
};

/// An image simplex is too degenerate to carry a signed volume.
class DegenerateSimplex : public Error {
 public:
  DegenerateSimplex(std::size_t simplex, const std::string& detail);
  std::size_t simplex;
};

}  // namespace bubblescope
