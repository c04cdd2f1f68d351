#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "packdens/scalar.hpp"

namespace packdens {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CollinearTriangle : public GeometryError {
 public:
  CollinearTriangle() : GeometryError("triangle vertices are collinear") {}
};

class AllCollinear : public GeometryError {
 public:
  AllCollinear() : GeometryError("all points are collinear; no Delaunay triangulation exists") {}
};

class TooFewPoints : public GeometryError {
 public:
  explicit TooFewPoints(std::size_t count)
      : GeometryError("need at least 3 points, got " + std::to_string(count)), count(count) {}
  std::size_t count;
};

class DuplicatePoint : public GeometryError {
 public:
  DuplicatePoint(std::size_t first, std::size_t second)
      : GeometryError("points " + std::to_string(first) + " and " + std::to_string(second) +
                      " coincide"),
        first(first),
        second(second) {}
  std::size_t first;
  std::size_t second;
};

// The triangulation handed to a verifier is not a valid triangulation.
class StructureError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DegenerateTriangle : public GeometryError {
 public:
  explicit DegenerateTriangle(std::size_t index)
      : GeometryError("triangle " + std::to_string(index) + " has zero area"), index(index) {}
  std::size_t index;
};

class EmptyTriangulation : public GeometryError {
 public:
  EmptyTriangulation() : GeometryError("no triangles to aggregate") {}
};

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidWindow : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

class PairTooClose : public ConfigurationError {
 public:
  PairTooClose(std::size_t first, std::size_t second, Scalar distance_squared)
      : ConfigurationError("points " + std::to_string(first) + " and " + std::to_string(second) +
                           " are too close (distance^2 = " + to_string(distance_squared) +
                           " < 4)"),
        first(first),
        second(second),
        distance_squared(std::move(distance_squared)) {}
  std::size_t first;
  std::size_t second;
  Scalar distance_squared;
};

class OutOfWindow : public ConfigurationError {
 public:
  explicit OutOfWindow(std::size_t index)
      : ConfigurationError("point " + std::to_string(index) + " lies outside the window"),
        index(index) {}
  std::size_t index;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PerturbationTooLarge : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

}  // namespace packdens
