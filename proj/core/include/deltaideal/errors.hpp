#pragma once

#include <stdexcept>
#include <string>

namespace deltaideal {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// A curvature-tensor symmetry family failed beyond tolerance.
struct SymmetryViolation : Error {
  SymmetryViolation(std::string family_, double deviation_)
      : Error("symmetry violation in " + family_ +
              ", max deviation " + std::to_string(deviation_)),
        family(std::move(family_)),
        deviation(deviation_) {}
  std::string family;
  double deviation;
};

struct DegeneratePlane : Error {
  using Error::Error;
};

struct RankError : Error {
  using Error::Error;
};

struct RankDeficiency : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct DegenerateFace : Error {
  DegenerateFace(int face_, double area_)
      : Error("degenerate face " + std::to_string(face_) + ", area " +
              std::to_string(area_)),
        face(face_),
        area(area_) {}
  int face;
  double area;
};

struct NonManifoldEdge : Error {
  NonManifoldEdge(int a_, int b_, int incidences_)
      : Error("edge (" + std::to_string(a_) + "," + std::to_string(b_) +
              ") has " + std::to_string(incidences_) + " face incidences"),
        a(a_),
        b(b_),
        incidences(incidences_) {}
  int a, b, incidences;
};

struct NotCentrallySymmetric : Error {
  explicit NotCentrallySymmetric(int vertex_)
      : Error("vertex " + std::to_string(vertex_) + " has no antipode"),
        vertex(vertex_) {}
  NotCentrallySymmetric(int vertex_, const std::string& what_)
      : Error(what_), vertex(vertex_) {}
  int vertex;
};

struct UnknownSpectrum : Error {
  explicit UnknownSpectrum(const std::string& name)
      : Error("no known first eigenvalue for space '" + name + "'") {}
};

struct SolverFailure : Error {
  explicit SolverFailure(long iterations_)
      : Error("eigensolver failed to converge within " +
              std::to_string(iterations_) + " iterations"),
        iterations(iterations_) {}
  long iterations;
};

/// Eigenvalue data contradicts the pullback inequality for a covering pair.
struct PullbackViolation : Error {
  using Error::Error;
};

struct MismatchedPair : Error {
  using Error::Error;
};

/// Registered data contradicts an identity it is required to satisfy.
struct ConsistencyViolation : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace deltaideal
