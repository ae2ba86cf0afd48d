#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moframe {

/// Base class of all toolkit failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Carries the byte offset of the failure and a
/// short hint describing what the parser expected there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Identifier other than the parameter, pi, or a recognized function.
class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t offset, std::string name)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        offset_(offset),
        name_(std::move(name)) {}

  std::size_t offset() const { return offset_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// Evaluation left the real domain (sqrt of a negative, division by zero,
/// fractional power of a negative base).
class DomainError : public Error {
 public:
  DomainError(std::string node, double argument)
      : Error("domain error in '" + node + "' at argument " + std::to_string(argument)),
        node_(std::move(node)),
        argument_(argument) {}

  const std::string& node() const { return node_; }
  double argument() const { return argument_; }

 private:
  std::string node_;
  double argument_;
};

/// Jet inversion attempted on a jet whose first derivative is numerically zero.
class SingularJet : public Error {
 public:
  explicit SingularJet(double d1) : Error("jet not invertible: |d1| = " + std::to_string(d1)) {}
};

/// Curvature at or below tolerance where an operation requires kappa > 0.
class CurvatureVanishes : public Error {
 public:
  explicit CurvatureVanishes(double s)
      : Error("curvature vanishes at parameter " + std::to_string(s)), s_(s) {}

  double parameter() const { return s_; }

 private:
  double s_;
};

/// Adaptive quadrature exhausted its refinement budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Root finding failed to converge.
class RootFindFailure : public Error {
 public:
  using Error::Error;
};

/// A computation requiring constant curvature was handed a curve whose
/// curvature fails its constancy check.
class NonConstantCurvature : public Error {
 public:
  using Error::Error;
};

/// Closest-point correspondence search did not converge.
class CorrespondenceFailure : public Error {
 public:
  using Error::Error;
};

/// Catalog lookup with an unrecognized name or unusable parameters.
class UnknownCurve : public Error {
 public:
  explicit UnknownCurve(const std::string& name) : Error("unknown curve '" + name + "'") {}
};

}  // namespace moframe
