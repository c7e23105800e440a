#pragma once

#include <stdexcept>
#include <string>

namespace trilink {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two points of a configuration coincide (within the distinctness tolerance).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

/// Malformed link document. `where()` names the location (byte offset or JSON path).
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error("parse error at " + where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Two link components (or two sampled curves) come closer than the configured epsilon.
class DisjointnessViolation : public Error {
 public:
  DisjointnessViolation(const std::string& what, double param_a, double param_b,
                        double distance)
      : Error(what), param_a_(param_a), param_b_(param_b), distance_(distance) {}
  double param_a() const noexcept { return param_a_; }
  double param_b() const noexcept { return param_b_; }
  double distance() const noexcept { return distance_; }

 private:
  double param_a_;
  double param_b_;
  double distance_;
};

class NotARotation : public Error {
 public:
  using Error::Error;
};

/// The link's pairwise linking numbers are not all zero, so the triple
/// linking integrals do not apply.
class NotNullHomologous : public Error {
 public:
  using Error::Error;
};

/// Gauss integral and subtorus degree disagree for some pair.
class CorrespondenceMismatch : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class NonPowerOfTwo : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace trilink
