#pragma once

#include <stdexcept>
#include <string>

namespace frameforge {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 when they escape from input handling.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotInjective : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DependentGroup : public Error {
 public:
  explicit DependentGroup(std::size_t group)
      : Error("component sequences of group " + std::to_string(group) +
              " are linearly dependent"),
        group_(group) {}
  std::size_t group() const noexcept { return group_; }

 private:
  std::size_t group_;
};

class WrongRank : public Error {
 public:
  using Error::Error;
};

class PairingNotOne : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NotAnInverse : public Error {
 public:
  using Error::Error;
};

class BadNormalization : public Error {
 public:
  using Error::Error;
};

class NonDivisorLattice : public Error {
 public:
  using Error::Error;
};

class BadRefinement : public Error {
 public:
  using Error::Error;
};

class DependentModulates : public Error {
 public:
  explicit DependentModulates(std::size_t factor)
      : Error("time-frequency shifts of window " + std::to_string(factor) +
              " are linearly dependent"),
        factor_(factor) {}
  std::size_t factor() const noexcept { return factor_; }

 private:
  std::size_t factor_;
};

class ConditionViolated : public Error {
 public:
  using Error::Error;
};

class ZeroShift : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace frameforge
