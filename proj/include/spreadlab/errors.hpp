#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Box, wraparound and placement guards. The CLI maps these to exit code 3.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroProjection : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

// A bounded-below system showed a zero set with interior. Never expected.
class DichotomyViolation : public Error {
 public:
  using Error::Error;
};

class SpecTooWide : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class TimeTooLarge : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class RegionNotSpacelike : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class RadiusOutOfBox : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class TailHypothesisViolated : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class RegionOutOfBox : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class GridTooCoarse : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

}  // namespace spreadlab
