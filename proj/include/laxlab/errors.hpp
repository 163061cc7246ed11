#pragma once

#include <stdexcept>
#include <string>

#include "laxlab/types.hpp"

namespace laxlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Integration blew past the state-norm threshold before the path endpoint.
class BlowUpError : public Error {
 public:
  BlowUpError(Complex t_estimate, std::string msg)
      : Error(std::move(msg)), t_estimate(t_estimate) {}
  Complex t_estimate;
};

// Adaptive step underflowed without any norm growth.
class StepCollapse : public Error {
 public:
  using Error::Error;
};

class NoBlowUp : public Error {
 public:
  using Error::Error;
};

class SingularFactor : public Error {
 public:
  using Error::Error;
};

class DegenerateModulus : public Error {
 public:
  using Error::Error;
};

class NomeOutOfRange : public Error {
 public:
  using Error::Error;
};

class PathThroughBranchPoint : public Error {
 public:
  using Error::Error;
};

class BranchPointInput : public Error {
 public:
  using Error::Error;
};

class DegenerateCurve : public Error {
 public:
  using Error::Error;
};

class ZeroZ0 : public Error {
 public:
  using Error::Error;
};

class AliasRisk : public Error {
 public:
  using Error::Error;
};

class NotSingular : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace laxlab
