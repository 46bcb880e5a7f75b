#pragma once

#include <stdexcept>
#include <string>

namespace wpflow {

// Evaluation outside the region where a formula or field is defined.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The flowing curve reached the symmetry axis away from its poles.
class AxisCollisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularQuotientError : public std::runtime_error {
 public:
  SingularQuotientError(const std::string& what, int index)
      : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

class ReparametrizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpflow
