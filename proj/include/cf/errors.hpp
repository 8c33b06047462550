#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cell set that fails up-closure: `cell` is a member but its coface
/// `missing_coface` is not.
class NotOpen : public Error {
 public:
  NotOpen(std::size_t cell, std::size_t missing_coface);
  std::size_t cell() const { return cell_; }
  std::size_t missing_coface() const { return missing_coface_; }

 private:
  std::size_t cell_;
  std::size_t missing_coface_;
};

/// Operands live on different arrangements.
class ArrangementMismatch : public Error {
 public:
  ArrangementMismatch() : Error("operands belong to different arrangements") {}
};

/// Raised when an internal postcondition fails. Never expected on valid input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cf
