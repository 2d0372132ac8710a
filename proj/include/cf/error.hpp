#pragma once

#include <stdexcept>
#include <string>

#include "cf/integer.hpp"

namespace cf {

// Malformed or inconsistent input.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Well-formed input that falls outside what can be computed within bounds.
class Refusal : public std::runtime_error {
 public:
  Refusal(std::string kind, const std::string& message, Integer estimate = -1)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)), estimate_(estimate) {}
  const std::string& kind() const { return kind_; }
  // Estimated work, or -1 when not applicable.
  const Integer& estimate() const { return estimate_; }

 private:
  std::string kind_;
  Integer estimate_;
};

}  // namespace cf
