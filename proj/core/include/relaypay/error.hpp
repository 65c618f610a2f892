#pragma once

#include <stdexcept>
#include <string>

namespace relaypay {

/// A numeric argument outside the domain of the model (negative distance,
/// dead link, battery above capacity, payment outside its window, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A scenario file that cannot be read or tokenized. The message always
/// names the offending key path (or line number when no key is available).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed configuration whose values violate a model invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace relaypay
