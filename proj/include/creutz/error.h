#pragma once

#include <stdexcept>

namespace creutz {

/// Raised when an input is outside the physical regime an analysis covers
/// (gap never closes, target flux not critical, no revival found, ...).
///
/// Malformed inputs (negative sizes, negative times) throw
/// std::invalid_argument instead.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace creutz
