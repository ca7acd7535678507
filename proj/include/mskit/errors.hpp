#pragma once

#include <stdexcept>
#include <string>

namespace mskit {

// Input outside the mathematical domain of an operation (non-finite eta, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Malformed argument (odd kmax, alpha <= 0, empty range, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition that is checked at runtime.
// `measured` carries the offending quantity (e.g. |B| at a claimed zero).
class ContractError : public std::logic_error {
public:
  ContractError(const std::string& what, double measured)
      : std::logic_error(what), measured_(measured) {}
  double measured() const noexcept { return measured_; }

private:
  double measured_;
};

// Something that must not happen on a correct build (bracket expansion
// failed, oracle disagreement, ...).
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A reference computation failed to converge or produced an impossible value.
class OracleFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace mskit
