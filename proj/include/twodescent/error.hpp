#ifndef TWODESCENT_ERROR_HPP
#define TWODESCENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace twodescent {

/// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller handed us something outside an operation's domain
/// (singular model, zero where a unit is required, composite "prime", ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The factoring routine could not split a cofactor within its budget.
/// We refuse instead of returning a possibly wrong factorization.
class UnfactoredCofactor : public Error {
 public:
  using Error::Error;
};

/// Local solver hit its depth cap. Should not happen for smooth quartics.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace twodescent

#endif  // TWODESCENT_ERROR_HPP
