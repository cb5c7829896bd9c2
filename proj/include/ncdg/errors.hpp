#pragma once

#include <stdexcept>
#include <string>

namespace ncdg {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define NCDG_ERROR(Name)                                              \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

NCDG_ERROR(ShapeMismatch)
NCDG_ERROR(BudgetExhausted)
NCDG_ERROR(IrrationalBase)
NCDG_ERROR(OrderMismatch)
NCDG_ERROR(OrderOutOfRange)
NCDG_ERROR(NotInvertible)
NCDG_ERROR(AsymmetricChiral)
// Chiral data for which no compatible torsion-free pair exists.
NCDG_ERROR(IncompatibleChiral)
NCDG_ERROR(InternalDisagreement)
NCDG_ERROR(SpecViolation)
NCDG_ERROR(UnsupportedForm)
NCDG_ERROR(ParseError)
NCDG_ERROR(ValidationError)
NCDG_ERROR(NonAssociative)
NCDG_ERROR(IOError)

#undef NCDG_ERROR

}  // namespace ncdg
