#pragma once

#include <stdexcept>
#include <string>

namespace picdesc {

// Every library failure carries a stable kind tag; the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PICDESC_ERROR(Name)                                      \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& w) : Error(#Name, w) {}     \
  };

PICDESC_ERROR(DimensionMismatch)
PICDESC_ERROR(NotAComplex)
PICDESC_ERROR(NotPrime)
PICDESC_ERROR(BudgetExceeded)
PICDESC_ERROR(NotNormal)
PICDESC_ERROR(NotCyclic)
PICDESC_ERROR(InvalidAction)
PICDESC_ERROR(TruncationTooSmall)
PICDESC_ERROR(WindowExceedsTruncation)
PICDESC_ERROR(NotFree)
PICDESC_ERROR(HypothesisFailed)
PICDESC_ERROR(IdentityViolated)
PICDESC_ERROR(WindowUnbounded)
PICDESC_ERROR(NonConfluentRelations)
PICDESC_ERROR(WindowEmpty)
PICDESC_ERROR(UnresolvableProduct)
PICDESC_ERROR(RuleNotClosed)
PICDESC_ERROR(NotCharTwo)
PICDESC_ERROR(MissingRow)
PICDESC_ERROR(BoundMismatch)
PICDESC_ERROR(ZeroShift)
PICDESC_ERROR(UnknownGlyph)
PICDESC_ERROR(DataError)

#undef PICDESC_ERROR

}  // namespace picdesc
