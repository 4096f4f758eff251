#ifndef CRM_ERRORS_HPP
#define CRM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crm {

// Base of every numerical failure the library reports. name() is the stable
// identifier printed by the command-line front end.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept = 0;
};

#define CRM_DEFINE_ERROR(Type)                                      \
  class Type : public Error {                                       \
   public:                                                           \
    using Error::Error;                                              \
    const char* name() const noexcept override { return #Type; }     \
  };

CRM_DEFINE_ERROR(DomainError)
CRM_DEFINE_ERROR(NonConvergent)
CRM_DEFINE_ERROR(SlitTipSingularity)
CRM_DEFINE_ERROR(ExpansionDomain)
CRM_DEFINE_ERROR(StepBudgetExceeded)
CRM_DEFINE_ERROR(InsufficientAcceptance)

#undef CRM_DEFINE_ERROR

}  // namespace crm

#endif  // CRM_ERRORS_HPP
