#pragma once

#include <stdexcept>
#include <string>

namespace gsc {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define GSC_DECLARE_ERROR(Name)                                              \
  class Name : public Error {                                                \
  public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}     \
    const char* kind() const noexcept override { return #Name; }             \
  };

GSC_DECLARE_ERROR(OrderCapExceeded)
GSC_DECLARE_ERROR(InvalidGenerators)
GSC_DECLARE_ERROR(InvalidSpec)
GSC_DECLARE_ERROR(NotAKnitProduct)
GSC_DECLARE_ERROR(NotAHomomorphism)
GSC_DECLARE_ERROR(NotBijective)
GSC_DECLARE_ERROR(CapExceeded)
GSC_DECLARE_ERROR(NumericalDegeneracy)
GSC_DECLARE_ERROR(TooSmall)
GSC_DECLARE_ERROR(NotFluxFree)
GSC_DECLARE_ERROR(FluxPresentWarning)
GSC_DECLARE_ERROR(AlphabetMismatch)
GSC_DECLARE_ERROR(ZeroWeight)
GSC_DECLARE_ERROR(MaxAttemptsExceeded)
GSC_DECLARE_ERROR(BoundaryBlocked)
GSC_DECLARE_ERROR(UnrepairableFluxes)
GSC_DECLARE_ERROR(UnsupportedBasis)
GSC_DECLARE_ERROR(OutOfRange)
GSC_DECLARE_ERROR(ScriptError)

#undef GSC_DECLARE_ERROR

}  // namespace gsc
