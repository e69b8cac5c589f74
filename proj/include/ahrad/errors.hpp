#pragma once
#include <stdexcept>
#include <string>

namespace ahrad {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define AHRAD_DEFINE_ERROR(Name)                                   \
  struct Name : Error {                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

AHRAD_DEFINE_ERROR(NonPositiveWarp);
AHRAD_DEFINE_ERROR(BadNormalization);
AHRAD_DEFINE_ERROR(QuadratureUnresolved);
AHRAD_DEFINE_ERROR(DifferencingUnresolved);
AHRAD_DEFINE_ERROR(RootBracketingFailed);
AHRAD_DEFINE_ERROR(SupportTouchesCorner);
AHRAD_DEFINE_ERROR(NonFiniteField);
AHRAD_DEFINE_ERROR(ParityViolation);
AHRAD_DEFINE_ERROR(OutsideTriangle);
AHRAD_DEFINE_ERROR(WindowExceedsTriangle);
AHRAD_DEFINE_ERROR(NotInRange);
AHRAD_DEFINE_ERROR(TailNotDecayed);
AHRAD_DEFINE_ERROR(ProbeDeficient);
AHRAD_DEFINE_ERROR(FitIllConditioned);
AHRAD_DEFINE_ERROR(FitResidualHigh);
AHRAD_DEFINE_ERROR(WindowTooShort);
AHRAD_DEFINE_ERROR(InconsistentProbes);
AHRAD_DEFINE_ERROR(ConfigInvalid);
AHRAD_DEFINE_ERROR(PreconditionViolated);

#undef AHRAD_DEFINE_ERROR

}  // namespace ahrad
