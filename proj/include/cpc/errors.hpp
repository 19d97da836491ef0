#pragma once

#include <stdexcept>
#include <string>

namespace cpc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CPC_DEFINE_ERROR(NAME)                    \
  struct NAME : Error {                           \
    explicit NAME(const std::string& msg = #NAME) \
        : Error(std::string(#NAME ": ") + msg) {} \
  }

CPC_DEFINE_ERROR(DegenerateTangentPlane);
CPC_DEFINE_ERROR(FlatSpaceHasNoPolar);
CPC_DEFINE_ERROR(FrameSignatureUnavailable);
CPC_DEFINE_ERROR(RegularityLoss);
CPC_DEFINE_ERROR(NotInLieAlgebra);
CPC_DEFINE_ERROR(WrongClassification);
CPC_DEFINE_ERROR(FrameSignatureMismatch);
CPC_DEFINE_ERROR(InvalidParabolicData);
CPC_DEFINE_ERROR(ParabolicHasNoDistance);
CPC_DEFINE_ERROR(VanishingPrincipalCurvature);
CPC_DEFINE_ERROR(NullNormal);
CPC_DEFINE_ERROR(OutOfDomain);
CPC_DEFINE_ERROR(ImmersionViolation);
CPC_DEFINE_ERROR(UnsupportedChart);
CPC_DEFINE_ERROR(InvalidScene);
CPC_DEFINE_ERROR(NumericalBreakdown);

#undef CPC_DEFINE_ERROR

}  // namespace cpc
