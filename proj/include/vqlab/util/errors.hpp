#pragma once

#include <stdexcept>
#include <string>

namespace vqlab {

#define VQLAB_ERROR(NAME)                                    \
  struct NAME : std::runtime_error {                         \
    explicit NAME(const std::string& msg)                    \
        : std::runtime_error(std::string(#NAME ": ") + msg) {} \
  }

VQLAB_ERROR(NotHermitian);
VQLAB_ERROR(NoConvergence);
VQLAB_ERROR(NonPositiveSpectrum);
VQLAB_ERROR(DimensionMismatch);
VQLAB_ERROR(BadQubitIndex);
VQLAB_ERROR(FeatureCountMismatch);
VQLAB_ERROR(ZeroVector);
VQLAB_ERROR(UnknownAnsatz);
VQLAB_ERROR(LengthMismatch);
VQLAB_ERROR(TooManyQubits);
VQLAB_ERROR(UnboundAngle);
VQLAB_ERROR(UnsupportedGate);
VQLAB_ERROR(DisconnectedDevice);
VQLAB_ERROR(BadConfig);
VQLAB_ERROR(BadK);
VQLAB_ERROR(LabelDomainMismatch);
VQLAB_ERROR(SingleClass);
VQLAB_ERROR(SubsampleWithPaperLiteral);
VQLAB_ERROR(NonPositiveEntropy);
VQLAB_ERROR(SingularKernel);
VQLAB_ERROR(InsufficientPoints);

#undef VQLAB_ERROR

}  // namespace vqlab
