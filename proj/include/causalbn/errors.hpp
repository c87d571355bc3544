#pragma once

#include <stdexcept>
#include <string>

namespace causalbn {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CAUSALBN_DEFINE_ERROR(NAME)                          \
  class NAME : public Error {                                \
   public:                                                   \
    explicit NAME(const std::string& msg) : Error(msg) {}    \
  }

// graph
CAUSALBN_DEFINE_ERROR(UnknownNodeError);
CAUSALBN_DEFINE_ERROR(CycleError);
CAUSALBN_DEFINE_ERROR(UnresolvedEdgeError);
CAUSALBN_DEFINE_ERROR(IndexError);

// bayesnet
CAUSALBN_DEFINE_ERROR(MissingColumnError);
CAUSALBN_DEFINE_ERROR(LatentWithoutDataError);
CAUSALBN_DEFINE_ERROR(NegativeAlphaError);
CAUSALBN_DEFINE_ERROR(ZeroFrequencyError);
CAUSALBN_DEFINE_ERROR(IncompleteAssignmentError);
CAUSALBN_DEFINE_ERROR(ZeroEvidenceProbabilityError);

// discovery / data
CAUSALBN_DEFINE_ERROR(EmptyDatasetError);
CAUSALBN_DEFINE_ERROR(SchemaMismatchError);
CAUSALBN_DEFINE_ERROR(EmptyFileError);
CAUSALBN_DEFINE_ERROR(UnmappedStateError);
CAUSALBN_DEFINE_ERROR(MissingWeightsError);
CAUSALBN_DEFINE_ERROR(NonMonotonicEdgesError);
CAUSALBN_DEFINE_ERROR(CardinalityError);

// effects
CAUSALBN_DEFINE_ERROR(UnsupportedStratumError);
CAUSALBN_DEFINE_ERROR(ZeroDenominatorError);
CAUSALBN_DEFINE_ERROR(EmptyGroupError);
CAUSALBN_DEFINE_ERROR(ZeroMassGroupError);

// refutation
CAUSALBN_DEFINE_ERROR(SubsampleTooSmallError);
CAUSALBN_DEFINE_ERROR(EmptySampleError);

// cli / pipeline
CAUSALBN_DEFINE_ERROR(ConfigError);

#undef CAUSALBN_DEFINE_ERROR

}  // namespace causalbn
