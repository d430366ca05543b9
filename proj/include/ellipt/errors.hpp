#pragma once

#include <stdexcept>
#include <string>

namespace ellipt {

// Base of every error raised by the engine. The concrete subclass names the
// failure; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ELLIPT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ELLIPT_DEFINE_ERROR(DivisionByZero);
ELLIPT_DEFINE_ERROR(MixedRing);
ELLIPT_DEFINE_ERROR(BadExponent);
ELLIPT_DEFINE_ERROR(NonInvertibleLeadingTerm);
ELLIPT_DEFINE_ERROR(NonNilpotentArgument);
ELLIPT_DEFINE_ERROR(NotDivisible);
ELLIPT_DEFINE_ERROR(DivergentPoint);
ELLIPT_DEFINE_ERROR(BadWeight);
ELLIPT_DEFINE_ERROR(SamplePointOutOfDomain);
ELLIPT_DEFINE_ERROR(InsufficientCoefficients);
ELLIPT_DEFINE_ERROR(UnsupportedGroup);
ELLIPT_DEFINE_ERROR(OddRankSpinBundle);
ELLIPT_DEFINE_ERROR(NonTruncatingParameter);
ELLIPT_DEFINE_ERROR(SigmaSquared);
ELLIPT_DEFINE_ERROR(MissingBundle);
ELLIPT_DEFINE_ERROR(MissingTransgressionComponent);
ELLIPT_DEFINE_ERROR(InvalidModel);
ELLIPT_DEFINE_ERROR(PathMismatch);
ELLIPT_DEFINE_ERROR(UnsplitTangent);
ELLIPT_DEFINE_ERROR(HypothesisNotMet);
ELLIPT_DEFINE_ERROR(ParseError);

#undef ELLIPT_DEFINE_ERROR

}  // namespace ellipt
