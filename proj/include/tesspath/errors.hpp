#pragma once

#include <stdexcept>
#include <string>

namespace tesspath {

// Base of every domain error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define TESSPATH_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
  public:                                                             \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// geometry
TESSPATH_DEFINE_ERROR(CollinearOverlap);
TESSPATH_DEFINE_ERROR(DuplicateNuclei);
TESSPATH_DEFINE_ERROR(DegenerateInput);

// tessellation / point processes
TESSPATH_DEFINE_ERROR(EmptyRealization);
TESSPATH_DEFINE_ERROR(NotEnoughPoints);
TESSPATH_DEFINE_ERROR(InvalidAnchor);

// estimators
TESSPATH_DEFINE_ERROR(ConfigInvalid);
TESSPATH_DEFINE_ERROR(SpanTooSmall);

// fitting
TESSPATH_DEFINE_ERROR(NonPositiveValues);
TESSPATH_DEFINE_ERROR(NoConvergence);
TESSPATH_DEFINE_ERROR(ValuesExceedTruncation);

// output
TESSPATH_DEFINE_ERROR(TooFewSamples);
TESSPATH_DEFINE_ERROR(IoError);

#undef TESSPATH_DEFINE_ERROR

}  // namespace tesspath
