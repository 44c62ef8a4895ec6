#pragma once

#include <stdexcept>
#include <string>

namespace ctgc {

// Base class for all library errors. Subclasses map 1:1 onto the failure
// kinds surfaced by the public API so callers can catch selectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CTGC_DEFINE_ERROR(name)          \
  class name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

CTGC_DEFINE_ERROR(IndexOutOfRange);
CTGC_DEFINE_ERROR(ShapeMismatch);
CTGC_DEFINE_ERROR(InvalidValue);
CTGC_DEFINE_ERROR(InvalidConfig);
CTGC_DEFINE_ERROR(InsufficientEdges);
CTGC_DEFINE_ERROR(InsufficientLabels);
CTGC_DEFINE_ERROR(NotSymmetric);
CTGC_DEFINE_ERROR(SolverDiverged);
CTGC_DEFINE_ERROR(NumericalOverflow);
CTGC_DEFINE_ERROR(InvalidRoot);
CTGC_DEFINE_ERROR(DegenerateLoss);
CTGC_DEFINE_ERROR(InversionDiverged);
CTGC_DEFINE_ERROR(FormatError);

#undef CTGC_DEFINE_ERROR

}  // namespace ctgc
