#pragma once

#include <stdexcept>
#include <string>

namespace trirhomb {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define TRIRHOMB_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& msg) : Error(msg) {}        \
  }

TRIRHOMB_DEFINE_ERROR(ParseError);
TRIRHOMB_DEFINE_ERROR(VariantMismatch);
TRIRHOMB_DEFINE_ERROR(UnresolvedPrototile);
TRIRHOMB_DEFINE_ERROR(OverflowOfAlphaOrder);
TRIRHOMB_DEFINE_ERROR(DegenerateTile);
TRIRHOMB_DEFINE_ERROR(DegenerateTarget);
TRIRHOMB_DEFINE_ERROR(MissingRule);
TRIRHOMB_DEFINE_ERROR(DepthExceeded);
TRIRHOMB_DEFINE_ERROR(NotPrimitive);
TRIRHOMB_DEFINE_ERROR(EmptyPatch);
TRIRHOMB_DEFINE_ERROR(MismatchedGraph);
TRIRHOMB_DEFINE_ERROR(NotValidated);
TRIRHOMB_DEFINE_ERROR(UnclassifiableOrientation);

#undef TRIRHOMB_DEFINE_ERROR

}  // namespace trirhomb
