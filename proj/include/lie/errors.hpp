#pragma once
#include <stdexcept>
#include <string>

namespace lie {

// Base of every domain error; kind() names the condition.
class LieError : public std::runtime_error {
 public:
  LieError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define LIE_ERROR(Name)                                                \
  class Name : public LieError {                                       \
   public:                                                             \
    explicit Name(const std::string& w = "") : LieError(#Name, w) {}  \
  };

LIE_ERROR(NotInSubgroup)
LIE_ERROR(NoLDU)
LIE_ERROR(FieldTooSmall)
LIE_ERROR(UnsupportedType)
LIE_ERROR(WrongType)
LIE_ERROR(NotSemisimple)
LIE_ERROR(GraphMismatch)
LIE_ERROR(NotNormalizing)
LIE_ERROR(BlockNotFound)
LIE_ERROR(NotFinite)
LIE_ERROR(UnsupportedQ)
LIE_ERROR(OrderingViolated)
LIE_ERROR(InconsistentDecomposition)
LIE_ERROR(NoScalarFound)
LIE_ERROR(TraceMatrixSingular)
LIE_ERROR(IndexOutOfRange)
LIE_ERROR(BadRepData)
LIE_ERROR(BadCharacteristic)
LIE_ERROR(GeneratorCountMismatch)
LIE_ERROR(NotContained)
LIE_ERROR(FormNotPreserved)
LIE_ERROR(DimensionMismatch)
LIE_ERROR(ParseError)
LIE_ERROR(SearchFailed)

#undef LIE_ERROR

}  // namespace lie
