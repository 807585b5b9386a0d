#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wco {

// Base of every library error. `name()` is the stable identifier surfaced by
// the CLI and in result documents.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define WCO_DEFINE_ERROR(Type)                                           \
  class Type : public Error {                                            \
   public:                                                               \
    explicit Type(const std::string& what) : Error(#Type, what) {}       \
  }

WCO_DEFINE_ERROR(InvariantError);
WCO_DEFINE_ERROR(DomainError);
WCO_DEFINE_ERROR(DivisionByNonUnit);
WCO_DEFINE_ERROR(RangeError);
WCO_DEFINE_ERROR(AliasError);
WCO_DEFINE_ERROR(ZeroOnContour);
WCO_DEFINE_ERROR(ConvergenceError);
WCO_DEFINE_ERROR(DegeneratePlane);
WCO_DEFINE_ERROR(AlphaSearchFailed);
WCO_DEFINE_ERROR(NotSeparating);
WCO_DEFINE_ERROR(InvalidImage);
WCO_DEFINE_ERROR(NewtonDivergence);
WCO_DEFINE_ERROR(NotAWCOImage);
WCO_DEFINE_ERROR(ZeroAtOrigin);
WCO_DEFINE_ERROR(DecayError);
WCO_DEFINE_ERROR(ParseError);

#undef WCO_DEFINE_ERROR

}  // namespace wco
