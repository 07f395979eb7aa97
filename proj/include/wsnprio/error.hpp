#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wsnprio {

/// Base of every error raised by the library. `code()` is the stable error
/// name printed by the CLI and matched by tests.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  [[nodiscard]] const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define WSNPRIO_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& detail) : Error(#Name, detail) {}   \
  }

WSNPRIO_DEFINE_ERROR(PastEvent);
WSNPRIO_DEFINE_ERROR(BadRange);
WSNPRIO_DEFINE_ERROR(BadThresholds);
WSNPRIO_DEFINE_ERROR(UnknownNode);
WSNPRIO_DEFINE_ERROR(ZeroDistance);
WSNPRIO_DEFINE_ERROR(Depleted);
WSNPRIO_DEFINE_ERROR(ZeroVelocity);
WSNPRIO_DEFINE_ERROR(UnknownNetwork);
WSNPRIO_DEFINE_ERROR(EmptyGrid);
WSNPRIO_DEFINE_ERROR(FrozenGrid);
WSNPRIO_DEFINE_ERROR(InvalidArgument);
WSNPRIO_DEFINE_ERROR(EventNotFound);
WSNPRIO_DEFINE_ERROR(ParseError);
WSNPRIO_DEFINE_ERROR(ValidationError);
WSNPRIO_DEFINE_ERROR(IoError);

#undef WSNPRIO_DEFINE_ERROR

}  // namespace wsnprio
