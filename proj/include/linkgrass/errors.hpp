#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace linkgrass {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  /// Short machine-readable tag used in CLI diagnostics.
  virtual const char* kind() const noexcept { return "error"; }
};

#define LINKGRASS_ERROR(Name, Tag)                                \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(what) {}       \
    const char* kind() const noexcept override { return Tag; }    \
  };

LINKGRASS_ERROR(InvalidInput, "invalid-input")
LINKGRASS_ERROR(DivisionByZero, "division-by-zero")
LINKGRASS_ERROR(NotAUnit, "not-a-unit")
LINKGRASS_ERROR(InvalidSequence, "invalid-sequence")
LINKGRASS_ERROR(ShapeError, "shape-error")
LINKGRASS_ERROR(InvalidPoint, "invalid-point")
LINKGRASS_ERROR(DegenerateChain, "degenerate-chain")
LINKGRASS_ERROR(InvalidComplement, "invalid-complement")
LINKGRASS_ERROR(AlreadyExact, "already-exact")
LINKGRASS_ERROR(PreconditionError, "precondition")
LINKGRASS_ERROR(NonFreeModule, "non-free")
LINKGRASS_ERROR(InternalError, "internal")

#undef LINKGRASS_ERROR

/// Raised when an enumeration would examine more candidates than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t needed, std::uint64_t limit)
      : Error("enumeration budget exceeded: needs " + std::to_string(needed) +
              " candidates, budget " + std::to_string(limit)),
        needed_(needed),
        limit_(limit) {}
  const char* kind() const noexcept override { return "budget-exceeded"; }
  std::uint64_t needed() const noexcept { return needed_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t needed_;
  std::uint64_t limit_;
};

}  // namespace linkgrass
