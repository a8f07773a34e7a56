#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet {

enum class ErrorKind {
  OutOfRange,
  InvalidWord,
  InvalidCell,
  InvalidPoint,
  InvalidChain,
  Unreachable,
  LevelTooDeep,
  MisalignedLine,
  OutOfDomain,
  NotCarpetCell,
  RegionEmpty,
  WrongRegion,
  BadWeights,
  Inadmissible,
  Unbounded,
  BadExponent,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace carpet
