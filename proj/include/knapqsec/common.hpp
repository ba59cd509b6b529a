#pragma once

#include <stdexcept>
#include <string>

namespace knapqsec {

// Failure categories shared by every module. The CLI maps them to exit codes
// and prints the category name, so the names are part of the tool's surface.
enum class Errc {
  ModulusTooSmall,
  ResidueOutOfRange,
  EmptyVector,
  InstanceTooLarge,
  WidthMismatch,
  DegenerateVector,
  DegreeOverflow,
  NotMonic,
  BadParameters,
  FactoringBudgetExceeded,
  ZeroElement,
  MessageOutOfRange,
  WrongWeight,
  MalformedCiphertext,
  DegenerateModulus,
  MalformedInput,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace knapqsec
