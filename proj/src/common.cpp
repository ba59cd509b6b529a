#include "knapqsec/common.hpp"

namespace knapqsec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ModulusTooSmall: return "ModulusTooSmall";
    case Errc::ResidueOutOfRange: return "ResidueOutOfRange";
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::DegenerateVector: return "DegenerateVector";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NotMonic: return "NotMonic";
    case Errc::BadParameters: return "BadParameters";
    case Errc::FactoringBudgetExceeded: return "FactoringBudgetExceeded";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::MessageOutOfRange: return "MessageOutOfRange";
    case Errc::WrongWeight: return "WrongWeight";
    case Errc::MalformedCiphertext: return "MalformedCiphertext";
    case Errc::DegenerateModulus: return "DegenerateModulus";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "UnknownError";
}

}  // namespace knapqsec
