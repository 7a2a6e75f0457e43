#pragma once

#include <stdexcept>
#include <string>

namespace slln {

// Fine-grained failure codes. Grouped bands map onto process exit codes and
// the C API status values: 2x parse/validation, 3x capability preconditions,
// 4x resource caps, 5x failed verification, 6x I/O.
enum class ErrorCode {
    // construction / parsing
    ParseError,
    EmptySupport,
    NegativeProb,
    NotNormalizable,
    EmptyAmbiguitySet,
    MixedSupport,
    UnknownWindowFn,
    UnknownFunctional,
    MissingSeed,
    TargetOrderError,
    GridTooCoarse,
    BadArgument,

    // capability preconditions
    NotExactCapable,
    HorizonMismatch,
    HorizonTooSmall,
    NoHeavyTailLaw,
    MuOutOfBand,
    TargetOutOfBracket,
    WeightConditionFails,
    TailNotSummable,
    NotMonotone,
    UnboundedSupport,
    IndexOutOfScheme,

    // resource caps
    StrategySpaceTooLarge,
    StateSpaceCap,
    HorizonExhausted,

    // verification failures
    BoundViolated,
    InvariantViolation,
    AssertionFailed,

    // environment
    IoError,
    Internal,
};

const char* error_code_name(ErrorCode c);

// Exit-code band for a code (0 is success and never produced here).
int exit_code_for(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace slln
