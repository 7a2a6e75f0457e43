#include "error.hpp"

namespace slln {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::NegativeProb: return "NegativeProb";
        case ErrorCode::NotNormalizable: return "NotNormalizable";
        case ErrorCode::EmptyAmbiguitySet: return "EmptyAmbiguitySet";
        case ErrorCode::MixedSupport: return "MixedSupport";
        case ErrorCode::UnknownWindowFn: return "UnknownWindowFn";
        case ErrorCode::UnknownFunctional: return "UnknownFunctional";
        case ErrorCode::MissingSeed: return "MissingSeed";
        case ErrorCode::TargetOrderError: return "TargetOrderError";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::BadArgument: return "BadArgument";
        case ErrorCode::NotExactCapable: return "NotExactCapable";
        case ErrorCode::HorizonMismatch: return "HorizonMismatch";
        case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
        case ErrorCode::NoHeavyTailLaw: return "NoHeavyTailLaw";
        case ErrorCode::MuOutOfBand: return "MuOutOfBand";
        case ErrorCode::TargetOutOfBracket: return "TargetOutOfBracket";
        case ErrorCode::WeightConditionFails: return "WeightConditionFails";
        case ErrorCode::TailNotSummable: return "TailNotSummable";
        case ErrorCode::NotMonotone: return "NotMonotone";
        case ErrorCode::UnboundedSupport: return "UnboundedSupport";
        case ErrorCode::IndexOutOfScheme: return "IndexOutOfScheme";
        case ErrorCode::StrategySpaceTooLarge: return "StrategySpaceTooLarge";
        case ErrorCode::StateSpaceCap: return "StateSpaceCap";
        case ErrorCode::HorizonExhausted: return "HorizonExhausted";
        case ErrorCode::BoundViolated: return "BoundViolated";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::AssertionFailed: return "AssertionFailed";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
        case ErrorCode::EmptySupport:
        case ErrorCode::NegativeProb:
        case ErrorCode::NotNormalizable:
        case ErrorCode::EmptyAmbiguitySet:
        case ErrorCode::MixedSupport:
        case ErrorCode::UnknownWindowFn:
        case ErrorCode::UnknownFunctional:
        case ErrorCode::MissingSeed:
        case ErrorCode::TargetOrderError:
        case ErrorCode::GridTooCoarse:
        case ErrorCode::BadArgument:
            return 2;
        case ErrorCode::NotExactCapable:
        case ErrorCode::HorizonMismatch:
        case ErrorCode::HorizonTooSmall:
        case ErrorCode::NoHeavyTailLaw:
        case ErrorCode::MuOutOfBand:
        case ErrorCode::TargetOutOfBracket:
        case ErrorCode::WeightConditionFails:
        case ErrorCode::TailNotSummable:
        case ErrorCode::NotMonotone:
        case ErrorCode::UnboundedSupport:
        case ErrorCode::IndexOutOfScheme:
            return 3;
        case ErrorCode::StrategySpaceTooLarge:
        case ErrorCode::StateSpaceCap:
        case ErrorCode::HorizonExhausted:
            return 4;
        case ErrorCode::BoundViolated:
        case ErrorCode::InvariantViolation:
        case ErrorCode::AssertionFailed:
            return 5;
        case ErrorCode::IoError:
            return 6;
        case ErrorCode::Internal:
            return 70;
    }
    return 70;
}

} // namespace slln
