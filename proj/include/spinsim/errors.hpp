#pragma once

#include <stdexcept>
#include <string>

namespace spinsim {

enum class ErrorCode {
    EmptyString,
    InvalidCharacter,
    NotPowerOfTwo,
    NotNormalized,
    WrongQubitCount,
    DimensionMismatch,
    TargetOutOfRange,
    ArityMismatch,
    TooManyQubits,
    TooManySites,
    ClosedChainTooSmall,
    OddSitesForDomainWall,
    InvalidSitePair,
    SiteOutOfRange,
    EmptyCounts,
    BadProbability,
    GridMismatch,
    ConfigError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace spinsim
