#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewflow {

enum class ErrorKind {
    NotUnipotentUpperTriangular,
    IdentityMatrix,
    DimensionTooSmall,
    DimensionMismatch,
    IndexOutOfRange,
    NoShearVector,
    SupportExplosion,
    FrequencyOverflow,
    NotInZeroMeanSubspace,
    OrbitNotEscaping,
    PeriodicOrbit,
    NotACoboundary,
    ZeroSuperdiagonal,
    NonPositiveRoof,
    RoofNotFiberConstant,
    EmptyCube,
    InvalidLattice,
    NonIntegerEntry,
    ZeroW0,
    NonPositiveAlpha,
    AssertionMismatch,
    InvalidArgument,
    ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotUnipotentUpperTriangular: return "NotUnipotentUpperTriangular";
    case ErrorKind::IdentityMatrix: return "IdentityMatrix";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NoShearVector: return "NoShearVector";
    case ErrorKind::SupportExplosion: return "SupportExplosion";
    case ErrorKind::FrequencyOverflow: return "FrequencyOverflow";
    case ErrorKind::NotInZeroMeanSubspace: return "NotInZeroMeanSubspace";
    case ErrorKind::OrbitNotEscaping: return "OrbitNotEscaping";
    case ErrorKind::PeriodicOrbit: return "PeriodicOrbit";
    case ErrorKind::NotACoboundary: return "NotACoboundary";
    case ErrorKind::ZeroSuperdiagonal: return "ZeroSuperdiagonal";
    case ErrorKind::NonPositiveRoof: return "NonPositiveRoof";
    case ErrorKind::RoofNotFiberConstant: return "RoofNotFiberConstant";
    case ErrorKind::EmptyCube: return "EmptyCube";
    case ErrorKind::InvalidLattice: return "InvalidLattice";
    case ErrorKind::NonIntegerEntry: return "NonIntegerEntry";
    case ErrorKind::ZeroW0: return "ZeroW0";
    case ErrorKind::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorKind::AssertionMismatch: return "AssertionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Input-validation failures (bad matrices, bad configs, violated
/// preconditions) as opposed to numeric/runtime failures. The CLI maps the
/// former to exit code 1 and the latter to exit code 2.
constexpr bool is_validation_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotUnipotentUpperTriangular:
    case ErrorKind::IdentityMatrix:
    case ErrorKind::DimensionTooSmall:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::NotInZeroMeanSubspace:
    case ErrorKind::ZeroSuperdiagonal:
    case ErrorKind::NonPositiveRoof:
    case ErrorKind::RoofNotFiberConstant:
    case ErrorKind::EmptyCube:
    case ErrorKind::InvalidLattice:
    case ErrorKind::NonIntegerEntry:
    case ErrorKind::ZeroW0:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ConfigError:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace skewflow
