#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polytrop {

enum class ErrorKind {
    ZeroVector,
    NotStronglyConvex,
    DimensionMismatch,
    RankCap,
    EmptyChain,
    UndecidableSign,
    IndexOutOfRange,
    PreconditionViolation,
    OriginNotOnGerm,
    NoBranchFound,
    BoundViolation,
    IncoherentIncidence,
    MissingProvenance,
    NoAffineStructure,
    NotSimplicial,
    PointOutsideTarget,
    NotCompatible,
    IncompleteTower,
    UnknownStratum,
    ResourceCap,
    ParseError,
    ValidationError,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankCap: return "RankCap";
    case ErrorKind::EmptyChain: return "EmptyChain";
    case ErrorKind::UndecidableSign: return "UndecidableSign";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::OriginNotOnGerm: return "OriginNotOnGerm";
    case ErrorKind::NoBranchFound: return "NoBranchFound";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::IncoherentIncidence: return "IncoherentIncidence";
    case ErrorKind::MissingProvenance: return "MissingProvenance";
    case ErrorKind::NoAffineStructure: return "NoAffineStructure";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::PointOutsideTarget: return "PointOutsideTarget";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::IncompleteTower: return "IncompleteTower";
    case ErrorKind::UnknownStratum: return "UnknownStratum";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace polytrop
