#pragma once

#include <stdexcept>
#include <string>

namespace ross {

enum class ErrorCode {
    TypeMismatch,
    SourceMembership,
    DestOverflow,
    InfiniteSet,
    UnresolvedType,
    UnresolvedRef,
    DuplicateName,
    SuperTypeMismatch,
    NonIntegerLocational,
    InheritanceCycle,
    NotInstantiable,
    ParentExtentViolation,
    DuplicateIdentifier,
    IncompleteRelToParent,
    KindMismatch,
    OutOfSet,
    ZeroFactor,
    ExtentOverflow,
    PathUnresolved,
    OutOfExtent,
    UnknownTimePoint,
    SchemaViolation,
    ImpreciseLocation,
    MissingAtTime,
    BridgeMismatch,
    WriteConflict,
    MissingLocational,
    MissingQualitative,
    LexError,
    ParseError,
    UsageError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace ross
