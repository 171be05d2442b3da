#pragma once

#include <stdexcept>
#include <string>

namespace symhom {

enum class ErrorCode {
    InvalidParameter,
    MissingVariable,
    SizeCap,
    ParseError,
    ArityMismatch,
    IndexOutOfRange,
    InvalidDecomposition,
    InvalidEliminationTree,
    NotSymmetric,
    NotRigid,
    UniquenessUnavailable,
    InvalidBranchSets,
    NotSquare,
    NotConnected,
    ColourMismatch,
    BasisNotFound,
    NotPairwiseNonIsomorphic,
    ZeroCoefficient,
    ZeroNormalizer,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace symhom
