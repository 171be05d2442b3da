#include "symhom/error.hpp"

namespace symhom {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::MissingVariable: return "MissingVariable";
        case ErrorCode::SizeCap: return "SizeCap";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
        case ErrorCode::InvalidEliminationTree: return "InvalidEliminationTree";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotRigid: return "NotRigid";
        case ErrorCode::UniquenessUnavailable: return "UniquenessUnavailable";
        case ErrorCode::InvalidBranchSets: return "InvalidBranchSets";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::ColourMismatch: return "ColourMismatch";
        case ErrorCode::BasisNotFound: return "BasisNotFound";
        case ErrorCode::NotPairwiseNonIsomorphic: return "NotPairwiseNonIsomorphic";
        case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorCode::ZeroNormalizer: return "ZeroNormalizer";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace symhom
