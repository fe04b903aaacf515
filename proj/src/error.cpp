#include "nokequal/error.hpp"

namespace nokequal {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedSyntax: return "MalformedSyntax";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::NotString: return "NotString";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotElementary: return "NotElementary";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInSpace: return "NotInSpace";
    case ErrorCode::BaseRuleUndefined: return "BaseRuleUndefined";
    }
    return "Unknown";
}

}  // namespace nokequal
