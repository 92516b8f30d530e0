#include "qhm/error.hpp"

namespace qhm {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_input: return "invalid-input";
        case ErrorCode::outside_domain: return "outside-domain";
        case ErrorCode::unsupported_combination: return "unsupported-combination";
        case ErrorCode::path_exits_domain: return "path-exits-domain";
        case ErrorCode::resolution_too_coarse: return "resolution-too-coarse";
        case ErrorCode::empty_effective_set: return "empty-effective-set";
        case ErrorCode::not_power_type: return "not-power-type";
        case ErrorCode::precondition_failed: return "precondition-failed";
    }
    return "unknown";
}

}  // namespace qhm
