#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhm {

enum class ErrorCode {
    invalid_input,
    outside_domain,
    unsupported_combination,
    path_exits_domain,
    resolution_too_coarse,
    empty_effective_set,
    not_power_type,
    precondition_failed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status and a one-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qhm
