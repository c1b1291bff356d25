#pragma once

#include <stdexcept>
#include <string>

namespace bblc {

enum class Errc {
    unknown_fact,
    unknown_rule,
    unknown_container,
    empty_rule_side,
    overlapping_sides,
    self_link,
    io_failure,
    parse_failure,
    integrity_failure,
    invalid_config,
    no_containers,
    condition_failed,
    empty_input,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace bblc
