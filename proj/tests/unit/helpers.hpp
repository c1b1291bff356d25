#pragma once

#include <string>

#include "bblc/generator.hpp"
#include "bblc/network.hpp"
#include "bblc/rng.hpp"

namespace bblc::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(BBLC_FIXTURE_DIR) + "/" + name;
}

/// Small random config in the oracle-scale regime (<= 20 facts, <= 20 rules,
/// <= 6 containers, <= 10 links), cycling through the assignment methods.
inline GeneratorConfig small_config(SplitMix64& meta) {
    GeneratorConfig cfg;
    cfg.facts = static_cast<std::uint32_t>(meta.bounded(21));
    cfg.rules = cfg.facts >= 2 ? static_cast<std::uint32_t>(meta.bounded(21)) : 0;
    cfg.containers = static_cast<std::uint32_t>(1 + meta.bounded(6));
    cfg.links = cfg.containers >= 2 ? static_cast<std::uint32_t>(meta.bounded(11)) : 0;
    switch (meta.bounded(3)) {
    case 0: cfg.assignment = AssignmentMethod::uniform; break;
    case 1: cfg.assignment = AssignmentMethod::random; break;
    default: cfg.assignment = AssignmentMethod::loaded; break;
    }
    cfg.rule_inputs = 1;
    cfg.rule_outputs = (cfg.facts >= 3 && meta.next_bool()) ? 2 : 1;
    if (cfg.facts < cfg.rule_inputs + cfg.rule_outputs) cfg.rules = 0;
    cfg.seed = meta.next();
    return cfg;
}

} // namespace bblc::testing
