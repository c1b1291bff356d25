#pragma once

#include <cstdint>
#include <string>

#include "bblc/network.hpp"
#include "bblc/rng.hpp"

namespace bblc {

enum class AssignmentMethod { uniform, random, loaded };

/// Sizing and seeding for random benchmark networks. Defaults are the base
/// configuration the scaling experiments start from.
///
/// rule_inputs/rule_outputs control how many facts each generated rule reads
/// and writes. The default 1-in/2-out gives every generated rule graph a mean
/// out-degree of two, which keeps fact-to-fact rule paths plentiful; at
/// 1-in/1-out the base configuration sits exactly at the directed-graph
/// percolation threshold, where most fact pairs have no rule path at all.
struct GeneratorConfig {
    std::uint32_t facts = 1000;
    std::uint32_t rules = 1000;
    std::uint32_t containers = 100;
    std::uint32_t links = 400;
    AssignmentMethod assignment = AssignmentMethod::uniform;
    std::uint32_t rule_inputs = 1;
    std::uint32_t rule_outputs = 2;
    std::uint64_t seed = 0;
    bool operator==(const GeneratorConfig&) const = default;
};

/// Throws InvalidConfig unless the sizing is self-consistent: facts need a
/// container to be assigned to, links need two distinct containers, and a
/// rule's fact draw must fit in the fact population.
void validate_config(const GeneratorConfig& cfg);

/// Builds a network from the config alone: same config (seed included), same
/// network, byte-for-byte through save_network. Entity draws come from
/// purpose-split streams (rule structure, link structure, assignment, fact
/// values), so e.g. varying only the link count leaves the rule graph and
/// container assignment untouched.
Network generate(const GeneratorConfig& cfg);

/// Round-robins over the containers, assigning one randomly chosen
/// still-unassigned fact per visit; member counts end up within one of each
/// other.
void assign_uniform(Network& net, SplitMix64& rng);

/// Assigns each fact to an independently chosen uniform container; skew and
/// empty containers are possible.
void assign_random(Network& net, SplitMix64& rng);

/// Draws k uniform in [1, containers], picks k distinct containers, and
/// round-robins all facts across just those; the rest stay empty. Returns the
/// drawn k.
std::size_t assign_loaded(Network& net, SplitMix64& rng);

enum class ScaleMode { facts, rules, containers, links, all };

/// Returns a copy of base with the selected count(s) scaled to pct percent,
/// rounded half-up with a floor of one. Seed, assignment and rule arity carry
/// over unchanged.
GeneratorConfig scale_config(const GeneratorConfig& base, ScaleMode mode, double pct);

std::string to_string(AssignmentMethod method);
std::string to_string(ScaleMode mode);
AssignmentMethod parse_assignment_method(const std::string& text);
ScaleMode parse_scale_mode(const std::string& text);

/// Config document in the same JSON family as network files; used by the
/// benchmark manifest.
std::string config_to_json(const GeneratorConfig& cfg);
GeneratorConfig config_from_json(const std::string& text);

} // namespace bblc
