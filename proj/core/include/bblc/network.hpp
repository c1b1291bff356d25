#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bblc/errors.hpp"

namespace bblc {

// Entity ids are dense non-negative indexes, unique per kind within one
// network and never reused. An id is valid iff it is < the kind's count.
struct FactId {
    std::uint32_t value = 0;
    auto operator<=>(const FactId&) const = default;
};
struct RuleId {
    std::uint32_t value = 0;
    auto operator<=>(const RuleId&) const = default;
};
struct ContainerId {
    std::uint32_t value = 0;
    auto operator<=>(const ContainerId&) const = default;
};
struct LinkId {
    std::uint32_t value = 0;
    auto operator<=>(const LinkId&) const = default;
};

/// Boolean knowledge atom. `container` is empty until the fact is assigned.
struct Fact {
    FactId id;
    std::string description;
    bool value = false;
    std::optional<ContainerId> container;
    bool operator==(const Fact&) const = default;
};

struct RuleInput {
    FactId fact;
    bool required = true;
    bool operator==(const RuleInput&) const = default;
};

struct RuleOutput {
    FactId fact;
    bool assigned = true;
    bool operator==(const RuleOutput&) const = default;
};

/// Directional logic: when every input fact matches its required value, the
/// output facts are set to their assigned values. Input and output fact sets
/// are disjoint and non-empty.
struct Rule {
    RuleId id;
    std::vector<RuleInput> inputs;
    std::vector<RuleOutput> outputs;
    bool operator==(const Rule&) const = default;
};

/// Described grouping of facts. `members` is kept sorted by fact id and is
/// always consistent with the facts' `container` fields on well-formed
/// networks; containers may be empty.
struct Container {
    ContainerId id;
    std::string description;
    std::vector<FactId> members;
    bool operator==(const Container&) const = default;
};

/// Directed, described edge between two distinct containers.
struct Link {
    LinkId id;
    std::string description;
    ContainerId start;
    ContainerId end;
    bool operator==(const Link&) const = default;
};

struct Violation {
    enum class Kind {
        dangling_fact_container,
        dangling_rule_fact,
        dangling_link_endpoint,
        membership_mismatch,
        self_link,
        non_dense_id,
        empty_rule_side,
        overlapping_rule_sides,
        cross_container_rule,
    };
    Kind kind;
    std::string detail;
};

/// One edge of the traversal graph induced by rules: the owning rule plus
/// the output fact it reaches.
struct RuleEdge {
    RuleId rule;
    FactId to;
};

enum class MembershipPolicy {
    derive_from_facts, // rebuild member sets from the facts' container fields
    trust_given,       // keep the member sets exactly as supplied
};

/// The network store: facts, rules, containers and links, plus the derived
/// indexes traversal and link queries need (per-fact rule edges, per-container
/// incoming/outgoing links). Mutations require exclusive access; any number
/// of readers may share a network that is not being mutated.
class Network {
public:
    Network() = default;

    FactId add_fact(std::string description, bool value);
    ContainerId add_container(std::string description);

    /// Stores a rule and indexes one traversal edge from every input fact to
    /// every output fact. Throws on dangling ids, an empty side, or a fact
    /// appearing on both sides.
    RuleId add_rule(std::vector<RuleInput> inputs, std::vector<RuleOutput> outputs);

    /// Moves the fact into the container, removing it from any previous
    /// container's member set. Idempotent when the fact is already a member.
    void assign_fact(FactId fact, ContainerId container);

    /// Stores a directed link. start == end is rejected.
    LinkId add_link(std::string description, ContainerId start, ContainerId end);

    void set_fact_value(FactId fact, bool value);

    const std::vector<LinkId>& incoming_links(ContainerId c) const;
    const std::vector<LinkId>& outgoing_links(ContainerId c) const;

    /// Referential-integrity check: dangling references, membership
    /// mismatches, self-links. Returns every violation found; an empty result
    /// means the structural invariants hold. The cross-container rule lint is
    /// separate (see validate_with_lint in inference.hpp) because generated
    /// benchmark networks assign rules to facts without consulting containers.
    std::vector<Violation> validate() const;

    /// Assembles a network from raw parts without any integrity checks, for
    /// loaders and for tests that need to observe validate() failures. Ids
    /// must be dense (entity i has id i); everything else is taken as given.
    static Network from_parts(std::vector<Fact> facts, std::vector<Rule> rules,
                              std::vector<Container> containers, std::vector<Link> links,
                              MembershipPolicy policy = MembershipPolicy::derive_from_facts);

    bool has_fact(FactId id) const { return id.value < facts_.size(); }
    bool has_rule(RuleId id) const { return id.value < rules_.size(); }
    bool has_container(ContainerId id) const { return id.value < containers_.size(); }
    bool has_link(LinkId id) const { return id.value < links_.size(); }

    const Fact& fact(FactId id) const;
    const Rule& rule(RuleId id) const;
    const Container& container(ContainerId id) const;
    const Link& link(LinkId id) const;

    const std::vector<Fact>& facts() const { return facts_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Container>& containers() const { return containers_; }
    const std::vector<Link>& links() const { return links_; }

    std::size_t fact_count() const { return facts_.size(); }
    std::size_t rule_count() const { return rules_.size(); }
    std::size_t container_count() const { return containers_.size(); }
    std::size_t link_count() const { return links_.size(); }

    /// Outgoing traversal edges of a fact, ordered by (rule id, target id).
    const std::vector<RuleEdge>& rule_edges_from(FactId id) const;

    /// Structural equality over the four entity collections.
    bool operator==(const Network& other) const;

private:
    void require_fact(FactId id) const;
    void require_container(ContainerId id) const;
    void rebuild_indexes();

    std::vector<Fact> facts_;
    std::vector<Rule> rules_;
    std::vector<Container> containers_;
    std::vector<Link> links_;

    // Derived indexes, maintained incrementally by the mutators.
    std::vector<std::vector<RuleEdge>> rule_edges_;    // by fact id
    std::vector<std::vector<LinkId>> links_out_;       // by container id
    std::vector<std::vector<LinkId>> links_in_;        // by container id
};

} // namespace bblc
