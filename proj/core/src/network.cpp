#include "bblc/network.hpp"

#include <algorithm>
#include <unordered_set>

namespace bblc {

namespace {

std::string fact_ref(FactId id) { return "fact " + std::to_string(id.value); }
std::string container_ref(ContainerId id) { return "container " + std::to_string(id.value); }

void insert_sorted(std::vector<FactId>& members, FactId id) {
    auto it = std::lower_bound(members.begin(), members.end(), id);
    if (it == members.end() || *it != id) members.insert(it, id);
}

void erase_member(std::vector<FactId>& members, FactId id) {
    auto it = std::lower_bound(members.begin(), members.end(), id);
    if (it != members.end() && *it == id) members.erase(it);
}

} // namespace

void Network::require_fact(FactId id) const {
    if (!has_fact(id)) throw Error(Errc::unknown_fact, "unknown " + fact_ref(id));
}

void Network::require_container(ContainerId id) const {
    if (!has_container(id))
        throw Error(Errc::unknown_container, "unknown " + container_ref(id));
}

FactId Network::add_fact(std::string description, bool value) {
    const FactId id{static_cast<std::uint32_t>(facts_.size())};
    facts_.push_back(Fact{id, std::move(description), value, std::nullopt});
    rule_edges_.emplace_back();
    return id;
}

ContainerId Network::add_container(std::string description) {
    const ContainerId id{static_cast<std::uint32_t>(containers_.size())};
    containers_.push_back(Container{id, std::move(description), {}});
    links_out_.emplace_back();
    links_in_.emplace_back();
    return id;
}

RuleId Network::add_rule(std::vector<RuleInput> inputs, std::vector<RuleOutput> outputs) {
    if (inputs.empty() || outputs.empty())
        throw Error(Errc::empty_rule_side, "rule must have at least one input and one output");
    std::unordered_set<std::uint32_t> input_facts;
    for (const RuleInput& in : inputs) {
        require_fact(in.fact);
        input_facts.insert(in.fact.value);
    }
    for (const RuleOutput& out : outputs) {
        require_fact(out.fact);
        if (input_facts.count(out.fact.value))
            throw Error(Errc::overlapping_sides,
                        fact_ref(out.fact) + " appears on both sides of the rule");
    }
    const RuleId id{static_cast<std::uint32_t>(rules_.size())};
    // Index edges in (rule, target) order; rules arrive in ascending id order
    // so sorting targets per rule keeps every edge list globally sorted.
    std::vector<FactId> targets;
    targets.reserve(outputs.size());
    for (const RuleOutput& out : outputs) targets.push_back(out.fact);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (const RuleInput& in : inputs)
        for (FactId target : targets)
            rule_edges_[in.fact.value].push_back(RuleEdge{id, target});
    rules_.push_back(Rule{id, std::move(inputs), std::move(outputs)});
    return id;
}

void Network::assign_fact(FactId fact, ContainerId container) {
    require_fact(fact);
    require_container(container);
    Fact& f = facts_[fact.value];
    if (f.container == container) return;
    if (f.container) erase_member(containers_[f.container->value].members, fact);
    f.container = container;
    insert_sorted(containers_[container.value].members, fact);
}

LinkId Network::add_link(std::string description, ContainerId start, ContainerId end) {
    require_container(start);
    require_container(end);
    if (start == end)
        throw Error(Errc::self_link, container_ref(start) + " cannot link to itself");
    const LinkId id{static_cast<std::uint32_t>(links_.size())};
    links_.push_back(Link{id, std::move(description), start, end});
    links_out_[start.value].push_back(id);
    links_in_[end.value].push_back(id);
    return id;
}

void Network::set_fact_value(FactId fact, bool value) {
    require_fact(fact);
    facts_[fact.value].value = value;
}

const std::vector<LinkId>& Network::incoming_links(ContainerId c) const {
    require_container(c);
    return links_in_[c.value];
}

const std::vector<LinkId>& Network::outgoing_links(ContainerId c) const {
    require_container(c);
    return links_out_[c.value];
}

const Fact& Network::fact(FactId id) const {
    require_fact(id);
    return facts_[id.value];
}

const Rule& Network::rule(RuleId id) const {
    if (!has_rule(id)) throw Error(Errc::unknown_rule, "unknown rule " + std::to_string(id.value));
    return rules_[id.value];
}

const Container& Network::container(ContainerId id) const {
    require_container(id);
    return containers_[id.value];
}

const Link& Network::link(LinkId id) const {
    if (!has_link(id))
        throw Error(Errc::integrity_failure, "unknown link " + std::to_string(id.value));
    return links_[id.value];
}

const std::vector<RuleEdge>& Network::rule_edges_from(FactId id) const {
    require_fact(id);
    return rule_edges_[id.value];
}

std::vector<Violation> Network::validate() const {
    std::vector<Violation> out;
    const auto add = [&](Violation::Kind kind, std::string detail) {
        out.push_back(Violation{kind, std::move(detail)});
    };

    for (std::size_t i = 0; i < facts_.size(); ++i) {
        const Fact& f = facts_[i];
        if (f.id.value != i)
            add(Violation::Kind::non_dense_id, fact_ref(f.id) + " stored at index " + std::to_string(i));
        if (f.container && !has_container(*f.container))
            add(Violation::Kind::dangling_fact_container,
                fact_ref(f.id) + " references missing " + container_ref(*f.container));
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Rule& r = rules_[i];
        const std::string ref = "rule " + std::to_string(r.id.value);
        if (r.id.value != i)
            add(Violation::Kind::non_dense_id, ref + " stored at index " + std::to_string(i));
        if (r.inputs.empty() || r.outputs.empty())
            add(Violation::Kind::empty_rule_side, ref + " has an empty side");
        std::unordered_set<std::uint32_t> input_facts;
        for (const RuleInput& in : r.inputs) {
            input_facts.insert(in.fact.value);
            if (!has_fact(in.fact))
                add(Violation::Kind::dangling_rule_fact, ref + " input references missing " + fact_ref(in.fact));
        }
        for (const RuleOutput& o : r.outputs) {
            if (!has_fact(o.fact))
                add(Violation::Kind::dangling_rule_fact, ref + " output references missing " + fact_ref(o.fact));
            if (input_facts.count(o.fact.value))
                add(Violation::Kind::overlapping_rule_sides, ref + " uses " + fact_ref(o.fact) + " on both sides");
        }
    }
    for (std::size_t i = 0; i < containers_.size(); ++i) {
        const Container& c = containers_[i];
        if (c.id.value != i)
            add(Violation::Kind::non_dense_id, container_ref(c.id) + " stored at index " + std::to_string(i));
        for (FactId member : c.members) {
            if (!has_fact(member)) {
                add(Violation::Kind::membership_mismatch,
                    container_ref(c.id) + " lists missing " + fact_ref(member));
            } else if (facts_[member.value].container != c.id) {
                add(Violation::Kind::membership_mismatch,
                    container_ref(c.id) + " lists " + fact_ref(member) +
                        " whose container field disagrees");
            }
        }
    }
    // Other half of the membership bijection: every assigned fact appears in
    // exactly its container's member set.
    for (const Fact& f : facts_) {
        if (!f.container || !has_container(*f.container)) continue;
        const auto& members = containers_[f.container->value].members;
        if (!std::binary_search(members.begin(), members.end(), f.id))
            add(Violation::Kind::membership_mismatch,
                fact_ref(f.id) + " missing from member set of " + container_ref(*f.container));
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& l = links_[i];
        const std::string ref = "link " + std::to_string(l.id.value);
        if (l.id.value != i)
            add(Violation::Kind::non_dense_id, ref + " stored at index " + std::to_string(i));
        if (!has_container(l.start))
            add(Violation::Kind::dangling_link_endpoint, ref + " start references missing " + container_ref(l.start));
        if (!has_container(l.end))
            add(Violation::Kind::dangling_link_endpoint, ref + " end references missing " + container_ref(l.end));
        if (l.start == l.end)
            add(Violation::Kind::self_link, ref + " connects " + container_ref(l.start) + " to itself");
    }
    return out;
}

Network Network::from_parts(std::vector<Fact> facts, std::vector<Rule> rules,
                            std::vector<Container> containers, std::vector<Link> links,
                            MembershipPolicy policy) {
    for (std::size_t i = 0; i < facts.size(); ++i)
        if (facts[i].id.value != i)
            throw Error(Errc::integrity_failure, "fact ids must be dense 0..n-1");
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].id.value != i)
            throw Error(Errc::integrity_failure, "rule ids must be dense 0..n-1");
    for (std::size_t i = 0; i < containers.size(); ++i)
        if (containers[i].id.value != i)
            throw Error(Errc::integrity_failure, "container ids must be dense 0..n-1");
    for (std::size_t i = 0; i < links.size(); ++i)
        if (links[i].id.value != i)
            throw Error(Errc::integrity_failure, "link ids must be dense 0..n-1");

    Network net;
    net.facts_ = std::move(facts);
    net.rules_ = std::move(rules);
    net.containers_ = std::move(containers);
    net.links_ = std::move(links);
    if (policy == MembershipPolicy::derive_from_facts) {
        for (Container& c : net.containers_) c.members.clear();
        for (const Fact& f : net.facts_)
            if (f.container && f.container->value < net.containers_.size())
                net.containers_[f.container->value].members.push_back(f.id);
        // Facts are scanned in id order, so member sets come out sorted.
    }
    net.rebuild_indexes();
    return net;
}

void Network::rebuild_indexes() {
    rule_edges_.assign(facts_.size(), {});
    links_out_.assign(containers_.size(), {});
    links_in_.assign(containers_.size(), {});
    for (const Rule& r : rules_) {
        std::vector<FactId> targets;
        targets.reserve(r.outputs.size());
        for (const RuleOutput& o : r.outputs)
            if (has_fact(o.fact)) targets.push_back(o.fact);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (const RuleInput& in : r.inputs) {
            if (!has_fact(in.fact)) continue;
            for (FactId target : targets)
                rule_edges_[in.fact.value].push_back(RuleEdge{r.id, target});
        }
    }
    for (const Link& l : links_) {
        if (has_container(l.start)) links_out_[l.start.value].push_back(l.id);
        if (has_container(l.end)) links_in_[l.end.value].push_back(l.id);
    }
}

bool Network::operator==(const Network& other) const {
    return facts_ == other.facts_ && rules_ == other.rules_ &&
           containers_ == other.containers_ && links_ == other.links_;
}

} // namespace bblc
