#include "bblc/inference.hpp"

#include <algorithm>

namespace bblc {

bool evaluate_rule(const Network& net, RuleId id) {
    const Rule& r = net.rule(id);
    return std::all_of(r.inputs.begin(), r.inputs.end(), [&](const RuleInput& in) {
        return net.fact(in.fact).value == in.required;
    });
}

InferenceReport run_inference(Network& net) {
    std::vector<bool> pre_values;
    pre_values.reserve(net.fact_count());
    for (const Fact& f : net.facts()) pre_values.push_back(f.value);

    InferenceReport report;
    std::vector<bool> fired(net.rule_count(), false);
    bool any_fired_this_scan = true;
    while (any_fired_this_scan) {
        any_fired_this_scan = false;
        ++report.rounds;
        for (std::uint32_t i = 0; i < net.rule_count(); ++i) {
            const RuleId id{i};
            if (fired[i] || !evaluate_rule(net, id)) continue;
            for (const RuleOutput& out : net.rule(id).outputs)
                net.set_fact_value(out.fact, out.assigned);
            fired[i] = true;
            any_fired_this_scan = true;
            report.rules_fired.push_back(id);
        }
    }

    for (std::uint32_t i = 0; i < net.fact_count(); ++i) {
        const bool now = net.facts()[i].value;
        if (now != pre_values[i])
            report.facts_changed.push_back(FactChange{FactId{i}, pre_values[i], now});
    }
    return report;
}

LintResult cross_container_rule_check(const Network& net, RuleId id) {
    const Rule& r = net.rule(id);
    LintResult result;

    std::vector<ContainerId> containers;
    bool unassigned = false;
    const auto note_fact = [&](FactId fact) {
        const std::optional<ContainerId> c = net.fact(fact).container;
        if (!c) {
            unassigned = true;
            return;
        }
        if (std::find(containers.begin(), containers.end(), *c) == containers.end())
            containers.push_back(*c);
    };
    for (const RuleInput& in : r.inputs) note_fact(in.fact);
    for (const RuleOutput& out : r.outputs) note_fact(out.fact);
    std::sort(containers.begin(), containers.end());
    result.containers = containers;

    if (unassigned) {
        result.reason = LintResult::Reason::unassigned_fact;
        return result;
    }
    if (containers.size() > 2) {
        result.reason = LintResult::Reason::too_many_containers;
        return result;
    }
    if (containers.size() == 2) {
        const auto linked = [&](ContainerId from, ContainerId to) {
            const auto& out = net.outgoing_links(from);
            return std::any_of(out.begin(), out.end(),
                               [&](LinkId l) { return net.link(l).end == to; });
        };
        if (!linked(containers[0], containers[1]) && !linked(containers[1], containers[0])) {
            result.reason = LintResult::Reason::unlinked_containers;
            return result;
        }
    }
    result.pass = true;
    return result;
}

std::vector<Violation> validate_with_lint(const Network& net) {
    std::vector<Violation> out = net.validate();
    if (!out.empty()) return out; // lint needs resolvable references
    for (const Rule& r : net.rules()) {
        const LintResult lint = cross_container_rule_check(net, r.id);
        if (lint.pass) continue;
        std::string detail = "rule " + std::to_string(r.id.value);
        switch (lint.reason) {
        case LintResult::Reason::unassigned_fact:
            detail += " uses a fact that is in no container";
            break;
        case LintResult::Reason::too_many_containers:
            detail += " spans " + std::to_string(lint.containers.size()) + " containers:";
            for (ContainerId c : lint.containers) detail += " " + std::to_string(c.value);
            break;
        case LintResult::Reason::unlinked_containers:
            detail += " spans containers " + std::to_string(lint.containers[0].value) + " and " +
                      std::to_string(lint.containers[1].value) + " with no link between them";
            break;
        case LintResult::Reason::ok:
            break;
        }
        out.push_back(Violation{Violation::Kind::cross_container_rule, std::move(detail)});
    }
    return out;
}

} // namespace bblc
