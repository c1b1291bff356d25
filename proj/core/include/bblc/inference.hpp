#pragma once

#include <vector>

#include "bblc/network.hpp"

namespace bblc {

struct FactChange {
    FactId fact;
    bool old_value = false;
    bool new_value = false;
    bool operator==(const FactChange&) const = default;
};

struct InferenceReport {
    std::vector<RuleId> rules_fired;     // firing order; each rule at most once
    std::vector<FactChange> facts_changed; // net pre/post differences, ascending fact id
    std::size_t rounds = 0;              // full scans performed, including the final no-fire scan
};

/// True iff every input fact currently matches its required value.
bool evaluate_rule(const Network& net, RuleId id);

/// Forward chaining to a fixpoint. Scans rules in ascending id order; a rule
/// whose preconditions hold fires (applies all its output assignments), and
/// each rule fires at most once per run, which bounds the work at |rules|
/// firings over at most |rules|+1 scans. Note this is narrower than
/// unrestricted forward chaining: a rule re-enabled after it has already
/// fired stays quiet until the next run.
InferenceReport run_inference(Network& net);

/// Cross-container constraint on a rule, reported as a lint rather than
/// enforced: randomly generated benchmark networks wire rules to facts
/// without consulting containers, so hard enforcement would reject them.
struct LintResult {
    enum class Reason { ok, unassigned_fact, too_many_containers, unlinked_containers };
    bool pass = false;
    Reason reason = Reason::ok;
    std::vector<ContainerId> containers; // distinct containers over the rule's facts
};

/// Passes iff the rule's facts all live in containers, span at most two
/// distinct containers, and, when they span exactly two, some link connects
/// those two containers in either direction.
LintResult cross_container_rule_check(const Network& net, RuleId id);

/// Structural validation plus one cross_container_rule_check violation per
/// failing rule.
std::vector<Violation> validate_with_lint(const Network& net);

} // namespace bblc
