#include "bblc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace bblc {

namespace {

void require_containers(const Network& net) {
    if (net.container_count() == 0)
        throw Error(Errc::no_containers, "assignment needs at least one container");
}

/// One randomly chosen still-unassigned fact per call, via swap-remove from a
/// shrinking pool (equivalent to consuming a uniform shuffle).
class UnassignedPool {
public:
    explicit UnassignedPool(std::size_t facts) : pool_(facts) {
        std::iota(pool_.begin(), pool_.end(), 0u);
    }
    bool empty() const { return pool_.empty(); }
    FactId draw(SplitMix64& rng) {
        const std::size_t i = static_cast<std::size_t>(rng.bounded(pool_.size()));
        const std::uint32_t fact = pool_[i];
        pool_[i] = pool_.back();
        pool_.pop_back();
        return FactId{fact};
    }

private:
    std::vector<std::uint32_t> pool_;
};

void round_robin_assign(Network& net, SplitMix64& rng, const std::vector<ContainerId>& targets) {
    UnassignedPool pool(net.fact_count());
    std::size_t slot = 0;
    while (!pool.empty()) {
        net.assign_fact(pool.draw(rng), targets[slot]);
        slot = (slot + 1) % targets.size();
    }
}

} // namespace

void validate_config(const GeneratorConfig& cfg) {
    if (cfg.facts > 0 && cfg.containers == 0)
        throw Error(Errc::invalid_config, "facts require at least one container to be assigned to");
    if (cfg.links > 0 && cfg.containers < 2)
        throw Error(Errc::invalid_config, "links require at least two containers");
    if (cfg.rules > 0) {
        if (cfg.rule_inputs < 1 || cfg.rule_outputs < 1)
            throw Error(Errc::invalid_config, "rules need at least one input and one output");
        if (static_cast<std::uint64_t>(cfg.rule_inputs) + cfg.rule_outputs > cfg.facts)
            throw Error(Errc::invalid_config,
                        "rule arity exceeds the fact population (" +
                            std::to_string(cfg.rule_inputs) + "+" + std::to_string(cfg.rule_outputs) +
                            " > " + std::to_string(cfg.facts) + ")");
    }
}

void assign_uniform(Network& net, SplitMix64& rng) {
    require_containers(net);
    std::vector<ContainerId> targets;
    targets.reserve(net.container_count());
    for (const Container& c : net.containers()) targets.push_back(c.id);
    round_robin_assign(net, rng, targets);
}

void assign_random(Network& net, SplitMix64& rng) {
    require_containers(net);
    const std::uint64_t containers = net.container_count();
    for (std::uint32_t i = 0; i < net.fact_count(); ++i)
        net.assign_fact(FactId{i}, ContainerId{static_cast<std::uint32_t>(rng.bounded(containers))});
}

std::size_t assign_loaded(Network& net, SplitMix64& rng) {
    require_containers(net);
    const std::size_t containers = net.container_count();
    const std::size_t k = 1 + static_cast<std::size_t>(rng.bounded(containers));
    // Partial Fisher-Yates: the first k entries become the selected set.
    std::vector<std::uint32_t> ids(containers);
    std::iota(ids.begin(), ids.end(), 0u);
    std::vector<ContainerId> selected;
    selected.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(containers - i));
        std::swap(ids[i], ids[j]);
        selected.push_back(ContainerId{ids[i]});
    }
    round_robin_assign(net, rng, selected);
    return k;
}

Network generate(const GeneratorConfig& cfg) {
    validate_config(cfg);
    Network net;

    for (std::uint32_t i = 0; i < cfg.containers; ++i)
        net.add_container("container " + std::to_string(i));

    SplitMix64 values = stream_for(cfg.seed, StreamPurpose::fact_values);
    for (std::uint32_t i = 0; i < cfg.facts; ++i)
        net.add_fact("fact " + std::to_string(i), values.next_bool());

    if (cfg.facts > 0) {
        SplitMix64 assignment = stream_for(cfg.seed, StreamPurpose::assignment);
        switch (cfg.assignment) {
        case AssignmentMethod::uniform: assign_uniform(net, assignment); break;
        case AssignmentMethod::random: assign_random(net, assignment); break;
        case AssignmentMethod::loaded: assign_loaded(net, assignment); break;
        }
    }

    SplitMix64 link_rng = stream_for(cfg.seed, StreamPurpose::link_structure);
    for (std::uint32_t i = 0; i < cfg.links; ++i) {
        // Ordered distinct pair; duplicate parallel links are allowed.
        const auto start = static_cast<std::uint32_t>(link_rng.bounded(cfg.containers));
        auto end = static_cast<std::uint32_t>(link_rng.bounded(cfg.containers - 1));
        if (end >= start) ++end;
        net.add_link("link " + std::to_string(i), ContainerId{start}, ContainerId{end});
    }

    SplitMix64 rule_rng = stream_for(cfg.seed, StreamPurpose::rule_structure);
    const std::size_t arity = cfg.rule_inputs + cfg.rule_outputs;
    std::vector<std::uint32_t> picks;
    picks.reserve(arity);
    for (std::uint32_t i = 0; i < cfg.rules; ++i) {
        picks.clear();
        while (picks.size() < arity) {
            const auto candidate = static_cast<std::uint32_t>(rule_rng.bounded(cfg.facts));
            if (std::find(picks.begin(), picks.end(), candidate) == picks.end())
                picks.push_back(candidate);
        }
        std::vector<RuleInput> inputs;
        inputs.reserve(cfg.rule_inputs);
        for (std::uint32_t j = 0; j < cfg.rule_inputs; ++j)
            inputs.push_back(RuleInput{FactId{picks[j]}, rule_rng.next_bool()});
        std::vector<RuleOutput> outputs;
        outputs.reserve(cfg.rule_outputs);
        for (std::uint32_t j = 0; j < cfg.rule_outputs; ++j)
            outputs.push_back(RuleOutput{FactId{picks[cfg.rule_inputs + j]}, rule_rng.next_bool()});
        net.add_rule(std::move(inputs), std::move(outputs));
    }

    return net;
}

GeneratorConfig scale_config(const GeneratorConfig& base, ScaleMode mode, double pct) {
    if (!(pct > 0.0))
        throw Error(Errc::invalid_config, "scale percentage must be positive");
    const auto scaled = [pct](std::uint32_t count) {
        const double exact = static_cast<double>(count) * pct / 100.0;
        const auto rounded = static_cast<std::uint32_t>(std::floor(exact + 0.5));
        return std::max<std::uint32_t>(rounded, 1);
    };
    GeneratorConfig out = base;
    if (mode == ScaleMode::facts || mode == ScaleMode::all) out.facts = scaled(base.facts);
    if (mode == ScaleMode::rules || mode == ScaleMode::all) out.rules = scaled(base.rules);
    if (mode == ScaleMode::containers || mode == ScaleMode::all)
        out.containers = scaled(base.containers);
    if (mode == ScaleMode::links || mode == ScaleMode::all) out.links = scaled(base.links);
    return out;
}

std::string to_string(AssignmentMethod method) {
    switch (method) {
    case AssignmentMethod::uniform: return "uniform";
    case AssignmentMethod::random: return "random";
    case AssignmentMethod::loaded: return "loaded";
    }
    return "uniform";
}

std::string to_string(ScaleMode mode) {
    switch (mode) {
    case ScaleMode::facts: return "facts";
    case ScaleMode::rules: return "rules";
    case ScaleMode::containers: return "containers";
    case ScaleMode::links: return "links";
    case ScaleMode::all: return "all";
    }
    return "all";
}

AssignmentMethod parse_assignment_method(const std::string& text) {
    if (text == "uniform") return AssignmentMethod::uniform;
    if (text == "random") return AssignmentMethod::random;
    if (text == "loaded") return AssignmentMethod::loaded;
    throw Error(Errc::invalid_config, "unknown assignment method '" + text + "'");
}

ScaleMode parse_scale_mode(const std::string& text) {
    if (text == "facts") return ScaleMode::facts;
    if (text == "rules") return ScaleMode::rules;
    if (text == "containers") return ScaleMode::containers;
    if (text == "links") return ScaleMode::links;
    if (text == "all") return ScaleMode::all;
    throw Error(Errc::invalid_config, "unknown scale mode '" + text + "'");
}

std::string config_to_json(const GeneratorConfig& cfg) {
    nlohmann::json doc;
    doc["facts"] = cfg.facts;
    doc["rules"] = cfg.rules;
    doc["containers"] = cfg.containers;
    doc["links"] = cfg.links;
    doc["assignment"] = to_string(cfg.assignment);
    doc["rule_inputs"] = cfg.rule_inputs;
    doc["rule_outputs"] = cfg.rule_outputs;
    doc["seed"] = cfg.seed;
    return doc.dump(2) + "\n";
}

GeneratorConfig config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::parse_failure, e.what());
    }
    GeneratorConfig cfg;
    try {
        cfg.facts = doc.at("facts").get<std::uint32_t>();
        cfg.rules = doc.at("rules").get<std::uint32_t>();
        cfg.containers = doc.at("containers").get<std::uint32_t>();
        cfg.links = doc.at("links").get<std::uint32_t>();
        cfg.assignment = parse_assignment_method(doc.at("assignment").get<std::string>());
        cfg.rule_inputs = doc.at("rule_inputs").get<std::uint32_t>();
        cfg.rule_outputs = doc.at("rule_outputs").get<std::uint32_t>();
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_failure, std::string("config document: ") + e.what());
    }
    return cfg;
}

} // namespace bblc
