// bblc: command-line driver for the blackboard engine.
//
// Subcommands: generate, validate, infer, traverse, bench, summarize.
// Exit codes: 0 success, 1 usage error, 2 data error (parse/integrity/io),
// 3 benchmark condition failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bblc/benchmark.hpp"
#include "bblc/generator.hpp"
#include "bblc/inference.hpp"
#include "bblc/serialization.hpp"
#include "bblc/traversal.hpp"
#include "bblc/version.hpp"

namespace {

using namespace bblc;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool all_digits(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

/// Fact references accept a numeric id or an exact description. Descriptions
/// resolve only when unique; ambiguity lists the candidates.
FactId resolve_fact(const Network& net, const std::string& ref) {
    if (all_digits(ref)) {
        const auto value = std::stoull(ref);
        const FactId id{static_cast<std::uint32_t>(value)};
        if (!net.has_fact(id)) throw UsageError("no fact with id " + ref);
        return id;
    }
    std::vector<FactId> matches;
    for (const Fact& f : net.facts())
        if (f.description == ref) matches.push_back(f.id);
    if (matches.empty()) throw UsageError("no fact described as '" + ref + "'");
    if (matches.size() > 1) {
        std::string msg = "'" + ref + "' is ambiguous; candidates:";
        for (FactId id : matches) {
            msg += " " + std::to_string(id.value);
            if (const auto c = net.fact(id).container)
                msg += " (in '" + net.container(*c).description + "')";
        }
        throw UsageError(msg);
    }
    return matches.front();
}

void write_invocation_manifest(const std::string& output_path, const nlohmann::json& extra) {
    nlohmann::json doc = extra;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    std::ofstream out(output_path + ".manifest.json", std::ios::binary);
    if (!out)
        throw Error(Errc::io_failure, "cannot write manifest next to '" + output_path + "'");
    out << doc.dump(2) << "\n";
}

std::string describe_fact(const Network& net, FactId id) {
    return "fact " + std::to_string(id.value) + " '" + net.fact(id).description + "'";
}

void print_traversal(const Network& net, const TraversalResult& result, bool via_rules) {
    std::cout << "found: " << (result.found ? "true" : "false") << "\n"
              << "hops: " << result.hops << "\n"
              << "nodes_visited: " << result.nodes_visited << "\n"
              << "ticks: " << result.ticks << "\n";
    if (!result.found) return;
    std::cout << "path: ";
    for (std::size_t i = 0; i < result.path.size(); ++i) {
        const std::uint32_t id = result.path[i];
        if (i % 2 == 0) {
            if (via_rules) {
                std::cout << describe_fact(net, FactId{id});
            } else {
                std::cout << "container " << id << " '" << net.container(ContainerId{id}).description
                          << "'";
            }
        } else {
            if (via_rules) {
                std::cout << " -[rule " << id << "]-> ";
            } else {
                std::cout << " -[link " << id << " '" << net.link(LinkId{id}).description
                          << "']-> ";
            }
        }
    }
    std::cout << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Blackboard engine with fact containers and directed links"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // generate
    auto* generate_cmd = app.add_subcommand("generate", "Generate a random network file");
    GeneratorConfig gen_cfg;
    std::string gen_assignment = "uniform";
    std::string gen_out;
    generate_cmd->add_option("--facts", gen_cfg.facts, "Fact count")->capture_default_str();
    generate_cmd->add_option("--rules", gen_cfg.rules, "Rule count")->capture_default_str();
    generate_cmd->add_option("--containers", gen_cfg.containers, "Container count")
        ->capture_default_str();
    generate_cmd->add_option("--links", gen_cfg.links, "Link count")->capture_default_str();
    generate_cmd->add_option("--assignment", gen_assignment, "uniform|random|loaded")
        ->capture_default_str();
    generate_cmd->add_option("--rule-inputs", gen_cfg.rule_inputs, "Input facts per rule")
        ->capture_default_str();
    generate_cmd->add_option("--rule-outputs", gen_cfg.rule_outputs, "Output facts per rule")
        ->capture_default_str();
    generate_cmd->add_option("--seed", gen_cfg.seed, "Generator seed")->capture_default_str();
    generate_cmd->add_option("--out", gen_out, "Output network file")->required();
    generate_cmd->callback([&] {
        gen_cfg.assignment = parse_assignment_method(gen_assignment);
        const Network net = generate(gen_cfg);
        save_network(net, gen_out);
        nlohmann::json manifest;
        manifest["subcommand"] = "generate";
        manifest["config"] = nlohmann::json::parse(config_to_json(gen_cfg));
        manifest["outputs"] = {gen_out};
        write_invocation_manifest(gen_out, manifest);
        std::cout << "wrote " << gen_out << " (" << net.fact_count() << " facts, "
                  << net.rule_count() << " rules, " << net.container_count() << " containers, "
                  << net.link_count() << " links)\n";
    });

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a network file's invariants");
    std::string validate_file;
    bool validate_lint = false;
    validate_cmd->add_option("file", validate_file, "Network file")->required();
    validate_cmd->add_flag("--lint", validate_lint,
                           "Also lint rules against the two-linked-containers rule");
    validate_cmd->callback([&] {
        const Network net = load_network(validate_file);
        const std::vector<Violation> violations =
            validate_lint ? validate_with_lint(net) : net.validate();
        for (const Violation& v : violations) std::cout << v.detail << "\n";
        if (!violations.empty())
            throw Error(Errc::integrity_failure,
                        std::to_string(violations.size()) + " violation(s) found");
        std::cout << "ok\n";
    });

    // infer
    auto* infer_cmd = app.add_subcommand("infer", "Run forward chaining on a network file");
    std::string infer_file;
    std::vector<std::string> infer_sets;
    std::string infer_out;
    infer_cmd->add_option("file", infer_file, "Network file")->required();
    infer_cmd->add_option("--set", infer_sets, "FACT=true|false to apply before inference");
    infer_cmd->add_option("--out", infer_out, "Write the post-inference network here");
    infer_cmd->callback([&] {
        Network net = load_network(infer_file);
        for (const std::string& setting : infer_sets) {
            const auto eq = setting.rfind('=');
            if (eq == std::string::npos)
                throw UsageError("--set expects FACT=true|false, got '" + setting + "'");
            const std::string ref = setting.substr(0, eq);
            const std::string value = setting.substr(eq + 1);
            if (value != "true" && value != "false")
                throw UsageError("--set value must be true or false, got '" + value + "'");
            net.set_fact_value(resolve_fact(net, ref), value == "true");
        }
        const InferenceReport report = run_inference(net);
        std::cout << "rounds: " << report.rounds << "\n";
        std::cout << "rules fired (" << report.rules_fired.size() << "):";
        for (RuleId r : report.rules_fired) std::cout << " " << r.value;
        std::cout << "\n";
        std::cout << "facts changed (" << report.facts_changed.size() << "):\n";
        for (const FactChange& change : report.facts_changed)
            std::cout << "  " << describe_fact(net, change.fact) << ": "
                      << (change.old_value ? "true" : "false") << " -> "
                      << (change.new_value ? "true" : "false") << "\n";
        if (!infer_out.empty()) {
            save_network(net, infer_out);
            nlohmann::json manifest;
            manifest["subcommand"] = "infer";
            manifest["input"] = infer_file;
            manifest["set"] = infer_sets;
            manifest["outputs"] = {infer_out};
            write_invocation_manifest(infer_out, manifest);
        }
    });

    // traverse
    auto* traverse_cmd = app.add_subcommand("traverse", "Search between two facts");
    std::string traverse_file, traverse_from, traverse_to, traverse_via;
    traverse_cmd->add_option("file", traverse_file, "Network file")->required();
    traverse_cmd->add_option("--from", traverse_from, "Start fact (id or description)")->required();
    traverse_cmd->add_option("--to", traverse_to, "End fact (id or description)")->required();
    traverse_cmd->add_option("--via", traverse_via, "rules|links")->required();
    traverse_cmd->callback([&] {
        if (traverse_via != "rules" && traverse_via != "links")
            throw UsageError("--via must be 'rules' or 'links', got '" + traverse_via + "'");
        const Network net = load_network(traverse_file);
        const FactId from = resolve_fact(net, traverse_from);
        const FactId to = resolve_fact(net, traverse_to);
        const bool via_rules = traverse_via == "rules";
        const TraversalResult result =
            via_rules ? rule_traverse(net, from, to) : link_traverse(net, from, to);
        print_traversal(net, result, via_rules);
    });

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the 90-condition benchmark matrix");
    GeneratorConfig bench_base;
    BenchOptions bench_opts;
    std::string bench_records, bench_summary;
    bench_cmd->add_option("--base-seed", bench_base.seed, "Base seed")->capture_default_str();
    bench_cmd->add_option("--runs", bench_opts.runs, "Tests per condition")->capture_default_str();
    bench_cmd->add_option("--facts", bench_base.facts, "Base fact count")->capture_default_str();
    bench_cmd->add_option("--rules", bench_base.rules, "Base rule count")->capture_default_str();
    bench_cmd->add_option("--containers", bench_base.containers, "Base container count")
        ->capture_default_str();
    bench_cmd->add_option("--links", bench_base.links, "Base link count")->capture_default_str();
    bench_cmd->add_option("--rule-inputs", bench_base.rule_inputs, "Input facts per rule")
        ->capture_default_str();
    bench_cmd->add_option("--rule-outputs", bench_base.rule_outputs, "Output facts per rule")
        ->capture_default_str();
    bench_cmd->add_flag("--serial-timing", bench_opts.serial_timing,
                        "Serialize timed traversals process-wide");
    bench_cmd->add_flag("--swap-order", bench_opts.swap_order,
                        "Time link traversal before rule traversal");
    bench_cmd->add_option("--threads", bench_opts.threads, "Worker threads across conditions")
        ->envname("BB_LC_THREADS")
        ->capture_default_str();
    bench_cmd->add_option("--out-records", bench_records, "Per-test CSV output")->required();
    bench_cmd->add_option("--out-summary", bench_summary, "Per-condition CSV output");
    bench_cmd->callback([&] {
        const std::vector<TestRecord> records = run_matrix(bench_base, bench_opts);
        write_csv(records, bench_records);
        std::vector<std::string> outputs{bench_records};
        if (!bench_summary.empty()) {
            write_csv(summarize(records), bench_summary);
            outputs.push_back(bench_summary);
        }
        write_manifest(bench_records + ".manifest.json", bench_base, bench_opts, outputs);
        std::cout << "wrote " << records.size() << " records across "
                  << std::size(kAssignmentMethods) * std::size(kScaleModes) *
                         std::size(kScalePercents)
                  << " conditions\n";
    });

    // summarize
    auto* summarize_cmd = app.add_subcommand("summarize", "Recompute condition summaries from a records CSV");
    std::string summarize_in, summarize_out;
    summarize_cmd->add_option("records", summarize_in, "Records CSV")->required();
    summarize_cmd->add_option("--out", summarize_out, "Summary CSV output")->required();
    summarize_cmd->callback([&] {
        const std::vector<TestRecord> records = read_records_csv(summarize_in);
        write_csv(summarize(records), summarize_out);
        nlohmann::json manifest;
        manifest["subcommand"] = "summarize";
        manifest["input"] = summarize_in;
        manifest["outputs"] = {summarize_out};
        write_invocation_manifest(summarize_out, manifest);
        std::cout << "wrote " << summarize_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bblc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case bblc::Errc::condition_failed:
            return 3;
        case bblc::Errc::io_failure:
        case bblc::Errc::parse_failure:
        case bblc::Errc::integrity_failure:
            return 2;
        default:
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
