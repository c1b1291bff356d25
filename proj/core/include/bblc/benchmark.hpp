#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bblc/generator.hpp"
#include "bblc/network.hpp"
#include "bblc/rng.hpp"

namespace bblc {

/// One benchmark test: a fresh generated network, one dually traversable fact
/// pair, one timed traversal per engine. Counter fields (nodes, hops, the
/// pair itself) are pure functions of the seeds; the tick fields are not.
struct TestRecord {
    AssignmentMethod method = AssignmentMethod::uniform;
    ScaleMode mode = ScaleMode::all;
    std::uint32_t pct = 100;
    std::uint32_t run_index = 0;
    std::uint64_t seed = 0;
    FactId start_fact;
    FactId end_fact;
    std::int64_t rule_ticks = 0;
    std::int64_t link_ticks = 0;
    std::uint64_t rule_nodes = 0;
    std::uint64_t link_nodes = 0;
    std::uint64_t rule_hops = 0;
    std::uint64_t link_hops = 0;
};

struct ConditionSummary {
    AssignmentMethod method = AssignmentMethod::uniform;
    ScaleMode mode = ScaleMode::all;
    std::uint32_t pct = 100;
    std::uint64_t runs = 0;
    double mean_rule_ticks = 0;
    double mean_link_ticks = 0;
    double mean_rule_nodes = 0;
    double mean_link_nodes = 0;
    double ratio = 0; // mean_rule_ticks / mean_link_ticks
};

struct ConditionKey {
    AssignmentMethod method = AssignmentMethod::uniform;
    ScaleMode mode = ScaleMode::all;
    std::uint32_t pct = 100;
};

struct BenchOptions {
    std::uint32_t runs = 100;
    bool swap_order = false;    // time the link traversal first instead
    bool serial_timing = false; // serialize all timed traversals process-wide
    unsigned threads = 1;       // condition on workers; counters are unaffected
    std::uint32_t max_pair_attempts = 10000;
    std::uint32_t max_regenerations = 25;
};

inline constexpr std::uint32_t kScalePercents[] = {50, 75, 100, 125, 150, 200};
inline constexpr ScaleMode kScaleModes[] = {ScaleMode::facts, ScaleMode::rules,
                                            ScaleMode::containers, ScaleMode::links,
                                            ScaleMode::all};
inline constexpr AssignmentMethod kAssignmentMethods[] = {
    AssignmentMethod::uniform, AssignmentMethod::random, AssignmentMethod::loaded};

/// Samples ordered fact pairs from pair_rng until one is traversable by both
/// engines (up to opts.max_pair_attempts), then times one rule traversal and
/// one link traversal over it. Returns nullopt when no pair qualifies, which
/// tells the caller to regenerate the network under a fresh derived seed.
/// Condition metadata and the seed field are left for the caller to stamp.
std::optional<TestRecord> run_single_test(const Network& net, SplitMix64& pair_rng,
                                          const BenchOptions& opts = {});

/// Runs `runs` tests for one condition. Each run generates a fresh network
/// from a seed derived from (cfg.seed, run index); a run whose network has no
/// dually traversable pair is regenerated up to opts.max_regenerations times
/// before the whole condition fails.
std::vector<TestRecord> run_condition(const GeneratorConfig& cfg, std::uint32_t runs,
                                      const ConditionKey& key, const BenchOptions& opts = {});

/// The full experiment matrix: three assignment methods x five scale modes x
/// six percentages = 90 conditions, opts.runs tests each, in fixed condition
/// order. base.assignment is overridden per condition.
std::vector<TestRecord> run_matrix(const GeneratorConfig& base, const BenchOptions& opts = {});

/// Per-condition arithmetic means, ordered by method, mode, then percentage.
std::vector<ConditionSummary> summarize(const std::vector<TestRecord>& records);

void write_csv(const std::vector<TestRecord>& records, const std::string& path);
void write_csv(const std::vector<ConditionSummary>& summaries, const std::string& path);
std::vector<TestRecord> read_records_csv(const std::string& path);

/// Provenance document emitted alongside benchmark outputs: the base config,
/// run counts, ordering/serialization flags and the tool version.
void write_manifest(const std::string& path, const GeneratorConfig& base,
                    const BenchOptions& opts, const std::vector<std::string>& outputs);

} // namespace bblc
