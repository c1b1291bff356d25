#include "bblc/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "bblc/traversal.hpp"
#include "bblc/version.hpp"

namespace bblc {

namespace {

// Disjoint tag spaces for seed derivation: the generator's purpose streams
// use small tags, per-run seeds live at 2^33 + run, regeneration retries at
// 3*2^32 + attempt.
constexpr std::uint64_t kRunTagBase = 2ULL << 32;
constexpr std::uint64_t kRegenTagBase = 3ULL << 32;

std::once_flag g_warmup_once;
std::mutex g_timing_mutex;

int method_rank(AssignmentMethod m) { return static_cast<int>(m); }
int mode_rank(ScaleMode m) { return static_cast<int>(m); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

constexpr const char* kRecordHeader =
    "method,mode,pct,run_index,seed,start_fact,end_fact,rule_ticks,link_ticks,"
    "rule_nodes,link_nodes,rule_hops,link_hops";

constexpr const char* kSummaryHeader =
    "method,mode,pct,runs,mean_rule_ticks,mean_link_ticks,mean_rule_nodes,"
    "mean_link_nodes,ratio";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::uint64_t parse_u64(const std::string& text, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::parse_failure, ctx + ": expected an unsigned integer, got '" + text + "'");
    }
}

std::int64_t parse_i64(const std::string& text, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::parse_failure, ctx + ": expected an integer, got '" + text + "'");
    }
}

} // namespace

std::optional<TestRecord> run_single_test(const Network& net, SplitMix64& pair_rng,
                                          const BenchOptions& opts) {
    const std::uint64_t facts = net.fact_count();
    if (facts < 2) return std::nullopt;

    std::optional<std::pair<FactId, FactId>> pair;
    for (std::uint32_t attempt = 0; attempt < opts.max_pair_attempts; ++attempt) {
        const auto a = static_cast<std::uint32_t>(pair_rng.bounded(facts));
        auto b = static_cast<std::uint32_t>(pair_rng.bounded(facts - 1));
        if (b >= a) ++b;
        if (both_traversable(net, FactId{a}, FactId{b})) {
            pair = {FactId{a}, FactId{b}};
            break;
        }
    }
    if (!pair) return std::nullopt;
    const auto [start, end] = *pair;

    // First-call effects (page faults, branch predictors) hit a throwaway
    // traversal once per process instead of the first recorded one.
    std::call_once(g_warmup_once, [&] {
        (void)rule_traverse(net, start, end);
        (void)link_traverse(net, start, end);
    });

    TraversalResult rule_result;
    TraversalResult link_result;
    {
        std::unique_lock<std::mutex> lock(g_timing_mutex, std::defer_lock);
        if (opts.serial_timing) lock.lock();
        if (opts.swap_order) {
            link_result = link_traverse(net, start, end);
            rule_result = rule_traverse(net, start, end);
        } else {
            rule_result = rule_traverse(net, start, end);
            link_result = link_traverse(net, start, end);
        }
    }
    if (!rule_result.found || !link_result.found)
        throw Error(Errc::condition_failed, "timed traversal disagreed with pair reachability");

    TestRecord record;
    record.start_fact = start;
    record.end_fact = end;
    record.rule_ticks = rule_result.ticks;
    record.link_ticks = link_result.ticks;
    record.rule_nodes = rule_result.nodes_visited;
    record.link_nodes = link_result.nodes_visited;
    record.rule_hops = rule_result.hops;
    record.link_hops = link_result.hops;
    return record;
}

std::vector<TestRecord> run_condition(const GeneratorConfig& cfg, std::uint32_t runs,
                                      const ConditionKey& key, const BenchOptions& opts) {
    if (runs < 1) throw Error(Errc::invalid_config, "run_condition requires runs >= 1");
    std::vector<TestRecord> records;
    records.reserve(runs);
    for (std::uint32_t run = 0; run < runs; ++run) {
        const std::uint64_t run_seed = derive_seed(cfg.seed, kRunTagBase + run);
        GeneratorConfig run_cfg = cfg;
        std::optional<TestRecord> record;
        for (std::uint32_t attempt = 0; attempt <= opts.max_regenerations; ++attempt) {
            run_cfg.seed = attempt == 0 ? run_seed : derive_seed(run_seed, kRegenTagBase + attempt);
            const Network net = generate(run_cfg);
            SplitMix64 pair_rng = stream_for(run_cfg.seed, StreamPurpose::pair_sampling);
            record = run_single_test(net, pair_rng, opts);
            if (record) break;
        }
        if (!record) {
            std::ostringstream msg;
            msg << "condition " << to_string(key.method) << "/" << to_string(key.mode) << "/"
                << key.pct << " run " << run << ": no dually traversable pair after "
                << (opts.max_regenerations + 1) << " networks (base seed " << cfg.seed << ")";
            throw Error(Errc::condition_failed, msg.str());
        }
        record->method = key.method;
        record->mode = key.mode;
        record->pct = key.pct;
        record->run_index = run;
        record->seed = run_cfg.seed;
        records.push_back(*record);
    }
    return records;
}

std::vector<TestRecord> run_matrix(const GeneratorConfig& base, const BenchOptions& opts) {
    if (opts.runs < 1) throw Error(Errc::invalid_config, "run_matrix requires runs >= 1");

    struct Condition {
        ConditionKey key;
        GeneratorConfig cfg;
    };
    std::vector<Condition> conditions;
    for (AssignmentMethod method : kAssignmentMethods) {
        for (ScaleMode mode : kScaleModes) {
            for (std::uint32_t pct : kScalePercents) {
                GeneratorConfig cfg = scale_config(base, mode, pct);
                cfg.assignment = method;
                conditions.push_back(Condition{ConditionKey{method, mode, pct}, cfg});
            }
        }
    }

    std::vector<std::vector<TestRecord>> per_condition(conditions.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(conditions.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < conditions.size(); ++i)
            per_condition[i] = run_condition(conditions[i].cfg, opts.runs, conditions[i].key, opts);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::mutex error_mutex;
        std::exception_ptr first_error;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= conditions.size()) return;
                    try {
                        per_condition[i] =
                            run_condition(conditions[i].cfg, opts.runs, conditions[i].key, opts);
                    } catch (...) {
                        std::lock_guard<std::mutex> guard(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<TestRecord> records;
    records.reserve(conditions.size() * opts.runs);
    for (const auto& chunk : per_condition)
        records.insert(records.end(), chunk.begin(), chunk.end());
    return records;
}

std::vector<ConditionSummary> summarize(const std::vector<TestRecord>& records) {
    if (records.empty())
        throw Error(Errc::empty_input, "summarize requires at least one record");

    struct Accumulator {
        std::uint64_t runs = 0;
        double rule_ticks = 0, link_ticks = 0, rule_nodes = 0, link_nodes = 0;
    };
    std::map<std::tuple<int, int, std::uint32_t>, Accumulator> groups;
    for (const TestRecord& r : records) {
        Accumulator& acc = groups[{method_rank(r.method), mode_rank(r.mode), r.pct}];
        ++acc.runs;
        acc.rule_ticks += static_cast<double>(r.rule_ticks);
        acc.link_ticks += static_cast<double>(r.link_ticks);
        acc.rule_nodes += static_cast<double>(r.rule_nodes);
        acc.link_nodes += static_cast<double>(r.link_nodes);
    }

    std::vector<ConditionSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        ConditionSummary s;
        s.method = static_cast<AssignmentMethod>(std::get<0>(key));
        s.mode = static_cast<ScaleMode>(std::get<1>(key));
        s.pct = std::get<2>(key);
        s.runs = acc.runs;
        const double n = static_cast<double>(acc.runs);
        s.mean_rule_ticks = acc.rule_ticks / n;
        s.mean_link_ticks = acc.link_ticks / n;
        s.mean_rule_nodes = acc.rule_nodes / n;
        s.mean_link_nodes = acc.link_nodes / n;
        s.ratio = s.mean_rule_ticks / s.mean_link_ticks;
        out.push_back(s);
    }
    return out;
}

void write_csv(const std::vector<TestRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << kRecordHeader << "\n";
    for (const TestRecord& r : records) {
        out << to_string(r.method) << ',' << to_string(r.mode) << ',' << r.pct << ','
            << r.run_index << ',' << r.seed << ',' << r.start_fact.value << ','
            << r.end_fact.value << ',' << r.rule_ticks << ',' << r.link_ticks << ','
            << r.rule_nodes << ',' << r.link_nodes << ',' << r.rule_hops << ',' << r.link_hops
            << "\n";
    }
    if (!out) throw Error(Errc::io_failure, "write to '" + path + "' failed");
}

void write_csv(const std::vector<ConditionSummary>& summaries, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << kSummaryHeader << "\n";
    for (const ConditionSummary& s : summaries) {
        out << to_string(s.method) << ',' << to_string(s.mode) << ',' << s.pct << ',' << s.runs
            << ',' << format_double(s.mean_rule_ticks) << ',' << format_double(s.mean_link_ticks)
            << ',' << format_double(s.mean_rule_nodes) << ',' << format_double(s.mean_link_nodes)
            << ',' << format_double(s.ratio) << "\n";
    }
    if (!out) throw Error(Errc::io_failure, "write to '" + path + "' failed");
}

std::vector<TestRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::parse_failure, path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordHeader)
        throw Error(Errc::parse_failure, path + ": unexpected header '" + line + "'");

    std::vector<TestRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        const std::string ctx = path + ":" + std::to_string(line_no);
        if (f.size() != 13)
            throw Error(Errc::parse_failure, ctx + ": expected 13 fields, got " + std::to_string(f.size()));
        TestRecord r;
        r.method = parse_assignment_method(f[0]);
        r.mode = parse_scale_mode(f[1]);
        r.pct = static_cast<std::uint32_t>(parse_u64(f[2], ctx));
        r.run_index = static_cast<std::uint32_t>(parse_u64(f[3], ctx));
        r.seed = parse_u64(f[4], ctx);
        r.start_fact = FactId{static_cast<std::uint32_t>(parse_u64(f[5], ctx))};
        r.end_fact = FactId{static_cast<std::uint32_t>(parse_u64(f[6], ctx))};
        r.rule_ticks = parse_i64(f[7], ctx);
        r.link_ticks = parse_i64(f[8], ctx);
        r.rule_nodes = parse_u64(f[9], ctx);
        r.link_nodes = parse_u64(f[10], ctx);
        r.rule_hops = parse_u64(f[11], ctx);
        r.link_hops = parse_u64(f[12], ctx);
        records.push_back(r);
    }
    return records;
}

void write_manifest(const std::string& path, const GeneratorConfig& base,
                    const BenchOptions& opts, const std::vector<std::string>& outputs) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["base_config"] = nlohmann::json::parse(config_to_json(base));
    doc["runs"] = opts.runs;
    doc["swap_order"] = opts.swap_order;
    doc["serial_timing"] = opts.serial_timing;
    doc["threads"] = opts.threads;
    doc["warmup_traversal_per_engine"] = true;
    doc["pair_attempt_limit"] = opts.max_pair_attempts;
    doc["regeneration_limit"] = opts.max_regenerations;
    doc["duplicate_links_allowed"] = true;
    doc["self_links_allowed"] = false;
    doc["outputs"] = outputs;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw Error(Errc::io_failure, "write to '" + path + "' failed");
}

} // namespace bblc
