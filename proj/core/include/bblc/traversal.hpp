#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bblc/network.hpp"

namespace bblc {

/// Outcome of one instrumented traversal.
///
/// `path` alternates node and edge ids: fact, rule, fact, ... for rule
/// traversal and container, link, container, ... for link traversal.
/// `nodes_visited` counts the distinct nodes expanded (dequeued) by the
/// search, and `ticks` is wall time in 100-nanosecond units read from the
/// monotonic clock around the search itself, path reconstruction included.
struct TraversalResult {
    bool found = false;
    std::vector<std::uint32_t> path;
    std::size_t hops = 0;
    std::size_t nodes_visited = 0;
    std::int64_t ticks = 0;
};

/// Breadth-first search over the directed rule graph (an edge runs from each
/// input fact of a rule to each of its output facts). Returns a shortest path
/// by edge count. The search expands nodes in queue order until the target
/// itself is dequeued, so nodes_visited reflects the full frontier the search
/// had to process, not just the nodes on the returned path. start == end is
/// found with zero hops.
TraversalResult rule_traverse(const Network& net, FactId start, FactId end);

/// Breadth-first search over the directed link graph, entered through the
/// facts' containers. A fact without a container is unreachable; two facts in
/// the same container are found with zero hops. Same expansion and counting
/// discipline as rule_traverse.
TraversalResult link_traverse(const Network& net, FactId start, FactId end);

/// Filtered variant: only links the predicate accepts are followed, e.g. to
/// restrict a search to links described as "manages". The unfiltered
/// overload above is the benchmark path; descriptions never gate it.
TraversalResult link_traverse(const Network& net, FactId start, FactId end,
                              const std::function<bool(const Link&)>& follow);

/// True iff both engines can reach end from start. Untimed, counter-free
/// reachability; used by benchmark pair sampling.
bool both_traversable(const Network& net, FactId start, FactId end);

enum class GraphKind { rules, links };

/// Dense boolean reachability matrix indexed by fact id.
class BoolMatrix {
public:
    BoolMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}
    bool at(std::size_t a, std::size_t b) const { return cells_[a * n_ + b] != 0; }
    void set(std::size_t a, std::size_t b) { cells_[a * n_ + b] = 1; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<char> cells_;
};

/// Full fact-to-fact transitive closure over the selected graph, computed by
/// repeated edge relaxation with no early exit. Serves as the independent
/// reachability oracle: closure.at(a, b) equals the corresponding traversal's
/// found flag for every ordered pair (for the link graph that means facts
/// without containers reach nothing, themselves included).
BoolMatrix reachability_closure(const Network& net, GraphKind graph);

} // namespace bblc
