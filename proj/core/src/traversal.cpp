#include "bblc/traversal.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace bblc {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ticks(Clock::time_point begin, Clock::time_point end) {
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count();
    return ns / 100;
}

/// BFS core shared by both engines. EdgeVisitor is called as
/// visit(u, fn(edge_id, v)) and must enumerate u's outgoing edges in
/// ascending (edge id, target id) order, which the network's indexes provide.
/// The search dequeues until `end` itself is dequeued; nodes_visited is the
/// number of dequeued nodes.
template <typename EdgeVisitor>
void bfs(std::uint32_t node_count, std::uint32_t start, std::uint32_t end,
         EdgeVisitor&& visit_edges, TraversalResult& result) {
    if (start == end) {
        result.found = true;
        result.path = {start};
        result.hops = 0;
        result.nodes_visited = 1;
        return;
    }
    std::vector<std::uint32_t> prev_node(node_count, kUnseen);
    std::vector<std::uint32_t> via_edge(node_count, kUnseen);
    std::vector<std::uint32_t> queue;
    queue.reserve(64);
    queue.push_back(start);
    prev_node[start] = start;
    std::size_t head = 0;
    std::size_t dequeued = 0;
    while (head < queue.size()) {
        const std::uint32_t u = queue[head++];
        ++dequeued;
        if (u == end) {
            result.found = true;
            result.nodes_visited = dequeued;
            // Walk the parent chain; first discovery order makes it shortest.
            std::vector<std::uint32_t> reversed;
            std::uint32_t cursor = end;
            while (cursor != start) {
                reversed.push_back(cursor);
                reversed.push_back(via_edge[cursor]);
                cursor = prev_node[cursor];
            }
            reversed.push_back(start);
            result.path.assign(reversed.rbegin(), reversed.rend());
            result.hops = (result.path.size() - 1) / 2;
            return;
        }
        visit_edges(u, [&](std::uint32_t edge, std::uint32_t v) {
            if (prev_node[v] != kUnseen) return;
            prev_node[v] = u;
            via_edge[v] = edge;
            queue.push_back(v);
        });
    }
    result.found = false;
    result.nodes_visited = dequeued;
}

/// Early-exit reachability, used where no counters are reported.
template <typename EdgeVisitor>
bool reachable(std::uint32_t node_count, std::uint32_t start, std::uint32_t end,
               EdgeVisitor&& visit_edges) {
    if (start == end) return true;
    std::vector<char> seen(node_count, 0);
    std::vector<std::uint32_t> queue;
    queue.push_back(start);
    seen[start] = 1;
    std::size_t head = 0;
    bool found = false;
    while (head < queue.size() && !found) {
        const std::uint32_t u = queue[head++];
        visit_edges(u, [&](std::uint32_t, std::uint32_t v) {
            if (seen[v]) return;
            if (v == end) found = true;
            seen[v] = 1;
            queue.push_back(v);
        });
    }
    return found;
}

struct RuleGraph {
    const Network& net;
    template <typename Fn>
    void operator()(std::uint32_t u, Fn&& fn) const {
        for (const RuleEdge& e : net.rule_edges_from(FactId{u}))
            fn(e.rule.value, e.to.value);
    }
};

struct LinkGraph {
    const Network& net;
    template <typename Fn>
    void operator()(std::uint32_t u, Fn&& fn) const {
        for (const LinkId l : net.outgoing_links(ContainerId{u}))
            fn(l.value, net.link(l).end.value);
    }
};

bool link_reachable(const Network& net, FactId start, FactId end) {
    const auto cs = net.fact(start).container;
    const auto ce = net.fact(end).container;
    if (!cs || !ce) return false;
    return reachable(static_cast<std::uint32_t>(net.container_count()), cs->value, ce->value,
                     LinkGraph{net});
}

bool rule_reachable(const Network& net, FactId start, FactId end) {
    return reachable(static_cast<std::uint32_t>(net.fact_count()), start.value, end.value,
                     RuleGraph{net});
}

} // namespace

TraversalResult rule_traverse(const Network& net, FactId start, FactId end) {
    net.fact(start);
    net.fact(end);
    TraversalResult result;
    const auto begin = Clock::now();
    bfs(static_cast<std::uint32_t>(net.fact_count()), start.value, end.value, RuleGraph{net},
        result);
    result.ticks = elapsed_ticks(begin, Clock::now());
    return result;
}

TraversalResult link_traverse(const Network& net, FactId start, FactId end) {
    net.fact(start);
    net.fact(end);
    TraversalResult result;
    const auto begin = Clock::now();
    const auto cs = net.fact(start).container;
    const auto ce = net.fact(end).container;
    if (cs && ce) {
        bfs(static_cast<std::uint32_t>(net.container_count()), cs->value, ce->value,
            LinkGraph{net}, result);
    }
    result.ticks = elapsed_ticks(begin, Clock::now());
    return result;
}

TraversalResult link_traverse(const Network& net, FactId start, FactId end,
                              const std::function<bool(const Link&)>& follow) {
    net.fact(start);
    net.fact(end);
    TraversalResult result;
    const auto begin = Clock::now();
    const auto cs = net.fact(start).container;
    const auto ce = net.fact(end).container;
    if (cs && ce) {
        const auto filtered = [&](std::uint32_t u, auto&& fn) {
            for (const LinkId l : net.outgoing_links(ContainerId{u})) {
                const Link& link = net.link(l);
                if (!follow || follow(link)) fn(l.value, link.end.value);
            }
        };
        bfs(static_cast<std::uint32_t>(net.container_count()), cs->value, ce->value, filtered,
            result);
    }
    result.ticks = elapsed_ticks(begin, Clock::now());
    return result;
}

bool both_traversable(const Network& net, FactId start, FactId end) {
    net.fact(start);
    net.fact(end);
    return rule_reachable(net, start, end) && link_reachable(net, start, end);
}

BoolMatrix reachability_closure(const Network& net, GraphKind graph) {
    const std::size_t facts = net.fact_count();
    BoolMatrix closure(facts);
    if (graph == GraphKind::rules) {
        for (std::size_t a = 0; a < facts; ++a) closure.set(a, a);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t a = 0; a < facts; ++a) {
                for (std::uint32_t u = 0; u < facts; ++u) {
                    if (!closure.at(a, u)) continue;
                    for (const RuleEdge& e : net.rule_edges_from(FactId{u})) {
                        if (!closure.at(a, e.to.value)) {
                            closure.set(a, e.to.value);
                            changed = true;
                        }
                    }
                }
            }
        }
        return closure;
    }

    // Link graph: relax a container-level closure, then lift through the
    // facts' container assignments. Unassigned facts reach nothing.
    const std::size_t containers = net.container_count();
    BoolMatrix container_closure(containers);
    for (std::size_t c = 0; c < containers; ++c) container_closure.set(c, c);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < containers; ++a) {
            for (std::uint32_t u = 0; u < containers; ++u) {
                if (!container_closure.at(a, u)) continue;
                for (const LinkId l : net.outgoing_links(ContainerId{u})) {
                    const std::uint32_t v = net.link(l).end.value;
                    if (!container_closure.at(a, v)) {
                        container_closure.set(a, v);
                        changed = true;
                    }
                }
            }
        }
    }
    for (std::size_t a = 0; a < facts; ++a) {
        const auto ca = net.facts()[a].container;
        if (!ca) continue;
        for (std::size_t b = 0; b < facts; ++b) {
            const auto cb = net.facts()[b].container;
            if (cb && container_closure.at(ca->value, cb->value)) closure.set(a, b);
        }
    }
    return closure;
}

} // namespace bblc
