#include <doctest.h>

#include <algorithm>
#include <functional>

#include "bblc/serialization.hpp"
#include "bblc/traversal.hpp"
#include "helpers.hpp"

using namespace bblc;
using bblc::testing::fixture_path;

namespace {

/// Exhaustive shortest-path oracle: enumerates every simple path with a DFS
/// and returns the minimum edge count, or -1 when unreachable. Test-only and
/// deliberately independent of the BFS under test.
int brute_force_shortest(std::size_t nodes,
                         const std::function<std::vector<std::uint32_t>(std::uint32_t)>& next,
                         std::uint32_t from, std::uint32_t to) {
    if (from == to) return 0;
    int best = -1;
    std::vector<char> on_path(nodes, 0);
    std::function<void(std::uint32_t, int)> walk = [&](std::uint32_t u, int depth) {
        if (u == to) {
            if (best < 0 || depth < best) best = depth;
            return;
        }
        on_path[u] = 1;
        for (std::uint32_t v : next(u))
            if (!on_path[v]) walk(v, depth + 1);
        on_path[u] = 0;
    };
    walk(from, 0);
    return best;
}

std::function<std::vector<std::uint32_t>(std::uint32_t)> rule_neighbors(const Network& net) {
    return [&net](std::uint32_t u) {
        std::vector<std::uint32_t> out;
        for (const RuleEdge& e : net.rule_edges_from(FactId{u})) out.push_back(e.to.value);
        return out;
    };
}

std::function<std::vector<std::uint32_t>(std::uint32_t)> link_neighbors(const Network& net) {
    return [&net](std::uint32_t u) {
        std::vector<std::uint32_t> out;
        for (LinkId l : net.outgoing_links(ContainerId{u})) out.push_back(net.link(l).end.value);
        return out;
    };
}

} // namespace

TEST_CASE("identity traversal finds itself with zero hops") {
    Network net;
    const FactId f = net.add_fact("f", true);
    const TraversalResult result = rule_traverse(net, f, f);
    CHECK(result.found);
    CHECK(result.hops == 0);
    CHECK(result.path == std::vector<std::uint32_t>{f.value});
    CHECK(result.nodes_visited == 1);
    CHECK(result.ticks >= 0);
}

TEST_CASE("three-fact chain: path, hops, and direction") {
    Network net;
    const FactId f1 = net.add_fact("f1", true);
    const FactId f2 = net.add_fact("f2", false);
    const FactId f3 = net.add_fact("f3", false);
    const RuleId r1 = net.add_rule({{f1, true}}, {{f2, true}});
    const RuleId r2 = net.add_rule({{f2, true}}, {{f3, true}});

    const TraversalResult forward = rule_traverse(net, f1, f3);
    CHECK(forward.found);
    CHECK(forward.hops == 2);
    CHECK(forward.path ==
          std::vector<std::uint32_t>{f1.value, r1.value, f2.value, r2.value, f3.value});
    CHECK(forward.hops <= forward.nodes_visited);

    // Rule edges run input -> output only.
    const TraversalResult backward = rule_traverse(net, f3, f1);
    CHECK_FALSE(backward.found);
    CHECK(backward.path.empty());
    CHECK(backward.hops == 0);

    // Closure agrees: exactly three reachable off-diagonal pairs.
    const BoolMatrix closure = reachability_closure(net, GraphKind::rules);
    int off_diagonal = 0;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            if (a != b && closure.at(a, b)) ++off_diagonal;
    CHECK(off_diagonal == 3);
    for (std::size_t a = 0; a < 3; ++a) CHECK(closure.at(a, a));
}

TEST_CASE("link traversal enters and leaves through containers") {
    Network net = load_network(fixture_path("employee.bb"));
    const FactId jane_name{6};
    const FactId office_name{8};

    const TraversalResult to_office = link_traverse(net, jane_name, office_name);
    CHECK(to_office.found);
    CHECK(to_office.hops == 1);

    // Same container: zero hops, no link needed.
    const FactId works_sat{7};
    const TraversalResult same = link_traverse(net, jane_name, works_sat);
    CHECK(same.found);
    CHECK(same.hops == 0);
    CHECK(same.nodes_visited == 1);

    // A fact with no container cannot enter the link graph.
    Network loose_net;
    const FactId loose = loose_net.add_fact("loose", true);
    const FactId housed = loose_net.add_fact("housed", true);
    const ContainerId c = loose_net.add_container("c");
    loose_net.assign_fact(housed, c);
    CHECK_FALSE(link_traverse(loose_net, loose, housed).found);
    CHECK_FALSE(link_traverse(loose_net, housed, loose).found);
    CHECK_FALSE(link_traverse(loose_net, loose, loose).found);
}

TEST_CASE("single link is traversable only in its direction") {
    Network net;
    const ContainerId ca = net.add_container("A");
    const ContainerId cb = net.add_container("B");
    const FactId fa = net.add_fact("in A", true);
    const FactId fb = net.add_fact("in B", true);
    net.assign_fact(fa, ca);
    net.assign_fact(fb, cb);
    net.add_link("only", ca, cb);

    CHECK(link_traverse(net, fa, fb).found);
    CHECK_FALSE(link_traverse(net, fb, fa).found);
}

TEST_CASE("unknown facts are rejected") {
    Network net;
    net.add_fact("only", true);
    CHECK_THROWS_AS(rule_traverse(net, FactId{0}, FactId{5}), Error);
    CHECK_THROWS_AS(link_traverse(net, FactId{5}, FactId{0}), Error);
    CHECK_THROWS_AS(both_traversable(net, FactId{5}, FactId{5}), Error);
}

TEST_CASE("empty network yields an empty closure") {
    const Network net;
    CHECK(reachability_closure(net, GraphKind::rules).size() == 0);
    CHECK(reachability_closure(net, GraphKind::links).size() == 0);
}

TEST_CASE("traversal found-ness matches the closure oracle on random networks") {
    SplitMix64 meta(42);
    for (int i = 0; i < 300; ++i) {
        const GeneratorConfig cfg = bblc::testing::small_config(meta);
        const Network net = generate(cfg);
        const BoolMatrix rules = reachability_closure(net, GraphKind::rules);
        const BoolMatrix links = reachability_closure(net, GraphKind::links);
        for (std::uint32_t a = 0; a < net.fact_count(); ++a) {
            for (std::uint32_t b = 0; b < net.fact_count(); ++b) {
                const TraversalResult by_rules = rule_traverse(net, FactId{a}, FactId{b});
                const TraversalResult by_links = link_traverse(net, FactId{a}, FactId{b});
                REQUIRE(by_rules.found == rules.at(a, b));
                REQUIRE(by_links.found == links.at(a, b));
                REQUIRE(both_traversable(net, FactId{a}, FactId{b}) ==
                        (rules.at(a, b) && links.at(a, b)));
            }
        }
    }
}

TEST_CASE("returned hops equal the exhaustive shortest path") {
    SplitMix64 meta(4242);
    for (int i = 0; i < 120; ++i) {
        GeneratorConfig cfg = bblc::testing::small_config(meta);
        cfg.facts = std::min<std::uint32_t>(cfg.facts, 10);
        if (cfg.facts < cfg.rule_inputs + cfg.rule_outputs) cfg.rules = 0;
        const Network net = generate(cfg);

        const auto rule_next = rule_neighbors(net);
        const auto link_next = link_neighbors(net);
        for (std::uint32_t a = 0; a < net.fact_count(); ++a) {
            for (std::uint32_t b = 0; b < net.fact_count(); ++b) {
                const TraversalResult by_rules = rule_traverse(net, FactId{a}, FactId{b});
                const int expected = brute_force_shortest(net.fact_count(), rule_next, a, b);
                if (expected < 0) {
                    REQUIRE_FALSE(by_rules.found);
                } else {
                    REQUIRE(by_rules.found);
                    REQUIRE(by_rules.hops == static_cast<std::size_t>(expected));
                }

                const TraversalResult by_links = link_traverse(net, FactId{a}, FactId{b});
                const auto ca = net.fact(FactId{a}).container;
                const auto cb = net.fact(FactId{b}).container;
                if (!ca || !cb) {
                    REQUIRE_FALSE(by_links.found);
                    continue;
                }
                const int container_hops = brute_force_shortest(
                    net.container_count(), link_next, ca->value, cb->value);
                if (container_hops < 0) {
                    REQUIRE_FALSE(by_links.found);
                } else {
                    REQUIRE(by_links.found);
                    REQUIRE(by_links.hops == static_cast<std::size_t>(container_hops));
                }
            }
        }
    }
}

TEST_CASE("visit counters are deterministic; ticks are merely nonnegative") {
    GeneratorConfig cfg;
    cfg.facts = 200;
    cfg.rules = 300;
    cfg.containers = 10;
    cfg.links = 30;
    cfg.seed = 9;
    const Network net = generate(cfg);

    FactId from{3}, to{77};
    const TraversalResult first = rule_traverse(net, from, to);
    for (int i = 0; i < 5; ++i) {
        const TraversalResult again = rule_traverse(net, from, to);
        CHECK(again.nodes_visited == first.nodes_visited);
        CHECK(again.hops == first.hops);
        CHECK(again.found == first.found);
        CHECK(again.path == first.path);
        CHECK(again.ticks >= 0);
    }
    const TraversalResult linkwise = link_traverse(net, from, to);
    for (int i = 0; i < 5; ++i)
        CHECK(link_traverse(net, from, to).nodes_visited == linkwise.nodes_visited);
}

TEST_CASE("a link predicate restricts which links the search may follow") {
    const Network net = load_network(fixture_path("employee.bb"));
    const FactId jane_name{6};
    const FactId office_name{8};

    const auto works_links = [](const Link& l) { return l.description == "works at"; };
    const auto manage_links = [](const Link& l) { return l.description == "manages"; };

    CHECK(link_traverse(net, jane_name, office_name, works_links).found);
    CHECK_FALSE(link_traverse(net, jane_name, office_name, manage_links).found);

    // A null predicate behaves like the unfiltered engine.
    const TraversalResult open = link_traverse(net, jane_name, office_name, nullptr);
    const TraversalResult plain = link_traverse(net, jane_name, office_name);
    CHECK(open.found == plain.found);
    CHECK(open.hops == plain.hops);
    CHECK(open.nodes_visited == plain.nodes_visited);
}

TEST_CASE("equipment fixture: computer 1 reaches server 1 in both directions") {
    const Network net = load_network(fixture_path("equipment.bb"));
    const FactId computer1_os{8};
    const FactId server_page{6};

    const TraversalResult there = link_traverse(net, computer1_os, server_page);
    CHECK(there.found);
    CHECK(there.hops == 2); // computer 1 -> router 1 -> server 1

    const TraversalResult back = link_traverse(net, server_page, computer1_os);
    CHECK(back.found);
    CHECK(back.hops == 2);
}
