// Copyright 2026 The postman-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace postman;
using testkit::figure2_graph;

namespace {

// Every perfect pairing of `vs`, by a different recursion than the oracle
// (pairs the last remaining vertex first).
void all_pairings(std::vector<Vertex> vs, std::vector<std::pair<Vertex, Vertex>>& cur,
                  std::vector<std::vector<std::pair<Vertex, Vertex>>>& out) {
    if (vs.empty()) {
        out.push_back(cur);
        return;
    }
    const Vertex last = vs.back();
    vs.pop_back();
    for (std::size_t k = 0; k < vs.size(); ++k) {
        auto rest = vs;
        const Vertex other = rest[k];
        rest.erase(rest.begin() + static_cast<long>(k));
        cur.push_back({std::min(last, other), std::max(last, other)});
        all_pairings(rest, cur, out);
        cur.pop_back();
    }
}

Bits encode_pairing(const VariableRegistry& reg, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    Bits x(reg.size(), 0);
    for (const auto& [a, b] : pairs) x[reg.at(make_pair_var(a, b))] = 1;
    return x;
}

}  // namespace

TEST_CASE("pairing QUBO of the example graph") {
    const auto [q, reg] = build_pairing_qubo(figure2_graph(), 10.0);
    REQUIRE(reg.size() == 1);
    CHECK(to_string(reg.label(0)) == "x(3,5)");
    CHECK(q.energy(Bits{0}) == 10);
    CHECK(q.energy(Bits{1}) == 9);
    const auto model = build_pairing_model(figure2_graph());
    CHECK(model.objective.linear(0) == 9);
}

TEST_CASE("pairing QUBO size is d choose 2") {
    std::mt19937_64 rng(31);
    for (int d : {2, 4, 6, 8, 10}) {
        const Graph g = testkit::random_with_odd_count(rng, d);
        CHECK(build_pairing_model(g).registry.size() == d * (d - 1) / 2);
    }
}

TEST_CASE("two odd vertices always pair") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = testkit::random_with_odd_count(rng, 2);
        const auto [q, reg] = build_pairing_qubo(g, default_pairing_penalty(g));
        CHECK(brute_force(q).best_assignment == Bits{1});
    }
}

TEST_CASE("brute-force pairing minimum equals the enumeration oracle") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 6; ++trial) {
        const Graph g = testkit::random_with_odd_count(rng, trial < 3 ? 4 : 6);
        const auto [q, reg] = build_pairing_qubo(g, default_pairing_penalty(g));
        const auto r = brute_force(q);
        const Pairing p = decode_pairing(r.best_assignment, reg);
        const auto [best, w] = exact_pairing_oracle(g);
        CHECK(pairing_weight(ShortestPaths(g), p) == w);
    }
}

TEST_CASE("penalty above twice the largest distance forces perfect pairings") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 8; ++trial) {
        const Graph g = testkit::random_with_odd_count(rng, trial < 4 ? 4 : 6);
        const PairingInstance inst(g);
        const auto [q, reg] = build_pairing_qubo(g, 2.0 * inst.max_distance() + 1.0);
        const double ground = brute_force(q).best_energy;
        // every assignment at the ground energy decodes
        testkit::for_each_assignment(reg.size(), [&](const Bits& x) {
            if (q.energy(x) == ground) CHECK_NOTHROW(decode_pairing(x, reg));
        });
    }
}

TEST_CASE("decode pairing") {
    const auto [q, reg] = build_pairing_qubo(figure2_graph(), 10.0);
    CHECK(decode_pairing(Bits{1}, reg).pairs == std::vector<std::pair<Vertex, Vertex>>{{3, 5}});
    CHECK_THROWS_AS(decode_pairing(Bits{0}, reg), Error);
    CHECK_THROWS_AS(decode_pairing(Bits{0, 1}, reg), Error);

    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = testkit::random_with_odd_count(rng, 6);
        const auto model = build_pairing_model(g);
        std::vector<std::vector<std::pair<Vertex, Vertex>>> pairings;
        std::vector<std::pair<Vertex, Vertex>> cur;
        all_pairings(odd_degree_vertices(g), cur, pairings);
        CHECK(pairings.size() == 15);
        for (auto pairs : pairings) {
            std::sort(pairs.begin(), pairs.end());
            const Bits x = encode_pairing(model.registry, pairs);
            CHECK(decode_pairing(x, model.registry).pairs == pairs);
            CHECK(model.violation(x) == 0);
        }
        Bits two = encode_pairing(model.registry, pairings.front());
        two[0] ^= 1;
        CHECK_THROWS_AS(decode_pairing(two, model.registry), Error);
        CHECK(model.violation(two) > 0);
    }
}

TEST_CASE("augment and route on the example graph") {
    const Graph g = figure2_graph();
    const RouteSolution r = augment_and_route(g, Pairing{{{3, 5}}});
    CHECK(r.objective_weight == 32);
    CHECK(r.validity.valid());
    const auto seq = vertex_sequence(r.walks.front());
    CHECK(seq.front() == seq.back());
    CHECK(seq.front() == 0);
    // the added edge comes back as the path 3 -> 2 -> 5 (or its reverse)
    bool found = false;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i)
        found = found || (seq[i] == 3 && seq[i + 1] == 2 && seq[i + 2] == 5) ||
                (seq[i] == 5 && seq[i + 1] == 2 && seq[i + 2] == 3);
    CHECK(found);
    CHECK_THROWS_AS(augment_and_route(g, Pairing{}), Error);
}

TEST_CASE("augment and route on Eulerian and random graphs") {
    const Graph c4(4, {{0, 1, 1, 1}, {1, 2, 2, 2}, {2, 3, 3, 3}, {3, 0, 4, 4}}, {});
    CHECK(augment_and_route(c4, Pairing{}).objective_weight == 10);

    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = testkit::random_undirected(rng, testkit::uniform_int(rng, 3, 8), 4, 9);
        const auto [pairing, added] = exact_pairing_oracle(g);
        const RouteSolution r = augment_and_route(g, pairing);
        const auto& walk = r.walks.front();
        std::vector<int> count(g.edge_count(), 0);
        for (std::size_t i = 0; i < walk.size(); ++i) {
            ++count[walk[i].edge];
            if (i) CHECK(walk[i - 1].to == walk[i].from);
        }
        for (int c : count) CHECK(c >= 1);
        CHECK(walk.front().from == walk.back().to);
        CHECK(r.objective_weight == g.total_weight_symmetric() + added);
    }
}

TEST_CASE("exact pairing oracle") {
    const auto [p, w] = exact_pairing_oracle(figure2_graph());
    CHECK(p.pairs == std::vector<std::pair<Vertex, Vertex>>{{3, 5}});
    CHECK(w == 9);

    std::mt19937_64 rng(37);
    const Graph two = testkit::random_with_odd_count(rng, 2);
    const auto odd = odd_degree_vertices(two);
    CHECK(exact_pairing_oracle(two).second == ShortestPaths(two).distance(odd[0], odd[1]));

    for (int d : {4, 6, 8}) {
        const Graph g = testkit::random_with_odd_count(rng, d);
        const ShortestPaths sp(g);
        const auto [best, bw] = exact_pairing_oracle(g);
        std::vector<std::vector<std::pair<Vertex, Vertex>>> pairings;
        std::vector<std::pair<Vertex, Vertex>> cur;
        all_pairings(odd_degree_vertices(g), cur, pairings);
        Weight lowest = ShortestPaths::kInf;
        for (const auto& alt : pairings) {
            const Weight w2 = pairing_weight(sp, Pairing{alt});
            CHECK(bw <= w2);
            lowest = std::min(lowest, w2);
        }
        CHECK(bw == lowest);
    }
}

TEST_CASE("pairing pipeline input errors") {
    CHECK_THROWS_AS(build_pairing_model(Graph(2, {}, {{0, 1, 1}, {1, 0, 1}})), Error);
    CHECK_THROWS_AS(build_pairing_model(Graph(2, {{0, 1, 1, 2}}, {})), Error);
    const Graph c3(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}}, {});
    try {
        build_pairing_model(c3);
        FAIL("expected NoOddVertices");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoOddVertices);
    }
    std::mt19937_64 rng(38);
    const Graph big = testkit::random_with_odd_count(rng, 14);
    try {
        exact_pairing_oracle(big);
        FAIL("expected TooManyOddVertices");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooManyOddVertices);
    }
}

TEST_CASE("a too small penalty is raised until the pairing is perfect") {
    // two vertices joined by weight 3: with P = 1 leaving x = 0 is cheaper
    const Graph g(2, {{0, 1, 3, 3}}, {});
    const auto [q, reg] = build_pairing_qubo(g, 1.0);
    CHECK(brute_force(q).best_assignment == Bits{0});
    SamplerConfig sc;
    sc.name = "brute";
    const auto r = solve_pairing(g, sc, 1.0);
    REQUIRE(r.report);
    CHECK(r.report->retunes >= 1);
    CHECK(r.route.validity.valid());
    CHECK(r.route.objective_weight == 6);
    CHECK(r.penalties->p_pairing > 3);
}
