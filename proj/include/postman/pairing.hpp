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

#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "postman/euler.hpp"
#include "postman/graph.hpp"
#include "postman/penalty.hpp"
#include "postman/qubo.hpp"
#include "postman/route.hpp"
#include "postman/shortest_paths.hpp"
#include "postman/variables.hpp"

namespace postman {

/// Disjoint unordered pairs (first < second), kept sorted.
struct Pairing {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    friend bool operator==(const Pairing&, const Pairing&) = default;
};

namespace detail {

inline void require_plain_undirected(const Graph& g) {
    if (g.directed_count() > 0) throw Error(ErrorCode::NonUndirectedGraph, "pairing pipeline needs an undirected graph");
    if (!g.is_symmetric()) throw Error(ErrorCode::AsymmetricWeights, "pairing pipeline needs symmetric weights");
}

}  // namespace detail

/// Shortest-path distances between odd vertices, the W_ij of the pairing QUBO.
struct PairingInstance {
    std::vector<Vertex> odd;
    ShortestPaths paths;

    explicit PairingInstance(const Graph& g) : odd(odd_degree_vertices(g)), paths(g) {}

    Weight max_distance() const {
        Weight m = 0;
        for (std::size_t a = 0; a < odd.size(); ++a)
            for (std::size_t b = a + 1; b < odd.size(); ++b) m = std::max(m, paths.distance(odd[a], odd[b]));
        return m;
    }
};

/// Objective sum W_ij x_ij plus the unscaled constraint
///   C = 1/2 sum_i (1 - sum_j x_ij)^2,
/// halved so that two odd vertices give exactly P (1 - x)^2.
inline ConstrainedModel build_pairing_model(const Graph& g) {
    detail::require_plain_undirected(g);
    PairingInstance inst(g);
    if (inst.odd.empty()) throw Error(ErrorCode::NoOddVertices, "graph is Eulerian; no pairing needed");

    std::vector<VarLabel> labels;
    for (std::size_t a = 0; a < inst.odd.size(); ++a)
        for (std::size_t b = a + 1; b < inst.odd.size(); ++b) labels.push_back(make_pair_var(inst.odd[a], inst.odd[b]));

    ConstrainedModel model;
    model.registry = VariableRegistry(std::move(labels));
    model.objective = Qubo(model.registry.size());
    for (int i = 0; i < model.registry.size(); ++i) {
        const auto& p = std::get<PairVar>(model.registry.label(i));
        model.objective.add_linear(i, inst.paths.distance(p.i, p.j));
    }
    Qubo& c = model.family(ConstraintFamily::Pairing);
    for (Vertex v : inst.odd) {
        std::vector<std::pair<int, double>> terms;
        for (Vertex u : inst.odd)
            if (u != v) terms.push_back({model.registry.at(make_pair_var(u, v)), -1.0});
        add_square_penalty(c, terms, 1.0, 0.5);
    }
    return model;
}

/// 5 x the largest odd-pair distance (1 when every distance is zero).
inline double default_pairing_penalty(const Graph& g) {
    detail::require_plain_undirected(g);
    PairingInstance inst(g);
    const Weight m = inst.max_distance();
    return m > 0 ? 5.0 * m : 1.0;
}

inline std::pair<Qubo, VariableRegistry> build_pairing_qubo(const Graph& g, double p) {
    if (!(p > 0)) throw Error(ErrorCode::InvalidSpec, "pairing penalty must be positive");
    auto model = build_pairing_model(g);
    PenaltyConfig pen;
    pen.p_pairing = p;
    return {model.compose(pen), model.registry};
}

inline Pairing decode_pairing(BitSpan x, const VariableRegistry& reg) {
    if (static_cast<int>(x.size()) != reg.size())
        throw Error(ErrorCode::LengthMismatch, "assignment length does not match the registry");
    Pairing out;
    std::map<Vertex, int> cover;
    for (int i = 0; i < reg.size(); ++i) {
        const auto* p = std::get_if<PairVar>(&reg.label(i));
        if (!p) continue;
        cover.try_emplace(p->i, 0);
        cover.try_emplace(p->j, 0);
        if (!x[i]) continue;
        out.pairs.push_back({p->i, p->j});
        ++cover[p->i];
        ++cover[p->j];
    }
    for (const auto& [v, c] : cover)
        if (c != 1)
            throw Error(ErrorCode::NotPerfectPairing,
                        "vertex " + std::to_string(v) + " is paired " + std::to_string(c) + " times");
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

inline Weight pairing_weight(const ShortestPaths& sp, const Pairing& p) {
    Weight w = 0;
    for (const auto& [a, b] : p.pairs) w += sp.distance(a, b);
    return w;
}

/// Adds one edge per pair, walks the Euler circuit from the lowest vertex and
/// replaces each added edge by its shortest path.
inline RouteSolution augment_and_route(const Graph& g, const Pairing& pairing) {
    detail::require_plain_undirected(g);
    const ShortestPaths sp(g);
    {
        auto odd = odd_degree_vertices(g);
        std::vector<Vertex> covered;
        for (const auto& [a, b] : pairing.pairs) {
            covered.push_back(a);
            covered.push_back(b);
        }
        std::sort(covered.begin(), covered.end());
        if (covered != odd) throw Error(ErrorCode::NotPerfectPairing, "pairing does not match the odd vertices");
    }

    MultiGraph mg;
    mg.vertex_count = g.vertex_count();
    for (int e = 0; e < g.undirected_count(); ++e) {
        const auto& u = g.undirected_edges()[e];
        mg.edges.push_back({u.a, u.b, u.w_ab, -1});
    }
    for (int i = 0; i < static_cast<int>(pairing.pairs.size()); ++i) {
        const auto [a, b] = pairing.pairs[i];
        mg.edges.push_back({a, b, sp.distance(a, b), i});
    }

    RouteSolution out;
    out.walks.emplace_back();
    auto& walk = out.walks.front();
    for (const auto& s : euler_edge_sequence(mg)) {
        const auto& me = mg.edges[s.edge];
        if (me.tag < 0) {
            walk.push_back({s.from, s.to, RouteStepMode::Plain, s.edge});
            out.objective_weight += me.w;
        } else {
            for (const Arc& a : sp.path(s.from, s.to)) {
                walk.push_back({a.from, a.to, RouteStepMode::Plain, a.edge});
                out.objective_weight += a.weight;
            }
        }
    }
    std::vector<char> seen(g.edge_count(), 0);
    for (const auto& s : walk) seen[s.edge] = 1;
    out.validity.required_covered = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    out.validity.contiguous = true;
    for (std::size_t i = 1; i < walk.size(); ++i)
        if (walk[i - 1].to != walk[i].from) out.validity.contiguous = false;
    out.validity.endpoints = walk.empty() || walk.front().from == walk.back().to;
    return out;
}

/// Minimum added weight over all perfect pairings of the odd vertices.
/// Enumeration is lexicographic and only strict improvements replace the
/// incumbent, so ties resolve to the lexicographically first pairing.
inline std::pair<Pairing, Weight> exact_pairing_oracle(const Graph& g) {
    detail::require_plain_undirected(g);
    PairingInstance inst(g);
    const int d = static_cast<int>(inst.odd.size());
    if (d > 12) throw Error(ErrorCode::TooManyOddVertices, "exhaustive pairing limited to 12 odd vertices");
    if (d == 0) return {Pairing{}, 0.0};

    std::vector<char> used(d, 0);
    std::vector<std::pair<Vertex, Vertex>> current;
    Pairing best;
    Weight best_w = ShortestPaths::kInf;

    auto recurse = [&](auto&& self, Weight acc) -> void {
        int first = 0;
        while (first < d && used[first]) ++first;
        if (first == d) {
            if (acc < best_w) {
                best_w = acc;
                best.pairs = current;
            }
            return;
        }
        used[first] = 1;
        for (int j = first + 1; j < d; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            current.push_back({inst.odd[first], inst.odd[j]});
            self(self, acc + inst.paths.distance(inst.odd[first], inst.odd[j]));
            current.pop_back();
            used[j] = 0;
        }
        used[first] = 0;
    };
    recurse(recurse, 0.0);
    return {best, best_w};
}

}  // namespace postman
