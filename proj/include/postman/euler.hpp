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
#include <optional>
#include <tuple>
#include <vector>

#include "postman/graph.hpp"

namespace postman {

/// One traversal of a multigraph edge in an Euler circuit.
struct EulerStep {
    int edge;  // index into MultiGraph::edges
    Vertex from;
    Vertex to;
};

namespace detail {

inline void check_euler_criterion(const MultiGraph& mg) {
    const int n = mg.vertex_count;
    std::vector<int> in(n, 0), out(n, 0);
    for (const auto& e : mg.edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw Error(ErrorCode::NoEulerianCircuit, "edge endpoint out of range");
        ++out[e.from];
        ++in[e.to];
    }
    for (int v = 0; v < n; ++v) {
        if (mg.directed ? in[v] != out[v] : (in[v] + out[v]) % 2 != 0)
            throw Error(ErrorCode::NoEulerianCircuit,
                        "vertex " + std::to_string(v) + " violates the Euler degree condition");
    }
    // every edge must sit in one weakly connected component
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : mg.edges) parent[find(e.from)] = find(e.to);
    if (!mg.edges.empty()) {
        const int root = find(mg.edges.front().from);
        for (const auto& e : mg.edges)
            if (find(e.from) != root) throw Error(ErrorCode::NoEulerianCircuit, "edges are not connected");
    }
}

}  // namespace detail

/// Hierholzer's algorithm. Starts at `start` when given (it must touch an
/// edge), otherwise at the lowest-numbered vertex with an edge, and always
/// leaves a vertex towards its lowest-numbered unused neighbour first.
inline std::vector<EulerStep> euler_edge_sequence(const MultiGraph& mg,
                                                  std::optional<Vertex> start = std::nullopt) {
    detail::check_euler_criterion(mg);
    if (mg.edges.empty()) return {};

    const int n = mg.vertex_count;
    // (neighbour, edge index) sorted ascending
    std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(mg.edges.size()); ++i) {
        const auto& e = mg.edges[i];
        adj[e.from].push_back({e.to, i});
        if (!mg.directed) adj[e.to].push_back({e.from, i});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    Vertex first = -1;
    if (start) {
        if (*start < 0 || *start >= n || adj[*start].empty())
            throw Error(ErrorCode::NoEulerianCircuit, "start vertex touches no edge");
        first = *start;
    } else {
        for (Vertex v = 0; v < n && first < 0; ++v)
            if (!adj[v].empty()) first = v;
    }

    std::vector<char> used(mg.edges.size(), 0);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<std::tuple<Vertex, int, Vertex>> stack{{first, -1, -1}};  // (at, via edge, from)
    std::vector<EulerStep> reversed;
    while (!stack.empty()) {
        const Vertex v = std::get<0>(stack.back());
        auto& cur = cursor[v];
        while (cur < adj[v].size() && used[adj[v][cur].second]) ++cur;
        if (cur < adj[v].size()) {
            const auto [w, ei] = adj[v][cur];
            used[ei] = 1;
            stack.emplace_back(w, ei, v);
        } else {
            const auto [at, via, from] = stack.back();
            stack.pop_back();
            if (via >= 0) reversed.push_back({via, from, at});
        }
    }
    return {reversed.rbegin(), reversed.rend()};
}

inline Walk eulerian_circuit(const MultiGraph& mg, std::optional<Vertex> start = std::nullopt) {
    Walk walk;
    for (const auto& s : euler_edge_sequence(mg, start)) {
        walk.steps.push_back({s.from, s.to});
        walk.weight += mg.edges[s.edge].w;
    }
    return walk;
}

}  // namespace postman
