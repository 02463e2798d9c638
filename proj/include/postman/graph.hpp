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
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "postman/error.hpp"

namespace postman {

using Vertex = int;
using Weight = double;

struct UndirectedEdge {
    Vertex a;
    Vertex b;
    Weight w_ab;
    Weight w_ba;
};

struct DirectedEdge {
    Vertex from;
    Vertex to;
    Weight w;
};

/// One traversable direction of an edge. Undirected edges contribute two arcs,
/// directed edges one. `edge` is the unified edge id (undirected edges first,
/// then directed ones).
struct Arc {
    int edge;
    Vertex from;
    Vertex to;
    Weight weight;
    bool reversed;  // true for the b->a direction of an undirected edge

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Mixed windy weighted graph over dense vertex ids 0..n-1.
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, std::vector<UndirectedEdge> undirected,
          std::vector<DirectedEdge> directed)
        : n_(vertex_count), undirected_(std::move(undirected)), directed_(std::move(directed)) {
        validate();
        for (int e = 0; e < static_cast<int>(undirected_.size()); ++e) {
            const auto& u = undirected_[e];
            arcs_.push_back({e, u.a, u.b, u.w_ab, false});
            arcs_.push_back({e, u.b, u.a, u.w_ba, true});
        }
        for (int d = 0; d < static_cast<int>(directed_.size()); ++d) {
            const auto& de = directed_[d];
            arcs_.push_back({undirected_count() + d, de.from, de.to, de.w, false});
        }
    }

    int vertex_count() const noexcept { return n_; }
    int undirected_count() const noexcept { return static_cast<int>(undirected_.size()); }
    int directed_count() const noexcept { return static_cast<int>(directed_.size()); }
    int edge_count() const noexcept { return undirected_count() + directed_count(); }

    const std::vector<UndirectedEdge>& undirected_edges() const noexcept { return undirected_; }
    const std::vector<DirectedEdge>& directed_edges() const noexcept { return directed_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }

    bool is_directed_edge(int edge) const noexcept { return edge >= undirected_count(); }

    /// Endpoints of a unified edge id, in declaration order.
    std::pair<Vertex, Vertex> endpoints(int edge) const {
        if (edge < undirected_count()) return {undirected_[edge].a, undirected_[edge].b};
        const auto& d = directed_.at(edge - undirected_count());
        return {d.from, d.to};
    }

    /// Looks up an edge by endpoints. For undirected edges the order of a, b
    /// does not matter.
    std::optional<int> find_edge(Vertex a, Vertex b, bool directed) const {
        if (directed) {
            for (int d = 0; d < directed_count(); ++d)
                if (directed_[d].from == a && directed_[d].to == b) return undirected_count() + d;
            return std::nullopt;
        }
        for (int e = 0; e < undirected_count(); ++e) {
            const auto& u = undirected_[e];
            if ((u.a == a && u.b == b) || (u.a == b && u.b == a)) return e;
        }
        return std::nullopt;
    }

    /// Arc index (into arcs()) for traversing `edge` starting at `from`.
    std::optional<int> arc_index(int edge, Vertex from) const {
        for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
            if (arcs_[i].edge == edge && arcs_[i].from == from) return i;
        return std::nullopt;
    }

    Weight max_weight() const noexcept {
        Weight m = 0;
        for (const auto& a : arcs_) m = std::max(m, a.weight);
        return m;
    }

    Weight total_weight_symmetric() const noexcept {
        Weight s = 0;
        for (const auto& u : undirected_) s += u.w_ab;
        for (const auto& d : directed_) s += d.w;
        return s;
    }

    bool is_symmetric() const noexcept {
        return std::all_of(undirected_.begin(), undirected_.end(),
                           [](const UndirectedEdge& u) { return u.w_ab == u.w_ba; });
    }

private:
    void validate() const {
        if (n_ <= 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
        auto check_vertex = [&](Vertex v) {
            if (v < 0 || v >= n_)
                throw Error(ErrorCode::InvalidGraph, "edge endpoint " + std::to_string(v) + " is not a vertex");
        };
        auto check_weight = [](Weight w) {
            if (!std::isfinite(w) || w < 0)
                throw Error(ErrorCode::InvalidGraph, "weights must be finite and non-negative");
        };
        std::map<std::pair<Vertex, Vertex>, int> seen_u, seen_d;
        for (const auto& u : undirected_) {
            check_vertex(u.a);
            check_vertex(u.b);
            check_weight(u.w_ab);
            check_weight(u.w_ba);
            if (u.a == u.b) throw Error(ErrorCode::InvalidGraph, "self-loops are not allowed");
            if (seen_u[{std::min(u.a, u.b), std::max(u.a, u.b)}]++)
                throw Error(ErrorCode::InvalidGraph, "duplicate undirected edge");
        }
        for (const auto& d : directed_) {
            check_vertex(d.from);
            check_vertex(d.to);
            check_weight(d.w);
            if (d.from == d.to) throw Error(ErrorCode::InvalidGraph, "self-loops are not allowed");
            if (seen_d[{d.from, d.to}]++) throw Error(ErrorCode::InvalidGraph, "duplicate directed edge");
        }
    }

    int n_ = 0;
    std::vector<UndirectedEdge> undirected_;
    std::vector<DirectedEdge> directed_;
    std::vector<Arc> arcs_;
};

/// Internal multigraph used by augmentation and Euler circuits. Parallel edges
/// are allowed; it is never built from user input.
struct MultiGraph {
    struct Edge {
        Vertex from;
        Vertex to;
        Weight w;
        int tag;  // caller-defined; augmentation uses -1 for original edges
    };

    int vertex_count = 0;
    bool directed = false;
    std::vector<Edge> edges;

    Weight total_weight() const noexcept {
        Weight s = 0;
        for (const auto& e : edges) s += e.w;
        return s;
    }
};

struct Walk {
    struct Step {
        Vertex from;
        Vertex to;
        friend bool operator==(const Step&, const Step&) = default;
    };

    std::vector<Step> steps;
    Weight weight = 0;

    bool empty() const noexcept { return steps.empty(); }
    bool closed() const noexcept { return steps.empty() || steps.front().from == steps.back().to; }

    bool contiguous() const noexcept {
        for (std::size_t i = 1; i < steps.size(); ++i)
            if (steps[i - 1].to != steps[i].from) return false;
        return true;
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        if (steps.empty()) return out;
        out.push_back(steps.front().from);
        for (const auto& s : steps) out.push_back(s.to);
        return out;
    }
};

struct DegreeProfile {
    int in_degree = 0;
    int out_degree = 0;
    int undirected_degree = 0;

    friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline std::vector<DegreeProfile> degree_profile(const Graph& g) {
    std::vector<DegreeProfile> out(g.vertex_count());
    for (const auto& u : g.undirected_edges()) {
        ++out[u.a].undirected_degree;
        ++out[u.b].undirected_degree;
    }
    for (const auto& d : g.directed_edges()) {
        ++out[d.from].out_degree;
        ++out[d.to].in_degree;
    }
    return out;
}

/// Vertices of odd degree in a purely undirected graph.
inline std::vector<Vertex> odd_degree_vertices(const Graph& g) {
    if (g.directed_count() > 0)
        throw Error(ErrorCode::NonUndirectedGraph, "odd-degree pairing needs an undirected graph");
    const auto profile = degree_profile(g);
    std::vector<Vertex> odd;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (profile[v].undirected_degree % 2 == 1) odd.push_back(v);
    return odd;
}

namespace detail {

inline std::vector<char> reachable(const Graph& g, Vertex root, bool reverse) {
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (const auto& a : g.arcs()) {
        if (reverse)
            adj[a.to].push_back(a.from);
        else
            adj[a.from].push_back(a.to);
    }
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

}  // namespace detail

inline bool is_strongly_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    const auto fwd = detail::reachable(g, 0, false);
    const auto bwd = detail::reachable(g, 0, true);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!fwd[v] || !bwd[v]) return false;
    return true;
}

}  // namespace postman
