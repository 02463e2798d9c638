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
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "postman/error.hpp"
#include "postman/graph.hpp"

namespace postman {

/// A directed use of an edge: traverse `edge` starting at `from`.
struct ArcRef {
    int edge;
    Vertex from;
    friend bool operator==(const ArcRef&, const ArcRef&) = default;
    friend auto operator<=>(const ArcRef&, const ArcRef&) = default;
};

/// Extra weight charged whenever `in` is immediately followed by `out`.
struct TurnPenalty {
    ArcRef in;
    ArcRef out;
    Weight bonus;
};

/// `first` must be serviced before `second` (unified edge ids).
struct HierarchyPair {
    int first;
    int second;
    friend auto operator<=>(const HierarchyPair&, const HierarchyPair&) = default;
};

enum class Encoding { Auto, Repetition, Terminal };

/// Variant selector for the time-indexed compiler.
///
/// Closed routes are expressed as start == stop. Leaving `required_edges`
/// empty-optional means every edge is required; an explicit subset gives the
/// rural variant. Postmen beyond one, or any capacity, switch to the
/// rest-variable formulation.
struct ProblemSpec {
    Graph graph;
    std::optional<Vertex> start;
    std::optional<Vertex> stop;
    std::optional<std::vector<int>> required_edges;
    std::vector<TurnPenalty> turn_penalties;
    bool service_mode = false;
    std::vector<Weight> service_weights;  // per Graph::arcs() index; empty -> traversal weights
    std::vector<HierarchyPair> hierarchy;
    int postmen = 1;
    std::vector<std::optional<std::int64_t>> capacities;  // empty or one entry per postman
    std::vector<double> postman_weight_factors;            // empty or one entry per postman
    bool forbid_edge_collisions = false;
    std::optional<int> i_max;
    Encoding encoding = Encoding::Auto;

    std::vector<int> required() const {
        if (required_edges) {
            auto r = *required_edges;
            std::sort(r.begin(), r.end());
            r.erase(std::unique(r.begin(), r.end()), r.end());
            return r;
        }
        std::vector<int> all(graph.edge_count());
        for (int e = 0; e < graph.edge_count(); ++e) all[e] = e;
        return all;
    }

    int effective_i_max() const { return i_max ? *i_max : std::max(1, 2 * graph.edge_count()); }

    bool uses_rest_form() const {
        return postmen > 1 || std::any_of(capacities.begin(), capacities.end(), [](auto c) { return c.has_value(); });
    }

    double weight_factor(int postman) const {
        return postman_weight_factors.empty() ? 1.0 : postman_weight_factors.at(postman);
    }

    Weight service_weight(int arc) const {
        return service_weights.empty() ? graph.arcs().at(arc).weight : service_weights.at(arc);
    }

    /// Transitive closure of the hierarchy relation.
    std::vector<HierarchyPair> hierarchy_closure() const {
        std::set<HierarchyPair> closure(hierarchy.begin(), hierarchy.end());
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& a : std::vector<HierarchyPair>(closure.begin(), closure.end()))
                for (const auto& b : std::vector<HierarchyPair>(closure.begin(), closure.end()))
                    if (a.second == b.first && closure.insert({a.first, b.second}).second) grew = true;
        }
        return {closure.begin(), closure.end()};
    }

    void validate() const {
        auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidSpec, m); };
        const int n = graph.vertex_count();
        const int m = graph.edge_count();
        if (start && (*start < 0 || *start >= n)) fail("start is not a vertex");
        if (stop && (*stop < 0 || *stop >= n)) fail("stop is not a vertex");
        if (required_edges)
            for (int e : *required_edges)
                if (e < 0 || e >= m) fail("required edge is not an edge of the graph");
        if (i_max && *i_max < 1) fail("i_max must be positive");
        if (postmen < 1) fail("need at least one postman");
        if (!capacities.empty() && static_cast<int>(capacities.size()) != postmen)
            fail("capacities must list one entry per postman");
        if (!postman_weight_factors.empty() && static_cast<int>(postman_weight_factors.size()) != postmen)
            fail("postman weight factors must list one entry per postman");
        for (double f : postman_weight_factors)
            if (!std::isfinite(f) || f < 0) fail("postman weight factors must be finite and non-negative");
        if (!service_weights.empty() && service_weights.size() != graph.arcs().size())
            fail("service weights must cover every arc");
        for (Weight w : service_weights)
            if (!std::isfinite(w) || w < 0) fail("service weights must be finite and non-negative");

        for (const auto& t : turn_penalties) {
            for (const ArcRef& r : {t.in, t.out}) {
                if (r.edge < 0 || r.edge >= m || !graph.arc_index(r.edge, r.from)) fail("turn references a non-arc");
            }
            const auto& in = graph.arcs()[*graph.arc_index(t.in.edge, t.in.from)];
            if (in.to != t.out.from) fail("turn edges are not adjacent");
            if (!std::isfinite(t.bonus) || t.bonus < 0) fail("turn bonus must be finite and non-negative");
        }

        if (service_mode && postmen > 1)
            throw Error(ErrorCode::UnsupportedCombination, "service mode cannot be combined with several postmen");
        if (service_mode && uses_rest_form())
            throw Error(ErrorCode::UnsupportedCombination, "service mode cannot be combined with capacities");
        if (service_mode && encoding == Encoding::Terminal)
            throw Error(ErrorCode::UnsupportedCombination, "service mode uses the repetition encoding");
        if (uses_rest_form() && stop)
            throw Error(ErrorCode::UnsupportedCombination, "the multi-postman form supports a start vertex only");

        if (!hierarchy.empty()) {
            if (!service_mode) fail("hierarchy constraints need service mode");
            const auto req = required();
            for (const auto& h : hierarchy) {
                if (!std::binary_search(req.begin(), req.end(), h.first) ||
                    !std::binary_search(req.begin(), req.end(), h.second))
                    fail("hierarchy pairs must reference required edges");
            }
            for (const auto& h : hierarchy_closure())
                if (h.first == h.second) fail("hierarchy is not a partial order (cycle)");
        }

        for (int a = 0; a < static_cast<int>(capacities.size()); ++a) {
            if (!capacities[a]) continue;
            if (*capacities[a] < 1) fail("capacities must be positive integers");
            for (const auto& arc : graph.arcs()) {
                const double w = arc.weight * weight_factor(a);
                if (w != std::floor(w)) fail("capacities need integer-valued weights");
            }
        }
    }
};

}  // namespace postman
