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

#include <optional>
#include <vector>

#include "postman/euler.hpp"
#include "postman/general/validate.hpp"
#include "postman/problem.hpp"
#include "postman/route.hpp"

namespace postman {

/// Returns an optimal route directly when the required edges already form an
/// Euler circuit that fits the endpoints, so no QUBO is needed. Applies to a
/// single postman without turn or hierarchy terms, when the required edges are
/// all directed or all undirected with symmetric weights.
inline std::optional<RouteSolution> euler_shortcut(const ProblemSpec& spec) {
    spec.validate();
    if (spec.uses_rest_form() || !spec.turn_penalties.empty() || !spec.hierarchy.empty()) return std::nullopt;
    const Graph& g = spec.graph;
    const auto required = spec.required();

    if (spec.start && spec.stop && *spec.start != *spec.stop) return std::nullopt;
    std::optional<Vertex> anchor = spec.start ? spec.start : spec.stop;

    RouteSolution out;
    out.walks.emplace_back();
    if (required.empty()) return out;

    bool all_directed = true, all_undirected = true;
    for (int e : required) {
        if (g.is_directed_edge(e)) {
            all_undirected = false;
        } else {
            all_directed = false;
            const auto& u = g.undirected_edges()[e];
            if (u.w_ab != u.w_ba) return std::nullopt;
            if (spec.service_mode &&
                spec.service_weight(*g.arc_index(e, u.a)) != spec.service_weight(*g.arc_index(e, u.b)))
                return std::nullopt;
        }
    }
    if (!all_directed && !all_undirected) return std::nullopt;

    MultiGraph mg;
    mg.vertex_count = g.vertex_count();
    mg.directed = all_directed;
    for (int e : required) {
        const auto [a, b] = g.endpoints(e);
        mg.edges.push_back({a, b, 0.0, e});
    }
    std::vector<EulerStep> seq;
    try {
        seq = euler_edge_sequence(mg, anchor);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::NoEulerianCircuit) return std::nullopt;
        throw;
    }
    for (const auto& s : seq) {
        const RouteStepMode mode = spec.service_mode ? RouteStepMode::Service : RouteStepMode::Plain;
        out.walks.front().push_back({s.from, s.to, mode, mg.edges[s.edge].tag});
    }
    const auto ev = evaluate_route(spec, out.walks, true);
    out.objective_weight = ev.objective_weight;
    out.turn_extra = ev.turn_extra;
    out.validity = ev.validity;
    return out;
}

}  // namespace postman
