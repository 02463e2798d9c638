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

#include <map>
#include <vector>

#include "postman/problem.hpp"
#include "postman/route.hpp"

namespace postman {

struct RouteEvaluation {
    Weight objective_weight = 0;
    Weight turn_extra = 0;
    Validity validity;  // one_edge_per_step and slack_consistent are always true here
};

/// Checks a route against a spec from its steps alone. With `allow_repeat`,
/// an immediately repeated plain/traverse step is the same traversal and is
/// neither a discontinuity nor charged twice.
inline RouteEvaluation evaluate_route(const ProblemSpec& spec, const std::vector<std::vector<RouteStep>>& walks,
                                      bool allow_repeat) {
    RouteEvaluation out;
    const Graph& g = spec.graph;
    const auto required = spec.required();
    std::map<int, int> traversals, services;
    std::map<int, std::vector<int>> service_steps;

    auto arc_of = [&](const RouteStep& s) -> const Arc* {
        if (s.edge < 0 || s.edge >= g.edge_count()) return nullptr;
        auto ai = g.arc_index(s.edge, s.from);
        if (!ai || g.arcs()[*ai].to != s.to) return nullptr;
        return &g.arcs()[*ai];
    };

    for (int a = 0; a < static_cast<int>(walks.size()); ++a) {
        const auto& walk = walks[a];
        Weight weight = 0;
        const RouteStep* prev = nullptr;
        std::optional<Vertex> first, last;
        bool rested = false;
        for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
            const RouteStep& s = walk[i];
            if (s.is_rest()) {
                rested = true;
                continue;
            }
            const Arc* arc = arc_of(s);
            if (!arc || rested) out.validity.contiguous = false;
            const bool repeat = allow_repeat && prev && prev->same_traversal(s) && s.mode != RouteStepMode::Service;
            if (prev && !repeat && prev->to != s.from) out.validity.contiguous = false;
            if (!first) first = s.from;
            last = s.to;

            if (s.mode == RouteStepMode::Service) {
                ++services[s.edge];
                service_steps[s.edge].push_back(i);
                weight += arc ? spec.service_weight(*g.arc_index(s.edge, s.from)) : 0;
            } else {
                ++traversals[s.edge];
                if (!repeat && arc) weight += arc->weight * spec.weight_factor(a);
            }
            if (prev && !repeat) {
                for (const auto& t : spec.turn_penalties)
                    if (t.in.edge == prev->edge && t.in.from == prev->from && t.out.edge == s.edge &&
                        t.out.from == s.from)
                        out.turn_extra += t.bonus;
            }
            prev = &s;
        }
        out.objective_weight += weight;

        if (first) {
            if (spec.start && *first != *spec.start) out.validity.endpoints = false;
            if (spec.stop && *last != *spec.stop) out.validity.endpoints = false;
        } else if (spec.start && spec.stop && *spec.start != *spec.stop) {
            out.validity.endpoints = false;
        }
        if (a < static_cast<int>(spec.capacities.size()) && spec.capacities[a] &&
            weight > static_cast<double>(*spec.capacities[a]))
            out.validity.capacity = false;
    }

    for (int e : required) {
        if (spec.service_mode) {
            if (services[e] != 1) out.validity.required_covered = false;
        } else if (traversals[e] < 1) {
            out.validity.required_covered = false;
        }
    }
    for (const auto& [e, c] : services)
        if (!std::binary_search(required.begin(), required.end(), e)) out.validity.required_covered = false;

    for (const auto& h : spec.hierarchy_closure())
        for (int i0 : service_steps[h.first])
            for (int i1 : service_steps[h.second])
                if (i1 < i0) out.validity.hierarchy = false;

    if (spec.forbid_edge_collisions) {
        for (int a = 0; a < static_cast<int>(walks.size()); ++a)
            for (int b = a + 1; b < static_cast<int>(walks.size()); ++b)
                for (std::size_t i = 0; i < std::min(walks[a].size(), walks[b].size()); ++i) {
                    const auto& x = walks[a][i];
                    const auto& y = walks[b][i];
                    if (!x.is_rest() && !y.is_rest() && x.edge == y.edge && x.from == y.from)
                        out.validity.collisions = false;
                }
    }
    return out;
}

}  // namespace postman
