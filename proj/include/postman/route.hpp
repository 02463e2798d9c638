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

#include <string>
#include <vector>

#include "postman/graph.hpp"

namespace postman {

enum class RouteStepMode { Plain, Service, Traverse, Rest };

constexpr const char* to_string(RouteStepMode m) noexcept {
    switch (m) {
        case RouteStepMode::Plain: return "plain";
        case RouteStepMode::Service: return "service";
        case RouteStepMode::Traverse: return "traverse";
        case RouteStepMode::Rest: return "rest";
    }
    return "?";
}

/// One time step of one postman. Rest steps keep from == to == the vertex the
/// walk finished at and edge == -1.
struct RouteStep {
    Vertex from;
    Vertex to;
    RouteStepMode mode;
    int edge;

    bool is_rest() const noexcept { return mode == RouteStepMode::Rest; }
    bool same_traversal(const RouteStep& o) const noexcept {
        return edge == o.edge && from == o.from && to == o.to && mode == o.mode;
    }
    friend bool operator==(const RouteStep&, const RouteStep&) = default;
};

struct Validity {
    bool one_edge_per_step = true;
    bool contiguous = true;
    bool slack_consistent = true;
    bool required_covered = true;
    bool endpoints = true;
    bool hierarchy = true;
    bool capacity = true;
    bool collisions = true;

    bool valid() const noexcept {
        return one_edge_per_step && contiguous && slack_consistent && required_covered && endpoints && hierarchy &&
               capacity && collisions;
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        if (!one_edge_per_step) out.emplace_back("one_edge_per_step");
        if (!contiguous) out.emplace_back("contiguous");
        if (!slack_consistent) out.emplace_back("slack_consistent");
        if (!required_covered) out.emplace_back("required_covered");
        if (!endpoints) out.emplace_back("endpoints");
        if (!hierarchy) out.emplace_back("hierarchy");
        if (!capacity) out.emplace_back("capacity");
        if (!collisions) out.emplace_back("collisions");
        return out;
    }
};

struct RouteSolution {
    std::vector<std::vector<RouteStep>> walks;  // one per postman, one entry per time step
    Weight objective_weight = 0;
    Weight turn_extra = 0;
    Validity validity;
};

/// Vertex sequence of a walk after dropping rest steps and collapsing runs of
/// the same traversal.
inline std::vector<Vertex> vertex_sequence(const std::vector<RouteStep>& walk) {
    std::vector<Vertex> out;
    const RouteStep* prev = nullptr;
    for (const auto& s : walk) {
        if (s.is_rest()) continue;
        if (prev && prev->same_traversal(s) && s.mode != RouteStepMode::Service) continue;
        if (out.empty()) out.push_back(s.from);
        out.push_back(s.to);
        prev = &s;
    }
    return out;
}

}  // namespace postman
