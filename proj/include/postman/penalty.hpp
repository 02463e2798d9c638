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

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "postman/error.hpp"
#include "postman/qubo.hpp"
#include "postman/variables.hpp"

namespace postman {

enum class ConstraintFamily { OneEdge, Adjacency, Required, Turn, Hierarchy, Collision, Capacity, Pairing };

inline constexpr std::array<ConstraintFamily, 8> kAllFamilies{
    ConstraintFamily::OneEdge,   ConstraintFamily::Adjacency, ConstraintFamily::Required,
    ConstraintFamily::Turn,      ConstraintFamily::Hierarchy, ConstraintFamily::Collision,
    ConstraintFamily::Capacity,  ConstraintFamily::Pairing};

constexpr std::string_view to_string(ConstraintFamily f) noexcept {
    switch (f) {
        case ConstraintFamily::OneEdge: return "one-edge";
        case ConstraintFamily::Adjacency: return "adjacency";
        case ConstraintFamily::Required: return "required";
        case ConstraintFamily::Turn: return "turn";
        case ConstraintFamily::Hierarchy: return "hierarchy";
        case ConstraintFamily::Collision: return "collision";
        case ConstraintFamily::Capacity: return "capacity";
        case ConstraintFamily::Pairing: return "pairing";
    }
    return "?";
}

/// The turn family prices extra weight rather than forbidding anything, so it
/// is left out of validity checks and penalty retuning.
constexpr bool is_hard_constraint(ConstraintFamily f) noexcept { return f != ConstraintFamily::Turn; }

/// Multipliers, one per constraint family. All must be strictly positive.
struct PenaltyConfig {
    double p_one_edge = 1.0;
    double p_adjacency = 1.0;
    double p_required = 1.0;
    double p_turn = 1.0;
    double p_hierarchy = 1.0;
    double p_collision = 1.0;
    double p_capacity = 1.0;
    double p_pairing = 1.0;

    double& operator[](ConstraintFamily f) {
        switch (f) {
            case ConstraintFamily::OneEdge: return p_one_edge;
            case ConstraintFamily::Adjacency: return p_adjacency;
            case ConstraintFamily::Required: return p_required;
            case ConstraintFamily::Turn: return p_turn;
            case ConstraintFamily::Hierarchy: return p_hierarchy;
            case ConstraintFamily::Collision: return p_collision;
            case ConstraintFamily::Capacity: return p_capacity;
            case ConstraintFamily::Pairing: return p_pairing;
        }
        throw Error(ErrorCode::InvalidSpec, "unknown constraint family");
    }
    double operator[](ConstraintFamily f) const { return const_cast<PenaltyConfig&>(*this)[f]; }

    void validate() const {
        for (auto f : kAllFamilies)
            if (!((*this)[f] > 0.0))
                throw Error(ErrorCode::InvalidSpec, "penalty for " + std::string(to_string(f)) + " must be positive");
    }

    /// Every hard-constraint family set to `value`; turn stays at 1.
    static PenaltyConfig uniform(double value) {
        PenaltyConfig p;
        for (auto f : kAllFamilies)
            if (is_hard_constraint(f)) p[f] = value;
        return p;
    }
};

/// A compiled problem kept in pieces: objective plus one unscaled QUBO per
/// constraint family, all over the same registry. compose() yields
///   objective + sum_f P_f * C_f.
struct ConstrainedModel {
    VariableRegistry registry;
    Qubo objective;
    std::map<ConstraintFamily, Qubo> constraints;

    Qubo compose(const PenaltyConfig& pen) const {
        pen.validate();
        Qubo q(registry.size());
        q.add_scaled(objective, 1.0);
        for (const auto& [f, c] : constraints) q.add_scaled(c, pen[f]);
        return q;
    }

    double constraint_value(ConstraintFamily f, BitSpan x) const {
        auto it = constraints.find(f);
        return it == constraints.end() ? 0.0 : it->second.energy(x);
    }

    /// Sum of all hard-constraint values at x (unscaled).
    double violation(BitSpan x) const {
        double v = 0;
        for (const auto& [f, c] : constraints)
            if (is_hard_constraint(f)) v += c.energy(x);
        return v;
    }

    Qubo& family(ConstraintFamily f) {
        auto [it, inserted] = constraints.try_emplace(f, registry.size());
        return it->second;
    }
};

}  // namespace postman
