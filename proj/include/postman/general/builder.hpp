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
#include <utility>
#include <vector>

#include "postman/general/encoding.hpp"
#include "postman/penalty.hpp"
#include "postman/qubo.hpp"

namespace postman {

/// Encoding plus the objective and unscaled constraint QUBOs built on it.
struct GeneralModel {
    Encoded encoded;
    ConstrainedModel model;
};

/// Objective M plus every applicable constraint family, unscaled.
inline GeneralModel build_general_model(const ProblemSpec& spec) {
    GeneralModel gm{encode(spec), {}};
    const Encoded& enc = gm.encoded;
    ConstrainedModel& m = gm.model;
    m.registry = enc.registry();
    m.objective = Qubo(m.registry.size());
    const int T = enc.i_max();
    const int L = enc.postmen();
    const auto& slots = enc.slots();

    // objective: every step pays its weight, an immediate repeat is refunded
    for (int a = 0; a < L; ++a)
        for (int i = 0; i < T; ++i)
            for (int s : enc.step_slots(i)) {
                const int v = enc.var(a, i, s);
                const Weight w = enc.slot_weight(a, s);
                if (w == 0) continue;
                m.objective.add_linear(v, w);
                if (enc.kind() == EncodingKind::Repetition && slots[s].mode != StepMode::Service && i > 0) {
                    const int prev = enc.var(a, i - 1, s);
                    if (prev >= 0) m.objective.add_quadratic(prev, v, -w);
                }
            }

    Qubo& one = m.family(ConstraintFamily::OneEdge);
    for (int a = 0; a < L; ++a)
        for (int i = 0; i < T; ++i) {
            std::vector<std::pair<int, double>> terms;
            for (int s : enc.step_slots(i)) terms.push_back({enc.var(a, i, s), -1.0});
            add_square_penalty(one, terms, 1.0, 1.0);
        }

    Qubo& adj = m.family(ConstraintFamily::Adjacency);
    for (int a = 0; a < L; ++a)
        for (int i = 0; i + 1 < T; ++i)
            for (int s : enc.step_slots(i))
                for (int t : enc.step_slots(i + 1))
                    if (!enc.follows(s, t)) adj.add_quadratic(enc.var(a, i, s), enc.var(a, i + 1, t), 1.0);

    if (!enc.required().empty()) {
        Qubo& req = m.family(ConstraintFamily::Required);
        for (int r = 0; r < static_cast<int>(enc.required().size()); ++r) {
            const int e = enc.required()[r];
            std::vector<std::pair<int, double>> terms;
            for (int a = 0; a < L; ++a)
                for (int i = 0; i < T; ++i)
                    for (int s : enc.step_slots(i)) {
                        const Slot& sl = slots[s];
                        if (sl.kind != Slot::Kind::Arc || sl.edge != e) continue;
                        if (spec.service_mode && sl.mode != StepMode::Service) continue;
                        terms.push_back({enc.var(a, i, s), 1.0});
                    }
            if (enc.uses_required_slack())
                for (int a = 0; a < L; ++a)
                    for (int b = 0; b < enc.required_slack_bits(); ++b)
                        terms.push_back({enc.required_slack(r, a, b), -static_cast<double>(std::int64_t{1} << b)});
            add_square_penalty(req, terms, -1.0, 1.0);
        }
    }

    if (!spec.turn_penalties.empty()) {
        Qubo& turn = m.family(ConstraintFamily::Turn);
        const Graph& g = spec.graph;
        for (const auto& tp : spec.turn_penalties) {
            const int in_arc = *g.arc_index(tp.in.edge, tp.in.from);
            const int out_arc = *g.arc_index(tp.out.edge, tp.out.from);
            for (int a = 0; a < L; ++a)
                for (int i = 0; i + 1 < T; ++i)
                    for (int s : enc.step_slots(i)) {
                        if (slots[s].kind != Slot::Kind::Arc || slots[s].arc != in_arc) continue;
                        for (int t : enc.step_slots(i + 1))
                            if (slots[t].kind == Slot::Kind::Arc && slots[t].arc == out_arc)
                                turn.add_quadratic(enc.var(a, i, s), enc.var(a, i + 1, t), tp.bonus);
                    }
        }
    }

    const auto closure = spec.hierarchy_closure();
    if (!closure.empty()) {
        Qubo& hier = m.family(ConstraintFamily::Hierarchy);
        for (const auto& h : closure)
            for (int i0 = 0; i0 < T; ++i0)
                for (int s : enc.step_slots(i0)) {
                    if (slots[s].mode != StepMode::Service || slots[s].edge != h.first) continue;
                    for (int i1 = 0; i1 < i0; ++i1)
                        for (int t : enc.step_slots(i1))
                            if (slots[t].mode == StepMode::Service && slots[t].edge == h.second)
                                hier.add_quadratic(enc.var(0, i0, s), enc.var(0, i1, t), 1.0);
                }
    }

    if (spec.forbid_edge_collisions && L > 1) {
        Qubo& col = m.family(ConstraintFamily::Collision);
        for (int i = 0; i < T; ++i)
            for (int s : enc.step_slots(i)) {
                if (slots[s].kind != Slot::Kind::Arc) continue;
                for (int a = 0; a < L; ++a)
                    for (int b = a + 1; b < L; ++b) col.add_quadratic(enc.var(a, i, s), enc.var(b, i, s), 1.0);
            }
    }

    for (int a = 0; a < static_cast<int>(spec.capacities.size()); ++a) {
        if (!spec.capacities[a]) continue;
        Qubo& cap = m.family(ConstraintFamily::Capacity);
        std::vector<std::pair<int, double>> terms;
        for (int i = 0; i < T; ++i)
            for (int s : enc.step_slots(i)) {
                const Weight w = enc.slot_weight(a, s);
                if (w != 0) terms.push_back({enc.var(a, i, s), -w});
            }
        const auto& bits = enc.capacity_slack(a);
        for (int y = 0; y < static_cast<int>(bits.size()); ++y)
            terms.push_back({bits[y], -static_cast<double>(std::int64_t{1} << y)});
        add_square_penalty(cap, terms, static_cast<double>(*spec.capacities[a]), 1.0);
    }
    return gm;
}

/// Hard families get 5 x the largest traversal or service weight (1 when all
/// weights are zero); turn bonuses are part of the cost and keep weight 1.
inline PenaltyConfig default_general_penalties(const ProblemSpec& spec) {
    Weight m = spec.graph.max_weight();
    for (Weight w : spec.service_weights) m = std::max(m, w);
    for (double f : spec.postman_weight_factors) m = std::max(m, spec.graph.max_weight() * f);
    return PenaltyConfig::uniform(m > 0 ? 5.0 * m : 1.0);
}

inline std::pair<Qubo, VariableRegistry> build_general_qubo(const ProblemSpec& spec, const PenaltyConfig& pen) {
    auto gm = build_general_model(spec);
    return {gm.model.compose(pen), gm.model.registry};
}

}  // namespace postman
