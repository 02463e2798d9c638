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

#include "postman/euler.hpp"
#include "postman/general/builder.hpp"
#include "postman/general/decode.hpp"
#include "postman/general/shortcut.hpp"
#include "postman/pairing.hpp"
#include "postman/solvers/samplers.hpp"

namespace postman {

struct PipelineResult {
    RouteSolution route;
    std::optional<SolveReport> report;  // empty when no QUBO was solved
    std::optional<PenaltyConfig> penalties;
    std::optional<Pairing> pairing;
    bool shortcut = false;
};

/// Closed undirected CPP through the pairing QUBO. An Eulerian input skips
/// the QUBO entirely. `p` defaults to default_pairing_penalty().
inline PipelineResult solve_pairing(const Graph& g, const SamplerConfig& sampler, std::optional<double> p = {},
                                    int max_retunes = kDefaultMaxRetunes) {
    detail::require_plain_undirected(g);
    PipelineResult out;
    if (odd_degree_vertices(g).empty()) {
        Pairing none;
        out.route = augment_and_route(g, none);
        out.pairing = none;
        out.shortcut = true;
        return out;
    }
    const ConstrainedModel model = build_pairing_model(g);
    PenaltyConfig pen;
    pen.p_pairing = p ? *p : default_pairing_penalty(g);
    auto res = solve_with_retune(model, pen, sampler, max_retunes, [&](BitSpan x) -> std::optional<RouteSolution> {
        try {
            return augment_and_route(g, decode_pairing(x, model.registry));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotPerfectPairing) return std::nullopt;
            throw;
        }
    });
    out.pairing = decode_pairing(res.report.best_assignment, model.registry);
    out.route = std::move(res.route);
    out.report = std::move(res.report);
    out.penalties = res.penalties;
    return out;
}

/// Time-indexed QUBO pipeline. Unless `force_qubo`, an Euler-circuit shortcut
/// is returned when one applies. Penalties default to default_general_penalties().
inline PipelineResult solve_general(const ProblemSpec& spec, const SamplerConfig& sampler,
                                    std::optional<PenaltyConfig> pen = {}, int max_retunes = kDefaultMaxRetunes,
                                    bool force_qubo = false) {
    PipelineResult out;
    if (!force_qubo) {
        if (auto route = euler_shortcut(spec)) {
            out.route = std::move(*route);
            out.shortcut = true;
            return out;
        }
    }
    const GeneralModel gm = build_general_model(spec);
    const WalkDecoder decoder(gm.encoded);
    auto res = solve_with_retune(gm.model, pen ? *pen : default_general_penalties(spec), sampler, max_retunes,
                                 [&](BitSpan x) -> std::optional<RouteSolution> { return decoder.decode(x); });
    out.route = std::move(res.route);
    out.report = std::move(res.report);
    out.penalties = res.penalties;
    return out;
}

}  // namespace postman
