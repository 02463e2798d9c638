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
#include <optional>
#include <string>
#include <string_view>

#include "postman/penalty.hpp"
#include "postman/route.hpp"
#include "postman/solvers/annealing.hpp"
#include "postman/solvers/brute_force.hpp"
#include "postman/solvers/greedy.hpp"
#include "postman/solvers/tabu.hpp"

namespace postman {

inline constexpr std::array<std::string_view, 6> kSamplerNames{"brute", "greedy", "sa", "tabu", "sa+greedy",
                                                                "tabu+greedy"};

struct SamplerConfig {
    std::string name = "sa+greedy";
    std::uint64_t seed = 0;
    AnnealParams anneal;
    TabuParams tabu;
    int greedy_starts = 100;
};

inline SolveReport run_sampler(const Qubo& q, const SamplerConfig& c) {
    SolveReport r;
    if (c.name == "brute") {
        r = brute_force(q);
    } else if (c.name == "greedy") {
        r = greedy_descent(q, c.greedy_starts, c.seed);
    } else if (c.name == "sa" || c.name == "sa+greedy") {
        r = simulated_annealing(q, c.anneal, c.seed);
        if (c.name == "sa+greedy") r = greedy_post(q, r);
    } else if (c.name == "tabu" || c.name == "tabu+greedy") {
        r = tabu_search(q, c.tabu, c.seed);
        if (c.name == "tabu+greedy") r = greedy_post(q, r);
    } else {
        throw Error(ErrorCode::InvalidSpec, "unknown solver '" + c.name + "'");
    }
    r.seed = c.seed;
    return r;
}

struct RetuneResult {
    SolveReport report;
    RouteSolution route;
    PenaltyConfig penalties;  // the penalties that produced `route`
};

inline constexpr int kDefaultMaxRetunes = 5;

/// Solve, decode, and on an invalid result double the penalty of every hard
/// family whose constraint is violated at the returned assignment (all hard
/// families when none is), up to `max_retunes` times. `decode` maps bits to a
/// route, or nullopt when the bits do not describe one.
template <typename Decode>
RetuneResult solve_with_retune(const ConstrainedModel& model, PenaltyConfig pen, const SamplerConfig& sampler,
                               int max_retunes, Decode&& decode) {
    if (max_retunes < 0) throw Error(ErrorCode::InvalidSpec, "max_retunes must be non-negative");
    for (int attempt = 0;; ++attempt) {
        const Qubo q = model.compose(pen);
        SolveReport report = run_sampler(q, sampler);
        report.retunes = attempt;
        std::optional<RouteSolution> route = decode(BitSpan(report.best_assignment));
        if (route && route->validity.valid() && model.violation(report.best_assignment) == 0.0)
            return {std::move(report), std::move(*route), pen};
        if (attempt == max_retunes)
            throw Error(ErrorCode::NoValidSolution,
                        "no valid route after " + std::to_string(max_retunes) + " penalty retunes");
        bool raised = false;
        for (const auto& [f, c] : model.constraints)
            if (is_hard_constraint(f) && c.energy(report.best_assignment) != 0.0) {
                pen[f] *= 2.0;
                raised = true;
            }
        if (!raised)
            for (const auto& [f, c] : model.constraints)
                if (is_hard_constraint(f)) pen[f] *= 2.0;
    }
}

}  // namespace postman
