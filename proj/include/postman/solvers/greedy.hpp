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

#include <chrono>
#include <cstdint>
#include <vector>

#include "postman/solvers/compiled.hpp"

namespace postman {

namespace detail {

/// Steepest descent in place: flips the most improving bit (lowest index on
/// ties) until no flip lowers the energy.
inline void descend(const CompiledQubo& cq, Bits& x, std::vector<double>& field) {
    const int n = cq.size();
    for (;;) {
        int pick = -1;
        double best = 0;
        for (int i = 0; i < n; ++i) {
            const double d = x[i] ? -field[i] : field[i];
            if (d < best - 1e-12) {
                best = d;
                pick = i;
            }
        }
        if (pick < 0) return;
        cq.flip(x.data(), field.data(), pick);
    }
}

}  // namespace detail

/// Steepest descent from `starts` random assignments.
inline SolveReport greedy_descent(const Qubo& q, int starts = 100, std::uint64_t seed = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    const CompiledQubo cq(q);
    const int n = cq.size();
    SolveReport r;
    Bits x(n);
    std::vector<double> field(n);
    for (int s = 0; s < std::max(1, starts); ++s) {
        auto rng = detail::stream(seed, static_cast<std::uint64_t>(s));
        detail::random_bits(rng, x);
        cq.fields(x.data(), field.data());
        detail::descend(cq, x, field);
        detail::offer(r, x, cq.energy(x.data()));
    }
    r.best_energy = q.energy(r.best_assignment);
    r.samples_evaluated = static_cast<std::uint64_t>(std::max(1, starts));
    r.solver_name = "greedy";
    r.seed = seed;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Steepest descent from a previous solver's best assignment.
inline SolveReport greedy_post(const Qubo& q, const SolveReport& in) {
    if (static_cast<int>(in.best_assignment.size()) != q.num_variables())
        throw Error(ErrorCode::LengthMismatch, "assignment length does not match the QUBO");
    const auto t0 = std::chrono::steady_clock::now();
    const CompiledQubo cq(q);
    Bits x = in.best_assignment;
    std::vector<double> field(cq.size());
    cq.fields(x.data(), field.data());
    detail::descend(cq, x, field);
    SolveReport r = in;
    r.best_assignment = x;
    r.best_energy = q.energy(x);
    r.solver_name = in.solver_name + "+greedy";
    r.wall_time = in.wall_time + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace postman
