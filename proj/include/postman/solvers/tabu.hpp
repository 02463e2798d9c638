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
#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "postman/error.hpp"
#include "postman/solvers/compiled.hpp"

namespace postman {

struct TabuParams {
    int tenure = 0;  // 0 -> max(10, n / 10)
    int iterations = 10000;
    int restarts = 10;  // from independent random starts
};

inline int default_tabu_tenure(int n) { return std::max(10, n / 10); }

/// Single-flip tabu search. Each iteration takes the best move that is not
/// tabu, or a tabu move that beats the incumbent; when every move is tabu the
/// least bad move is taken anyway. Lowest index wins ties.
inline SolveReport tabu_search(const Qubo& q, const TabuParams& p = {}, std::uint64_t seed = 0) {
    if (p.tenure < 0 || p.iterations < 0 || p.restarts < 1)
        throw Error(ErrorCode::InvalidSpec, "tabu parameters must be non-negative with at least one restart");
    const auto t0 = std::chrono::steady_clock::now();
    const CompiledQubo cq(q);
    const int n = cq.size();
    const int tenure = p.tenure > 0 ? p.tenure : default_tabu_tenure(n);

    SolveReport r;
    Bits x(n), best(n);
    std::vector<double> field(n);
    std::vector<long long> tabu_until(n);
    for (int run = 0; run < p.restarts; ++run) {
        auto rng = detail::stream(seed, static_cast<std::uint64_t>(run));
        detail::random_bits(rng, x);
        cq.fields(x.data(), field.data());
        std::fill(tabu_until.begin(), tabu_until.end(), 0);
        double e = cq.energy(x.data());
        double best_e = e;
        best = x;
        for (long long it = 0; it < p.iterations && n > 0; ++it) {
            int pick = -1, fallback = -1;
            double pick_d = std::numeric_limits<double>::infinity();
            double fallback_d = pick_d;
            for (int i = 0; i < n; ++i) {
                const double d = x[i] ? -field[i] : field[i];
                if (d < fallback_d) {
                    fallback_d = d;
                    fallback = i;
                }
                const bool allowed = tabu_until[i] <= it || e + d < best_e - detail::tie_eps(best_e);
                if (allowed && d < pick_d) {
                    pick_d = d;
                    pick = i;
                }
            }
            if (pick < 0) {
                pick = fallback;
                pick_d = fallback_d;
            }
            cq.flip(x.data(), field.data(), pick);
            e += pick_d;
            tabu_until[pick] = it + 1 + tenure;
            if (e < best_e - detail::tie_eps(best_e)) {
                best_e = e;
                best = x;
            }
        }
        detail::offer(r, best, cq.energy(best.data()));
    }
    r.best_energy = q.energy(r.best_assignment);
    r.samples_evaluated = static_cast<std::uint64_t>(p.iterations) * p.restarts;
    r.solver_name = "tabu";
    r.seed = seed;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace postman
