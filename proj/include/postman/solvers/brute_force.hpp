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

#include <bit>
#include <chrono>
#include <cstdint>
#include <vector>

#include "postman/error.hpp"
#include "postman/solvers/compiled.hpp"

namespace postman {

inline constexpr int kBruteForceLimit = 30;

/// Exhaustive minimum by Gray-code enumeration. Ties go to the
/// lexicographically smallest assignment (x[0] most significant).
inline SolveReport brute_force(const Qubo& q) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = q.num_variables();
    if (n > kBruteForceLimit)
        throw Error(ErrorCode::TooLarge,
                    std::to_string(n) + " variables exceed the brute-force limit of " + std::to_string(kBruteForceLimit));
    const CompiledQubo cq(q);
    Bits x(n, 0), best(n, 0);
    std::vector<double> field(n);
    cq.fields(x.data(), field.data());
    double e = cq.offset();
    double best_e = e;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int i = std::countr_zero(k);
        e += x[i] ? -field[i] : field[i];
        cq.flip(x.data(), field.data(), i);
        const double eps = detail::tie_eps(best_e);
        if (e < best_e - eps) {
            best_e = e;
            best = x;
        } else if (e <= best_e + eps && x < best) {
            best_e = std::min(best_e, e);
            best = x;
        }
    }

    SolveReport r;
    r.best_assignment = best;
    r.best_energy = q.energy(best);
    r.samples_evaluated = total;
    r.solver_name = "brute";
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace postman
