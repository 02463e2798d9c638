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
#include <cmath>
#include <cstdint>
#include <vector>

#include "postman/error.hpp"
#include "postman/solvers/compiled.hpp"

namespace postman {

struct AnnealParams {
    int reads = 1000;
    int sweeps = 1000;
    double beta_min = 0.1;
    double beta_max = 10.0;
};

/// Metropolis annealing with a geometric inverse-temperature ramp. Each read
/// starts from random bits drawn from its own (seed, read) stream and keeps
/// the lowest state it visits.
inline SolveReport simulated_annealing(const Qubo& q, const AnnealParams& p = {}, std::uint64_t seed = 0) {
    if (p.reads < 1 || p.sweeps < 1) throw Error(ErrorCode::InvalidSpec, "reads and sweeps must be positive");
    if (!(p.beta_min > 0) || !(p.beta_max >= p.beta_min))
        throw Error(ErrorCode::InvalidSpec, "need 0 < beta_min <= beta_max");
    const auto t0 = std::chrono::steady_clock::now();
    const CompiledQubo cq(q);
    const int n = cq.size();

    std::vector<double> betas(p.sweeps);
    for (int s = 0; s < p.sweeps; ++s) {
        const double t = p.sweeps == 1 ? 1.0 : static_cast<double>(s) / (p.sweeps - 1);
        betas[s] = p.beta_min * std::pow(p.beta_max / p.beta_min, t);
    }

    SolveReport r;
    Bits x(n), keep(n);
    std::vector<double> field(n);
    for (int read = 0; read < p.reads; ++read) {
        auto rng = detail::stream(seed, static_cast<std::uint64_t>(read));
        detail::random_bits(rng, x);
        cq.fields(x.data(), field.data());
        double e = cq.energy(x.data());
        double low = e;
        keep = x;
        for (const double beta : betas) {
            for (int i = 0; i < n; ++i) {
                const double d = x[i] ? -field[i] : field[i];
                if (d > 0) {
                    const double a = beta * d;
                    // exp(-40) is below the resolution of the uniform draw
                    if (a > 40.0 || detail::uniform01(rng) >= std::exp(-a)) continue;
                }
                cq.flip(x.data(), field.data(), i);
                e += d;
                if (e < low) {
                    low = e;
                    keep = x;
                }
            }
        }
        detail::offer(r, keep, cq.energy(keep.data()));
    }
    r.best_energy = q.energy(r.best_assignment);
    r.samples_evaluated = static_cast<std::uint64_t>(p.reads);
    r.solver_name = "sa";
    r.seed = seed;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace postman
