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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "postman/qubo.hpp"

namespace postman {

/// Flat adjacency form of a Qubo for the sampler inner loops.
class CompiledQubo {
public:
    explicit CompiledQubo(const Qubo& q) : n_(q.num_variables()), offset_(q.offset()), linear_(n_), start_(n_ + 1) {
        for (int i = 0; i < n_; ++i) {
            linear_[i] = q.linear(i);
            start_[i] = static_cast<int>(col_.size());
            for (const auto& [j, c] : q.neighbours(i)) {
                col_.push_back(j);
                val_.push_back(c);
            }
        }
        start_[n_] = static_cast<int>(col_.size());
    }

    int size() const noexcept { return n_; }
    double offset() const noexcept { return offset_; }
    double linear(int i) const noexcept { return linear_[i]; }
    int row_begin(int i) const noexcept { return start_[i]; }
    int row_end(int i) const noexcept { return start_[i + 1]; }
    int col(int k) const noexcept { return col_[k]; }
    double val(int k) const noexcept { return val_[k]; }

    double energy(const std::uint8_t* x) const noexcept {
        double e = offset_;
        for (int i = 0; i < n_; ++i) {
            if (!x[i]) continue;
            e += linear_[i];
            for (int k = start_[i]; k < start_[i + 1]; ++k)
                if (col_[k] > i && x[col_[k]]) e += val_[k];
        }
        return e;
    }

    /// field[i] = linear[i] + sum_j Q_ij x_j, so flipping i changes the
    /// energy by (x_i ? -field[i] : field[i]).
    void fields(const std::uint8_t* x, double* field) const noexcept {
        for (int i = 0; i < n_; ++i) {
            double h = linear_[i];
            for (int k = start_[i]; k < start_[i + 1]; ++k)
                if (x[col_[k]]) h += val_[k];
            field[i] = h;
        }
    }

    /// Flips bit i and keeps `field` current.
    void flip(std::uint8_t* x, double* field, int i) const noexcept {
        x[i] ^= 1;
        const double sign = x[i] ? 1.0 : -1.0;
        for (int k = start_[i]; k < start_[i + 1]; ++k) field[col_[k]] += sign * val_[k];
    }

private:
    int n_;
    double offset_;
    std::vector<double> linear_;
    std::vector<int> start_;
    std::vector<int> col_;
    std::vector<double> val_;
};

struct SolveReport {
    double best_energy = 0;
    Bits best_assignment;
    std::uint64_t samples_evaluated = 0;
    double wall_time = 0;  // seconds
    std::string solver_name;
    std::uint64_t seed = 0;
    int retunes = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Independent stream for (seed, index); the same pair always gives the same stream.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline void random_bits(std::mt19937_64& rng, Bits& x) {
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() >> 63);
}

inline bool lex_less(const Bits& a, const Bits& b) { return a < b; }

inline double tie_eps(double e) { return 1e-9 * std::max(1.0, std::abs(e)); }

/// Keeps the lower energy; on a tie keeps the lexicographically smaller assignment.
inline void offer(SolveReport& r, const Bits& x, double e) {
    if (r.best_assignment.empty() || e < r.best_energy - tie_eps(r.best_energy) ||
        (e <= r.best_energy + tie_eps(r.best_energy) && lex_less(x, r.best_assignment))) {
        r.best_energy = e;
        r.best_assignment = x;
    }
}

}  // namespace detail

}  // namespace postman
