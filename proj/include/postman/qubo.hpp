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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "postman/error.hpp"

namespace postman {

using Bits = std::vector<std::uint8_t>;
using BitSpan = std::span<const std::uint8_t>;

/// Sparse quadratic form over binary variables:
///
///   E(x) = offset + sum_i linear[i] x_i + sum_{i<j} quadratic[i,j] x_i x_j
///
/// Couplings are kept in symmetric per-variable rows so a single flip costs
/// O(degree). Merged coefficients with magnitude below kPrune are dropped.
class Qubo {
public:
    static constexpr double kPrune = 1e-12;

    Qubo() = default;
    explicit Qubo(int n) : linear_(n, 0.0), rows_(n) {}

    int num_variables() const noexcept { return static_cast<int>(linear_.size()); }

    std::size_t num_interactions() const noexcept {
        std::size_t c = 0;
        for (const auto& r : rows_) c += r.size();
        return c / 2;
    }

    void resize(int n) {
        if (n < num_variables()) throw Error(ErrorCode::IndexOutOfRange, "cannot shrink a QUBO");
        linear_.resize(n, 0.0);
        rows_.resize(n);
    }

    double offset() const noexcept { return offset_; }
    double linear(int i) const { return linear_.at(i); }

    double quadratic(int i, int j) const {
        const auto& row = rows_.at(i);
        auto it = row.find(j);
        return it == row.end() ? 0.0 : it->second;
    }

    const std::map<int, double>& neighbours(int i) const { return rows_.at(i); }

    void add_offset(double c) { offset_ += c; }

    void add_linear(int i, double c) {
        check(i);
        linear_[i] += c;
        if (std::abs(linear_[i]) < kPrune) linear_[i] = 0.0;
    }

    void add_quadratic(int i, int j, double c) {
        if (i == j) {
            add_linear(i, c);  // x^2 = x
            return;
        }
        check(i);
        check(j);
        double& a = rows_[i][j];
        a += c;
        if (std::abs(a) < kPrune) {
            rows_[i].erase(j);
            rows_[j].erase(i);
        } else {
            rows_[j][i] = a;
        }
    }

    /// this += scale * other (other may have fewer variables).
    void add_scaled(const Qubo& other, double scale) {
        if (other.num_variables() > num_variables()) resize(other.num_variables());
        offset_ += scale * other.offset_;
        for (int i = 0; i < other.num_variables(); ++i) {
            if (other.linear_[i] != 0.0) add_linear(i, scale * other.linear_[i]);
            for (const auto& [j, c] : other.rows_[i])
                if (i < j) add_quadratic(i, j, scale * c);
        }
    }

    /// Calls f(i, j, c) for each coupling with i < j in ascending order.
    template <typename F>
    void for_each_quadratic(F&& f) const {
        for (int i = 0; i < num_variables(); ++i)
            for (auto it = rows_[i].upper_bound(i); it != rows_[i].end(); ++it) f(i, it->first, it->second);
    }

    double energy(BitSpan x) const {
        if (static_cast<int>(x.size()) != num_variables())
            throw Error(ErrorCode::LengthMismatch, "assignment length does not match the QUBO");
        double e = offset_;
        for (int i = 0; i < num_variables(); ++i) {
            if (!x[i]) continue;
            e += linear_[i];
            for (auto it = rows_[i].upper_bound(i); it != rows_[i].end(); ++it)
                if (x[it->first]) e += it->second;
        }
        return e;
    }

    /// energy(x with bit `flip` toggled) - energy(x).
    double energy_delta(BitSpan x, int flip) const {
        if (flip < 0 || flip >= num_variables())
            throw Error(ErrorCode::IndexOutOfRange, "flip index out of range");
        if (static_cast<int>(x.size()) != num_variables())
            throw Error(ErrorCode::LengthMismatch, "assignment length does not match the QUBO");
        double field = linear_[flip];
        for (const auto& [j, c] : rows_[flip])
            if (x[j]) field += c;
        return x[flip] ? -field : field;
    }

    /// Qubo with variable i moved to perm[i].
    Qubo relabeled(const std::vector<int>& perm) const {
        Qubo out(num_variables());
        out.offset_ = offset_;
        for (int i = 0; i < num_variables(); ++i) {
            out.linear_[perm.at(i)] = linear_[i];
            for (const auto& [j, c] : rows_[i]) out.rows_[perm[i]][perm.at(j)] = c;
        }
        return out;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= num_variables()) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
    }

    std::vector<double> linear_;
    std::vector<std::map<int, double>> rows_;
    double offset_ = 0.0;
};

inline double energy(const Qubo& q, BitSpan x) { return q.energy(x); }
inline double energy_delta(const Qubo& q, BitSpan x, int flip) { return q.energy_delta(x, flip); }

/// Adds scale * (constant + sum_i c_i x_i)^2, using x_i^2 = x_i. Repeated
/// indices in `terms` are merged before expanding.
inline void add_square_penalty(Qubo& q, const std::vector<std::pair<int, double>>& terms, double constant,
                               double scale) {
    std::map<int, double> merged;
    for (const auto& [i, c] : terms) merged[i] += c;
    std::vector<std::pair<int, double>> t(merged.begin(), merged.end());
    q.add_offset(scale * constant * constant);
    for (std::size_t a = 0; a < t.size(); ++a) {
        const auto [i, ci] = t[a];
        q.add_linear(i, scale * (ci * ci + 2.0 * constant * ci));
        for (std::size_t b = a + 1; b < t.size(); ++b) q.add_quadratic(i, t[b].first, scale * 2.0 * ci * t[b].second);
    }
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Text form: `n <count> offset <value>` then `i i c` / `i j c` lines,
/// rows in ascending order with the diagonal first.
inline void write_qubo_text(std::ostream& os, const Qubo& q) {
    os << "n " << q.num_variables() << " offset " << format_double(q.offset()) << '\n';
    for (int i = 0; i < q.num_variables(); ++i) {
        if (q.linear(i) != 0.0) os << i << ' ' << i << ' ' << format_double(q.linear(i)) << '\n';
        for (auto it = q.neighbours(i).upper_bound(i); it != q.neighbours(i).end(); ++it)
            os << i << ' ' << it->first << ' ' << format_double(it->second) << '\n';
    }
}

inline Qubo read_qubo_text(std::istream& is) {
    std::string tag_n, tag_offset;
    int n = 0;
    double offset = 0;
    if (!(is >> tag_n >> n >> tag_offset >> offset) || tag_n != "n" || tag_offset != "offset" || n < 0)
        throw Error(ErrorCode::ParseError, "bad QUBO header");
    Qubo q(n);
    q.add_offset(offset);
    int i = 0, j = 0;
    double c = 0;
    while (is >> i >> j >> c) {
        if (i > j) throw Error(ErrorCode::ParseError, "QUBO entries must satisfy i <= j");
        q.add_quadratic(i, j, c);
    }
    if (!is.eof()) throw Error(ErrorCode::ParseError, "trailing garbage in QUBO text");
    return q;
}

}  // namespace postman
