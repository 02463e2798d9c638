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

// Random instance generators and independent reference computations shared
// by the unit tests and the acceptance suite.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "postman/postman.hpp"

namespace testkit {

using namespace postman;

/// The six-vertex example graph: seven undirected edges, odd vertices 3 and 5.
inline Graph figure2_graph() {
    return Graph(6, {{3, 2, 5, 5}, {2, 1, 1, 1}, {1, 0, 1, 1}, {0, 5, 2, 2}, {5, 4, 5, 5}, {4, 2, 5, 5}, {5, 2, 4, 4}},
                 {});
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Connected undirected graph: random spanning tree plus extra edges,
/// integer weights in [1, wmax].
inline Graph random_undirected(std::mt19937_64& rng, int n, int extra, int wmax) {
    std::vector<UndirectedEdge> edges;
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        const int u = uniform_int(rng, 0, v - 1);
        const Weight w = uniform_int(rng, 1, wmax);
        edges.push_back({u, v, w, w});
        used.insert({u, v});
    }
    for (int k = 0, tries = 0; k < extra && tries < 200; ++tries) {
        int a = uniform_int(rng, 0, n - 1), b = uniform_int(rng, 0, n - 1);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!used.insert({a, b}).second) continue;
        const Weight w = uniform_int(rng, 1, wmax);
        edges.push_back({a, b, w, w});
        ++k;
    }
    return Graph(n, edges, {});
}

/// Undirected graph with exactly d odd-degree vertices.
inline Graph random_with_odd_count(std::mt19937_64& rng, int d, int wmax = 9) {
    for (;;) {
        const int n = uniform_int(rng, std::max(d, 4), d + 4);
        const Graph g = random_undirected(rng, n, uniform_int(rng, 0, n), wmax);
        if (static_cast<int>(odd_degree_vertices(g).size()) == d) return g;
    }
}

/// Floyd-Warshall over the arcs, the reference for ShortestPaths.
inline std::vector<std::vector<Weight>> floyd_warshall(const Graph& g) {
    const int n = g.vertex_count();
    const Weight inf = std::numeric_limits<Weight>::infinity();
    std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& a : g.arcs()) d[a.from][a.to] = std::min(d[a.from][a.to], a.weight);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Term-by-term evaluation straight from the coefficient accessors.
inline double naive_energy(const Qubo& q, BitSpan x) {
    double e = q.offset();
    for (int i = 0; i < q.num_variables(); ++i) {
        e += q.linear(i) * x[i];
        for (int j = i + 1; j < q.num_variables(); ++j) e += q.quadratic(i, j) * x[i] * x[j];
    }
    return e;
}

inline Qubo random_qubo(std::mt19937_64& rng, int n, double density = 0.5) {
    Qubo q(n);
    std::uniform_real_distribution<double> c(-5, 5);
    q.add_offset(c(rng));
    for (int i = 0; i < n; ++i) {
        q.add_linear(i, c(rng));
        for (int j = i + 1; j < n; ++j)
            if (coin(rng, density)) q.add_quadratic(i, j, c(rng));
    }
    return q;
}

/// Integer-coefficient QUBO, so ties and sums are exact.
inline Qubo random_integer_qubo(std::mt19937_64& rng, int n, double density = 0.5) {
    Qubo q(n);
    for (int i = 0; i < n; ++i) {
        q.add_linear(i, uniform_int(rng, -6, 6));
        for (int j = i + 1; j < n; ++j)
            if (coin(rng, density)) q.add_quadratic(i, j, uniform_int(rng, -6, 6));
    }
    return q;
}

inline Bits random_bits(std::mt19937_64& rng, int n) {
    Bits x(n);
    for (auto& b : x) b = coin(rng) ? 1 : 0;
    return x;
}

/// Bits for the index `k` with x[0] as the most significant bit.
inline Bits bits_of(std::uint64_t k, int n) {
    Bits x(n);
    for (int i = 0; i < n; ++i) x[i] = (k >> (n - 1 - i)) & 1;
    return x;
}

/// Calls f(x) for every assignment of n bits.
inline void for_each_assignment(int n, const std::function<void(const Bits&)>& f) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) f(bits_of(k, n));
}

/// Exhaustive minimum energy among assignments the decoder accepts.
inline std::pair<double, Bits> best_legal(const Qubo& q, const Encoded& enc) {
    const WalkDecoder dec(enc);
    const int n = q.num_variables();
    const CompiledQubo cq(q);
    Bits x(n, 0), best;
    std::vector<double> field(n);
    cq.fields(x.data(), field.data());
    double e = cq.offset();
    double best_e = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0;; ++k) {
        if (e < best_e && dec.validity(x).valid()) {
            best_e = e;
            best = x;
        }
        if (k + 1 == (std::uint64_t{1} << n)) break;
        const int i = std::countr_zero(k + 1);
        e += x[i] ? -field[i] : field[i];
        cq.flip(x.data(), field.data(), i);
    }
    return {best_e, best};
}

/// Category of a random general spec.
enum class Flavor { Closed, Open, StartOnly, StopOnly, StartStop, Rural, Windy, Mixed, Directed };
inline constexpr Flavor kFlavors[] = {Flavor::Closed,    Flavor::Open,  Flavor::StartOnly,
                                      Flavor::StopOnly,  Flavor::StartStop, Flavor::Rural,
                                      Flavor::Windy,     Flavor::Mixed, Flavor::Directed};

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Closed: return "closed";
        case Flavor::Open: return "open";
        case Flavor::StartOnly: return "start";
        case Flavor::StopOnly: return "stop";
        case Flavor::StartStop: return "start-stop";
        case Flavor::Rural: return "rural";
        case Flavor::Windy: return "windy";
        case Flavor::Mixed: return "mixed";
        case Flavor::Directed: return "directed";
    }
    return "?";
}

/// Strongly connected graph on n vertices; `directed_share` of the edges
/// are directed, `windy` gives undirected edges independent directional weights.
inline Graph random_general_graph(std::mt19937_64& rng, int n, int m, double directed_share, bool windy, int wmax) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<UndirectedEdge> und;
        std::vector<DirectedEdge> dir;
        std::set<std::pair<int, int>> upairs, dpairs;
        for (int k = 0, tries = 0; k < m && tries < 500; ++tries) {
            const int a = uniform_int(rng, 0, n - 1), b = uniform_int(rng, 0, n - 1);
            if (a == b) continue;
            const Weight w = uniform_int(rng, 1, wmax);
            if (coin(rng, directed_share)) {
                if (!dpairs.insert({a, b}).second) continue;
                dir.push_back({a, b, w});
            } else {
                if (!upairs.insert({std::min(a, b), std::max(a, b)}).second) continue;
                und.push_back({a, b, w, windy ? static_cast<Weight>(uniform_int(rng, 1, wmax)) : w});
            }
            ++k;
        }
        Graph g(n, und, dir);
        if (g.edge_count() == m && is_strongly_connected(g)) return g;
    }
    throw Error(ErrorCode::InvalidGraph, "no strongly connected graph with these parameters");
}

/// Small spec of the given flavor whose encoding has at most `max_vars`
/// variables and which has a feasible walk.
inline ProblemSpec random_small_spec(std::mt19937_64& rng, Flavor flavor, int max_vars = 24, int max_i = 6) {
    for (;;) {
        const int n = uniform_int(rng, 2, 4);
        const double dshare = flavor == Flavor::Directed ? 1.0 : flavor == Flavor::Mixed ? 0.5 : 0.0;
        const int pairs = dshare > 0 ? n * (n - 1) : n * (n - 1) / 2;
        const int m = uniform_int(rng, n - 1, std::min(5, pairs));
        Graph g;
        try {
            g = random_general_graph(rng, n, m, dshare, flavor == Flavor::Windy, 5);
        } catch (const Error&) {
            continue;
        }
        ProblemSpec s;
        s.graph = g;
        s.i_max = uniform_int(rng, 1, max_i);
        const Vertex a = uniform_int(rng, 0, n - 1), b = uniform_int(rng, 0, n - 1);
        switch (flavor) {
            case Flavor::Closed: s.start = s.stop = a; break;
            case Flavor::Open: break;
            case Flavor::StartOnly: s.start = a; break;
            case Flavor::StopOnly: s.stop = b; break;
            case Flavor::StartStop:
                if (a == b) continue;
                s.start = a;
                s.stop = b;
                break;
            case Flavor::Rural: {
                std::vector<int> req;
                for (int e = 0; e < g.edge_count(); ++e)
                    if (coin(rng, 0.4)) req.push_back(e);
                if (req.empty() || static_cast<int>(req.size()) == g.edge_count()) continue;
                s.required_edges = req;
                if (coin(rng)) s.start = a;
                break;
            }
            case Flavor::Windy:
            case Flavor::Mixed:
            case Flavor::Directed:
                if (coin(rng)) s.start = s.stop = a;
                break;
        }
        try {
            const Encoded enc = encode(s);
            if (enc.registry().size() > max_vars) continue;
            exact_walk_oracle(s);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InfeasibleEndpoints || e.code() == ErrorCode::NoValidSolution) continue;
            throw;
        }
        return s;
    }
}

/// Uniformly random walk of `len` arcs from `start` (any vertex when absent).
inline std::vector<RouteStep> random_walk(std::mt19937_64& rng, const Graph& g, std::optional<Vertex> start, int len) {
    std::vector<RouteStep> walk;
    Vertex v = start ? *start : uniform_int(rng, 0, g.vertex_count() - 1);
    for (int k = 0; k < len; ++k) {
        std::vector<const Arc*> out;
        for (const auto& a : g.arcs())
            if (a.from == v) out.push_back(&a);
        if (out.empty()) break;
        const Arc* a = out[uniform_int(rng, 0, static_cast<int>(out.size()) - 1)];
        walk.push_back({a->from, a->to, RouteStepMode::Plain, a->edge});
        v = a->to;
    }
    return walk;
}

/// Pads a collapsed walk to exactly i_max steps the way the encoding expects:
/// repeat the last step (repetition) or go to the terminal (terminal).
inline std::vector<RouteStep> pad_walk(const std::vector<RouteStep>& walk, const Encoded& enc) {
    std::vector<RouteStep> out = walk;
    const int T = enc.i_max();
    if (enc.kind() == EncodingKind::Repetition) {
        // service steps cannot repeat; pad by repeating the last traverse step in place
        int pos = -1;
        for (int i = static_cast<int>(out.size()) - 1; i >= 0 && pos < 0; --i)
            if (out[i].mode != RouteStepMode::Service) pos = i;
        while (static_cast<int>(out.size()) < T) {
            if (pos < 0) break;
            out.insert(out.begin() + pos, out[pos]);
        }
    } else {
        const Vertex end = out.empty() ? enc.spec().start.value_or(enc.spec().stop.value_or(0)) : out.back().to;
        while (static_cast<int>(out.size()) < T) out.push_back({end, end, RouteStepMode::Rest, -1});
    }
    return out;
}

/// Every walk of at most T arcs from `start`, rest-padded to T steps.
inline std::vector<std::vector<RouteStep>> all_rest_walks(const Graph& g, Vertex start, int T) {
    std::vector<std::vector<RouteStep>> out;
    std::vector<RouteStep> walk;
    auto rec = [&](auto&& self, Vertex v) -> void {
        auto padded = walk;
        while (static_cast<int>(padded.size()) < T) padded.push_back({v, v, RouteStepMode::Rest, -1});
        out.push_back(std::move(padded));
        if (static_cast<int>(walk.size()) == T) return;
        for (const auto& a : g.arcs()) {
            if (a.from != v) continue;
            walk.push_back({a.from, a.to, RouteStepMode::Plain, a.edge});
            self(self, a.to);
            walk.pop_back();
        }
    };
    rec(rec, start);
    return out;
}

/// Cheapest valid team of walks for a rest-form spec, by trying every
/// combination. Returns nullopt when none is valid.
inline std::optional<std::pair<Weight, std::vector<std::vector<RouteStep>>>> best_team(const ProblemSpec& s) {
    const auto walks = all_rest_walks(s.graph, s.start.value_or(0), s.effective_i_max());
    std::optional<std::pair<Weight, std::vector<std::vector<RouteStep>>>> best;
    std::vector<std::vector<RouteStep>> team(s.postmen);
    auto rec = [&](auto&& self, int a) -> void {
        if (a == s.postmen) {
            const auto ev = evaluate_route(s, team, false);
            if (ev.validity.valid() && (!best || ev.objective_weight < best->first))
                best = std::make_pair(ev.objective_weight, team);
            return;
        }
        for (const auto& w : walks) {
            team[a] = w;
            self(self, a + 1);
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace testkit
