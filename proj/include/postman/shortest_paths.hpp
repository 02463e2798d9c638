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

#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "postman/graph.hpp"

namespace postman {

/// All-pairs shortest paths over the arcs of a graph, respecting per-direction
/// weights. Predecessors are stored as arc indices into Graph::arcs().
class ShortestPaths {
public:
    static constexpr Weight kInf = std::numeric_limits<Weight>::infinity();

    explicit ShortestPaths(const Graph& g) : arcs_(g.arcs()), n_(g.vertex_count()) {
        dist_.assign(static_cast<std::size_t>(n_) * n_, kInf);
        pred_.assign(static_cast<std::size_t>(n_) * n_, -1);
        std::vector<std::vector<int>> out(n_);
        const auto& arcs = g.arcs();
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) out[arcs[i].from].push_back(i);

        using Item = std::pair<Weight, Vertex>;
        for (Vertex s = 0; s < n_; ++s) {
            Weight* d = &dist_[static_cast<std::size_t>(s) * n_];
            int* p = &pred_[static_cast<std::size_t>(s) * n_];
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            d[s] = 0;
            heap.push({0, s});
            while (!heap.empty()) {
                auto [dv, v] = heap.top();
                heap.pop();
                if (dv > d[v]) continue;
                for (int ai : out[v]) {
                    const Arc& a = arcs[ai];
                    const Weight nd = dv + a.weight;
                    if (nd < d[a.to]) {
                        d[a.to] = nd;
                        p[a.to] = ai;
                        heap.push({nd, a.to});
                    }
                }
            }
        }
        for (Weight w : dist_)
            if (w == kInf) throw Error(ErrorCode::NotStronglyConnected, "graph is not strongly connected");
    }

    int vertex_count() const noexcept { return n_; }

    Weight distance(Vertex from, Vertex to) const { return dist_[index(from, to)]; }

    /// Arc sequence realising distance(from, to); empty when from == to.
    std::vector<Arc> path(Vertex from, Vertex to) const {
        std::vector<Arc> rev;
        Vertex v = to;
        while (v != from) {
            const int ai = pred_[index(from, v)];
            const Arc& a = arcs_[ai];
            rev.push_back(a);
            v = a.from;
        }
        return {rev.rbegin(), rev.rend()};
    }

private:
    std::size_t index(Vertex a, Vertex b) const { return static_cast<std::size_t>(a) * n_ + b; }

    std::vector<Arc> arcs_;
    int n_;
    std::vector<Weight> dist_;
    std::vector<int> pred_;
};

inline ShortestPaths shortest_paths(const Graph& g) { return ShortestPaths(g); }

}  // namespace postman
