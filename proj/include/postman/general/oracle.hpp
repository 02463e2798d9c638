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
#include <limits>
#include <vector>

#include "postman/error.hpp"
#include "postman/problem.hpp"
#include "postman/route.hpp"

namespace postman {

/// Depth-first branch and bound over walks of at most i_max steps. Minimises
/// traversal weight plus turn bonuses; the bound adds the cheapest use of
/// every still-uncovered required edge. Single postman only.
class WalkOracle {
public:
    explicit WalkOracle(const ProblemSpec& spec, std::uint64_t node_limit = 50'000'000)
        : spec_(spec), limit_(node_limit) {
        spec_.validate();
        if (spec_.uses_rest_form())
            throw Error(ErrorCode::UnsupportedCombination, "the walk oracle handles a single postman");
        const Graph& g = spec_.graph;
        const auto& arcs = g.arcs();
        i_max_ = spec_.effective_i_max();
        required_ = spec_.required();
        req_index_.assign(g.edge_count(), -1);
        for (int r = 0; r < static_cast<int>(required_.size()); ++r) req_index_[required_[r]] = r;
        min_cost_.assign(required_.size(), std::numeric_limits<Weight>::infinity());
        out_.assign(g.vertex_count(), {});
        for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
            out_[arcs[a].from].push_back(a);
            const int r = req_index_[arcs[a].edge];
            if (r >= 0) {
                const Weight w = spec_.service_mode ? spec_.service_weight(a) : arcs[a].weight;
                min_cost_[r] = std::min(min_cost_[r], w);
            }
        }
        turns_.assign(arcs.size(), {});
        for (const auto& t : spec_.turn_penalties)
            turns_[*g.arc_index(t.in.edge, t.in.from)].push_back({*g.arc_index(t.out.edge, t.out.from), t.bonus});
        preds_.assign(required_.size(), {});
        for (const auto& h : spec_.hierarchy_closure()) preds_[req_index_[h.second]].push_back(req_index_[h.first]);
    }

    RouteSolution solve() {
        best_cost_ = std::numeric_limits<Weight>::infinity();
        found_ = false;
        nodes_ = 0;
        covered_.assign(required_.size(), 0);
        uncovered_ = static_cast<int>(required_.size());
        bound_ = 0;
        for (Weight w : min_cost_) bound_ += w;
        for (Vertex v = 0; v < spec_.graph.vertex_count(); ++v) {
            if (spec_.start && v != *spec_.start) continue;
            path_.clear();
            search(v, 0.0, 0.0, 0);
        }
        if (!found_) throw Error(ErrorCode::NoValidSolution, "no covering walk fits in i_max steps");
        RouteSolution out;
        out.walks.push_back(best_path_);
        out.objective_weight = best_weight_;
        out.turn_extra = best_cost_ - best_weight_;
        return out;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    struct Move {
        int arc;
        bool service;
    };

    void search(Vertex here, Weight weight, Weight turn, int traverses) {
        if (++nodes_ > limit_) throw Error(ErrorCode::SearchBudgetExceeded, "walk oracle node limit reached");
        const int len = static_cast<int>(path_.size());
        const Weight cost = weight + turn;
        if (uncovered_ == 0 && complete(here, len, traverses) && cost < best_cost_) {
            found_ = true;
            best_cost_ = cost;
            best_weight_ = weight;
            best_path_ = current_steps();
        }
        if (len == i_max_) return;
        if (uncovered_ > i_max_ - len) return;
        if (cost + bound_ >= best_cost_) return;

        const auto& arcs = spec_.graph.arcs();
        for (int a : out_[here]) {
            const Arc& arc = arcs[a];
            const int r = req_index_[arc.edge];
            Weight extra = 0;
            if (len > 0)
                for (const auto& [o, b] : turns_[path_.back().arc])
                    if (o == a) extra += b;
            for (int mode = 0; mode < 2; ++mode) {
                const bool service = mode == 1;
                if (service && (!spec_.service_mode || r < 0 || covered_[r] || !preds_done(r))) continue;
                const Weight w = service ? spec_.service_weight(a) : arc.weight;
                const bool covers = r >= 0 && !covered_[r] && (service || !spec_.service_mode);
                if (covers) {
                    covered_[r] = 1;
                    --uncovered_;
                    bound_ -= min_cost_[r];
                }
                path_.push_back({a, service});
                search(arc.to, weight + w, turn + extra, traverses + (service ? 0 : 1));
                path_.pop_back();
                if (covers) {
                    covered_[r] = 0;
                    ++uncovered_;
                    bound_ += min_cost_[r];
                }
            }
        }
    }

    bool preds_done(int r) const {
        for (int p : preds_[r])
            if (!covered_[p]) return false;
        return true;
    }

    bool complete(Vertex here, int len, int traverses) const {
        if (len == 0) {
            // only the terminal encoding can express an empty walk
            if (!required_.empty()) return false;
            return !(spec_.start && spec_.stop && *spec_.start != *spec_.stop);
        }
        if (spec_.stop && here != *spec_.stop) return false;
        // service steps cannot repeat, so a short walk needs a traverse step to pad
        if (spec_.service_mode && len < i_max_ && traverses == 0) return false;
        return true;
    }

    std::vector<RouteStep> current_steps() const {
        std::vector<RouteStep> out;
        for (const auto& m : path_) {
            const Arc& a = spec_.graph.arcs()[m.arc];
            const RouteStepMode mode = m.service          ? RouteStepMode::Service
                                       : spec_.service_mode ? RouteStepMode::Traverse
                                                            : RouteStepMode::Plain;
            out.push_back({a.from, a.to, mode, a.edge});
        }
        return out;
    }

    ProblemSpec spec_;
    std::uint64_t limit_;
    int i_max_ = 0;
    std::vector<int> required_;
    std::vector<int> req_index_;
    std::vector<Weight> min_cost_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<std::pair<int, Weight>>> turns_;
    std::vector<std::vector<int>> preds_;

    std::vector<Move> path_;
    std::vector<char> covered_;
    int uncovered_ = 0;
    Weight bound_ = 0;
    std::uint64_t nodes_ = 0;
    bool found_ = false;
    Weight best_cost_ = 0;
    Weight best_weight_ = 0;
    std::vector<RouteStep> best_path_;
};

inline RouteSolution exact_walk_oracle(const ProblemSpec& spec, std::uint64_t node_limit = 50'000'000) {
    return WalkOracle(spec, node_limit).solve();
}

}  // namespace postman
