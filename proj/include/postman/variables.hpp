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
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "postman/error.hpp"
#include "postman/graph.hpp"

namespace postman {

enum class StepMode { Plain, Service, Traverse };

/// Pairing decision between odd vertices i < j.
struct PairVar {
    Vertex i;
    Vertex j;
    auto operator<=>(const PairVar&) const = default;
};

/// Postman `postman` uses arc (from -> to) of `edge` at time step `step`.
/// Terminal-vertex arcs carry edge == kTerminalEdge.
struct EdgeStep {
    static constexpr int kTerminalEdge = -1;

    int step;
    Vertex from;
    Vertex to;
    StepMode mode;
    int postman;
    int edge;
    auto operator<=>(const EdgeStep&) const = default;
};

/// Bit `bit` (weight 2^bit) of the visit-count slack of a required edge.
struct RequiredSlack {
    int bit;
    Vertex from;
    Vertex to;
    int postman;
    int edge;
    auto operator<=>(const RequiredSlack&) const = default;
};

/// Postman `postman` has finished its walk by time step `step`.
struct RestVar {
    int step;
    int postman;
    auto operator<=>(const RestVar&) const = default;
};

/// Bit `bit` of the unused-capacity slack of a postman.
struct CapacitySlack {
    int bit;
    int postman;
    auto operator<=>(const CapacitySlack&) const = default;
};

using VarLabel = std::variant<PairVar, EdgeStep, RequiredSlack, RestVar, CapacitySlack>;

inline PairVar make_pair_var(Vertex a, Vertex b) { return a < b ? PairVar{a, b} : PairVar{b, a}; }

inline std::string to_string(const VarLabel& label) {
    struct Visitor {
        std::string operator()(const PairVar& p) const {
            return "x(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
        }
        std::string operator()(const EdgeStep& e) const {
            std::string s = "e";
            if (e.mode == StepMode::Service) s += 's';
            if (e.mode == StepMode::Traverse) s += 't';
            s += "[" + std::to_string(e.step) + "](";
            if (e.edge == EdgeStep::kTerminalEdge)
                s += e.from == e.to ? "T,T)" : std::to_string(e.from) + ",T)";
            else
                s += std::to_string(e.from) + "," + std::to_string(e.to) + ")#" + std::to_string(e.edge);
            return s + "/p" + std::to_string(e.postman);
        }
        std::string operator()(const RequiredSlack& r) const {
            return "s[" + std::to_string(1 << r.bit) + "](" + std::to_string(r.from) + "," + std::to_string(r.to) +
                   ")#" + std::to_string(r.edge) + "/p" + std::to_string(r.postman);
        }
        std::string operator()(const RestVar& r) const {
            return "rest[" + std::to_string(r.step) + "]/p" + std::to_string(r.postman);
        }
        std::string operator()(const CapacitySlack& c) const {
            return "slack[" + std::to_string(1 << c.bit) + "]/p" + std::to_string(c.postman);
        }
    };
    return std::visit(Visitor{}, label);
}

/// Bijection between semantic labels and QUBO indices. Indices follow label
/// order (variant alternative first, then fields), so a given label set
/// always produces the same numbering.
class VariableRegistry {
public:
    VariableRegistry() = default;

    explicit VariableRegistry(std::vector<VarLabel> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
        for (int i = 0; i < static_cast<int>(labels_.size()); ++i) index_.emplace(labels_[i], i);
    }

    int size() const noexcept { return static_cast<int>(labels_.size()); }
    const VarLabel& label(int i) const { return labels_.at(i); }
    const std::vector<VarLabel>& labels() const noexcept { return labels_; }

    std::optional<int> find(const VarLabel& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int at(const VarLabel& label) const {
        auto i = find(label);
        if (!i) throw Error(ErrorCode::IndexOutOfRange, "unknown variable " + to_string(label));
        return *i;
    }

    template <typename T>
    std::vector<int> indices_of() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (std::holds_alternative<T>(labels_[i])) out.push_back(i);
        return out;
    }

private:
    std::vector<VarLabel> labels_;
    std::map<VarLabel, int> index_;
};

}  // namespace postman
