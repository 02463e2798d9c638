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
#include <optional>
#include <vector>

#include "postman/error.hpp"
#include "postman/problem.hpp"
#include "postman/variables.hpp"

namespace postman {

enum class EncodingKind { Repetition, Terminal, RestForm };

inline const char* to_string(EncodingKind k) {
    switch (k) {
        case EncodingKind::Repetition: return "repetition";
        case EncodingKind::Terminal: return "terminal";
        case EncodingKind::RestForm: return "rest";
    }
    return "?";
}

/// What a postman may be doing at one time step. The same slot list is used
/// for every step and postman; pruning decides which (step, slot) pairs get
/// a variable.
struct Slot {
    enum class Kind { Arc, TerminalEntry, TerminalLoop, Rest };
    Kind kind = Kind::Arc;
    int arc = -1;  // index into Graph::arcs() for Kind::Arc
    int edge = -1;
    Vertex from = -1;
    Vertex to = -1;
    StepMode mode = StepMode::Plain;
};

inline int bits_for(std::int64_t limit) {
    int r = 0;
    while ((std::int64_t{1} << r) < limit) ++r;
    return r + 1;  // bits 0..ceil(log2(limit))
}

/// Layout of the time-indexed variables for one spec and one encoding.
class Encoded {
public:
    Encoded(const ProblemSpec& spec, EncodingKind kind) : spec_(spec), kind_(kind) {
        spec_.validate();
        const Graph& g = spec_.graph;
        i_max_ = spec_.effective_i_max();
        postmen_ = spec_.postmen;
        required_ = spec_.required();
        terminal_ = g.vertex_count();
        required_index_.assign(g.edge_count(), -1);
        for (int r = 0; r < static_cast<int>(required_.size()); ++r) required_index_[required_[r]] = r;
        make_slots();
        prune();
        make_variables();
    }

    const ProblemSpec& spec() const noexcept { return spec_; }
    EncodingKind kind() const noexcept { return kind_; }
    int i_max() const noexcept { return i_max_; }
    int postmen() const noexcept { return postmen_; }
    Vertex terminal() const noexcept { return terminal_; }
    const std::vector<int>& required() const noexcept { return required_; }
    int required_index(int edge) const { return edge >= 0 ? required_index_.at(edge) : -1; }
    const std::vector<Slot>& slots() const noexcept { return slots_; }
    const Slot& slot(int s) const { return slots_.at(s); }
    const std::vector<int>& step_slots(int step) const { return step_slots_.at(step); }
    const VariableRegistry& registry() const noexcept { return registry_; }
    bool uses_required_slack() const noexcept { return !spec_.service_mode; }
    int required_slack_bits() const noexcept { return slack_bits_; }

    /// Variable index of (postman, step, slot) or -1 when pruned.
    int var(int postman, int step, int slot) const {
        return var_[(static_cast<std::size_t>(postman) * i_max_ + step) * slots_.size() + slot];
    }
    /// Slack bit `bit` of required edge number `r` (index into required()).
    int required_slack(int r, int postman, int bit) const {
        return req_slack_[(static_cast<std::size_t>(r) * postmen_ + postman) * slack_bits_ + bit];
    }
    const std::vector<int>& capacity_slack(int postman) const { return cap_slack_.at(postman); }

    /// Whether `b` may directly follow `a` at the next time step.
    bool follows(int a, int b) const {
        const Slot& x = slots_[a];
        const Slot& y = slots_[b];
        switch (kind_) {
            case EncodingKind::Repetition:
                return y.from == x.to || (a == b && x.mode != StepMode::Service);
            case EncodingKind::Terminal:
                return y.from == x.to;
            case EncodingKind::RestForm:
                if (y.kind == Slot::Kind::Rest) return true;
                return x.kind == Slot::Kind::Arc && y.from == x.to;
        }
        return false;
    }

    /// Weight charged for slot s by postman a (before any repeat discount).
    Weight slot_weight(int postman, int s) const {
        const Slot& sl = slots_[s];
        if (sl.kind != Slot::Kind::Arc) return 0;
        if (sl.mode == StepMode::Service) return spec_.service_weight(sl.arc);
        return spec_.graph.arcs()[sl.arc].weight * spec_.weight_factor(postman);
    }

    VarLabel slot_label(int postman, int step, int s) const {
        const Slot& sl = slots_[s];
        switch (sl.kind) {
            case Slot::Kind::Arc: return EdgeStep{step, sl.from, sl.to, sl.mode, postman, sl.edge};
            case Slot::Kind::TerminalEntry:
                return EdgeStep{step, sl.from, terminal_, StepMode::Plain, postman, EdgeStep::kTerminalEdge};
            case Slot::Kind::TerminalLoop:
                return EdgeStep{step, terminal_, terminal_, StepMode::Plain, postman, EdgeStep::kTerminalEdge};
            case Slot::Kind::Rest: return RestVar{step, postman};
        }
        return RestVar{step, postman};
    }

private:
    void make_slots() {
        const Graph& g = spec_.graph;
        const auto& arcs = g.arcs();
        for (int ai = 0; ai < static_cast<int>(arcs.size()); ++ai) {
            const Arc& a = arcs[ai];
            if (spec_.service_mode) {
                slots_.push_back({Slot::Kind::Arc, ai, a.edge, a.from, a.to, StepMode::Traverse});
                if (required_index_[a.edge] >= 0)
                    slots_.push_back({Slot::Kind::Arc, ai, a.edge, a.from, a.to, StepMode::Service});
            } else {
                slots_.push_back({Slot::Kind::Arc, ai, a.edge, a.from, a.to, StepMode::Plain});
            }
        }
        if (kind_ == EncodingKind::Terminal) {
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (!spec_.stop || *spec_.stop == v)
                    slots_.push_back({Slot::Kind::TerminalEntry, -1, -1, v, terminal_, StepMode::Plain});
            slots_.push_back({Slot::Kind::TerminalLoop, -1, -1, terminal_, terminal_, StepMode::Plain});
        }
        if (kind_ == EncodingKind::RestForm) slots_.push_back({Slot::Kind::Rest, -1, -1, -1, -1, StepMode::Plain});
    }

    bool available(int step, const Slot& s) const {
        if (s.kind == Slot::Kind::TerminalEntry || s.kind == Slot::Kind::TerminalLoop)
            return step >= static_cast<int>(required_.size());
        return true;
    }

    bool may_start(const Slot& s) const {
        if (!spec_.start) return true;
        switch (s.kind) {
            case Slot::Kind::Arc:
            case Slot::Kind::TerminalEntry: return s.from == *spec_.start;
            case Slot::Kind::TerminalLoop: return false;
            case Slot::Kind::Rest: return true;
        }
        return false;
    }

    bool may_end(const Slot& s) const {
        if (!spec_.stop) return true;
        return s.kind != Slot::Kind::Arc || s.to == *spec_.stop;
    }

    // forward reachability from the start, then backward from the stop
    void prune() {
        const int ns = static_cast<int>(slots_.size());
        std::vector<std::vector<char>> fwd(i_max_, std::vector<char>(ns, 0)), bwd = fwd;
        for (int s = 0; s < ns; ++s) fwd[0][s] = available(0, slots_[s]) && may_start(slots_[s]);
        for (int i = 1; i < i_max_; ++i)
            for (int b = 0; b < ns; ++b) {
                if (!available(i, slots_[b])) continue;
                for (int a = 0; a < ns && !fwd[i][b]; ++a) fwd[i][b] = fwd[i - 1][a] && follows(a, b);
            }
        for (int s = 0; s < ns; ++s) bwd[i_max_ - 1][s] = available(i_max_ - 1, slots_[s]) && may_end(slots_[s]);
        for (int i = i_max_ - 2; i >= 0; --i)
            for (int a = 0; a < ns; ++a) {
                if (!available(i, slots_[a])) continue;
                for (int b = 0; b < ns && !bwd[i][a]; ++b) bwd[i][a] = bwd[i + 1][b] && follows(a, b);
            }
        step_slots_.assign(i_max_, {});
        for (int i = 0; i < i_max_; ++i) {
            for (int s = 0; s < ns; ++s)
                if (fwd[i][s] && bwd[i][s]) step_slots_[i].push_back(s);
            if (step_slots_[i].empty())
                throw Error(ErrorCode::InfeasibleEndpoints,
                            "no walk of " + std::to_string(i_max_) + " steps satisfies the endpoints (step " +
                                std::to_string(i) + " is empty)");
        }
    }

    void make_variables() {
        std::vector<VarLabel> labels;
        for (int a = 0; a < postmen_; ++a)
            for (int i = 0; i < i_max_; ++i)
                for (int s : step_slots_[i]) labels.push_back(slot_label(a, i, s));

        slack_bits_ = uses_required_slack() ? bits_for(i_max_) : 0;
        for (int e : required_) {
            const auto [u, v] = spec_.graph.endpoints(e);
            for (int a = 0; a < postmen_; ++a)
                for (int r = 0; r < slack_bits_; ++r) labels.push_back(RequiredSlack{r, u, v, a, e});
        }
        for (int a = 0; a < static_cast<int>(spec_.capacities.size()); ++a)
            if (spec_.capacities[a])
                for (int y = 0; y < bits_for(*spec_.capacities[a]); ++y) labels.push_back(CapacitySlack{y, a});

        registry_ = VariableRegistry(std::move(labels));

        var_.assign(static_cast<std::size_t>(postmen_) * i_max_ * slots_.size(), -1);
        for (int a = 0; a < postmen_; ++a)
            for (int i = 0; i < i_max_; ++i)
                for (int s : step_slots_[i])
                    var_[(static_cast<std::size_t>(a) * i_max_ + i) * slots_.size() + s] =
                        registry_.at(slot_label(a, i, s));
        req_slack_.assign(required_.size() * postmen_ * slack_bits_, -1);
        for (int r = 0; r < static_cast<int>(required_.size()); ++r) {
            const auto [u, v] = spec_.graph.endpoints(required_[r]);
            for (int a = 0; a < postmen_; ++a)
                for (int b = 0; b < slack_bits_; ++b)
                    req_slack_[(static_cast<std::size_t>(r) * postmen_ + a) * slack_bits_ + b] =
                        registry_.at(RequiredSlack{b, u, v, a, required_[r]});
        }
        cap_slack_.assign(postmen_, {});
        for (int a = 0; a < static_cast<int>(spec_.capacities.size()); ++a)
            if (spec_.capacities[a])
                for (int y = 0; y < bits_for(*spec_.capacities[a]); ++y)
                    cap_slack_[a].push_back(registry_.at(CapacitySlack{y, a}));
    }

    ProblemSpec spec_;
    EncodingKind kind_;
    int i_max_ = 0;
    int postmen_ = 1;
    Vertex terminal_ = -1;
    std::vector<int> required_;
    std::vector<int> required_index_;
    std::vector<Slot> slots_;
    std::vector<std::vector<int>> step_slots_;
    VariableRegistry registry_;
    int slack_bits_ = 0;
    std::vector<int> var_;
    std::vector<int> req_slack_;
    std::vector<std::vector<int>> cap_slack_;
};

/// Picks the encoding for a spec. Auto builds both single-postman encodings
/// and keeps the one with fewer variables (repetition on ties).
inline Encoded encode(const ProblemSpec& spec) {
    spec.validate();
    if (spec.uses_rest_form()) {
        if (spec.encoding == Encoding::Terminal)
            throw Error(ErrorCode::UnsupportedCombination, "the multi-postman form has its own end encoding");
        return Encoded(spec, EncodingKind::RestForm);
    }
    if (spec.service_mode || spec.encoding == Encoding::Repetition) return Encoded(spec, EncodingKind::Repetition);
    if (spec.encoding == Encoding::Terminal) return Encoded(spec, EncodingKind::Terminal);

    std::optional<Encoded> rep, term;
    std::optional<Error> first_error;
    try {
        rep.emplace(spec, EncodingKind::Repetition);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleEndpoints) throw;
        first_error = e;
    }
    try {
        term.emplace(spec, EncodingKind::Terminal);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleEndpoints) throw;
        if (!first_error) first_error = e;
    }
    if (rep && term) return term->registry().size() < rep->registry().size() ? std::move(*term) : std::move(*rep);
    if (rep) return std::move(*rep);
    if (term) return std::move(*term);
    throw *first_error;
}

inline VariableRegistry enumerate_variables(const ProblemSpec& spec) { return encode(spec).registry(); }

}  // namespace postman
