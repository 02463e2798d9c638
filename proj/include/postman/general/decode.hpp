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

#include <vector>

#include "postman/general/encoding.hpp"
#include "postman/general/validate.hpp"
#include "postman/qubo.hpp"
#include "postman/route.hpp"

namespace postman {

/// Reads bit assignments of one encoding back into walks. validity() checks
/// the assignment directly on the bits and is cheap enough for exhaustive
/// sweeps; decode() also builds the walks and their weights. Not thread-safe
/// (scratch buffers are reused between calls).
class WalkDecoder {
public:
    explicit WalkDecoder(const Encoded& enc) : enc_(enc) {
        const int n = enc.registry().size();
        info_.assign(n, {});
        for (int a = 0; a < enc.postmen(); ++a)
            for (int i = 0; i < enc.i_max(); ++i)
                for (int s : enc.step_slots(i)) info_[enc.var(a, i, s)] = {Info::Step, a, i, s, 0};
        for (int r = 0; r < static_cast<int>(enc.required().size()); ++r)
            for (int a = 0; a < enc.postmen(); ++a)
                for (int b = 0; b < enc.required_slack_bits(); ++b)
                    info_[enc.required_slack(r, a, b)] = {Info::RequiredBit, a, r, -1, b};
        for (int a = 0; a < enc.postmen(); ++a) {
            const auto& bits = enc.capacity_slack(a);
            for (int y = 0; y < static_cast<int>(bits.size()); ++y) info_[bits[y]] = {Info::CapacityBit, a, -1, -1, y};
        }
        closure_ = enc.spec().hierarchy_closure();
    }

    const Encoded& encoded() const noexcept { return enc_; }

    Validity validity(BitSpan x) const {
        check_length(x);
        const auto& spec = enc_.spec();
        const int T = enc_.i_max();
        const int L = enc_.postmen();
        const int R = static_cast<int>(enc_.required().size());
        Validity v;

        count_.assign(static_cast<std::size_t>(L) * T, 0);
        first_.assign(static_cast<std::size_t>(L) * T, -1);
        visits_.assign(R, 0);
        slack_.assign(R, 0);
        weight_.assign(L, 0.0);
        cap_slack_.assign(L, 0);

        for (int k = 0; k < static_cast<int>(x.size()); ++k) {
            if (!x[k]) continue;
            const Info& in = info_[k];
            switch (in.kind) {
                case Info::Step: {
                    const std::size_t cell = static_cast<std::size_t>(in.postman) * T + in.step;
                    if (count_[cell]++ == 0) first_[cell] = in.slot;
                    const Slot& sl = enc_.slot(in.slot);
                    weight_[in.postman] += enc_.slot_weight(in.postman, in.slot);
                    const int r = enc_.required_index(sl.kind == Slot::Kind::Arc ? sl.edge : -1);
                    if (r >= 0) {
                        if (!spec.service_mode) {
                            ++visits_[r];
                        } else if (sl.mode == StepMode::Service) {
                            ++visits_[r];
                        }
                    }
                    break;
                }
                case Info::RequiredBit: slack_[in.step] += std::int64_t{1} << in.bit; break;
                case Info::CapacityBit: cap_slack_[in.postman] += std::int64_t{1} << in.bit; break;
            }
        }

        for (int a = 0; a < L; ++a)
            for (int i = 0; i < T; ++i) {
                const std::size_t cell = static_cast<std::size_t>(a) * T + i;
                if (count_[cell] != 1) v.one_edge_per_step = false;
            }

        // every set variable must be compatible with every set variable one step later
        for (int k = 0; k < static_cast<int>(x.size()) && v.contiguous; ++k) {
            if (!x[k] || info_[k].kind != Info::Step) continue;
            const Info& in = info_[k];
            if (in.step + 1 >= T) continue;
            for (int t : enc_.step_slots(in.step + 1)) {
                const int u = enc_.var(in.postman, in.step + 1, t);
                if (x[u] && !enc_.follows(in.slot, t)) {
                    v.contiguous = false;
                    break;
                }
            }
        }

        for (int r = 0; r < R; ++r) {
            if (spec.service_mode) {
                if (visits_[r] != 1) v.required_covered = false;
            } else {
                if (visits_[r] < 1) v.required_covered = false;
                if (visits_[r] - 1 != slack_[r]) v.slack_consistent = false;
            }
        }

        for (int a = 0; a < L; ++a) {
            if (a >= static_cast<int>(spec.capacities.size()) || !spec.capacities[a]) continue;
            const double c = static_cast<double>(*spec.capacities[a]);
            if (weight_[a] > c) v.capacity = false;
            if (c - weight_[a] != static_cast<double>(cap_slack_[a])) v.slack_consistent = false;
        }

        for (int a = 0; a < L; ++a) {
            const int s0 = first_[static_cast<std::size_t>(a) * T];
            const int sl = first_[static_cast<std::size_t>(a) * T + T - 1];
            if (spec.start && s0 >= 0) {
                const Slot& s = enc_.slot(s0);
                if (s.kind == Slot::Kind::TerminalLoop ||
                    ((s.kind == Slot::Kind::Arc || s.kind == Slot::Kind::TerminalEntry) && s.from != *spec.start))
                    v.endpoints = false;
            }
            if (spec.stop && sl >= 0) {
                const Slot& s = enc_.slot(sl);
                if ((s.kind == Slot::Kind::Arc && s.to != *spec.stop) ||
                    (s.kind == Slot::Kind::TerminalEntry && s.from != *spec.stop))
                    v.endpoints = false;
            }
        }

        for (const auto& h : closure_) {
            for (int k = 0; k < static_cast<int>(x.size()) && v.hierarchy; ++k) {
                if (!x[k] || info_[k].kind != Info::Step) continue;
                const Slot& a = enc_.slot(info_[k].slot);
                if (a.mode != StepMode::Service || a.edge != h.first) continue;
                for (int j = 0; j < static_cast<int>(x.size()); ++j) {
                    if (!x[j] || info_[j].kind != Info::Step) continue;
                    const Slot& b = enc_.slot(info_[j].slot);
                    if (b.mode == StepMode::Service && b.edge == h.second && info_[j].step < info_[k].step) {
                        v.hierarchy = false;
                        break;
                    }
                }
            }
        }

        if (spec.forbid_edge_collisions && L > 1) {
            for (int i = 0; i < T && v.collisions; ++i)
                for (int s : enc_.step_slots(i)) {
                    if (enc_.slot(s).kind != Slot::Kind::Arc) continue;
                    int on = 0;
                    for (int a = 0; a < L; ++a) on += x[enc_.var(a, i, s)];
                    if (on > 1) {
                        v.collisions = false;
                        break;
                    }
                }
        }
        return v;
    }

    RouteSolution decode(BitSpan x) const {
        RouteSolution out;
        out.validity = validity(x);
        const int T = enc_.i_max();
        for (int a = 0; a < enc_.postmen(); ++a) {
            std::vector<RouteStep> walk;
            Vertex here = enc_.spec().start.value_or(-1);
            for (int i = 0; i < T; ++i) {
                const int s = first_[static_cast<std::size_t>(a) * T + i];
                if (s < 0) continue;
                const Slot& sl = enc_.slot(s);
                switch (sl.kind) {
                    case Slot::Kind::Arc:
                        walk.push_back({sl.from, sl.to, route_mode(sl.mode), sl.edge});
                        here = sl.to;
                        break;
                    case Slot::Kind::TerminalEntry:
                        here = sl.from;
                        walk.push_back({here, here, RouteStepMode::Rest, -1});
                        break;
                    case Slot::Kind::TerminalLoop:
                    case Slot::Kind::Rest: walk.push_back({here, here, RouteStepMode::Rest, -1}); break;
                }
            }
            out.walks.push_back(std::move(walk));
        }
        const auto ev = evaluate_route(enc_.spec(), out.walks, enc_.kind() == EncodingKind::Repetition);
        out.objective_weight = ev.objective_weight;
        out.turn_extra = ev.turn_extra;
        return out;
    }

    /// Bits for a walk per postman (steps as produced by decode()), with the
    /// slack bits set to the values that zero their constraints. Throws
    /// IndexOutOfRange when a step has no variable.
    Bits encode(const std::vector<std::vector<RouteStep>>& walks) const {
        Bits x(enc_.registry().size(), 0);
        const int T = enc_.i_max();
        std::vector<int> visits(enc_.required().size(), 0);
        std::vector<double> weight(enc_.postmen(), 0.0);
        for (int a = 0; a < static_cast<int>(walks.size()); ++a) {
            if (static_cast<int>(walks[a].size()) != T)
                throw Error(ErrorCode::LengthMismatch, "walk length must equal i_max");
            for (int i = 0; i < T; ++i) {
                const int s = find_slot(walks[a], i);
                const int k = s < 0 ? -1 : enc_.var(a, i, s);
                if (k < 0) throw Error(ErrorCode::IndexOutOfRange, "walk step has no variable");
                x[k] = 1;
                const Slot& sl = enc_.slot(s);
                weight[a] += enc_.slot_weight(a, s);
                const int r = enc_.required_index(sl.kind == Slot::Kind::Arc ? sl.edge : -1);
                if (r >= 0 && (!enc_.spec().service_mode || sl.mode == StepMode::Service)) ++visits[r];
            }
        }
        for (int r = 0; r < static_cast<int>(visits.size()) && enc_.uses_required_slack(); ++r) {
            std::int64_t rest = std::max(0, visits[r] - 1);
            for (int a = 0; a < enc_.postmen() && rest > 0; ++a)
                for (int b = enc_.required_slack_bits() - 1; b >= 0; --b)
                    if (rest >= (std::int64_t{1} << b)) {
                        x[enc_.required_slack(r, a, b)] = 1;
                        rest -= std::int64_t{1} << b;
                    }
        }
        const auto& caps = enc_.spec().capacities;
        for (int a = 0; a < static_cast<int>(caps.size()); ++a) {
            if (!caps[a]) continue;
            double rest = static_cast<double>(*caps[a]) - weight[a];
            const auto& bits = enc_.capacity_slack(a);
            for (int y = static_cast<int>(bits.size()) - 1; y >= 0; --y)
                if (rest >= static_cast<double>(std::int64_t{1} << y)) {
                    x[bits[y]] = 1;
                    rest -= static_cast<double>(std::int64_t{1} << y);
                }
        }
        return x;
    }

private:
    struct Info {
        enum Kind { Step, RequiredBit, CapacityBit } kind = Step;
        int postman = 0;
        int step = 0;  // required index for RequiredBit
        int slot = -1;
        int bit = 0;
    };

    static RouteStepMode route_mode(StepMode m) {
        switch (m) {
            case StepMode::Plain: return RouteStepMode::Plain;
            case StepMode::Service: return RouteStepMode::Service;
            case StepMode::Traverse: return RouteStepMode::Traverse;
        }
        return RouteStepMode::Plain;
    }

    int find_slot(const std::vector<RouteStep>& walk, int i) const {
        const RouteStep& st = walk[i];
        for (int s : enc_.step_slots(i)) {
            const Slot& sl = enc_.slot(s);
            if (st.is_rest()) {
                if (sl.kind == Slot::Kind::Rest) return s;
                // terminal: the first rest step enters T, later ones loop
                const bool entered = i > 0 && walk[i - 1].is_rest();
                if (sl.kind == Slot::Kind::TerminalLoop && entered) return s;
                if (sl.kind == Slot::Kind::TerminalEntry && !entered && sl.from == st.from) return s;
            } else if (sl.kind == Slot::Kind::Arc && sl.edge == st.edge && sl.from == st.from &&
                       route_mode(sl.mode) == st.mode) {
                return s;
            }
        }
        return -1;
    }

    void check_length(BitSpan x) const {
        if (static_cast<int>(x.size()) != enc_.registry().size())
            throw Error(ErrorCode::LengthMismatch, "assignment length does not match the registry");
    }

    const Encoded& enc_;
    std::vector<Info> info_;
    std::vector<HierarchyPair> closure_;
    mutable std::vector<int> count_, first_, visits_;
    mutable std::vector<std::int64_t> slack_, cap_slack_;
    mutable std::vector<double> weight_;
};

inline RouteSolution decode_walk(BitSpan x, const Encoded& enc) { return WalkDecoder(enc).decode(x); }

}  // namespace postman
