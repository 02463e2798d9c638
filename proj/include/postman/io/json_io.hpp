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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "postman/error.hpp"
#include "postman/graph.hpp"
#include "postman/problem.hpp"
#include "postman/route.hpp"
#include "postman/solvers/compiled.hpp"

namespace postman::io {

using nlohmann::json;

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

/// Rejects keys outside `allowed`.
inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& what) {
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, what + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw Error(ErrorCode::ParseError, "unknown field '" + key + "' in " + what);
    }
}

template <typename T>
T get_as(const json& j, const std::string& what) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ParseError, "bad value for " + what + ": " + j.dump());
    }
}

/// Graph with the user's vertex labels (strings or numbers) mapped to 0..n-1
/// in order of appearance in "vertices".
struct LabeledGraph {
    Graph graph;
    std::vector<json> labels;

    Vertex vertex(const json& label) const {
        for (int v = 0; v < static_cast<int>(labels.size()); ++v)
            if (labels[v] == label) return v;
        throw Error(ErrorCode::InvalidGraph, "unknown vertex " + label.dump());
    }
    const json& label(Vertex v) const { return labels.at(v); }
    std::string name(Vertex v) const {
        const json& l = labels.at(v);
        return l.is_string() ? l.get<std::string>() : l.dump();
    }
};

inline LabeledGraph parse_graph(const json& j) {
    check_keys(j, {"vertices", "undirected", "directed"}, "graph");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw Error(ErrorCode::ParseError, "graph needs a \"vertices\" list");
    std::vector<json> labels;
    for (const auto& l : j["vertices"]) {
        if (!l.is_string() && !l.is_number_integer())
            throw Error(ErrorCode::ParseError, "vertex labels must be strings or integers");
        if (std::find(labels.begin(), labels.end(), l) != labels.end())
            throw Error(ErrorCode::InvalidGraph, "duplicate vertex " + l.dump());
        labels.push_back(l);
    }
    auto index = [&](const json& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw Error(ErrorCode::InvalidGraph, "edge endpoint " + l.dump() + " is not a vertex");
        return static_cast<Vertex>(it - labels.begin());
    };
    std::vector<UndirectedEdge> und;
    std::vector<DirectedEdge> dir;
    if (j.contains("undirected")) {
        for (const auto& e : j["undirected"]) {
            if (!e.is_array() || e.size() < 3 || e.size() > 4)
                throw Error(ErrorCode::ParseError, "undirected edges are [a, b, w_ab] or [a, b, w_ab, w_ba]");
            const Weight w = get_as<double>(e[2], "edge weight");
            und.push_back({index(e[0]), index(e[1]), w, e.size() == 4 ? get_as<double>(e[3], "edge weight") : w});
        }
    }
    if (j.contains("directed")) {
        for (const auto& e : j["directed"]) {
            if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::ParseError, "directed edges are [from, to, w]");
            dir.push_back({index(e[0]), index(e[1]), get_as<double>(e[2], "edge weight")});
        }
    }
    return {Graph(static_cast<int>(labels.size()), std::move(und), std::move(dir)), std::move(labels)};
}

inline json edge_ref(const LabeledGraph& lg, int edge, std::optional<Vertex> from = {}) {
    const Graph& g = lg.graph;
    auto [a, b] = g.endpoints(edge);
    if (from && *from == b && !g.is_directed_edge(edge)) std::swap(a, b);
    return json::array({lg.label(a), lg.label(b), g.is_directed_edge(edge) ? "d" : "u"});
}

/// [a, b, "u"|"d"] -> (edge, from = a).
inline ArcRef parse_edge_ref(const LabeledGraph& lg, const json& j) {
    if (!j.is_array() || j.size() != 3 || !j[2].is_string())
        throw Error(ErrorCode::ParseError, "edge references are [a, b, \"u\"] or [from, to, \"d\"]: " + j.dump());
    const Vertex a = lg.vertex(j[0]);
    const Vertex b = lg.vertex(j[1]);
    const std::string kind = j[2].get<std::string>();
    if (kind != "u" && kind != "d") throw Error(ErrorCode::ParseError, "edge kind must be \"u\" or \"d\"");
    auto e = lg.graph.find_edge(a, b, kind == "d");
    if (!e) throw Error(ErrorCode::InvalidSpec, "no such edge " + j.dump());
    return {*e, a};
}

struct LabeledSpec {
    LabeledGraph graph;
    ProblemSpec spec;
};

/// Spec JSON. "graph" is an inline graph object or a path relative to `base`.
inline LabeledSpec parse_spec(const json& j, const std::filesystem::path& base = {}) {
    check_keys(j,
               {"graph", "start", "stop", "required", "turns", "service_mode", "service_weights", "hierarchy",
                "postmen", "capacities", "postman_weight_factors", "forbid_edge_collisions", "i_max", "encoding"},
               "spec");
    if (!j.contains("graph")) throw Error(ErrorCode::ParseError, "spec needs a \"graph\"");
    LabeledGraph lg = j["graph"].is_string() ? parse_graph(load_json_file(base / j["graph"].get<std::string>()))
                                             : parse_graph(j["graph"]);
    ProblemSpec s;
    s.graph = lg.graph;
    if (j.contains("start") && !j["start"].is_null()) s.start = lg.vertex(j["start"]);
    if (j.contains("stop") && !j["stop"].is_null()) s.stop = lg.vertex(j["stop"]);
    if (j.contains("required") && !j["required"].is_null()) {
        std::vector<int> req;
        for (const auto& r : j["required"]) req.push_back(parse_edge_ref(lg, r).edge);
        s.required_edges = req;
    }
    if (j.contains("turns"))
        for (const auto& t : j["turns"]) {
            if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::ParseError, "turns are [edge_in, edge_out, bonus]");
            s.turn_penalties.push_back(
                {parse_edge_ref(lg, t[0]), parse_edge_ref(lg, t[1]), get_as<double>(t[2], "turn bonus")});
        }
    if (j.contains("service_mode")) s.service_mode = get_as<bool>(j["service_mode"], "service_mode");
    if (j.contains("service_weights")) {
        std::vector<Weight> sw;
        for (const auto& a : lg.graph.arcs()) sw.push_back(a.weight);
        for (const auto& w : j["service_weights"]) {
            if (!w.is_array() || w.size() < 4 || w.size() > 5)
                throw Error(ErrorCode::ParseError, "service weights are [a, b, kind, w_ab] or [a, b, \"u\", w_ab, w_ba]");
            const ArcRef r = parse_edge_ref(lg, json::array({w[0], w[1], w[2]}));
            const Weight ab = get_as<double>(w[3], "service weight");
            sw[*lg.graph.arc_index(r.edge, r.from)] = ab;
            if (!lg.graph.is_directed_edge(r.edge)) {
                const auto [u, v] = lg.graph.endpoints(r.edge);
                const Vertex other = r.from == u ? v : u;
                sw[*lg.graph.arc_index(r.edge, other)] = w.size() == 5 ? get_as<double>(w[4], "service weight") : ab;
            } else if (w.size() == 5) {
                throw Error(ErrorCode::ParseError, "directed service weights take one value");
            }
        }
        s.service_weights = std::move(sw);
    }
    if (j.contains("hierarchy"))
        for (const auto& h : j["hierarchy"]) {
            if (!h.is_array() || h.size() != 2) throw Error(ErrorCode::ParseError, "hierarchy entries are [first, second]");
            s.hierarchy.push_back({parse_edge_ref(lg, h[0]).edge, parse_edge_ref(lg, h[1]).edge});
        }
    if (j.contains("postmen")) s.postmen = get_as<int>(j["postmen"], "postmen");
    if (j.contains("capacities"))
        for (const auto& c : j["capacities"])
            s.capacities.push_back(c.is_null() ? std::nullopt
                                               : std::optional<std::int64_t>(get_as<std::int64_t>(c, "capacity")));
    if (j.contains("postman_weight_factors"))
        s.postman_weight_factors = get_as<std::vector<double>>(j["postman_weight_factors"], "postman_weight_factors");
    if (j.contains("forbid_edge_collisions"))
        s.forbid_edge_collisions = get_as<bool>(j["forbid_edge_collisions"], "forbid_edge_collisions");
    if (j.contains("i_max") && !j["i_max"].is_null()) s.i_max = get_as<int>(j["i_max"], "i_max");
    if (j.contains("encoding")) {
        const auto e = get_as<std::string>(j["encoding"], "encoding");
        if (e == "auto") s.encoding = Encoding::Auto;
        else if (e == "repetition") s.encoding = Encoding::Repetition;
        else if (e == "terminal") s.encoding = Encoding::Terminal;
        else throw Error(ErrorCode::ParseError, "encoding must be auto, repetition or terminal");
    }
    s.validate();
    return {std::move(lg), std::move(s)};
}

inline json validity_json(const Validity& v) {
    return {{"one_edge_per_step", v.one_edge_per_step}, {"contiguous", v.contiguous},
            {"slack_consistent", v.slack_consistent},   {"required_covered", v.required_covered},
            {"endpoints", v.endpoints},                 {"hierarchy", v.hierarchy},
            {"capacity", v.capacity},                   {"collisions", v.collisions}};
}

inline json route_json(const LabeledGraph& lg, const RouteSolution& r) {
    json walks = json::array();
    for (const auto& w : r.walks) {
        json steps = json::array();
        for (const auto& s : w) {
            json step;
            step["from"] = s.from >= 0 ? lg.label(s.from) : json(nullptr);
            step["to"] = s.to >= 0 ? lg.label(s.to) : json(nullptr);
            step["mode"] = to_string(s.mode);
            if (!s.is_rest()) step["edge"] = edge_ref(lg, s.edge, s.from);
            steps.push_back(step);
        }
        json vertices = json::array();
        for (Vertex v : vertex_sequence(w)) vertices.push_back(lg.label(v));
        walks.push_back({{"steps", steps}, {"vertices", vertices}});
    }
    return {{"walks", walks},
            {"objective_weight", r.objective_weight},
            {"turn_extra", r.turn_extra},
            {"validity", validity_json(r.validity)},
            {"valid", r.validity.valid()}};
}

/// Reads the "walks" of a route file back into steps.
inline std::vector<std::vector<RouteStep>> parse_route(const LabeledGraph& lg, const json& j) {
    check_keys(j, {"walks", "objective_weight", "turn_extra", "validity", "valid", "report", "shortcut", "pairing"},
               "route");
    if (!j.contains("walks") || !j["walks"].is_array()) throw Error(ErrorCode::ParseError, "route needs \"walks\"");
    std::vector<std::vector<RouteStep>> out;
    for (const auto& w : j["walks"]) {
        check_keys(w, {"steps", "vertices"}, "walk");
        std::vector<RouteStep> walk;
        for (const auto& s : w.at("steps")) {
            check_keys(s, {"from", "to", "mode", "edge"}, "step");
            const std::string mode = get_as<std::string>(s.at("mode"), "mode");
            if (mode == "rest") {
                const Vertex v = s.contains("from") && !s["from"].is_null() ? lg.vertex(s["from"]) : -1;
                walk.push_back({v, v, RouteStepMode::Rest, -1});
                continue;
            }
            RouteStepMode m;
            if (mode == "plain") m = RouteStepMode::Plain;
            else if (mode == "service") m = RouteStepMode::Service;
            else if (mode == "traverse") m = RouteStepMode::Traverse;
            else throw Error(ErrorCode::ParseError, "unknown step mode " + mode);
            const Vertex from = lg.vertex(s.at("from"));
            const Vertex to = lg.vertex(s.at("to"));
            int edge = -1;
            if (s.contains("edge")) {
                edge = parse_edge_ref(lg, s["edge"]).edge;
            } else {
                auto e = lg.graph.find_edge(from, to, true);
                if (!e) e = lg.graph.find_edge(from, to, false);
                if (!e) throw Error(ErrorCode::InvalidSpec, "step uses a missing edge");
                edge = *e;
            }
            walk.push_back({from, to, m, edge});
        }
        out.push_back(std::move(walk));
    }
    return out;
}

inline json report_json(const SolveReport& r) {
    std::string bits;
    for (auto b : r.best_assignment) bits += b ? '1' : '0';
    return {{"solver", r.solver_name},     {"seed", r.seed},
            {"best_energy", r.best_energy}, {"best_assignment", bits},
            {"samples_evaluated", r.samples_evaluated}, {"wall_time", r.wall_time},
            {"retunes", r.retunes}};
}

}  // namespace postman::io
