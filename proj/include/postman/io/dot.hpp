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

#include <sstream>
#include <string>

#include "postman/io/json_io.hpp"
#include "postman/route.hpp"

namespace postman::io {

/// Graph in DOT with the route drawn on top: one coloured edge per step,
/// labelled with postman and step number.
inline std::string to_dot(const LabeledGraph& lg, const RouteSolution* route = nullptr) {
    static const char* colours[] = {"red", "blue", "darkgreen", "orange", "purple", "brown"};
    const Graph& g = lg.graph;
    auto quote = [&](Vertex v) { return json(lg.name(v)).dump(); };
    std::ostringstream os;
    os << "digraph postman {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) os << "  " << quote(v) << ";\n";
    for (const auto& u : g.undirected_edges()) {
        os << "  " << quote(u.a) << " -> " << quote(u.b) << " [dir=none, label=\"" << format_double(u.w_ab);
        if (u.w_ab != u.w_ba) os << "/" << format_double(u.w_ba);
        os << "\"];\n";
    }
    for (const auto& d : g.directed_edges())
        os << "  " << quote(d.from) << " -> " << quote(d.to) << " [label=\"" << format_double(d.w) << "\"];\n";
    if (route) {
        for (std::size_t a = 0; a < route->walks.size(); ++a) {
            int k = 0;
            for (const auto& s : route->walks[a]) {
                if (s.is_rest()) continue;
                os << "  " << quote(s.from) << " -> " << quote(s.to) << " [color=" << colours[a % 6]
                   << ", constraint=false, fontcolor=" << colours[a % 6] << ", label=\"p" << a << ":" << k++
                   << (s.mode == RouteStepMode::Service ? " s" : "") << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace postman::io
