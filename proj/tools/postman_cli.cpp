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

// postman: command-line front end (solve, export-qubo, oracle, validate, bench).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "postman/io/dot.hpp"
#include "postman/io/json_io.hpp"
#include "postman/postman.hpp"

namespace fs = std::filesystem;
using namespace postman;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitOracleLimit = 3;

struct Options {
    std::string graph_path;
    std::string spec_path;
    std::string route_path;
    std::string suite;
    std::string config_path;
    std::string pipeline;
    std::string out = ".";
    std::string solvers = "brute,sa+greedy,tabu+greedy";
    std::string seeds = "0";
    bool dot = false;
    bool force_qubo = false;
    bool timing = false;
    std::optional<int> i_max;
    int max_retunes = kDefaultMaxRetunes;
    std::uint64_t oracle_nodes = 50'000'000;
    SamplerConfig sampler;
    std::map<ConstraintFamily, double> penalties;
};

// One loaded instance: a bare graph (pairing) or a spec (general).
struct Instance {
    io::LabeledGraph graph;
    ProblemSpec spec;
    bool pairing = false;
};

ConstraintFamily family_from_name(const std::string& name) {
    for (auto f : kAllFamilies) {
        std::string n(to_string(f));
        std::string u = n;
        std::replace(u.begin(), u.end(), '-', '_');
        if (name == n || name == u) return f;
    }
    throw Error(ErrorCode::ParseError, "unknown penalty family '" + name + "'");
}

// Config file values go in first; explicit flags override them afterwards.
void apply_config(const std::string& path, Options& o, const CLI::App& app) {
    const json j = io::load_json_file(path);
    io::check_keys(j,
                   {"pipeline", "solver", "seed", "reads", "sweeps", "beta_min", "beta_max", "tenure", "iterations",
                    "restarts", "greedy_starts", "max_retunes", "penalties", "i_max", "force_qubo"},
                   "config");
    auto set = [&](const char* key, const char* flag, auto& target) {
        if (j.contains(key) && app.count(flag) == 0)
            target = io::get_as<std::decay_t<decltype(target)>>(j[key], key);
    };
    set("pipeline", "--pipeline", o.pipeline);
    set("solver", "--solver", o.sampler.name);
    set("seed", "--seed", o.sampler.seed);
    set("reads", "--reads", o.sampler.anneal.reads);
    set("sweeps", "--sweeps", o.sampler.anneal.sweeps);
    set("beta_min", "--beta-min", o.sampler.anneal.beta_min);
    set("beta_max", "--beta-max", o.sampler.anneal.beta_max);
    set("tenure", "--tenure", o.sampler.tabu.tenure);
    set("iterations", "--iterations", o.sampler.tabu.iterations);
    set("restarts", "--restarts", o.sampler.tabu.restarts);
    set("greedy_starts", "--greedy-starts", o.sampler.greedy_starts);
    set("max_retunes", "--max-retunes", o.max_retunes);
    set("force_qubo", "--force-qubo", o.force_qubo);
    if (j.contains("i_max") && app.count("--i-max") == 0) o.i_max = io::get_as<int>(j["i_max"], "i_max");
    if (j.contains("penalties")) {
        if (!j["penalties"].is_object()) throw Error(ErrorCode::ParseError, "penalties must be an object");
        for (const auto& [k, v] : j["penalties"].items()) {
            const auto f = family_from_name(k);
            if (!o.penalties.count(f)) o.penalties[f] = io::get_as<double>(v, "penalty " + k);
        }
    }
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--graph", o.graph_path, "graph JSON (pairing pipeline)");
    cmd->add_option("--spec", o.spec_path, "problem spec JSON (general pipeline)");
    cmd->add_option("--pipeline", o.pipeline, "pairing or general")->check(CLI::IsMember({"pairing", "general"}));
    cmd->add_option("--i-max", o.i_max, "override the step count");
    cmd->add_option("--out", o.out, "output directory (bench: CSV file, '-' for stdout)");
    cmd->add_option("--config", o.config_path, "JSON run configuration");
}

void add_solver(CLI::App* cmd, Options& o) {
    std::vector<std::string> names(kSamplerNames.begin(), kSamplerNames.end());
    cmd->add_option("--solver", o.sampler.name, "sampler")->check(CLI::IsMember(names));
    cmd->add_option("--seed", o.sampler.seed, "random seed");
    cmd->add_option("--reads", o.sampler.anneal.reads, "annealing reads");
    cmd->add_option("--sweeps", o.sampler.anneal.sweeps, "annealing sweeps per read");
    cmd->add_option("--beta-min", o.sampler.anneal.beta_min, "initial inverse temperature");
    cmd->add_option("--beta-max", o.sampler.anneal.beta_max, "final inverse temperature");
    cmd->add_option("--tenure", o.sampler.tabu.tenure, "tabu tenure (0 = automatic)");
    cmd->add_option("--iterations", o.sampler.tabu.iterations, "tabu iterations");
    cmd->add_option("--restarts", o.sampler.tabu.restarts, "tabu restarts");
    cmd->add_option("--greedy-starts", o.sampler.greedy_starts, "random starts for the greedy solver");
    cmd->add_option("--max-retunes", o.max_retunes, "penalty doublings before giving up");
}

void add_penalties(CLI::App* cmd, Options& o) {
    for (auto f : kAllFamilies) {
        const std::string flag = "--p-" + std::string(to_string(f));
        cmd->add_option_function<double>(
            flag, [&o, f](double v) { o.penalties[f] = v; }, "penalty multiplier");
    }
}

Instance load_instance(const Options& o) {
    if (!o.graph_path.empty() && !o.spec_path.empty())
        throw Error(ErrorCode::ParseError, "give either --graph or --spec, not both");
    Instance inst;
    if (!o.spec_path.empty()) {
        auto ls = io::parse_spec(io::load_json_file(o.spec_path), fs::path(o.spec_path).parent_path());
        inst.graph = std::move(ls.graph);
        inst.spec = std::move(ls.spec);
        inst.pairing = o.pipeline == "pairing";
    } else if (!o.graph_path.empty()) {
        inst.graph = io::parse_graph(io::load_json_file(o.graph_path));
        inst.spec.graph = inst.graph.graph;
        inst.pairing = o.pipeline != "general";
    } else {
        throw Error(ErrorCode::ParseError, "an input needs --graph or --spec");
    }
    if (o.i_max) inst.spec.i_max = *o.i_max;
    inst.spec.validate();
    return inst;
}

Instance load_instance_file(const fs::path& path, const Options& o) {
    const json j = io::load_json_file(path);
    Options local = o;
    local.graph_path.clear();
    local.spec_path.clear();
    (j.contains("vertices") ? local.graph_path : local.spec_path) = path.string();
    return load_instance(local);
}

PenaltyConfig general_penalties(const Options& o, const ProblemSpec& spec) {
    PenaltyConfig pen = default_general_penalties(spec);
    for (const auto& [f, v] : o.penalties) pen[f] = v;
    pen.validate();
    return pen;
}

std::optional<double> pairing_penalty(const Options& o) {
    auto it = o.penalties.find(ConstraintFamily::Pairing);
    if (it == o.penalties.end()) return std::nullopt;
    if (!(it->second > 0)) throw Error(ErrorCode::InvalidSpec, "penalties must be positive");
    return it->second;
}

PipelineResult run_pipeline(const Instance& inst, const Options& o) {
    if (inst.pairing) return solve_pairing(inst.graph.graph, o.sampler, pairing_penalty(o), o.max_retunes);
    return solve_general(inst.spec, o.sampler, general_penalties(o, inst.spec), o.max_retunes, o.force_qubo);
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    os << text;
}

json pairing_json(const io::LabeledGraph& lg, const Pairing& p) {
    json out = json::array();
    for (const auto& [a, b] : p.pairs) out.push_back(json::array({lg.label(a), lg.label(b)}));
    return out;
}

std::string summary(const io::LabeledGraph& lg, const PipelineResult& r) {
    std::ostringstream os;
    for (std::size_t a = 0; a < r.route.walks.size(); ++a) {
        os << "postman " << a << ":";
        for (Vertex v : vertex_sequence(r.route.walks[a])) os << ' ' << lg.name(v);
        os << '\n';
    }
    os << "weight " << format_double(r.route.objective_weight);
    if (r.route.turn_extra != 0) os << " (+" << format_double(r.route.turn_extra) << " turn)";
    os << (r.route.validity.valid() ? " valid" : " INVALID");
    if (r.shortcut) os << " (Euler shortcut, no QUBO)";
    if (r.report)
        os << "\nsolver " << r.report->solver_name << " seed " << r.report->seed << " energy "
           << format_double(r.report->best_energy) << " retunes " << r.report->retunes;
    os << '\n';
    return os.str();
}

int cmd_solve(const Options& o) {
    const Instance inst = load_instance(o);
    PipelineResult r;
    try {
        r = run_pipeline(inst, o);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoValidSolution) {
            std::cerr << "postman: " << e.what() << '\n';
            return kExitNoSolution;
        }
        throw;
    }
    json route = io::route_json(inst.graph, r.route);
    route["shortcut"] = r.shortcut;
    if (r.pairing) route["pairing"] = pairing_json(inst.graph, *r.pairing);
    if (r.report) route["report"] = io::report_json(*r.report);
    write_file(fs::path(o.out) / "route.json", route.dump(2) + "\n");
    if (r.report) write_file(fs::path(o.out) / "report.json", io::report_json(*r.report).dump(2) + "\n");
    if (o.dot) write_file(fs::path(o.out) / "route.dot", io::to_dot(inst.graph, &r.route));
    std::cout << summary(inst.graph, r);
    return r.route.validity.valid() ? kExitOk : kExitNoSolution;
}

int cmd_export(const Options& o) {
    const Instance inst = load_instance(o);
    Qubo q;
    VariableRegistry reg;
    if (inst.pairing) {
        const auto p = pairing_penalty(o);
        std::tie(q, reg) = build_pairing_qubo(inst.graph.graph, p ? *p : default_pairing_penalty(inst.graph.graph));
    } else {
        if (!o.force_qubo && euler_shortcut(inst.spec))
            throw Error(ErrorCode::ShortcutApplies,
                        "the required edges already form an Euler circuit; pass --force-qubo to export anyway");
        std::tie(q, reg) = build_general_qubo(inst.spec, general_penalties(o, inst.spec));
    }
    std::ostringstream qs, rs;
    write_qubo_text(qs, q);
    for (int i = 0; i < reg.size(); ++i) rs << i << ' ' << to_string(reg.label(i)) << '\n';
    write_file(fs::path(o.out) / "qubo.txt", qs.str());
    write_file(fs::path(o.out) / "registry.txt", rs.str());
    std::cout << "exported " << reg.size() << " variables, " << q.num_interactions() << " couplings\n";
    return kExitOk;
}

json oracle_result(const Instance& inst, const Options& o) {
    json out;
    if (inst.pairing) {
        const auto [pairing, added] = exact_pairing_oracle(inst.graph.graph);
        const RouteSolution route = augment_and_route(inst.graph.graph, pairing);
        out = io::route_json(inst.graph, route);
        out["pairing"] = pairing_json(inst.graph, pairing);
        out["added_weight"] = added;
    } else {
        out = io::route_json(inst.graph, exact_walk_oracle(inst.spec, o.oracle_nodes));
    }
    return out;
}

std::vector<fs::path> suite_files(const std::string& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, "suite directory " + dir + " not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && e.path().extension() == ".json" && name.find(".oracle.") == std::string::npos)
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

int cmd_oracle(const Options& o) {
    try {
        if (!o.suite.empty()) {
            const auto files = suite_files(o.suite);
            for (const auto& f : files) {
                const json res = oracle_result(load_instance_file(f, o), o);
                write_file(fs::path(o.out) / (f.stem().string() + ".oracle.json"), res.dump(2) + "\n");
                std::cout << f.stem().string() << ' ' << format_double(res["objective_weight"].get<double>()) << '\n';
            }
            return kExitOk;
        }
        const json res = oracle_result(load_instance(o), o);
        write_file(fs::path(o.out) / "oracle.json", res.dump(2) + "\n");
        std::cout << "optimum " << format_double(res["objective_weight"].get<double>()) << '\n';
        if (res.contains("pairing")) std::cout << "pairing " << res["pairing"].dump() << '\n';
        return kExitOk;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TooManyOddVertices || e.code() == ErrorCode::SearchBudgetExceeded ||
            e.code() == ErrorCode::TooLarge) {
            std::cerr << "postman: " << e.what() << '\n';
            return kExitOracleLimit;
        }
        throw;
    }
}

int cmd_validate(const Options& o) {
    if (o.route_path.empty()) throw Error(ErrorCode::ParseError, "validate needs --route");
    Instance inst = load_instance(o);
    const auto walks = io::parse_route(inst.graph, io::load_json_file(o.route_path));
    if (inst.pairing && !walks.empty() && !walks.front().empty()) {
        // the pairing pipeline produces a closed walk through every edge
        inst.spec.start = inst.spec.stop = walks.front().front().from;
    }
    const auto ev = evaluate_route(inst.spec, walks, true);
    RouteSolution r{walks, ev.objective_weight, ev.turn_extra, ev.validity};
    std::cout << io::route_json(inst.graph, r)["validity"].dump() << '\n';
    std::cout << "weight " << format_double(ev.objective_weight) << (ev.validity.valid() ? " valid" : " INVALID")
              << '\n';
    return ev.validity.valid() ? kExitOk : kExitNoSolution;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const Options& o) {
    if (o.suite.empty()) throw Error(ErrorCode::ParseError, "bench needs --suite");
    const auto files = suite_files(o.suite);
    if (files.empty()) {
        std::cerr << "postman: suite " << o.suite << " has no instances\n";
        return kExitInput;
    }
    const auto solvers = split(o.solvers);
    std::vector<std::uint64_t> seeds;
    for (const auto& s : split(o.seeds)) seeds.push_back(std::stoull(s));

    std::ostringstream csv;
    csv << "instance,solver,seed,valid,energy,weight,gap_vs_oracle,wall_time\n";
    bool any_ok = false;
    for (const auto& f : files) {
        const std::string stem = f.stem().string();
        std::optional<double> oracle;
        const fs::path oracle_file = f.parent_path() / (stem + ".oracle.json");
        if (fs::exists(oracle_file)) oracle = io::load_json_file(oracle_file).at("objective_weight").get<double>();
        std::optional<Instance> inst;
        std::string load_error;
        try {
            inst = load_instance_file(f, o);
        } catch (const Error& e) {
            load_error = e.what();
        }
        for (const auto& solver : solvers)
            for (auto seed : seeds) {
                Options run = o;
                run.sampler.name = solver;
                run.sampler.seed = seed;
                csv << stem << ',' << solver << ',' << seed << ',';
                if (!inst) {
                    csv << "error,,,,\n";
                    continue;
                }
                try {
                    const PipelineResult r = run_pipeline(*inst, run);
                    const bool valid = r.route.validity.valid();
                    any_ok = any_ok || valid;
                    const double cost = r.route.objective_weight + r.route.turn_extra;
                    csv << (valid ? "true" : "false") << ',' << (r.report ? format_double(r.report->best_energy) : "")
                        << ',' << format_double(cost) << ',' << (oracle ? format_double(cost - *oracle) : "") << ','
                        << (o.timing && r.report ? format_double(r.report->wall_time) : "") << '\n';
                } catch (const Error& e) {
                    csv << (e.code() == ErrorCode::NoValidSolution ? "false" : "error") << ",,,,\n";
                }
            }
        if (!inst) std::cerr << "postman: " << stem << ": " << load_error << '\n';
    }
    if (o.out == "-")
        std::cout << csv.str();
    else
        write_file(o.out, csv.str());
    return any_ok ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chinese postman routes through QUBO compilation"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "compile, sample, decode and write a route");
    add_common(solve, o);
    add_solver(solve, o);
    add_penalties(solve, o);
    solve->add_flag("--dot", o.dot, "also write route.dot");
    solve->add_flag("--force-qubo", o.force_qubo, "skip the Euler shortcut");

    auto* exp = app.add_subcommand("export-qubo", "write the QUBO text and registry");
    add_common(exp, o);
    add_penalties(exp, o);
    exp->add_flag("--force-qubo", o.force_qubo, "export even when the Euler shortcut applies");

    auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration");
    add_common(oracle, o);
    oracle->add_option("--suite", o.suite, "directory of instances; one <name>.oracle.json each");
    oracle->add_option("--node-limit", o.oracle_nodes, "walk oracle search budget");

    auto* validate = app.add_subcommand("validate", "check a route file against an instance");
    add_common(validate, o);
    validate->add_option("--route", o.route_path, "route JSON")->required();

    auto* bench = app.add_subcommand("bench", "run solvers over a suite and write CSV");
    add_common(bench, o);
    add_solver(bench, o);
    add_penalties(bench, o);
    bench->add_option("--suite", o.suite, "directory of instances")->required();
    bench->add_option("--solvers", o.solvers, "comma-separated solver names");
    bench->add_option("--seeds", o.seeds, "comma-separated seeds");
    bench->add_flag("--timing", o.timing, "fill the wall_time column (makes output run-dependent)");
    bench->add_flag("--force-qubo", o.force_qubo, "skip the Euler shortcut");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* cmd : {solve, exp, oracle, validate, bench})
            if (cmd->parsed() && !o.config_path.empty()) apply_config(o.config_path, o, *cmd);
        if (solve->parsed()) return cmd_solve(o);
        if (exp->parsed()) return cmd_export(o);
        if (oracle->parsed()) return cmd_oracle(o);
        if (validate->parsed()) return cmd_validate(o);
        if (bench->parsed()) return cmd_bench(o);
    } catch (const Error& e) {
        std::cerr << "postman: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "postman: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
