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

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "postman/io/json_io.hpp"
#include "postman/postman.hpp"

namespace fs = std::filesystem;
using postman::io::json;

namespace {

const fs::path kSamples = POSTMAN_SAMPLES;

struct Run {
    int code;
    std::string out;
};

fs::path scratch_root() { return fs::temp_directory_path() / ("postman_cli_test_" + std::to_string(::getpid())); }

struct RemoveScratch {
    ~RemoveScratch() {
        std::error_code ec;
        fs::remove_all(scratch_root(), ec);
    }
} remove_scratch;

fs::path scratch(const std::string& name) {
    const fs::path dir = scratch_root() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run cli(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / ("postman_cli_test_" + std::to_string(::getpid()) + ".log");
    const std::string cmd = std::string("\"") + POSTMAN_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
    fs::remove(log);
    return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("solve the example graph") {
    const fs::path out = scratch("solve");
    const Run r = cli("solve --graph " + q(kSamples / "figure2.json") + " --seed 3 --dot --out " + q(out));
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("weight 32 valid") != std::string::npos);
    const json route = postman::io::load_json_file(out / "route.json");
    CHECK(route["objective_weight"] == 32.0);
    CHECK(route["valid"] == true);
    CHECK(route["pairing"] == json::array({json::array({3, 5})}));
    CHECK(route["walks"][0]["vertices"].size() == 10);
    CHECK(fs::exists(out / "report.json"));
    CHECK(slurp(out / "route.dot").rfind("digraph postman {", 0) == 0);
}

TEST_CASE("solve specs through the general pipeline") {
    const std::pair<const char*, double> cases[] = {
        {"figure2_rural.json", 11}, {"windy_open.json", 7}, {"turns.json", 4},
        {"service_hierarchy.json", 16}, {"two_postmen.json", 6}, {"directed_cycle.json", 10}};
    for (const auto& [name, weight] : cases) {
        const fs::path out = scratch(std::string("spec_") + name);
        const Run r = cli(std::string("solve --spec ") + q(kSamples / "specs" / name) + " --out " + q(out));
        INFO(name << "\n" << r.out);
        CHECK(r.code == 0);
        const json route = postman::io::load_json_file(out / "route.json");
        CHECK(route["objective_weight"].get<double>() + route["turn_extra"].get<double>() == weight);
        CHECK(route["valid"] == true);
    }
}

TEST_CASE("input errors exit 1 without writing files") {
    const fs::path dir = scratch("bad");
    {
        std::ofstream(dir / "broken.json") << "{\"vertices\": [0, 1], \"undirected\": [[0, 1, 1]";
    }
    Run r = cli("solve --graph " + q(dir / "broken.json") + " --out " + q(dir / "out"));
    CHECK(r.code == 1);
    CHECK(r.out.find("ParseError") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));

    {
        std::ofstream(dir / "extra.json") << R"({"vertices": [0, 1], "undirected": [[0, 1, 1]], "colour": "red"})";
    }
    r = cli("solve --graph " + q(dir / "extra.json") + " --out " + q(dir / "out"));
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(dir / "out"));

    {
        std::ofstream(dir / "cycle.json") << R"({"graph": {"vertices": [0, 1, 2],
            "directed": [[0, 1, 1], [1, 2, 1], [2, 0, 1]]}, "start": 0, "stop": 0, "i_max": 2})";
    }
    r = cli("export-qubo --spec " + q(dir / "cycle.json") + " --force-qubo --out " + q(dir / "out"));
    CHECK(r.code == 1);
    CHECK(r.out.find("InfeasibleEndpoints") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));

    r = cli("solve --graph " + q(kSamples / "figure2.json") + " --spec " + q(kSamples / "specs/turns.json"));
    CHECK(r.code == 1);
    r = cli("solve --graph " + q(kSamples / "figure2.json") + " --solver qpu --out " + q(dir / "out"));
    CHECK(r.code != 0);
}

TEST_CASE("export the pairing QUBO") {
    const fs::path out = scratch("export");
    const Run r = cli("export-qubo --graph " + q(kSamples / "figure2.json") + " --p-pairing 10 --out " + q(out));
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(slurp(out / "qubo.txt") == "n 1 offset 10\n0 0 -1\n");
    CHECK(slurp(out / "registry.txt") == "0 x(3,5)\n");
}

TEST_CASE("export refuses when the Euler shortcut applies") {
    const fs::path out = scratch("shortcut");
    Run r = cli("export-qubo --spec " + q(kSamples / "specs/directed_cycle.json") + " --out " + q(out));
    CHECK(r.code == 1);
    CHECK(r.out.find("ShortcutApplies") != std::string::npos);
    r = cli("export-qubo --spec " + q(kSamples / "specs/directed_cycle.json") + " --force-qubo --out " + q(out));
    CHECK(r.code == 0);
    const postman::Qubo qubo = [&] {
        std::ifstream in(out / "qubo.txt");
        return postman::read_qubo_text(in);
    }();
    CHECK(qubo.num_variables() == 16);
    CHECK(postman::brute_force(qubo).best_energy == 10);
}

TEST_CASE("oracle command") {
    const fs::path out = scratch("oracle");
    Run r = cli("oracle --spec " + q(kSamples / "specs/figure2_closed.json") + " --out " + q(out));
    CHECK(r.code == 0);
    CHECK(r.out.find("optimum 32") != std::string::npos);
    CHECK(postman::io::load_json_file(out / "oracle.json")["objective_weight"] == 32.0);

    r = cli("oracle --graph " + q(kSamples / "figure2.json") + " --out " + q(out));
    CHECK(r.code == 0);
    CHECK(r.out.find("pairing [[3,5]]") != std::string::npos);

    r = cli("oracle --spec " + q(kSamples / "specs/figure2_closed.json") + " --node-limit 50 --out " + q(out));
    CHECK(r.code == 3);

    // 14 odd vertices: a star with 14 leaves
    json g{{"vertices", json::array()}, {"undirected", json::array()}};
    for (int v = 0; v <= 14; ++v) g["vertices"].push_back(v);
    for (int v = 1; v <= 14; ++v) g["undirected"].push_back({0, v, 1});
    {
        std::ofstream(out / "star.json") << g.dump();
    }
    r = cli("oracle --graph " + q(out / "star.json") + " --out " + q(out));
    CHECK(r.code == 3);
}

TEST_CASE("validate round trip") {
    const fs::path out = scratch("validate");
    Run r = cli("solve --spec " + q(kSamples / "specs/figure2_rural.json") + " --out " + q(out));
    REQUIRE(r.code == 0);
    r = cli("validate --spec " + q(kSamples / "specs/figure2_rural.json") + " --route " + q(out / "route.json"));
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("weight 11 valid") != std::string::npos);

    r = cli("solve --graph " + q(kSamples / "figure2.json") + " --out " + q(out / "pairing"));
    REQUIRE(r.code == 0);
    r = cli("validate --graph " + q(kSamples / "figure2.json") + " --route " + q(out / "pairing/route.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("weight 32 valid") != std::string::npos);

    // drop the first step: the walk no longer leaves from the start vertex
    json route = postman::io::load_json_file(out / "route.json");
    route["walks"][0]["steps"].erase(0);
    {
        std::ofstream(out / "cut.json") << route.dump();
    }
    r = cli("validate --spec " + q(kSamples / "specs/figure2_rural.json") + " --route " + q(out / "cut.json"));
    CHECK(r.code == 2);
    CHECK(r.out.find("INVALID") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
    const fs::path dir = scratch("config");
    {
        std::ofstream(dir / "cfg.json") << R"({"solver": "tabu+greedy", "seed": 7, "penalties": {"pairing": 10}})";
    }
    Run r = cli("solve --graph " + q(kSamples / "figure2.json") + " --config " + q(dir / "cfg.json") +
                " --seed 11 --out " + q(dir / "out"));
    INFO(r.out);
    CHECK(r.code == 0);
    const json report = postman::io::load_json_file(dir / "out/report.json");
    CHECK(report["solver"] == "tabu+greedy");
    CHECK(report["seed"] == 11);

    {
        std::ofstream(dir / "bad.json") << R"({"solver": "tabu", "temperature": 3})";
    }
    r = cli("solve --graph " + q(kSamples / "figure2.json") + " --config " + q(dir / "bad.json") + " --out " +
            q(dir / "out2"));
    CHECK(r.code == 1);
}

TEST_CASE("bench writes deterministic CSV") {
    const fs::path dir = scratch("bench");
    const std::string common = "bench --suite " + q(kSamples / "bench") + " --solvers greedy,tabu --seeds 1,2 --out ";
    Run a = cli(common + q(dir / "a.csv"));
    Run b = cli(common + q(dir / "b.csv"));
    INFO(a.out);
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const std::string csv = slurp(dir / "a.csv");
    CHECK(csv == slurp(dir / "b.csv"));
    CHECK(csv.rfind("instance,solver,seed,valid,energy,weight,gap_vs_oracle,wall_time\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 2 * 2);
    CHECK(csv.find("figure2,tabu,1,true,9,32,0,\n") != std::string::npos);

    fs::create_directories(dir / "empty");
    CHECK(cli("bench --suite " + q(dir / "empty") + " --out " + q(dir / "c.csv")).code == 1);
    CHECK(cli("bench --suite " + q(dir / "missing") + " --out " + q(dir / "c.csv")).code == 1);
}
