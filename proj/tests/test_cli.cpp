// Copyright 2026 The lipfree authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lipfree/cli.hpp"
#include "lipfree/json_io.hpp"
#include "support/spaces.hpp"

using namespace lipfree;
using namespace lipfree::testsupport;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("lipfree_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    std::string full = (path / name).string();
    std::ofstream out(full);
    out << content;
    return full;
  }
};

struct RunOutput {
  int code;
  std::string out;
  std::string err;
};

RunOutput run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string metric_json(const MetricSpace& m) { return metric_to_json(m).dump(); }

}  // namespace

TEST_CASE("product on K3 prints the exact value and gap") {
  TempDir tmp;
  std::string k3 = tmp.file("k3.json", metric_json(complete_space(3)));
  RunOutput r = run_cli({"product", "--input", k3});
  CHECK(r.code == 0);
  CHECK(r.out.find("P(M) = 9") != std::string::npos);
  CHECK(r.out.find("gap = 1") != std::string::npos);
}

TEST_CASE("validate rejects a broken triangle with a witness, exit 1") {
  TempDir tmp;
  std::string bad = tmp.file("bad.json", R"({
    "labels": ["0", "1", "2"], "root": 0,
    "distances": [["0","1","1"],["1","0","3"],["1","3","0"]]
  })");
  RunOutput r = run_cli({"validate", "--input", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("triangle") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("classify reports spiderweb and hanner flags for C4") {
  TempDir tmp;
  std::string c4 = tmp.file("c4.json", metric_json(cycle_space(4)));
  RunOutput r = run_cli({"classify", "--input", c4});
  CHECK(r.code == 0);
  CHECK(r.out.find("is_spiderweb=true") != std::string::npos);
  CHECK(r.out.find("is_hanner=true") != std::string::npos);
}

TEST_CASE("graph input is completed via shortest paths") {
  TempDir tmp;
  std::string g = tmp.file("g.json", R"({
    "n": 3,
    "edges": [{"u":0,"v":1,"w":"1"},{"u":1,"v":2,"w":"1"}]
  })");
  RunOutput r = run_cli({"product", "--input", g});
  CHECK(r.code == 0);
  CHECK(r.out.find("P(M) = 8") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  RunOutput r = run_cli({"product"});  // missing --input
  CHECK(r.code == 2);
  RunOutput r2 = run_cli({"definitely-not-a-command"});
  CHECK(r2.code == 2);
}

TEST_CASE("isometric: a negative answer is a result, not an error") {
  TempDir tmp;
  std::string k4 = tmp.file("k4.json", metric_json(complete_space(4)));
  std::string c4 = tmp.file("c4.json", metric_json(cycle_space(4)));
  RunOutput r = run_cli({"isometric", "--a", k4, "--b", c4});
  CHECK(r.code == 0);
  CHECK(r.out.find("isometric: no") != std::string::npos);

  RunOutput r2 = run_cli({"isometric", "--a", k4, "--b", k4, "--format", "json"});
  CHECK(r2.code == 0);
  CHECK(r2.out.find("\"isometric\": true") != std::string::npos);
}

TEST_CASE("norm command computes the exact free norm") {
  TempDir tmp;
  std::string k3 = tmp.file("k3.json", metric_json(complete_space(3)));
  RunOutput r = run_cli({"norm", "--input", k3, "--vector", "[1,1]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("free norm = 2") != std::string::npos);
}

TEST_CASE("json reports are byte-identical across runs") {
  TempDir tmp;
  std::string k3 = tmp.file("k3.json", metric_json(complete_space(3)));
  RunOutput a = run_cli({"product", "--input", k3, "--format", "json"});
  RunOutput b = run_cli({"product", "--input", k3, "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  // every rational in the report round-trips through the p/q format
  Json report = Json::parse(a.out);
  Json result = report.at("result");
  for (const char* key : {"vol_free", "vol_lip", "product", "mahler_floor", "gap"}) {
    Rat parsed = parse_rational(result.at(key).get<std::string>());
    CHECK(rational_to_string(parsed) == result.at(key).get<std::string>());
  }
  CHECK(report.at("manifest").at("timing_ms").is_null());
}

TEST_CASE("ball command emits vrep, hrep and labels") {
  TempDir tmp;
  std::string k3 = tmp.file("k3.json", metric_json(complete_space(3)));
  std::string out_file = (tmp.path / "ball.json").string();
  RunOutput r = run_cli({"ball", "--input", k3, "--out", out_file});
  CHECK(r.code == 0);
  Json ball = load_json_file(out_file);
  CHECK(ball.at("result").at("vrep").at("vertices").size() == 6);
  CHECK(ball.at("result").at("hrep").at("halfspaces").size() == 6);
  CHECK(ball.at("result").at("vertex_labels").size() == 6);
}

TEST_CASE("polar and volume commands work on polytope JSON") {
  TempDir tmp;
  std::string square = tmp.file("square.json", R"({
    "dim": 2,
    "vertices": [["1","0"],["-1","0"],["0","1"],["0","-1"]]
  })");
  RunOutput r = run_cli({"polar", "--input", square});
  CHECK(r.code == 0);
  CHECK(r.out.find("halfspaces") != std::string::npos);

  RunOutput v = run_cli({"volume", "--input", square});
  CHECK(v.code == 0);
  CHECK(v.out.find("volume = 2") != std::string::npos);

  std::string cube = tmp.file("cube.json", R"({
    "dim": 2,
    "halfspaces": [{"a":["1","0"],"b":"1"},{"a":["-1","0"],"b":"1"},
                   {"a":["0","1"],"b":"1"},{"a":["0","-1"],"b":"1"}]
  })");
  RunOutput v2 = run_cli({"volume", "--input", cube, "--mc", "50000", "--seed", "3"});
  CHECK(v2.code == 0);
  CHECK(v2.out.find("volume = 4") != std::string::npos);
  CHECK(v2.out.find("monte carlo") != std::string::npos);
}

TEST_CASE("decimals in input rationals are rejected") {
  TempDir tmp;
  std::string bad = tmp.file("bad.json", R"({
    "labels": ["0","1"], "root": 0,
    "distances": [["0", 1.5], [1.5, "0"]]
  })");
  RunOutput r = run_cli({"validate", "--input", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("decimal") != std::string::npos);
}

TEST_CASE("batch over K3, K4, K5 produces the closed-form product column") {
  TempDir tmp;
  tmp.file("a_k3.json", metric_json(complete_space(3)));
  tmp.file("b_k4.json", metric_json(complete_space(4)));
  tmp.file("c_k5.json", metric_json(complete_space(5)));
  RunOutput r = run_cli({"batch", "--dir", tmp.path.string(), "--command", "product"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, l1, l2, l3;
  std::getline(lines, header);
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  CHECK(l1.find("a_k3.json,2,3,3,3,9,1") == 0);
  CHECK(l2.find("b_k4.json,3,6,10/3,4,40/3") == 0);
  CHECK(l3.find("c_k5.json,4,10,35/12,5,175/12") == 0);
}

TEST_CASE("batch over random trees reports gap zero everywhere") {
  TempDir tmp;
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    tmp.file("tree" + std::to_string(i) + ".json",
             metric_json(random_tree_space(3 + static_cast<int>(rng() % 3), rng)));
  }
  RunOutput r = run_cli({"batch", "--dir", tmp.path.string(), "--command", "product"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    // gap is column 7 (jump over the first six commas)
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c < 7; ++c) std::getline(cells, cell, ',');
    CHECK(cell == "0");
    CHECK(line.find(",true,") != std::string::npos);  // is_tree column
  }
  CHECK(rows == 10);
}

TEST_CASE("batch output is identical across thread budgets") {
  TempDir tmp;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 6; ++i) {
    tmp.file("m" + std::to_string(i) + ".json",
             metric_json(random_metric_space(3 + static_cast<int>(rng() % 2), rng)));
  }
  setenv("LIPFREE_THREADS", "1", 1);
  RunOutput serial = run_cli({"batch", "--dir", tmp.path.string()});
  setenv("LIPFREE_THREADS", "2", 1);
  RunOutput parallel = run_cli({"batch", "--dir", tmp.path.string()});
  unsetenv("LIPFREE_THREADS");
  CHECK(serial.code == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("batch on an empty directory prints only the header, exit 0") {
  TempDir tmp;
  RunOutput r = run_cli({"batch", "--dir", tmp.path.string()});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, rest;
  std::getline(lines, header);
  CHECK(header.find("file,") == 0);
  CHECK_FALSE(std::getline(lines, rest));
}

TEST_CASE("batch records per-file errors and keeps going") {
  TempDir tmp;
  tmp.file("broken.json", "{ not json");
  tmp.file("ok.json", metric_json(complete_space(3)));
  RunOutput r = run_cli({"batch", "--dir", tmp.path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("broken.json,,,,") != std::string::npos);
  CHECK(r.out.find("ok.json,2,3,3,3,9,1") != std::string::npos);
}

TEST_CASE("faces command lists face data and symmetric faces") {
  TempDir tmp;
  std::string c4 = tmp.file("c4.json", metric_json(cycle_space(4)));
  RunOutput r = run_cli({"faces", "--input", c4, "--symmetric"});
  CHECK(r.code == 0);
  CHECK(r.out.find("symmetric face: dim=2") != std::string::npos);

  RunOutput one = run_cli({"faces", "--input", c4, "--pair", "0,2"});
  CHECK(one.code == 0);
  CHECK(one.out.find("extreme=false") != std::string::npos);
}

TEST_CASE("graph and decompose subcommands") {
  TempDir tmp;
  std::string path = tmp.file("path.json", metric_json(path_space({Rat(1), Rat(1)})));
  RunOutput g = run_cli({"graph", "--input", path});
  CHECK(g.code == 0);
  Json gj = Json::parse(g.out);
  CHECK(gj.at("n") == 3);
  CHECK(gj.at("edges").size() == 2);  // the long pair 0-2 is erased

  RunOutput d = run_cli({"decompose", "--input", path, "--format", "json"});
  CHECK(d.code == 0);
  Json dj = Json::parse(d.out);
  CHECK(dj.at("result").at("components").size() == 2);
}

TEST_CASE("search command runs end to end") {
  RunOutput r = run_cli({"search", "--points", "3", "--objective", "max", "--iters", "60",
                         "--seed", "2", "--format", "json"});
  CHECK(r.code == 0);
  Json rep = Json::parse(r.out);
  CHECK(rep.at("result").contains("best_product"));
  CHECK(rep.at("result").at("trace").size() == 60);
  CHECK(rep.at("manifest").at("mode") == "float");
}
