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

#include "lipfree/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "lipfree/errors.hpp"
#include "lipfree/json_io.hpp"
#include "lipfree/structure.hpp"
#include "lipfree/volume_product.hpp"

namespace lipfree::cli {

namespace {

struct Common {
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
  bool with_timing = false;
};

Json make_manifest(const std::string& command, const std::vector<std::string>& inputs,
                   std::uint64_t seed, const std::string& mode, const Common& common,
                   double elapsed_ms) {
  Json m;
  m["command"] = command;
  m["inputs"] = inputs;
  m["seed"] = seed;
  m["mode"] = mode;
  m["version"] = kVersion;
  if (common.with_timing) {
    m["timing_ms"] = elapsed_ms;
  } else {
    m["timing_ms"] = nullptr;
  }
  return m;
}

void emit(const Common& common, std::ostream& out, const std::string& text) {
  if (!common.out_path.empty()) {
    std::ofstream f(common.out_path);
    if (!f) throw LipfreeError(Err::ParseError, "cannot write " + common.out_path);
    f << text;
  } else {
    out << text;
  }
}

std::string dump_report(const Json& manifest, const Json& result) {
  Json report;
  report["manifest"] = manifest;
  report["result"] = result;
  return report.dump(2) + "\n";
}

std::string rat_with_approx(const Rat& r) {
  return rational_to_string(r) + " (approx " + rational_to_decimal(r) + ")";
}

Json report_to_json(const VolumeProductReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["vol_free"] = rational_to_json(rep.vol_free);
  j["vol_free_approx"] = rational_to_decimal(rep.vol_free);
  j["vol_lip"] = rational_to_json(rep.vol_lip);
  j["vol_lip_approx"] = rational_to_decimal(rep.vol_lip);
  j["product"] = rational_to_json(rep.product);
  j["product_approx"] = rational_to_decimal(rep.product);
  j["mahler_floor"] = rational_to_json(rep.mahler_floor);
  j["gap"] = rational_to_json(rep.gap);
  j["gap_approx"] = rational_to_decimal(rep.gap);
  j["flags"] = Json{{"strict_triangles", rep.strict_triangles},
                    {"simplicial", rep.simplicial},
                    {"all_bridges", rep.all_bridges}};
  return j;
}

Json classification_to_json(const ClassificationReport& r) {
  return Json{{"dim", r.dim},
              {"is_tree", r.is_tree},
              {"is_spiderweb", r.is_spiderweb},
              {"is_hanner", r.is_hanner},
              {"free_ball_is_zonotope", r.free_ball_is_zonotope},
              {"lip_ball_zonoid_4pt", r.lip_ball_zonoid_4pt},
              {"linfty_decomposable", r.linfty_decomposable},
              {"component_count", r.component_count}};
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

int thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned cap = std::min(hw, 4u);
  if (const char* env = std::getenv("LIPFREE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
  }
  return static_cast<int>(cap);
}

struct BatchRow {
  std::string file;
  bool ok = false;
  std::string error;
  int n = 0;
  int edges = 0;
  VolumeProductReport rep;
  ClassificationReport cls;
};

BatchRow batch_one(const std::string& path) {
  BatchRow row;
  row.file = std::filesystem::path(path).filename().string();
  try {
    MetricSpace m = metric_or_graph_from_json(load_json_file(path));
    row.n = m.dim();
    row.edges = static_cast<int>(canonical_graph(m).edges.size());
    row.rep = volume_product(m);
    row.cls = classify(m);
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact volume products and structure of free-space balls over finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Common common;
  app.add_option("--format", common.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", common.out_path, "write the report to a file instead of stdout");
  app.add_option("--seed", common.seed, "seed for randomized operations");
  app.add_flag("--timing", common.with_timing, "include wall time in the manifest");

  std::string input_path, a_path, b_path, vector_text, pair_text, dir_path;
  std::string batch_command = "product";
  bool float_mode = false, symmetric = false;
  int budget = 12;
  std::uint64_t mc_samples = 0;

  SearchConfig scfg;
  std::string objective_text = "max", mode_text = "float", t0_text = "1/4", decay_text = "1/2";

  auto* c_validate = app.add_subcommand("validate", "check the metric axioms");
  c_validate->add_option("--input", input_path)->required();

  auto* c_graph = app.add_subcommand("graph", "canonical graph of the metric");
  c_graph->add_option("--input", input_path)->required();

  auto* c_ball = app.add_subcommand("ball", "free ball and Lipschitz ball");
  c_ball->add_option("--input", input_path)->required();

  auto* c_polar = app.add_subcommand("polar", "polar body of a polytope");
  c_polar->add_option("--input", input_path)->required();

  auto* c_volume = app.add_subcommand("volume", "exact volume of a polytope");
  c_volume->add_option("--input", input_path)->required();
  c_volume->add_option("--mc", mc_samples, "add a Monte Carlo estimate with this many samples");

  auto* c_product = app.add_subcommand("product", "volume product report");
  c_product->add_option("--input", input_path)->required();
  c_product->add_flag("--float", float_mode, "fast approximate evaluation only");

  auto* c_classify = app.add_subcommand("classify", "structural classification");
  c_classify->add_option("--input", input_path)->required();

  auto* c_decompose = app.add_subcommand("decompose", "block decomposition");
  c_decompose->add_option("--input", input_path)->required();

  auto* c_isometric = app.add_subcommand("isometric", "decide free-space isometry");
  c_isometric->add_option("--a", a_path)->required();
  c_isometric->add_option("--b", b_path)->required();
  c_isometric->add_option("--budget", budget, "max edges per component for the search");

  auto* c_norm = app.add_subcommand("norm", "exact free norm of a vector");
  c_norm->add_option("--input", input_path)->required();
  c_norm->add_option("--vector", vector_text, "JSON array, e.g. \"[1,1,0]\"")->required();

  auto* c_faces = app.add_subcommand("faces", "face data for molecule pairs");
  c_faces->add_option("--input", input_path)->required();
  c_faces->add_option("--pair", pair_text, "one ordered pair \"i,j\"");
  c_faces->add_flag("--symmetric", symmetric, "also list centrally symmetric faces");

  auto* c_search = app.add_subcommand("search", "hill-climbing search for extremal metrics");
  c_search->add_option("--points", scfg.point_count)->required();
  c_search->add_option("--objective", objective_text)->check(CLI::IsMember({"max", "min"}));
  c_search->add_option("--iters", scfg.iterations);
  c_search->add_option("--mode", mode_text)->check(CLI::IsMember({"exact", "float"}));
  c_search->add_option("--t0", t0_text, "initial step, rational");
  c_search->add_option("--decay", decay_text, "step decay on stall, rational");

  auto* c_batch = app.add_subcommand("batch", "run a command over a directory of instances");
  c_batch->add_option("--dir", dir_path)->required();
  c_batch->add_option("--command", batch_command)->check(CLI::IsMember({"product", "classify"}));

  std::vector<std::string> argv_storage = args;
  argv_storage.insert(argv_storage.begin(), "lipfree");
  std::vector<char*> argv;
  argv.reserve(argv_storage.size());
  for (std::string& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  };
  const bool json_fmt = common.format == "json";

  try {
    if (*c_validate) {
      Json j = load_json_file(input_path);
      MetricSpace m = metric_or_graph_from_json(j);
      Json result{{"valid", true},
                  {"points", m.point_count()},
                  {"root", m.root},
                  {"canonical_edges", canonical_graph(m).edges.size()}};
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("validate", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         result));
      } else {
        emit(common, out,
             "valid metric space: " + std::to_string(m.point_count()) + " points, " +
                 std::to_string(canonical_graph(m).edges.size()) + " canonical edges\n");
      }
      return 0;
    }

    if (*c_graph) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      Json g = graph_to_json(canonical_graph(m));
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("graph", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         g));
      } else {
        emit(common, out, g.dump(2) + "\n");
      }
      return 0;
    }

    if (*c_ball) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      FreeBallModel model = free_ball(m);
      Json labels = Json::array();
      for (auto& [i, j] : model.vertex_labels) labels.push_back(Json::array({i, j}));
      Json result{{"metric", metric_to_json(m)},
                  {"vrep", vpolytope_to_json(model.vrep)},
                  {"vertex_labels", labels},
                  {"hrep", hpolytope_to_json(model.hrep)}};
      if (json_fmt || !common.out_path.empty()) {
        emit(common, out,
             dump_report(make_manifest("ball", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         result));
      } else {
        std::ostringstream os;
        os << "free ball: " << model.vrep.vertices.size() << " vertices, "
           << model.free_facets.halfspaces.size() << " facets; Lipschitz ball: "
           << model.lip_vertices.vertices.size() << " vertices\n";
        emit(common, out, os.str());
      }
      return 0;
    }

    if (*c_polar) {
      Json j = load_json_file(input_path);
      Json result;
      if (json_is_vpolytope(j)) {
        result = hpolytope_to_json(polar(vpolytope_from_json(j)));
      } else {
        HPolytope h = hpolytope_from_json(j);
        std::vector<Vec> pts;
        for (const Halfspace& hs : h.halfspaces) {
          if (hs.offset <= 0) {
            throw LipfreeError(Err::OriginNotInterior, "polar of H-polytope needs b > 0");
          }
          Vec v(h.dim);
          for (int c = 0; c < h.dim; ++c) v[c] = hs.normal[c] / hs.offset;
          pts.push_back(std::move(v));
        }
        result = vpolytope_to_json(reduce_to_vertices(pts));
      }
      emit(common, out,
           json_fmt ? dump_report(make_manifest("polar", {input_path}, common.seed, "exact",
                                                common, elapsed_ms()),
                                  result)
                    : result.dump(2) + "\n");
      return 0;
    }

    if (*c_volume) {
      Json j = load_json_file(input_path);
      VPolytope v;
      HPolytope h;
      if (json_is_vpolytope(j)) {
        v = vpolytope_from_json(j);
        h = hull_to_hrep(v);
      } else {
        HPolytope raw = hpolytope_from_json(j);
        v = vertex_enumeration(raw);
        h = hull_to_hrep(v);
      }
      Rat vol = volume(v, h);
      Json result{{"volume", rational_to_json(vol)}, {"volume_approx", rational_to_decimal(vol)}};
      if (mc_samples > 0) {
        MonteCarloVolume mc = monte_carlo_volume(h, mc_samples, common.seed);
        result["monte_carlo"] = Json{{"estimate", mc.estimate},
                                     {"std_error", mc.std_error},
                                     {"samples", mc.samples},
                                     {"seed", mc.seed}};
      }
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("volume", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         result));
      } else {
        std::string text = "volume = " + rat_with_approx(vol) + "\n";
        if (mc_samples > 0) {
          std::ostringstream os;
          os << "monte carlo = " << result["monte_carlo"]["estimate"].get<double>() << " +- "
             << result["monte_carlo"]["std_error"].get<double>() << " (1 std error, "
             << mc_samples << " samples, seed " << common.seed << ")\n";
          text += os.str();
        }
        emit(common, out, text);
      }
      return 0;
    }

    if (*c_product) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      if (float_mode) {
        double p = approx_volume_product(m);
        Json result{{"product_approx", p}};
        emit(common, out,
             json_fmt ? dump_report(make_manifest("product", {input_path}, common.seed, "float",
                                                  common, elapsed_ms()),
                                    result)
                      : "P(M) approx " + std::to_string(p) + " (float mode)\n");
        return 0;
      }
      VolumeProductReport rep = volume_product(m);
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("product", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         report_to_json(rep)));
      } else {
        std::ostringstream os;
        os << "n = " << rep.n << "\n"
           << "|B_free| = " << rat_with_approx(rep.vol_free) << "\n"
           << "|B_lip| = " << rat_with_approx(rep.vol_lip) << "\n"
           << "P(M) = " << rat_with_approx(rep.product) << ", floor 4^n/n! = "
           << rational_to_string(rep.mahler_floor) << ", gap = " << rat_with_approx(rep.gap)
           << "\n"
           << "flags: strict_triangles=" << bool_str(rep.strict_triangles)
           << " simplicial=" << bool_str(rep.simplicial)
           << " all_bridges=" << bool_str(rep.all_bridges) << "\n";
        emit(common, out, os.str());
      }
      return 0;
    }

    if (*c_classify) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      ClassificationReport r = classify(m);
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("classify", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         classification_to_json(r)));
      } else {
        std::ostringstream os;
        os << "dim=" << r.dim << " components=" << r.component_count
           << " is_tree=" << bool_str(r.is_tree) << " is_spiderweb=" << bool_str(r.is_spiderweb)
           << " is_hanner=" << bool_str(r.is_hanner)
           << " free_ball_is_zonotope=" << bool_str(r.free_ball_is_zonotope)
           << " lip_ball_zonoid_4pt=" << bool_str(r.lip_ball_zonoid_4pt)
           << " linfty_decomposable=" << bool_str(r.linfty_decomposable) << "\n";
        emit(common, out, os.str());
      }
      return 0;
    }

    if (*c_decompose) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      Decomposition dec = decompose(m);
      Json comps = Json::array();
      for (const MetricSpace& c : dec.components) comps.push_back(metric_to_json(c));
      Json result{{"components", comps}, {"attach_labels", dec.attach_labels}};
      if (json_fmt) {
        emit(common, out,
             dump_report(make_manifest("decompose", {input_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         result));
      } else {
        std::ostringstream os;
        os << dec.components.size() << " component(s):\n";
        for (std::size_t k = 0; k < dec.components.size(); ++k) {
          os << "  [" << k << "] " << dec.components[k].point_count() << " points, attach at '"
             << dec.attach_labels[k] << "'\n";
        }
        emit(common, out, os.str());
      }
      return 0;
    }

    if (*c_isometric) {
      MetricSpace ma = metric_or_graph_from_json(load_json_file(a_path));
      MetricSpace mb = metric_or_graph_from_json(load_json_file(b_path));
      IsometryResult res = isometry_check(ma, mb, budget);
      Json result;
      std::string text;
      if (auto* w = std::get_if<IsometryWitness>(&res)) {
        WeightedGraph ga = canonical_graph(ma), gb = canonical_graph(mb);
        Json sigma = Json::array();
        for (std::size_t e = 0; e < w->sigma.size(); ++e) {
          sigma.push_back(Json{{"from", Json::array({ga.edges[e].u, ga.edges[e].v})},
                               {"to", Json::array({gb.edges[w->sigma[e]].u,
                                                   gb.edges[w->sigma[e]].v})},
                               {"sign", w->signs[e]}});
        }
        Json ratios = Json::array();
        for (const Rat& r : w->component_ratios) ratios.push_back(rational_to_json(r));
        result = Json{{"isometric", true}, {"sigma", sigma}, {"component_ratios", ratios}};
        text = "isometric: yes (" + std::to_string(w->sigma.size()) + " edges matched)\n";
      } else {
        const auto& ni = std::get<NotIsometric>(res);
        result = Json{{"isometric", false}, {"reason", ni.reason}};
        text = "isometric: no (" + ni.reason + ")\n";
      }
      emit(common, out,
           json_fmt ? dump_report(make_manifest("isometric", {a_path, b_path}, common.seed,
                                                "exact", common, elapsed_ms()),
                                  result)
                    : text);
      return 0;
    }

    if (*c_norm) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      Json vec_json;
      try {
        vec_json = Json::parse(vector_text);
      } catch (const std::exception& e) {
        throw LipfreeError(Err::ParseError, std::string("bad --vector: ") + e.what());
      }
      Vec phi;
      for (const Json& x : vec_json) phi.push_back(rational_from_json(x));
      Rat norm = free_norm(m, phi);
      Json result{{"norm", rational_to_json(norm)}, {"norm_approx", rational_to_decimal(norm)}};
      emit(common, out,
           json_fmt ? dump_report(make_manifest("norm", {input_path}, common.seed, "exact",
                                                common, elapsed_ms()),
                                  result)
                    : "free norm = " + rat_with_approx(norm) + "\n");
      return 0;
    }

    if (*c_faces) {
      MetricSpace m = metric_or_graph_from_json(load_json_file(input_path));
      std::vector<std::pair<int, int>> wanted;
      if (!pair_text.empty()) {
        auto comma = pair_text.find(',');
        if (comma == std::string::npos) {
          throw LipfreeError(Err::ParseError, "--pair expects \"i,j\"");
        }
        int pi = std::stoi(pair_text.substr(0, comma));
        int pj = std::stoi(pair_text.substr(comma + 1));
        if (pi < 0 || pj < 0 || pi >= m.point_count() || pj >= m.point_count() || pi == pj) {
          throw LipfreeError(Err::ParseError, "--pair indices out of range");
        }
        wanted.push_back({pi, pj});
      } else {
        for (int i = 0; i < m.point_count(); ++i) {
          for (int j = 0; j < m.point_count(); ++j) {
            if (i != j) wanted.push_back({i, j});
          }
        }
      }
      Json rows = Json::array();
      std::ostringstream os;
      for (auto [i, j] : wanted) {
        auto seg = metric_segment(m, i, j);
        auto mols = face_of_molecule_vertices(m, i, j);
        Json molj = Json::array();
        for (auto [u, v] : mols) molj.push_back(Json::array({u, v}));
        rows.push_back(Json{{"i", i},
                            {"j", j},
                            {"extreme", is_extreme(m, i, j)},
                            {"face_dimension", face_dimension(m, i, j)},
                            {"segment", std::vector<int>(seg.begin(), seg.end())},
                            {"face_molecules", molj}});
        os << "(" << i << "," << j << "): extreme=" << bool_str(is_extreme(m, i, j))
           << " face_dim=" << face_dimension(m, i, j) << " |segment|=" << seg.size()
           << " face_molecules=" << mols.size() << "\n";
      }
      Json result{{"pairs", rows}};
      if (symmetric) {
        FreeBallModel model = free_ball(m);
        Json sym = Json::array();
        for (const SymmetricFace& f : symmetric_faces(model)) {
          Json labels = Json::array();
          for (int idx : f.vertex_indices) {
            labels.push_back(Json::array(
                {model.vertex_labels[idx].first, model.vertex_labels[idx].second}));
          }
          sym.push_back(Json{{"dimension", f.dimension},
                             {"type", std::string(1, f.type)},
                             {"vertices", labels}});
          os << "symmetric face: dim=" << f.dimension << " type=" << f.type
             << " vertices=" << f.vertex_indices.size() << "\n";
        }
        result["symmetric_faces"] = sym;
      }
      emit(common, out,
           json_fmt ? dump_report(make_manifest("faces", {input_path}, common.seed, "exact",
                                                common, elapsed_ms()),
                                  result)
                    : os.str());
      return 0;
    }

    if (*c_search) {
      scfg.objective =
          objective_text == "max" ? SearchObjective::Maximize : SearchObjective::Minimize;
      scfg.mode = mode_text == "exact" ? SearchMode::Exact : SearchMode::Float;
      scfg.t0 = parse_rational(t0_text);
      scfg.decay = parse_rational(decay_text);
      scfg.seed = common.seed;
      SearchResult res = extremal_search(scfg);
      int accepted = 0;
      Json trace = Json::array();
      for (const auto& e : res.trace) {
        accepted += e.accepted ? 1 : 0;
        trace.push_back(Json{{"iteration", e.iteration},
                             {"pair", Json::array({e.i, e.j})},
                             {"move", std::string(1, e.move)},
                             {"objective", e.objective},
                             {"accepted", e.accepted}});
      }
      Json result{{"best_metric", metric_to_json(res.best_metric)},
                  {"best_product", rational_to_json(res.best_product)},
                  {"best_product_approx", rational_to_decimal(res.best_product)},
                  {"iterations", scfg.iterations},
                  {"accepted_moves", accepted},
                  {"trace", std::move(trace)}};
      if (json_fmt || !common.out_path.empty()) {
        emit(common, out,
             dump_report(make_manifest("search", {}, scfg.seed,
                                       scfg.mode == SearchMode::Exact ? "exact" : "float",
                                       common, elapsed_ms()),
                         result));
      } else {
        std::ostringstream os;
        os << "best P = " << rat_with_approx(res.best_product) << " after " << scfg.iterations
           << " iterations (" << accepted << " accepted moves)\n";
        emit(common, out, os.str());
      }
      return 0;
    }

    if (*c_batch) {
      std::vector<std::string> files;
      if (!std::filesystem::is_directory(dir_path)) {
        throw LipfreeError(Err::ParseError, dir_path + " is not a directory");
      }
      for (const auto& entry : std::filesystem::directory_iterator(dir_path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          files.push_back(entry.path().string());
        }
      }
      std::sort(files.begin(), files.end());
      std::vector<BatchRow> rows(files.size());
      const int threads = thread_budget();
      if (threads <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) rows[i] = batch_one(files[i]);
      } else {
        std::vector<std::future<BatchRow>> futs;
        futs.reserve(files.size());
        for (const std::string& f : files) {
          futs.push_back(std::async(std::launch::async, batch_one, f));
        }
        for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
      }
      if (json_fmt) {
        Json table = Json::array();
        for (const BatchRow& r : rows) {
          Json row{{"file", r.file}};
          if (!r.ok) {
            row["error"] = r.error;
          } else {
            row["n"] = r.n;
            row["edges"] = r.edges;
            row["vol_free"] = rational_to_json(r.rep.vol_free);
            row["vol_lip"] = rational_to_json(r.rep.vol_lip);
            row["product"] = rational_to_json(r.rep.product);
            row["gap"] = rational_to_json(r.rep.gap);
            if (batch_command == "classify") {
              row["classification"] = classification_to_json(r.cls);
            } else {
              row["flags"] = Json{{"is_tree", r.cls.is_tree},
                                  {"is_spiderweb", r.cls.is_spiderweb},
                                  {"is_hanner", r.cls.is_hanner},
                                  {"strict_triangles", r.rep.strict_triangles},
                                  {"simplicial", r.rep.simplicial}};
            }
          }
          table.push_back(std::move(row));
        }
        emit(common, out,
             dump_report(make_manifest("batch", {dir_path}, common.seed, "exact", common,
                                       elapsed_ms()),
                         table));
      } else {
        std::ostringstream os;
        os << "file,n,edges,vol_free,vol_lip,product,gap,is_tree,is_spiderweb,is_hanner,"
              "strict_triangles,simplicial,error\n";
        for (const BatchRow& r : rows) {
          if (!r.ok) {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            os << r.file << ",,,,,,,,,,,," << msg << "\n";
            continue;
          }
          os << r.file << "," << r.n << "," << r.edges << ","
             << rational_to_string(r.rep.vol_free) << "," << rational_to_string(r.rep.vol_lip)
             << "," << rational_to_string(r.rep.product) << ","
             << rational_to_string(r.rep.gap) << "," << bool_str(r.cls.is_tree) << ","
             << bool_str(r.cls.is_spiderweb) << "," << bool_str(r.cls.is_hanner) << ","
             << bool_str(r.rep.strict_triangles) << "," << bool_str(r.rep.simplicial) << ",\n";
        }
        emit(common, out, os.str());
      }
      return 0;
    }
  } catch (const NotAMetricError& e) {
    err << "error: " << e.what() << "\n";
    for (const MetricViolation& v : e.violations()) err << "  violation: " << v.describe() << "\n";
    return 1;
  } catch (const LipfreeError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand executed\n";
  return 2;
}

}  // namespace lipfree::cli
