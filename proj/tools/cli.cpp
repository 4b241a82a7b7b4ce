// Copyright 2026 The hullcut Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "hullcut/error.hpp"
#include "hullcut/io.hpp"

namespace hullcut::cli {
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string report;
  std::string batch;
  std::string planner = "mcts";
  bool no_merge = false;
  bool score = false;
  bool split = false;
  bool verbatim_halves = false;
  DecomposeParams params;
};

int exit_code_for(const GeometryError& e) {
  if (e.code() == ErrorCode::IoError || e.code() == ErrorCode::ParseError) return kIoError;
  return kInvalid;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw GeometryError(ErrorCode::IoError, "write failed: " + path.string());
}

// Runs one file. On success `report` is filled.
int run_one(const Options& opt, const fs::path& input, const fs::path& output,
            nlohmann::ordered_json& report, std::ostream& out, std::ostream& err) {
  SolidMesh mesh;
  try {
    mesh = read_mesh(input);
  } catch (const GeometryError& e) {
    err << input.string() << ": " << e.what() << '\n';
    return exit_code_for(e);
  }

  Decomposition result = decompose(mesh, opt.params);
  RunInfo info{input.string(), mesh.vertex_count(), mesh.triangle_count(), std::nullopt};
  if (opt.score) {
    std::vector<SolidMesh> hulls;
    for (const Part& p : result.parts)
      if (!p.hull.empty()) hulls.push_back(p.hull.transformed_inverse(result.transform));
    info.score = score_decomposition(mesh.transformed_inverse(result.transform), hulls,
                                     opt.params.concavity);
  }
  report = make_report(info, opt.params, result);

  try {
    if (!output.empty())
      write_decomposition(result, output, opt.split ? OutputMode::PerPart : OutputMode::SingleFile);
  } catch (const GeometryError& e) {
    err << e.what() << '\n';
    return kIoError;
  }
  out << input.string() << ": " << result.parts.size() << " components\n";
  if (result.stats.cap_exceeded) {
    err << input.string() << ": component cap of " << opt.params.max_components
        << " reached; result is partial\n";
    return kCapExceeded;
  }
  return kOk;
}

}  // namespace

nlohmann::ordered_json make_report(const RunInfo& info, const DecomposeParams& params,
                                   const Decomposition& result) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kReportSchema;
  j["input"] = info.input;
  j["vertices"] = info.vertices;
  j["triangles"] = info.triangles;
  j["params"] = {
      {"threshold", params.epsilon},
      {"m", params.planner.m},
      {"iterations", params.planner.iterations},
      {"depth", params.planner.depth},
      {"k", params.concavity.k},
      {"seed", params.planner.seed},
      {"pca", params.planner.use_pca},
      {"merge", params.merge},
      {"planner", params.planner_kind == PlannerKind::Mcts ? "mcts" : "greedy"},
      {"verbatim_halves", !params.planner.separate_shells},
      {"max_components", params.max_components},
  };
  j["components"] = result.parts.size();
  const double to_normalized = 1.0 / std::pow(result.transform.scale, 3);
  ordered_json parts = ordered_json::array();
  for (const Part& p : result.parts) {
    ordered_json e;
    const SolidMesh& shape = p.hull.empty() ? p.component : p.hull;
    e["hull_vertices"] = shape.vertex_count();
    e["volume"] = signed_volume(p.component) * to_normalized;
    e["hull_volume"] = signed_volume(shape) * to_normalized;
    e["hb"] = p.report.hb;
    e["rv"] = p.report.rv;
    e["fast"] = p.report.fast;
    if (p.report.hi_oracle) e["hi"] = *p.report.hi_oracle;
    if (p.report.exact) e["exact"] = *p.report.exact;
    parts.push_back(std::move(e));
  }
  j["parts"] = std::move(parts);
  j["score"] = info.score ? ordered_json(*info.score) : ordered_json(nullptr);
  j["cuts"] = result.stats.cuts;
  j["merges"] = result.stats.merges;
  j["cap_exceeded"] = result.stats.cap_exceeded;
  j["seed"] = params.planner.seed;
  j["wall_time_s"] = result.stats.wall_seconds;
  return j;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Approximate convex decomposition by recursive plane cuts."};
  app.option_defaults()->always_capture_default();
  auto* input = app.add_option("--input", opt.input, "Mesh to decompose (.obj or .stl)");
  auto* batch = app.add_option("--batch", opt.batch, "Decompose every .obj/.stl in a directory");
  input->excludes(batch);
  app.add_option("--output", opt.output,
                 "Output OBJ; with --batch, the output directory");
  app.add_option("--threshold", opt.params.epsilon, "Concavity threshold (normalized units)")
      ->check(CLI::PositiveNumber);
  app.add_option("--m", opt.params.planner.m, "Candidate planes per axis")->check(CLI::Range(1, 100000));
  app.add_option("--iterations", opt.params.planner.iterations, "Search iterations")
      ->check(CLI::Range(1, 100000000));
  app.add_option("--depth", opt.params.planner.depth, "Search depth")->check(CLI::Range(1, 1000));
  app.add_option("--k", opt.params.concavity.k, "Weight of R_v in the concavity")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.params.planner.seed, "Random seed");
  app.add_option("--max-components", opt.params.max_components, "Safety cap on parts")
      ->check(CLI::PositiveNumber);
  app.add_flag("--pca", opt.params.planner.use_pca, "Align cut directions with principal axes");
  app.add_flag("--no-merge", opt.no_merge, "Skip merging adjacent parts");
  app.add_option("--planner", opt.planner, "Plane search")->check(CLI::IsMember({"mcts", "greedy"}));
  app.add_option("--report", opt.report, "Write a JSON report");
  app.add_flag("--verbatim-halves", opt.verbatim_halves,
               "Keep each cut half whole instead of splitting it into shells");
  app.add_flag("--score", opt.score, "Estimate the decomposition score");
  app.add_flag("--exact-concavity", opt.params.exact_concavity,
               "Add the interior Hausdorff oracle to the report");
  app.add_flag("--split", opt.split, "Write one OBJ per part");

  try {
    app.parse(argc, argv);
    if (opt.input.empty() && opt.batch.empty()) throw CLI::RequiredError("--input or --batch");
    if (!opt.batch.empty() && opt.output.empty()) throw CLI::RequiredError("--output (with --batch)");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }
  opt.params.merge = !opt.no_merge;
  opt.params.planner_kind = opt.planner == "greedy" ? PlannerKind::Greedy : PlannerKind::Mcts;
  opt.params.planner.separate_shells = !opt.verbatim_halves;
  opt.params.concavity.seed = opt.params.planner.seed;

  try {
    if (opt.batch.empty()) {
      nlohmann::ordered_json report;
      const int code = run_one(opt, opt.input, opt.output, report, out, err);
      if (!opt.report.empty() && !report.is_null()) write_json(opt.report, report);
      return code;
    }

    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(opt.batch, ec)) {
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (entry.is_regular_file() && (ext == ".obj" || ext == ".stl")) files.push_back(entry.path());
    }
    if (ec) throw GeometryError(ErrorCode::IoError, "cannot list " + opt.batch + ": " + ec.message());
    std::sort(files.begin(), files.end());
    fs::create_directories(opt.output, ec);
    if (ec) throw GeometryError(ErrorCode::IoError, "cannot create " + opt.output + ": " + ec.message());

    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    int worst = kOk;
    for (const fs::path& file : files) {
      nlohmann::ordered_json report;
      const int code =
          run_one(opt, file, fs::path(opt.output) / (file.stem().string() + ".obj"), report, out, err);
      worst = std::max(worst, code);
      if (report.is_null()) report = {{"input", file.string()}};
      report["exit_code"] = code;
      runs.push_back(std::move(report));
    }
    if (!opt.report.empty()) write_json(opt.report, {{"schema", kReportSchema}, {"runs", std::move(runs)}});
    return worst;
  } catch (const GeometryError& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace hullcut::cli
