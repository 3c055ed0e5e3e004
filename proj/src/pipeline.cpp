#include "vfplan/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "vfplan/errors.hpp"
#include "vfplan/parallel.hpp"
#include "vfplan/svg.hpp"

namespace vfplan {

namespace {

using nlohmann::ordered_json;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch())
      .count();
}

struct StageClock {
  std::vector<StageTiming>& out;
  double last = now_ms();
  void lap(const std::string& stage) {
    double t = now_ms();
    out.push_back({stage, t - last});
    last = t;
  }
};

std::optional<double> peak_mem_mb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      double kb = 0;
      if (std::sscanf(line.c_str(), "VmHWM: %lf", &kb) == 1)
        return kb / 1024.0;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::Indoor:
      return "indoor";
    case Profile::Outdoor:
      return "outdoor";
    case Profile::Custom:
      return "custom";
  }
  throw ContractError("unknown profile");
}

PlanConfig PlanConfig::for_profile(Profile p) {
  PlanConfig c;
  c.profile = p;
  if (p == Profile::Outdoor) {
    c.r_min = 1.2;
    c.r_max = 75.0;
    c.resolution = 0.25;
    c.partition_length = 1.0;
    c.tau = 0.3;
  }
  return c;
}

void PlanConfig::validate() const {
  auto bad = [](const std::string& what) {
    throw ValidationError(what, "config");
  };
  if (!(r_min > 0.0)) bad("r_min must be positive");
  if (!(r_max > r_min)) bad("r_max must exceed r_min");
  if (!(resolution > 0.0)) bad("resolution must be positive");
  if (!(partition_length > 0.0)) bad("partition_length must be positive");
  if (!(tau >= 0.0 && tau <= 1.0)) bad("tau must lie in [0,1]");
}

PlanResult run_plan(const Floorplan& fp, const PlanConfig& config,
                    int threads, bool with_vf) {
  config.validate();
  PlanResult res;
  StageClock clock{res.timings};

  res.bounds = std::make_shared<BoundarySet>(partition_boundary(
      fp, config.partition_length, config.include_openings));
  VisibilityEngine engine(fp, occluder_segments(fp, config.windows_opaque),
                          {config.r_min, config.r_max});
  clock.lap("partition");

  res.grid = GridSpec::cover(fp, config.resolution);
  res.dist = compute_distance_field(fp, res.grid, threads);
  clock.lap("distance_field");

  res.skeleton = extract_skeleton(res.dist, fp, config.r_min);
  std::vector<ConvergingPoint> points = detect_joints(res.skeleton);
  res.lines = build_converging_lines(res.skeleton, points);
  clock.lap("skeleton");

  // Overlap probe used during refinement; caches one visibility record per
  // grid cell since refinement revisits endpoints many times.
  std::unordered_map<long long, VisRecord> cache;
  auto cell_key = [&](Point2 p) {
    long long ix = std::llround((p.x - res.grid.origin.x) / res.grid.resolution - 0.5);
    long long iy = std::llround((p.y - res.grid.origin.y) / res.grid.resolution - 0.5);
    return (iy << 32) | ix;
  };
  auto record_at = [&](Point2 p) -> const VisRecord& {
    long long key = cell_key(p);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, make_vis_record(engine, p, *res.bounds)).first;
    return it->second;
  };
  auto overlap_probe = [&](Point2 a, Point2 b) {
    return select_ratio(overlap_ratios(record_at(a), record_at(b)),
                        config.overlap_metric);
  };

  RefineOutcome refined = refine_candidates(res.skeleton, res.lines, points,
                                            overlap_probe, config.tau);
  clock.lap("refine");

  // Candidates too close to a wall cannot host the scanner; drop and
  // reindex densely.
  std::vector<int> new_id(refined.candidates.size(), -1);
  for (const ConvergingPoint& c : refined.candidates) {
    double d = res.dist.dist[res.grid.index(c.ix, c.iy)];
    if (d == kExteriorSentinel || d < config.r_min) continue;
    new_id[c.id] = (int)res.candidates.size();
    ConvergingPoint copy = c;
    copy.id = (int)res.candidates.size();
    res.candidates.push_back(copy);
  }
  for (auto [a, b] : refined.flagged)
    if (new_id[a] >= 0 && new_id[b] >= 0)
      res.flagged_pairs.push_back({new_id[a], new_id[b]});
  if (res.candidates.empty())
    throw InfeasibleError(
        "no skeleton candidate clears r_min = " +
            std::to_string(config.r_min) +
            " m from the walls; the space is too tight for this scanner",
        {});
  clock.lap("candidate_filter");

  res.records.resize(res.candidates.size());
  std::vector<int> missing;
  for (size_t i = 0; i < res.candidates.size(); ++i) {
    auto it = cache.find(cell_key(res.candidates[i].position));
    if (it != cache.end())
      res.records[i] = it->second;
    else
      missing.push_back((int)i);
  }
  parallel_for((int)missing.size(), threads, [&](int k) {
    int i = missing[k];
    res.records[i] =
        make_vis_record(engine, res.candidates[i].position, *res.bounds);
  });
  cache.clear();
  clock.lap("records");

  res.table = build_coverage_table(res.records, *res.bounds);
  clock.lap("coverage_table");

  res.graph = build_candidate_graph(res.records, config.tau,
                                    config.overlap_metric, threads);
  clock.lap("candidate_graph");

  res.net = greedy_select(res.table, res.graph);
  res.net = augment_connectivity(std::move(res.net), res.graph);
  if (config.reinforce_cycles)
    res.net = reinforce_cycles(std::move(res.net), res.graph);
  res.net = prune_redundant(std::move(res.net), res.table, res.graph);
  clock.lap("optimize");

  res.report = compute_report(res.net, res.table, res.graph);
  clock.lap("metrics");

  if (with_vf) {
    res.vf = compute_vf(engine, *res.bounds, res.grid, threads);
    clock.lap("visibility_field");
  }
  return res;
}

std::string network_json(const PlanResult& res, const PlanConfig& config) {
  ordered_json doc;
  doc["viewpoints"] = ordered_json::array();
  for (size_t i = 0; i < res.net.selected.size(); ++i) {
    int c = res.net.selected[i];
    ordered_json vp;
    vp["id"] = c;
    vp["x"] = res.candidates[c].position.x;
    vp["y"] = res.candidates[c].position.y;
    vp["role"] = res.net.roles[i] == Role::Cover ? "cover" : "connector";
    vp["order"] = (int)i;
    doc["viewpoints"].push_back(vp);
  }

  std::vector<int> sorted = res.net.selected;
  std::sort(sorted.begin(), sorted.end());
  doc["edges"] = ordered_json::array();
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      if (!res.graph.has_edge(sorted[i], sorted[j])) continue;
      ordered_json e;
      e["a"] = sorted[i];
      e["b"] = sorted[j];
      e["overlap"] = res.graph.at(sorted[i], sorted[j]);
      e["weight"] = res.graph.weight(sorted[i], sorted[j]);
      doc["edges"].push_back(e);
    }

  doc["metrics"]["vc"] = res.report.vc;
  doc["metrics"]["wapl"] = res.report.wapl;
  doc["metrics"]["coverage_percent"] = res.report.coverage_percent;

  ordered_json& cfg = doc["config"];
  cfg["profile"] = profile_name(config.profile);
  cfg["r_min"] = config.r_min;
  cfg["r_max"] = config.r_max;
  cfg["resolution"] = config.resolution;
  cfg["partition_length"] = config.partition_length;
  cfg["tau"] = config.tau;
  cfg["overlap_metric"] = overlap_metric_name(config.overlap_metric);
  cfg["include_openings"] = config.include_openings;
  cfg["windows_opaque"] = config.windows_opaque;
  cfg["reinforce_cycles"] = config.reinforce_cycles;

  return doc.dump(2) + "\n";
}

namespace {

Floorplan load_floorplan(const std::string& input_path) {
  std::ifstream in(input_path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open input file '" + input_path + "'", 0);
  return parse_floorplan(in);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path.string());
  out << text;
}

void print_report(const PlanResult& res) {
  std::printf("stage timings (ms):\n");
  for (const StageTiming& t : res.timings)
    std::printf("  %-18s %10.2f\n", t.stage.c_str(), t.ms);
  std::printf("metrics:\n");
  std::printf("  %-18s %10d\n", "vc", res.report.vc);
  std::printf("  %-18s %10.6f\n", "wapl", res.report.wapl);
  std::printf("  %-18s %10.2f\n", "coverage_percent",
              res.report.coverage_percent);
  std::printf("  %-18s %10d\n", "component_count", res.report.component_count);
  std::printf("  %-18s %10d\n", "disconnected_pairs",
              res.report.disconnected_pairs);
  if (auto mem = peak_mem_mb())
    std::printf("  %-18s %10.1f\n", "peak_mem_mb", *mem);
}

}  // namespace

int run_plan_cli(const PlanConfig& config, const std::string& input_path,
                 const std::string& out_dir, bool emit_vf, int threads) {
  Floorplan fp = load_floorplan(input_path);
  std::filesystem::create_directories(out_dir);
  PlanResult res = run_plan(fp, config, threads, emit_vf);

  std::filesystem::path dir(out_dir);
  write_text(dir / "network.json", network_json(res, config));
  write_text(dir / "plan.svg",
             render_plan_svg(fp, res.grid, res.lines, res.candidates, res.net,
                             res.graph));
  if (emit_vf) {
    export_field(*res.vf, (dir / "vf").string(), /*with_csv=*/true);
    export_field(res.dist, (dir / "dist").string(), /*with_csv=*/true);
  }
  print_report(res);
  return 0;
}

int run_sweep_cli(const PlanConfig& base, const std::string& axis,
                  const std::vector<double>& values,
                  const std::string& input_path, const std::string& out_dir,
                  int threads) {
  if (values.empty())
    throw ValidationError("sweep needs at least one value", "config");
  Floorplan fp = load_floorplan(input_path);
  std::filesystem::create_directories(out_dir);

  std::ostringstream csv;
  csv << "value,vc,wapl,runtime_ms,peak_mem_mb,status\n";
  char buf[256];
  for (double value : values) {
    PlanConfig config = base;
    if (axis == "tau")
      config.tau = value;
    else if (axis == "r_max")
      config.r_max = value;
    else if (axis == "resolution")
      config.resolution = value;
    else if (axis == "partition_length")
      config.partition_length = value;
    else
      throw ValidationError("unknown sweep axis '" + axis + "'", "config");

    double t0 = now_ms();
    std::string status = "ok";
    int vc = -1;
    double wapl = 0.0;
    try {
      PlanResult res = run_plan(fp, config, threads);
      vc = res.report.vc;
      wapl = res.report.wapl;
    } catch (const InfeasibleError& e) {
      status = std::string("infeasible: ") + e.what();
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }
    double ms = now_ms() - t0;
    for (char& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';

    std::snprintf(buf, sizeof buf, "%g,", value);
    csv << buf;
    if (vc >= 0) {
      std::snprintf(buf, sizeof buf, "%d,%.6g,", vc, wapl);
      csv << buf;
    } else {
      csv << ",,";
    }
    std::snprintf(buf, sizeof buf, "%.1f,", ms);
    csv << buf;
    if (auto mem = peak_mem_mb()) {
      std::snprintf(buf, sizeof buf, "%.1f", *mem);
      csv << buf;
    }
    csv << ',' << status << '\n';
  }
  write_text(std::filesystem::path(out_dir) / "sweep.csv", csv.str());
  std::printf("%s\n", csv.str().c_str());
  return 0;
}

}  // namespace vfplan
