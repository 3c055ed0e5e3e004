#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vfplan/errors.hpp"
#include "vfplan/oracle.hpp"
#include "vfplan/pipeline.hpp"

namespace {

using namespace vfplan;

struct ConfigFlags {
  std::string profile = "indoor";
  double r_min = 0, r_max = 0, resolution = 0, partition = 0, tau = 0;
  std::string metric = "mean-len";
  bool include_openings = false;
  bool windows_opaque = false;
  bool reinforce = false;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--profile", f.profile, "parameter preset")
      ->check(CLI::IsMember({"indoor", "outdoor"}));
  cmd->add_option("--r-min", f.r_min, "scanner blind radius, meters");
  cmd->add_option("--r-max", f.r_max, "scanner range, meters");
  cmd->add_option("--resolution", f.resolution, "grid cell size, meters");
  cmd->add_option("--partition", f.partition,
                  "boundary segment length, meters");
  cmd->add_option("--tau", f.tau, "overlap threshold");
  cmd->add_option("--overlap-metric", f.metric, "overlap ratio variant")
      ->check(CLI::IsMember(
          {"min-len", "mean-len", "union-len", "union-ang", "mean-ang"}));
  cmd->add_flag("--include-openings", f.include_openings,
                "treat window spans as coverage targets");
  cmd->add_flag("--windows-opaque", f.windows_opaque,
                "treat window panes as occluders");
  cmd->add_flag("--reinforce-cycles", f.reinforce,
                "close cycles through degree-1 viewpoints");
}

PlanConfig build_config(CLI::App* cmd, const ConfigFlags& f) {
  Profile p = f.profile == "outdoor" ? Profile::Outdoor : Profile::Indoor;
  PlanConfig c = PlanConfig::for_profile(p);
  if (cmd->count("--r-min")) c.r_min = f.r_min;
  if (cmd->count("--r-max")) c.r_max = f.r_max;
  if (cmd->count("--resolution")) c.resolution = f.resolution;
  if (cmd->count("--partition")) c.partition_length = f.partition;
  if (cmd->count("--tau")) c.tau = f.tau;
  if (cmd->count("--overlap-metric"))
    c.overlap_metric = parse_overlap_metric(f.metric);
  c.include_openings = f.include_openings;
  c.windows_opaque = f.windows_opaque;
  c.reinforce_cycles = f.reinforce;
  return c;
}

void report_infeasible(const InfeasibleError& e) {
  std::fprintf(stderr, "infeasible: %s\n", e.what());
  if (!e.segment_ids().empty()) {
    std::fprintf(stderr, "  affected segment ids:");
    size_t shown = std::min<size_t>(e.segment_ids().size(), 20);
    for (size_t i = 0; i < shown; ++i)
      std::fprintf(stderr, " %d", e.segment_ids()[i]);
    if (shown < e.segment_ids().size())
      std::fprintf(stderr, " ... (%zu total)", e.segment_ids().size());
    std::fprintf(stderr, "\n");
  }
}

int run_oracle(const PlanConfig& config, const std::string& input_path,
               int cap, int threads) {
  std::ifstream in(input_path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open input file '" + input_path + "'", 0);
  Floorplan fp = parse_floorplan(in);
  PlanResult res = run_plan(fp, config, threads);
  if ((int)res.candidates.size() > cap) {
    std::fprintf(stderr,
                 "oracle: %zu candidates exceed the enumeration cap %d\n",
                 res.candidates.size(), cap);
    return 1;
  }
  ExactSolution sol = exact_solve(res.table, res.graph, cap);
  nlohmann::ordered_json doc;
  doc["candidates"] = res.candidates.size();
  doc["greedy_cover"] = res.net.cover_stage_count;
  doc["greedy_total"] = res.report.vc;
  doc["opt_cover"] = sol.opt_cover;
  doc["opt_full"] = sol.opt_full;
  doc["cover_witness"] = sol.cover_witness;
  doc["full_witness"] = sol.full_witness;
  std::printf("%s\n", doc.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal static-scanner viewpoint networks on 2D floorplans"};
  app.require_subcommand(1);

  std::string input, out_dir = ".";
  bool emit_vf = false;
  int threads = 1;

  CLI::App* plan = app.add_subcommand("plan", "compute a viewpoint network");
  ConfigFlags plan_flags;
  plan->add_option("--input", input, "floorplan JSON")->required();
  plan->add_option("--out", out_dir, "output directory")->required();
  add_config_flags(plan, plan_flags);
  plan->add_flag("--emit-vf", emit_vf,
                 "export visibility and distance fields");
  plan->add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1, 256));

  CLI::App* sweep =
      app.add_subcommand("sweep", "run the pipeline across parameter values");
  ConfigFlags sweep_flags;
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--input", input, "floorplan JSON")->required();
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_option("--axis", axis, "swept parameter")
      ->required()
      ->check(CLI::IsMember(
          {"tau", "r_max", "resolution", "partition_length"}));
  sweep->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  add_config_flags(sweep, sweep_flags);
  sweep->add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1, 256));

  CLI::App* oracle =
      app.add_subcommand("oracle", "exact solver for tiny instances");
  oracle->group("");  // hidden: fixture generation only
  ConfigFlags oracle_flags;
  int cap = 18;
  oracle->add_option("--input", input, "floorplan JSON")->required();
  add_config_flags(oracle, oracle_flags);
  oracle->add_option("--cap", cap, "candidate enumeration cap");
  oracle->add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (plan->parsed())
      return run_plan_cli(build_config(plan, plan_flags), input, out_dir,
                          emit_vf, threads);
    if (sweep->parsed())
      return run_sweep_cli(build_config(sweep, sweep_flags), axis, values,
                           input, out_dir, threads);
    if (oracle->parsed())
      return run_oracle(build_config(oracle, oracle_flags), input, cap,
                        threads);
  } catch (const vfplan::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 1;
  } catch (const vfplan::ValidationError& e) {
    std::fprintf(stderr, "invalid input (%s): %s\n", e.ring().c_str(),
                 e.what());
    return 1;
  } catch (const vfplan::InfeasibleError& e) {
    report_infeasible(e);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 3;
}
