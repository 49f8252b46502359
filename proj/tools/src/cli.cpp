#include "probcf_cli/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "probcf/baselines.hpp"
#include "probcf/condprop.hpp"
#include "probcf/flows.hpp"
#include "probcf/ground_truth.hpp"
#include "probcf/hier_sampler.hpp"
#include "probcf/metrics.hpp"
#include "probcf/programs.hpp"
#include "probcf/report.hpp"
#include "probcf/sample_io.hpp"
#include "probcf/straight_line.hpp"

namespace probcf::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

void print_summary(std::ostream& out, const std::vector<WeightedSample>& s) {
  double total = 0.0;
  for (const auto& x : s) total += x.weight;
  if (total > 0.0) {
    Summary m = summarize(s);
    fmt::print(out, "mean {:.6g}  std {:.6g}  samples {}\n", m.mean, m.std, s.size());
  } else {
    fmt::print(out, "no positive-weight samples ({} entries)\n", s.size());
  }
}

struct RunArgs {
  std::string program, out, report;
  RunConfig cfg;
  long timeout_ms = 2000;
  std::string mode = "importance";
  bool wall_time = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  Pcfg g = load_program(a.program);
  RunConfig cfg = a.cfg;
  cfg.timeout = std::chrono::milliseconds(a.timeout_ms);
  cfg.mode = parse_weight_mode(a.mode);
  RunResult r = run(g, cfg);
  if (!a.out.empty()) write_samples_csv(a.out, r.samples);
  if (!a.report.empty()) write_text(a.report, report_to_json(r.report, a.wall_time));
  fmt::print(out, "status {}  rounds {}  arms {}  blacklisted {}  pool {}\n", r.report.status, r.report.rounds,
             r.report.arms.size(), r.report.blacklisted, r.report.pool_size);
  print_summary(out, r.samples);
  return r.report.status == "ok" ? 0 : 2;
}

struct FlowsArgs {
  std::string program;
  std::size_t limit = 10;
  std::size_t max_len = 4096;
  bool pcfg = false;
  bool verdict = false;
};

int cmd_flows(const FlowsArgs& a, std::ostream& out) {
  Pcfg g = load_program(a.program);
  if (a.pcfg) out << print_pcfg(g);
  auto flows = enumerate_flows(g, a.limit, a.max_len);
  for (std::size_t i = 0; i < flows.size(); ++i) {
    fmt::print(out, "{:>4}  len {:>4}  {}", i, flows[i].size(), format_flow(flows[i]));
    if (a.verdict) out << (analyse_flow(g, flows[i], i).blacklisted ? "  blacklisted" : "  live");
    out << '\n';
  }
  return 0;
}

struct CdpgArgs {
  std::string program;
  std::size_t flow = 0;
  std::size_t max_len = 4096;
};

int cmd_cdpg(const CdpgArgs& a, std::ostream& out, std::ostream& err) {
  Pcfg g = load_program(a.program);
  auto flows = enumerate_flows(g, a.flow + 1, a.max_len);
  if (flows.size() <= a.flow) {
    fmt::print(err, "program has only {} complete flow(s) up to length {}\n", flows.size(), a.max_len);
    return 1;
  }
  FlowEntry e = analyse_flow(g, flows[a.flow], a.flow);
  fmt::print(out, "flow {}: {}\n\n", a.flow, format_flow(e.flow));
  out << "straight-line program:\n" << print_slp(e.slp) << "\n";
  out << "after condition propagation:\n" << print_slp(e.optimized) << "\n";
  for (const auto& d : e.diagnostics) fmt::print(out, "note: {}\n", d);
  fmt::print(out, "blacklisted: {}\n", e.blacklisted ? "yes" : "no");
  return 0;
}

struct BaselineArgs {
  std::string program, method = "rejection", out;
  std::size_t n = 10000, particles = 100, sweeps = 1, step_cap = 100000;
  std::uint64_t seed = 0;
};

int cmd_baseline(const BaselineArgs& a, std::ostream& out) {
  Pcfg g = load_program(a.program);
  Rng rng(a.seed);
  std::vector<WeightedSample> samples;
  if (a.method == "rejection") {
    RejectionResult r = baseline_rejection(g, a.n, rng, a.step_cap);
    fmt::print(out, "attempts {}  accepted {}  capped {}  errors {}\n", r.attempts, r.accepted, r.capped, r.errors);
    samples = std::move(r.samples);
  } else if (a.method == "smc") {
    SweepSummary s = whole_smc_sweeps(g, a.particles, a.sweeps, rng, a.step_cap);
    fmt::print(out, "sweeps {}  live sweeps {}  live fraction {:.6g}\n", s.sweeps, s.live_sweeps, s.live_fraction);
    samples = std::move(s.samples);
  } else {
    throw std::invalid_argument("unknown method '" + a.method + "' (rejection or smc)");
  }
  if (!a.out.empty()) write_samples_csv(a.out, samples);
  print_summary(out, samples);
  return 0;
}

struct KlArgs {
  std::string samples, truth;
  std::size_t bins = 64;
  bool no_smoothing = false;
  std::size_t reference = 1000000;
  std::uint64_t seed = 1;
};

int cmd_kl(const KlArgs& a, std::ostream& out) {
  auto samples = read_samples_csv(a.samples);
  ReferenceOptions opt;
  opt.accepted = a.reference;
  opt.seed = a.seed;
  GroundTruth gt = ground_truth(a.truth, opt);
  double kl = kl_divergence(gt, samples, a.bins, !a.no_smoothing);
  fmt::print(out, "kl {:.6g}\n", kl);
  print_summary(out, samples);
  return 0;
}

int cmd_report(const std::string& path, std::ostream& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  const auto& c = j.at("config");
  fmt::print(out, "budget {}  particles {}  mode {}  seed {}\n", c.at("budget").get<std::size_t>(),
             c.at("particles").get<std::size_t>(), c.at("weight_mode").get<std::string>(),
             c.at("seed").get<std::uint64_t>());
  const auto& s = j.at("scheduler");
  fmt::print(out, "rounds {}  expand {}  random {}  proportional {}  idle {}\n", s.at("rounds").get<std::size_t>(),
             s.at("expand").get<std::size_t>(), s.at("random").get<std::size_t>(),
             s.at("proportional").get<std::size_t>(), s.at("idle").get<std::size_t>());
  const auto& p = j.at("pool");
  fmt::print(out, "pool {}  zero-weight {}  dropped {}\n", p.at("size").get<std::size_t>(),
             p.at("zero_weight_entries").get<std::size_t>(), p.at("dropped_in_adjustment").get<std::size_t>());
  fmt::print(out, "{:>6} {:>6} {:>12} {:>6} {:>12}\n", "flow", "len", "p_hat", "pulls", "weight_sum");
  for (const auto& arm : j.at("arms")) {
    fmt::print(out, "{:>6} {:>6} {:>12.6g} {:>6} {:>12.6g}\n", arm.at("flow_id").get<std::size_t>(),
               arm.at("length").get<std::size_t>(), arm.at("p_hat").get<double>(),
               arm.at("pulls").get<std::size_t>(), arm.at("weight_sum").get<double>());
  }
  if (j.contains("timing")) fmt::print(out, "wall {:.3f} s\n", j["timing"].at("wall_seconds").get<double>());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"probcf: hierarchical control/data-separated sampling for Prob programs"};
  app.require_subcommand(1);
  const std::string prog_help = "program file (.prob) or builtin such as coin(0.36)";

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "sample the posterior of a program");
  run_cmd->add_option("program", ra.program, prog_help)->required();
  run_cmd->add_option("--budget", ra.cfg.budget, "rounds T")->capture_default_str();
  run_cmd->add_option("--particles", ra.cfg.particles, "SMC particles J per pull")->capture_default_str();
  run_cmd->add_option("--timeout-ms", ra.timeout_ms, "per-SMC timeout")->capture_default_str();
  run_cmd->add_option("--seed", ra.cfg.seed)->capture_default_str();
  run_cmd->add_option("--weight-mode", ra.mode)
      ->check(CLI::IsMember({"per-arm", "importance"}))
      ->capture_default_str();
  run_cmd->add_option("--max-flow-length", ra.cfg.max_flow_length)->capture_default_str();
  run_cmd->add_option("--expand-attempts", ra.cfg.expand_attempts)->capture_default_str();
  run_cmd->add_option("--out", ra.out, "samples CSV");
  run_cmd->add_option("--report", ra.report, "report JSON");
  run_cmd->add_flag("--wall-time", ra.wall_time, "include wall-clock timing in the report");

  FlowsArgs fa;
  auto* flows_cmd = app.add_subcommand("flows", "list complete control flows, shortest first");
  flows_cmd->add_option("program", fa.program, prog_help)->required();
  flows_cmd->add_option("--limit", fa.limit)->capture_default_str();
  flows_cmd->add_option("--max-len", fa.max_len)->capture_default_str();
  flows_cmd->add_flag("--pcfg", fa.pcfg, "print the pCFG first");
  flows_cmd->add_flag("--verdict", fa.verdict, "show the blacklist verdict of each flow");

  CdpgArgs ca;
  auto* cdpg_cmd = app.add_subcommand("cdpg", "condition propagation on one flow");
  cdpg_cmd->add_option("program", ca.program, prog_help)->required();
  cdpg_cmd->add_option("--flow", ca.flow, "flow id as listed by `flows`")->capture_default_str();
  cdpg_cmd->add_option("--max-len", ca.max_len)->capture_default_str();

  BaselineArgs ba;
  auto* base_cmd = app.add_subcommand("baseline", "rejection or whole-program SMC baseline");
  base_cmd->add_option("program", ba.program, prog_help)->required();
  base_cmd->add_option("--method", ba.method)->check(CLI::IsMember({"rejection", "smc"}))->capture_default_str();
  base_cmd->add_option("--n", ba.n, "rejection attempts")->capture_default_str();
  base_cmd->add_option("--particles", ba.particles)->capture_default_str();
  base_cmd->add_option("--sweeps", ba.sweeps, "independent SMC sweeps")->capture_default_str();
  base_cmd->add_option("--step-cap", ba.step_cap)->capture_default_str();
  base_cmd->add_option("--seed", ba.seed)->capture_default_str();
  base_cmd->add_option("--out", ba.out, "samples CSV");

  KlArgs ka;
  auto* kl_cmd = app.add_subcommand("kl", "KL divergence from a ground truth to a sample file");
  kl_cmd->add_option("--samples", ka.samples)->required();
  kl_cmd->add_option("--ground-truth", ka.truth, "builtin spec or reference CSV")->required();
  kl_cmd->add_option("--bins", ka.bins)->capture_default_str();
  kl_cmd->add_flag("--no-smoothing", ka.no_smoothing);
  kl_cmd->add_option("--reference-samples", ka.reference, "accepted oracle samples without a closed form")
      ->capture_default_str();
  kl_cmd->add_option("--seed", ka.seed, "oracle seed")->capture_default_str();

  std::string report_path;
  auto* rep_cmd = app.add_subcommand("report", "summarise a report.json");
  rep_cmd->add_option("report", report_path)->required();

  std::string source_spec;
  auto* src_cmd = app.add_subcommand("source", "print the source of a builtin program");
  src_cmd->add_option("program", source_spec)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) return cmd_run(ra, out);
    if (*flows_cmd) return cmd_flows(fa, out);
    if (*cdpg_cmd) return cmd_cdpg(ca, out, err);
    if (*base_cmd) return cmd_baseline(ba, out);
    if (*kl_cmd) return cmd_kl(ka, out);
    if (*rep_cmd) return cmd_report(report_path, out);
    if (*src_cmd) {
      out << builtin_source(source_spec);
      return 0;
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace probcf::cli
