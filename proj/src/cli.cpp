#include "mdnet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "mdnet/generators.hpp"
#include "mdnet/metrics.hpp"
#include "mdnet/model.hpp"
#include "mdnet/solver.hpp"

#ifndef MDNET_VERSION
#define MDNET_VERSION "dev"
#endif

namespace mdnet {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kSchema = "mdnet/1";

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

json manifest(const std::string& command, json config, const std::vector<std::string>& inputs) {
  json digests = json::object();
  for (const auto& path : inputs) digests[path] = sha256_file(path);
  return {{"command", command}, {"config", std::move(config)}, {"inputs", std::move(digests)}, {"version", MDNET_VERSION}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path.string() + "'");
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

struct EvalArgs {
  std::string graph;
  std::string partition;
  std::optional<int> weak_L;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  Graph g = load_edge_list_file(a.graph);
  Partition p = load_partition_file(a.partition, g);
  auto report = full_report(g, p);
  json j;
  j["schema"] = kSchema;
  j["manifest"] = manifest("eval", {{"weak_L", optional_int(a.weak_L)}}, {a.graph, a.partition});
  j.update(to_json(report));
  j["m"] = p.m();
  int code = kExitOk;
  if (a.weak_L) {
    json violated = json::array();
    for (const auto& c : report.communities) {
      if (!c.stats.weak(*a.weak_L)) violated.push_back(c.id);
    }
    if (!violated.empty()) code = kExitConstraintViolated;
    j["weak_violations"] = std::move(violated);
  }
  out << j.dump(2) << "\n";
  return code;
}

struct SolveArgs {
  std::string graph;
  std::string method = "ls";
  std::optional<int> m;
  std::optional<int> m_min;
  std::optional<int> m_max;
  std::optional<int> weak_L;
  std::uint64_t seed = 1;
  int restarts = 32;
  int max_stale = 30;
  std::optional<std::string> rho;
  bool allow_single = false;
  bool timing = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Graph g = load_edge_list_file(a.graph);
  SolverConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.weak_L = a.weak_L;
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.max_stale_iterations = a.max_stale;
  cfg.allow_single_community = a.allow_single;
  if (a.rho) cfg.penalty_rho = parse_rational(*a.rho);
  if (a.m && (a.m_min || a.m_max)) throw Error("use either --m or --m-min/--m-max");

  std::vector<int> sweep;
  if (a.m) {
    sweep.push_back(*a.m);
  } else if (a.m_min || a.m_max) {
    SolverConfig range = cfg;
    range.m_min = a.m_min;
    range.m_max = a.m_max;
    auto [lo, hi] = community_range(g, range);
    for (int m = lo; m <= hi; ++m) sweep.push_back(m);
  } else if (cfg.method == Method::BranchAndBound) {
    throw Error("bnb needs a community count: pass --m or --m-min/--m-max");
  }

  json config = {{"method", to_string(cfg.method)},
                 {"m", optional_int(a.m)},
                 {"m_min", optional_int(a.m_min)},
                 {"m_max", optional_int(a.m_max)},
                 {"weak_L", optional_int(a.weak_L)},
                 {"seed", a.seed},
                 {"restarts", a.restarts},
                 {"max_stale_iterations", a.max_stale},
                 {"penalty_rho", (cfg.penalty_rho ? *cfg.penalty_rho : Rational(g.n())).str()},
                 {"allow_single_community", a.allow_single}};

  std::vector<SolveResult> results;
  if (sweep.empty()) {
    results.push_back(solve(g, cfg));
  } else {
    for (int m : sweep) {
      SolverConfig one = cfg;
      one.m_min = m;
      one.m_max = m;
      results.push_back(solve(g, one));
    }
  }

  // argmax over feasible results, ties to the smallest m
  std::optional<std::size_t> best;
  bool all_proved = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    all_proved = all_proved && results[i].status != SolveStatus::Heuristic;
    if (results[i].best && (!best || results[i].D > results[*best].D)) best = i;
  }
  json j;
  j["schema"] = kSchema;
  j["manifest"] = manifest("solve", config, {a.graph});
  j["seed"] = a.seed;
  const SolveResult& chosen = best ? results[*best] : results.front();
  j.update(to_json(chosen, a.timing));
  if (results.size() > 1) {
    if (best) j["status"] = all_proved ? to_string(SolveStatus::ProvedOptimal) : to_string(SolveStatus::Heuristic);
    json per_m = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      json r = to_json(results[i], a.timing);
      r["m_requested"] = sweep[i];
      r.erase("report");
      per_m.push_back(std::move(r));
    }
    j["sweep"] = std::move(per_m);
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct EmitArgs {
  std::string graph;
  int m = 2;
  std::optional<int> weak_L;
  bool symmetry_break = false;
  std::string output;
};

int cmd_emit(const EmitArgs& a, std::ostream& out) {
  Graph g = load_edge_list_file(a.graph);
  LinearModel model = build_model(g, {a.m, a.weak_L, a.symmetry_break});
  fs::path lp(a.output);
  fs::path sidecar = lp;
  sidecar.replace_extension(".vars.json");
  write_file(lp, emit_lp(model));
  json vars = variable_sidecar(model);
  vars["manifest"] = manifest("emit", {{"m", a.m}, {"weak_L", optional_int(a.weak_L)}, {"symmetry_break", a.symmetry_break}},
                              {a.graph});
  write_file(sidecar, vars.dump(2) + "\n");
  json j = {{"schema", kSchema},
            {"lp", lp.string()},
            {"sidecar", sidecar.string()},
            {"variables", model.variables.size()},
            {"constraints", model.constraints.size()},
            {"alpha_bounds", {{"lower", model.bounds.lower.str()}, {"upper", model.bounds.upper.str()}}}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct GenerateArgs {
  std::string family;
  int hub = 3;
  int satellites = 7;
  int satellite_size = 4;
  std::string out_dir;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  NamedInstance inst = a.family == "clique-star" ? gen_clique_star(a.hub, a.satellites, a.satellite_size)
                       : a.family == "fig2"      ? gen_fig2()
                       : a.family == "zachary"   ? zachary()
                                                 : throw Error("unknown family '" + a.family + "'");
  fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
  fs::path edges = dir / (inst.name + ".edges");
  write_file(edges, to_edge_list(inst.graph));
  json expected = json::object();
  json files = json::array({edges.string()});
  for (const auto& cp : inst.partitions) {
    fs::path part = dir / (inst.name + "." + cp.name + ".part");
    write_file(part, to_partition_text(cp.partition));
    files.push_back(part.string());
    auto report = full_report(inst.graph, cp.partition);
    json e = {{"file", part.filename().string()},
              {"m", cp.partition.m()},
              {"D", to_significant(report.D)},
              {"D_exact", report.D.str()}};
    if (report.Q) e["Q"] = to_significant(*report.Q);
    if (cp.published_D) e["published_D"] = *cp.published_D;
    if (cp.published_Q) e["published_Q"] = *cp.published_Q;
    expected[cp.name] = std::move(e);
  }
  json params = {{"family", a.family}};
  if (a.family == "clique-star") {
    params["hub"] = a.hub;
    params["satellites"] = a.satellites;
    params["satellite_size"] = a.satellite_size;
  }
  json summary = {{"schema", kSchema},
                  {"manifest", manifest("generate", params, {})},
                  {"instance", inst.name},
                  {"n", inst.graph.n()},
                  {"edges", inst.graph.num_edges()},
                  {"partitions", std::move(expected)}};
  write_file(dir / (inst.name + ".expected.json"), summary.dump(2) + "\n");
  summary["files"] = std::move(files);
  out << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modularity density evaluation, solving and model emission"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate D, Q and the weak condition for a partition");
  eval_cmd->add_option("--graph", eval.graph, "Edge-list file")->required();
  eval_cmd->add_option("--partition", eval.partition, "Partition file")->required();
  eval_cmd->add_option("--weak-L", eval.weak_L, "Exit 3 if a community violates 4e - K >= L")->check(CLI::Range(0, 1));

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Maximize modularity density");
  solve_cmd->add_option("--graph", solve_args.graph, "Edge-list file")->required();
  solve_cmd->add_option("--method", solve_args.method, "exhaustive, bnb or ls")
      ->check(CLI::IsMember({"exhaustive", "bnb", "ls", "local-search"}));
  solve_cmd->add_option("--m", solve_args.m, "Fixed community count");
  solve_cmd->add_option("--m-min", solve_args.m_min, "Smallest community count of a sweep");
  solve_cmd->add_option("--m-max", solve_args.m_max, "Largest community count of a sweep");
  solve_cmd->add_option("--weak-L", solve_args.weak_L, "Require 4e - K >= L in every community")->check(CLI::Range(0, 1));
  solve_cmd->add_option("--seed", solve_args.seed, "Local-search seed");
  solve_cmd->add_option("--restarts", solve_args.restarts, "Local-search restarts")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-stale", solve_args.max_stale, "Perturbations without improvement before a restart ends")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--rho", solve_args.rho, "Weak-violation penalty (default n)");
  solve_cmd->add_flag("--allow-single", solve_args.allow_single, "Admit the one-community partition");
  solve_cmd->add_flag("--timing", solve_args.timing, "Include wall time in the output");

  EmitArgs emit;
  auto* emit_cmd = app.add_subcommand("emit", "Write the linearized model as an LP file");
  emit_cmd->add_option("--graph", emit.graph, "Edge-list file")->required();
  emit_cmd->add_option("--m", emit.m, "Community count")->required();
  emit_cmd->add_option("--weak-L", emit.weak_L, "Add weak constraints with this L")->check(CLI::Range(0, 1));
  emit_cmd->add_flag("--symmetry-break", emit.symmetry_break, "Fix x_i_l = 0 for l > i");
  emit_cmd->add_option("-o,--output", emit.output, "Output .lp path")->required();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a benchmark instance and its reference partitions");
  gen_cmd->add_option("--family", gen.family, "clique-star, fig2 or zachary")
      ->required()
      ->check(CLI::IsMember({"clique-star", "fig2", "zachary"}));
  auto* hub = gen_cmd->add_option("--hub", gen.hub, "Hub clique size (clique-star)");
  auto* sats = gen_cmd->add_option("--satellites", gen.satellites, "Number of satellite cliques (clique-star)");
  auto* sat_size = gen_cmd->add_option("--satellite-size", gen.satellite_size, "Satellite clique size (clique-star)");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (*gen_cmd && gen.family == "clique-star" && (!*hub || !*sats || !*sat_size)) {
      throw CLI::RequiredError("--hub, --satellites and --satellite-size are required for clique-star");
    }
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App* active = &app;
    for (auto* sub : app.get_subcommands()) active = sub;
    err << active->help();
    return kExitInputError;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*emit_cmd) return cmd_emit(emit, out);
    return cmd_generate(gen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace mdnet
