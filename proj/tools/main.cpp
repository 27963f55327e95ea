#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shieldkit/automaton.hpp"
#include "shieldkit/error.hpp"
#include "shieldkit/io.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/parser.hpp"
#include "shieldkit/shield.hpp"
#include "shieldkit/signals.hpp"
#include "shieldkit/simulate.hpp"

using namespace shieldkit;

namespace {

MonitorMode mode_from_name(const std::string& name) {
  if (name == "failsafe") return MonitorMode::FailSafeOnSecond;
  if (name == "reset") return MonitorMode::ResetOnSecond;
  if (name == "allstates") return MonitorMode::AllStatesGuess;
  throw Error("unknown monitor mode: " + name);
}

Engine engine_from_name(const std::string& name) {
  if (name == "ksafety") return Engine::KSafety;
  if (name == "buchi") return Engine::BuchiStabilizing;
  throw Error("unknown engine: " + name);
}

std::string reason_text(SynthesisResult::Reason reason) {
  switch (reason) {
    case SynthesisResult::Reason::KExhausted:
      return "no shield within the recovery bound";
    case SynthesisResult::Reason::BuchiLost:
      return "the stabilizing game is lost";
    case SynthesisResult::Reason::SpecUnrealizable:
      return "the property is unrealizable from its initial state";
    case SynthesisResult::Reason::None:
      break;
  }
  return "";
}

std::string reason_key(SynthesisResult::Reason reason) {
  switch (reason) {
    case SynthesisResult::Reason::KExhausted: return "k_exhausted";
    case SynthesisResult::Reason::BuchiLost: return "buchi_lost";
    case SynthesisResult::Reason::SpecUnrealizable: return "spec_unrealizable";
    case SynthesisResult::Reason::None: break;
  }
  return "none";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<SafetyAutomaton> load_specs(const std::vector<std::string>& paths) {
  std::vector<SafetyAutomaton> specs;
  for (const std::string& p : paths) specs.push_back(parse_automaton(read_file(p)));
  return specs;
}

SafetyAutomaton single_spec(const std::vector<std::string>& paths) {
  std::vector<SafetyAutomaton> specs = load_specs(paths);
  return specs.size() == 1 ? specs.front() : product(specs);
}

struct SynthOptions {
  std::vector<std::string> spec_paths;
  std::vector<std::string> valid_paths;
  std::string out_path;
  std::string dot_path;
  std::string engine = "ksafety";
  std::string mode = "failsafe";
  int k_max = 10;
  bool no_validity = false;
  bool print_stats = false;
};

void print_stats(const SynthesisResult& result, const SynthOptions& opt) {
  const SynthesisStats& s = result.stats;
  std::cout << "realizable=" << (result.realizable() ? 1 : 0) << "\n"
            << "k=" << result.k << "\n"
            << "engine=" << opt.engine << "\n"
            << "mode=" << opt.mode << "\n"
            << "spec_states=" << s.spec_states << "\n"
            << "winning_states=" << s.winning_states << "\n"
            << "monitor_states=" << s.monitor_states << "\n"
            << "validity_states=" << s.validity_states << "\n"
            << "game_states=" << s.game_states << "\n"
            << "game_bound=" << s.game_bound << "\n"
            << "attempts=" << s.attempts << "\n"
            << "solver_iterations=" << s.solver_iterations << "\n"
            << "inner_iterations=" << s.inner_iterations << "\n"
            << "wall_ms=" << s.wall_ms << "\n";
}

void write_manifest(const SynthesisResult& result, const SynthOptions& opt) {
  nlohmann::json j;
  j["command"] = "synth";
  j["inputs"] = nlohmann::json::array();
  for (const std::string& p : opt.spec_paths) j["inputs"].push_back(p);
  for (const std::string& p : opt.valid_paths) j["inputs"].push_back(p);
  j["config"] = {{"k_max", opt.k_max},
                 {"engine", opt.engine},
                 {"mode", opt.mode},
                 {"use_validity", !opt.no_validity}};
  j["outputs"] = nlohmann::json::object();
  j["outputs"]["shield"] =
      result.realizable() ? nlohmann::json(opt.out_path) : nlohmann::json();
  j["outputs"]["dot"] =
      !opt.dot_path.empty() && result.realizable() ? nlohmann::json(opt.dot_path)
                                                   : nlohmann::json();
  const SynthesisStats& s = result.stats;
  j["stats"] = {{"realizable", result.realizable()},
                {"k", result.k},
                {"reason", reason_key(result.reason)},
                {"spec_states", s.spec_states},
                {"winning_states", s.winning_states},
                {"monitor_states", s.monitor_states},
                {"validity_states", s.validity_states},
                {"game_states", s.game_states},
                {"game_bound", s.game_bound},
                {"attempts", s.attempts},
                {"solver_iterations", s.solver_iterations},
                {"inner_iterations", s.inner_iterations},
                {"wall_ms", s.wall_ms}};
  write_text(opt.out_path + ".manifest.json", j.dump(2) + "\n");
}

int cmd_synth(const SynthOptions& opt) {
  std::vector<SafetyAutomaton> phi = load_specs(opt.spec_paths);
  std::vector<std::size_t> valid_indices;
  for (const std::string& p : opt.valid_paths) {
    valid_indices.push_back(phi.size());
    phi.push_back(parse_automaton(read_file(p)));
  }

  SynthesisConfig cfg;
  cfg.k_max = opt.k_max;
  cfg.engine = engine_from_name(opt.engine);
  cfg.mode = mode_from_name(opt.mode);
  cfg.use_validity = !opt.no_validity;

  SynthesisResult result = synthesize(phi, valid_indices, cfg);
  if (result.realizable()) {
    std::cout << "realizable, k=" << result.k << "\n";
  } else {
    std::cout << "unrealizable: " << reason_text(result.reason) << "\n";
  }
  if (opt.print_stats) print_stats(result, opt);

  if (result.realizable()) {
    std::string text = export_mealy(*result.shield);
    if (opt.out_path.empty())
      std::cout << text;
    else
      write_text(opt.out_path, text);
    if (!opt.dot_path.empty()) write_text(opt.dot_path, dot_mealy(*result.shield, "shield"));
  }
  if (!opt.out_path.empty()) write_manifest(result, opt);
  return result.realizable() ? 0 : 1;
}

int cmd_simulate(const std::string& design_path, const std::string& shield_path,
                 const std::string& trace_path, int k, const std::string& mode,
                 const std::vector<std::string>& spec_paths) {
  MealyMachine design = parse_mealy(read_file(design_path));
  MealyMachine shield = parse_mealy(read_file(shield_path));
  SafetyAutomaton spec = single_spec(spec_paths);
  std::vector<Letter> inputs = parse_trace(read_file(trace_path), design.sig.inputs);

  TraceReport report =
      evaluate_trace(design, shield, spec, k, inputs, mode_from_name(mode));
  std::cout << format_report_table(report);
  std::cout << "deviations=" << report.deviation_count << "\n";
  if (report.illegal_deviation) std::cout << "illegal deviation\n";
  if (report.fail_safe_entered) std::cout << "fail-safe entered\n";
  if (report.spec_violated_by_composition) std::cout << "composition violated the property\n";
  return report.spec_violated_by_composition ? 1 : 0;
}

int cmd_check(const std::vector<std::string>& machine_paths,
              const std::vector<std::string>& spec_paths) {
  MealyMachine machine = parse_mealy(read_file(machine_paths.front()));
  for (std::size_t i = 1; i < machine_paths.size(); ++i)
    machine = compose(machine, parse_mealy(read_file(machine_paths[i])));
  SafetyAutomaton spec = single_spec(spec_paths);

  Verdict verdict = model_check_safety(machine, spec);
  if (verdict.safe) {
    std::cout << "safe\n";
    return 0;
  }
  std::cout << "unsafe: " << verdict.message << "\n";
  if (verdict.counterexample.has_value()) {
    for (Letter x : *verdict.counterexample)
      std::cout << format_assignment(x, machine.sig.inputs) << "\n";
  }
  return 1;
}

int cmd_info(const std::string& path) {
  std::string text = read_file(path);
  std::string stem = std::filesystem::path(path).stem().string();
  if (text.find("emit:") != std::string::npos) {
    MealyMachine m = parse_mealy(text);
    std::cout << stem << ": machine, " << m.state_count() << " states, "
              << m.sig.inputs.size() << " inputs, " << m.sig.outputs.size()
              << " outputs\n";
  } else {
    SafetyAutomaton aut = parse_automaton(text);
    std::cout << validate(aut, stem).summary << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety shield synthesis and simulation"};
  app.require_subcommand(1);

  SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "synthesize a shield");
  synth_cmd->add_option("specs", synth.spec_paths, "property automata")
      ->required();
  synth_cmd->add_option("--valid", synth.valid_paths,
                        "environment assumptions (not enforced, assumed)");
  synth_cmd->add_option("--k-max", synth.k_max, "largest recovery bound to try");
  synth_cmd->add_option("--engine", synth.engine, "ksafety or buchi")
      ->check(CLI::IsMember({"ksafety", "buchi"}));
  synth_cmd->add_option("--mode", synth.mode, "failsafe, reset or allstates")
      ->check(CLI::IsMember({"failsafe", "reset", "allstates"}));
  synth_cmd->add_flag("--no-validity", synth.no_validity,
                      "track assumptions without using them in the objective");
  synth_cmd->add_option("--out", synth.out_path, "write the shield here");
  synth_cmd->add_option("--dot", synth.dot_path, "write a graphviz view here");
  synth_cmd->add_flag("--stats", synth.print_stats, "print synthesis statistics");

  std::string design_path, shield_path, trace_path, sim_mode = "failsafe";
  int sim_k = 1;
  std::vector<std::string> sim_specs;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run a design against its shield");
  sim_cmd->add_option("--design", design_path, "design machine")->required();
  sim_cmd->add_option("--shield", shield_path, "shield machine")->required();
  sim_cmd->add_option("--trace", trace_path, "input trace")->required();
  sim_cmd->add_option("--k", sim_k, "recovery bound of the monitor");
  sim_cmd->add_option("--mode", sim_mode, "failsafe, reset or allstates")
      ->check(CLI::IsMember({"failsafe", "reset", "allstates"}));
  sim_cmd->add_option("specs", sim_specs, "property automata")->required();

  std::vector<std::string> check_machines, check_specs;
  CLI::App* check_cmd = app.add_subcommand("check", "model check a machine");
  check_cmd->add_option("--machine", check_machines, "machines, composed in order")
      ->required();
  check_cmd->add_option("specs", check_specs, "property automata")->required();

  std::string info_path;
  CLI::App* info_cmd = app.add_subcommand("info", "describe a file");
  info_cmd->add_option("file", info_path, "automaton or machine")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (sim_cmd->parsed())
      return cmd_simulate(design_path, shield_path, trace_path, sim_k, sim_mode,
                          sim_specs);
    if (check_cmd->parsed()) return cmd_check(check_machines, check_specs);
    if (info_cmd->parsed()) return cmd_info(info_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
