#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shieldkit/error.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/monitors.hpp"
#include "shieldkit/parser.hpp"
#include "shieldkit/shield.hpp"
#include "shieldkit/simulate.hpp"
#include "support.hpp"

using namespace shieldkit;
using testsupport::load_automaton;
using testsupport::load_mealy;
using testsupport::load_trace;
using testsupport::SequenceOdometer;

namespace {

MealyMachine synthesized_shield(const SafetyAutomaton& spec) {
  SynthesisResult result = synthesize({spec}, {}, {});
  REQUIRE(result.realizable());
  return *result.shield;
}

}  // namespace

TEST_CASE("crossing controller run is corrected exactly as recorded") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine shield = synthesized_shield(traffic);
  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});

  TraceReport report = evaluate_trace(design, shield, traffic, 1, inputs);
  REQUIRE(report.steps.size() == 15);

  std::vector<Letter> design_row, shield_row;
  std::vector<bool> deviated, violation;
  std::vector<StateId> spec_row;
  for (const TraceStep& step : report.steps) {
    design_row.push_back(step.design_out);
    shield_row.push_back(step.shield_out);
    deviated.push_back(step.deviated);
    violation.push_back(step.violation);
    spec_row.push_back(step.spec_before);
  }

  CHECK(design_row ==
        std::vector<Letter>{2, 0, 2, 0, 0, 1, 1, 2, 2, 2, 0, 0, 1, 0, 0});
  CHECK(shield_row ==
        std::vector<Letter>{2, 0, 2, 0, 0, 1, 1, 0, 2, 2, 0, 0, 0, 0, 0});
  CHECK(deviated ==
        std::vector<bool>{false, false, false, false, false, false, false, true,
                          false, false, false, false, true, false, false});
  CHECK(violation == deviated);  // here every violation is corrected at once
  CHECK(report.deviation_count == 2);
  CHECK(!report.illegal_deviation);
  CHECK(!report.fail_safe_entered);
  CHECK(!report.spec_violated_by_composition);

  // Corrected run through the property: H,H,B,H,B,B,F,F,B,H,H,B,B,B,B.
  CHECK(spec_row == std::vector<StateId>{0, 0, 1, 0, 1, 1, 2, 2, 1, 0, 0, 1, 1, 1, 1});

  // Monitor states entering each step; after the violation at step 7
  // the monitor hedges between B and F for one step.
  CHECK(report.monitor_names ==
        std::vector<std::string>{"{H}c0", "{H}c0", "{B}c0", "{H}c0", "{B}c0",
                                 "{B}c0", "{F}c0", "{F}c0", "{B,F}c1", "{H}c0",
                                 "{H}c0", "{B}c0", "{B}c0", "{B}c1", "{B}c0"});
  CHECK(report.steps[8].monitor_before ==
        MonitorState{false, std::uint64_t{(1 << 1) | (1 << 2)}, 1});

  // The deviation monitor classifies each pair the same way the report does.
  DeviationMonitor t = build_deviation_monitor(2);
  for (std::size_t i = 0; i < report.steps.size(); ++i)
    CHECK(t.next(report.steps[i].design_out, report.steps[i].shield_out) ==
          (deviated[i] ? DeviationMonitor::differed : DeviationMonitor::same));
}

TEST_CASE("machine readable trace lines match the recorded run") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine shield = synthesized_shield(traffic);
  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});
  TraceReport report = evaluate_trace(design, shield, traffic, 1, inputs);

  CHECK(format_report_lines(report) ==
        "0,10,10,0,{H}c0\n"
        "1,00,00,0,{H}c0\n"
        "2,10,10,0,{B}c0\n"
        "3,00,00,0,{H}c0\n"
        "4,00,00,0,{B}c0\n"
        "5,01,01,0,{B}c0\n"
        "6,01,01,0,{F}c0\n"
        "7,10,00,1,{F}c0\n"
        "8,10,10,0,{B,F}c1\n"
        "9,10,10,0,{H}c0\n"
        "10,00,00,0,{H}c0\n"
        "11,00,00,0,{B}c0\n"
        "12,01,00,1,{B}c0\n"
        "13,00,00,0,{B}c1\n"
        "14,00,00,0,{B}c0\n");

  std::string table = format_report_table(report);
  CHECK(table.find("step") == 0);
  CHECK(table.find("\np ") != std::string::npos);
  CHECK(table.find("\ncar") != std::string::npos);
  CHECK(table.find("design") != std::string::npos);
  CHECK(table.find("shield") != std::string::npos);
  CHECK(table.find("{B,F}c1") != std::string::npos);
  CHECK(table.find('*') != std::string::npos);
}

TEST_CASE("bus arbiter run is corrected exactly as recorded") {
  SafetyAutomaton amba = load_automaton("amba_g3.aut");
  MealyMachine arbiter = load_mealy("amba_arbiter_buggy.mealy");
  MealyMachine shield = synthesized_shield(amba);
  auto inputs = load_trace("amba_recorded.trace", {"B", "R"});

  TraceReport report = evaluate_trace(arbiter, shield, amba, 1, inputs);
  REQUIRE(report.steps.size() == 13);

  std::vector<Letter> design_row, shield_row;
  std::vector<StateId> spec_row;
  for (const TraceStep& step : report.steps) {
    design_row.push_back(step.design_out);
    shield_row.push_back(step.shield_out);
    spec_row.push_back(step.spec_before);
  }
  CHECK(design_row == std::vector<Letter>{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0});
  CHECK(shield_row == std::vector<Letter>{0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(spec_row == std::vector<StateId>{0, 0, 0, 0, 1, 2, 3, 4, 0, 0, 0, 0, 0});

  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    CHECK(report.steps[i].deviated == (i == 7));
    CHECK(report.steps[i].violation == (i == 7));
  }
  CHECK(report.monitor_names[7] == "{S1}c0");
  CHECK(report.monitor_names[8] == "{S0}c1");
  CHECK(!report.spec_violated_by_composition);
  CHECK(!report.illegal_deviation);
}

TEST_CASE("two mistakes in one recovery trip the fail safe") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine shield = synthesized_shield(traffic);

  // Drive the controller to its farm-green phase, then hold preemption
  // high: the untouched farm light violates twice in a row.
  auto inputs = parse_trace(
      "p=0 car=0\np=0 car=0\np=0 car=1\np=0 car=1\np=0 car=1\n"
      "p=1 car=1\np=1 car=1\np=0 car=0\n",
      {"p", "car"});
  TraceReport report = evaluate_trace(design, shield, traffic, 2, inputs,
                                      MonitorMode::FailSafeOnSecond);
  CHECK(report.fail_safe_entered);
  CHECK(report.monitor_names[6] == "{B}c2");
  CHECK(report.monitor_names[7] == "u_E");
  CHECK(report.steps[5].violation);
  CHECK(report.steps[6].violation);

  // The reset mode guesses again instead.
  TraceReport reset = evaluate_trace(design, shield, traffic, 2, inputs,
                                     MonitorMode::ResetOnSecond);
  CHECK(!reset.fail_safe_entered);
  CHECK(reset.monitor_names[7] == "{B}c2");
}

TEST_CASE("deviations without cause are flagged as illegal") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine design = load_mealy("traffic_design_correct.mealy");
  MealyMachine contrarian = parse_mealy(
      "inputs: p h f\noutputs: h' f'\nstates: I\ninit: I\n"
      "I -> I : h emit: !h' & !f'\n"
      "I -> I : !h emit: h' & !f'\n");
  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});
  TraceReport report = evaluate_trace(design, contrarian, traffic, 1, inputs);
  CHECK(report.illegal_deviation);
  CHECK(report.deviation_count > 0);
  CHECK(!report.fail_safe_entered);
}

TEST_CASE("trace evaluation validates its inputs") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine shield = synthesized_shield(traffic);

  SUBCASE("input letter out of range") {
    CHECK_THROWS_AS(evaluate_trace(design, shield, traffic, 1, {4}), Error);
  }
  SUBCASE("shield output arity mismatch") {
    MealyMachine narrow = parse_mealy(
        "inputs: p h f\noutputs: h'\nstates: I\ninit: I\n"
        "I -> I : true emit: !h'\n");
    CHECK_THROWS_AS(evaluate_trace(design, narrow, traffic, 1, {0}), Error);
  }
  SUBCASE("incomplete spec") {
    SafetyAutomaton partial = traffic;
    partial.delta[0][0] = kNoState;
    CHECK_THROWS_AS(evaluate_trace(design, shield, partial, 1, {0}), Error);
  }
  SUBCASE("spec the environment defeats") {
    SafetyAutomaton echo = load_automaton("echo.aut");
    echo.init = 1;
    MealyMachine copier = parse_mealy(
        "inputs: i\noutputs: o\nstates: E\ninit: E\n"
        "E -> E : i emit: o\nE -> E : !i emit: !o\n");
    CHECK_THROWS_AS(evaluate_trace(copier, copier, echo, 1, {0}), Error);
  }
  SUBCASE("empty trace is fine") {
    TraceReport report = evaluate_trace(design, shield, traffic, 1, {});
    CHECK(report.steps.empty());
    CHECK(report.deviation_count == 0);
    CHECK(!report.spec_violated_by_composition);
  }
}

TEST_CASE("model checking finds the shortest run to an unsafe state") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine buggy = load_mealy("traffic_design_buggy.mealy");

  Verdict verdict = model_check_safety(buggy, traffic);
  CHECK(!verdict.safe);
  CHECK(verdict.message.find("unsafe spec state") != std::string::npos);
  REQUIRE(verdict.counterexample.has_value());
  // Quickest failure: ride to the farm-green phase and preempt.
  CHECK(verdict.counterexample->size() == 6);

  // Replay: only the very last step may reach an unsafe state.
  StateId d = buggy.init, q = traffic.init;
  std::vector<std::string> names = {"p", "car", "h", "f"};
  SignalBinding bind({"p", "h", "f"}, buggy.sig);
  for (std::size_t i = 0; i < verdict.counterexample->size(); ++i) {
    Letter x = (*verdict.counterexample)[i];
    Letter out = buggy.lambda[d][x];
    q = traffic.next(q, bind.extract(x, out));
    d = buggy.delta[d][x];
    if (i + 1 < verdict.counterexample->size()) CHECK(traffic.safe[q]);
  }
  CHECK(!traffic.safe[q]);
}

TEST_CASE("model checking agrees with exhaustive search on short runs") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine correct = load_mealy("traffic_design_correct.mealy");
  CHECK(model_check_safety(correct, traffic).safe);

  SignalBinding bind({"p", "h", "f"}, correct.sig);
  for (std::size_t depth = 1; depth <= 6; ++depth) {
    for (SequenceOdometer odo(depth, 4); !odo.done(); odo.advance()) {
      StateId d = correct.init, q = traffic.init;
      for (Letter x : odo.current()) {
        q = traffic.next(q, bind.extract(x, correct.lambda[d][x]));
        d = correct.delta[d][x];
        REQUIRE(traffic.safe[q]);
      }
    }
  }
}

TEST_CASE("the composition of design and shield model checks clean") {
  SafetyAutomaton traffic = load_automaton("traffic.aut");
  MealyMachine buggy = load_mealy("traffic_design_buggy.mealy");
  MealyMachine shield = synthesized_shield(traffic);
  Verdict verdict = model_check_safety(compose(buggy, shield), traffic);
  CHECK(verdict.safe);
  CHECK(!verdict.counterexample.has_value());

  SafetyAutomaton amba = load_automaton("amba_g3.aut");
  MealyMachine arbiter = load_mealy("amba_arbiter_buggy.mealy");
  Verdict raw = model_check_safety(arbiter, amba);
  CHECK(!raw.safe);
  REQUIRE(raw.counterexample.has_value());
  CHECK(raw.counterexample->size() == 5);
  Verdict fixed = model_check_safety(compose(arbiter, synthesized_shield(amba)), amba);
  CHECK(fixed.safe);
}

TEST_CASE("a spec that starts unsafe is reported with an empty witness") {
  SafetyAutomaton spec = parse_automaton(
      "inputs: i\noutputs: o\nstates: bad\ninit: bad\nsafe:\n"
      "bad -> bad : true\n");
  MealyMachine echo = parse_mealy(
      "inputs: i\noutputs: o\nstates: E\ninit: E\n"
      "E -> E : i emit: o\nE -> E : !i emit: !o\n");
  Verdict verdict = model_check_safety(echo, spec);
  CHECK(!verdict.safe);
  REQUIRE(verdict.counterexample.has_value());
  CHECK(verdict.counterexample->empty());
}
