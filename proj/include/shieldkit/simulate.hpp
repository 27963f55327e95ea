#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/monitors.hpp"

namespace shieldkit {

// One lockstep step of a design and its shield.
struct TraceStep {
  Letter input = 0;         // letter over the design's inputs
  Letter design_out = 0;    // letter over the design's outputs
  Letter shield_out = 0;    // corrected letter, same signals
  bool deviated = false;    // design_out != shield_out
  bool violation = false;   // the monitor flagged the design this step
  MonitorState monitor_before;  // monitor state entering the step
  MonitorState monitor_after;
  StateId spec_before = 0;  // spec state entering the step (corrected trace)
};

struct TraceReport {
  std::vector<std::string> input_names;   // design inputs
  std::vector<std::string> output_names;  // design outputs
  std::vector<std::string> monitor_names; // rendered monitor_before per step
  std::vector<TraceStep> steps;
  int deviation_count = 0;
  bool illegal_deviation = false;          // deviated while the next counter is 0
  bool fail_safe_entered = false;          // monitor reached u_E
  bool spec_violated_by_composition = false;
};

// Runs design and shield in lockstep on `inputs` (letters over the
// design's inputs), tracking the violation monitor for `spec_R` with
// recovery budget k.  The shield's inputs and the spec's signals are
// bound by name to the design's signals; the shield's outputs override
// the design's positionally.
TraceReport evaluate_trace(const MealyMachine& design, const MealyMachine& shield,
                           const SafetyAutomaton& spec_R, int k,
                           const std::vector<Letter>& inputs,
                           MonitorMode mode = MonitorMode::FailSafeOnSecond);

// Aligned table mirroring the trace tables used in reports: one column
// per step, rows for inputs, outputs, deviation marks and the monitor.
std::string format_report_table(const TraceReport& report);

// One line per step: step,design_out,shield_out,deviated,monitor
std::string format_report_lines(const TraceReport& report);

struct Verdict {
  bool safe = true;
  // Shortest input sequence reaching an unsafe spec state, if any.
  std::optional<std::vector<Letter>> counterexample;
  std::string message;
};

// Explicit reachability over machine x spec.  Spec signals are bound
// by name to the machine's signals.
Verdict model_check_safety(const MealyMachine& machine, const SafetyAutomaton& spec);

}  // namespace shieldkit
