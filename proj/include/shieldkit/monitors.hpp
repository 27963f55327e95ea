#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"

namespace shieldkit {

// How the violation monitor reacts to design mistakes.
//
//  - FailSafeOnSecond: counter in {0..k}; a violation during an active
//    recovery (counter > 1) drops to the absorbing fail-safe state.
//  - ResetOnSecond: like FailSafeOnSecond, but a violation during
//    recovery restarts the counter at k instead.
//  - AllStatesGuess: like FailSafeOnSecond, but on a violation the
//    monitor guesses the whole winning region instead of only the
//    successors the design may have meant.
//  - Buchi: counter d in {0,1,2}; transitions additionally read the
//    shield's recovery flag, which steps d from 2 to 1; a violation at
//    d = 2 drops to fail-safe.
enum class MonitorMode { FailSafeOnSecond, ResetOnSecond, AllStatesGuess, Buchi };

// Monitor state: either the absorbing fail-safe state, or a non-empty
// set of spec states (within the winning region) the design might be
// in, plus the remaining recovery budget.
struct MonitorState {
  bool fail_safe = false;
  std::uint64_t subset = 0;  // bit i = spec state i
  int counter = 0;

  bool operator==(const MonitorState&) const = default;
  auto operator<=>(const MonitorState&) const = default;
};

struct StepOutcome {
  MonitorState next;
  bool violation = false;
};

// Winning region of the specification read as a safety game (inputs
// against outputs).
std::vector<bool> winning_region_of_spec(const SafetyAutomaton& aut);

// One transition of the violation monitor.  `letter` is a full letter
// over the spec signature; `recovery_flag` is only read in Buchi mode.
// Shared by the explicit monitor builder and the trace evaluator.
StepOutcome violation_monitor_step(const SafetyAutomaton& spec,
                                   const std::vector<bool>& winning,
                                   MonitorMode mode, int k,
                                   const MonitorState& state, Letter letter,
                                   bool recovery_flag = false);

// Explicit-state violation monitor, reachable part only.
struct ViolationMonitor {
  SafetyAutomaton spec;        // the property product it tracks
  std::vector<bool> winning;   // winning region of `spec`
  MonitorMode mode = MonitorMode::FailSafeOnSecond;
  int k = 1;

  std::vector<MonitorState> states;
  std::vector<std::string> state_names;
  StateId init = 0;
  // delta[state][letter * flag_count + flag]
  std::vector<std::vector<StateId>> delta;
  std::vector<std::vector<bool>> violation;  // parallel to delta
  std::optional<StateId> fail_safe_state;

  std::uint32_t flag_count() const { return mode == MonitorMode::Buchi ? 2u : 1u; }
  std::size_t state_count() const { return states.size(); }
  StateId next(StateId s, Letter letter, bool flag = false) const {
    return delta[s][letter * flag_count() + (flag ? 1 : 0)];
  }
};

// Builds the monitor for a complete spec product with at most 64
// states.  Throws Error if the spec itself is unrealizable (initial
// state outside the winning region).  `k` is the recovery budget for
// the counter modes and is ignored in Buchi mode, where it is fixed
// at 2.
ViolationMonitor build_violation_monitor(const SafetyAutomaton& spec, MonitorMode mode,
                                         int k);

// Tracks whether the environment has ever left the winning region of
// the validity properties: state (b, v) with sticky bit b; states with
// b set are the unsafe ones.
struct ValidityMonitor {
  SafetyAutomaton spec;       // the validity product it tracks
  std::vector<bool> winning;  // winning region of `spec`

  std::vector<std::string> state_names;
  StateId init = 0;
  std::vector<bool> bit;        // b per monitor state
  std::vector<StateId> vstate;  // underlying spec state per monitor state
  std::vector<std::vector<StateId>> delta;  // [state][letter]

  std::size_t state_count() const { return state_names.size(); }
  bool safe(StateId s) const { return !bit[s]; }
};

ValidityMonitor build_validity_monitor(const SafetyAutomaton& valid_product);

// Two-state monitor remembering whether the corrected output differed
// from the design's in the previous step (state 1) or not (state 0).
struct DeviationMonitor {
  int output_bits = 0;
  static constexpr StateId same = 0;      // t0
  static constexpr StateId differed = 1;  // t1

  StateId next(Letter design_out, Letter shield_out) const {
    return design_out == shield_out ? same : differed;
  }
};

DeviationMonitor build_deviation_monitor(int output_bits);

}  // namespace shieldkit
