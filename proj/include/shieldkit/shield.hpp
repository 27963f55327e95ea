#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"
#include "shieldkit/game.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/monitors.hpp"

namespace shieldkit {

enum class Engine { KSafety, BuchiStabilizing };

struct SynthesisConfig {
  int k_max = 10;
  MonitorMode mode = MonitorMode::FailSafeOnSecond;
  Engine engine = Engine::KSafety;
  bool use_validity = true;
};

// Annotation for one shield-game state.
struct GameStateInfo {
  StateId u = 0;  // violation monitor state
  StateId t = 0;  // deviation monitor state (0 = outputs agreed)
  StateId v = 0;  // validity monitor state
  StateId q = 0;  // property product state
  bool m = false; // ever visited an unsafe property state (Büchi)
  bool n = false; // ever deviated with an exhausted counter (Büchi)
};

// Product game of the monitors and the property automaton.  Env
// letters are full letters (inputs ++ outputs); sys letters are output
// letters, shifted left one bit to carry the recovery flag in Büchi
// mode (flag = bit 0).
struct ShieldGame {
  GameArena arena;
  std::vector<GameStateInfo> info;
  SignalSignature sig;
  bool buchi = false;
};

// Builds the game for the given monitors; the violation monitor's mode
// decides between the safety and the Büchi construction.  When
// `use_validity` is false the validity disjunct is dropped from the
// objective (the monitor is still tracked, so state spaces stay
// comparable across runs).
ShieldGame build_shield_game(const ViolationMonitor& U, const DeviationMonitor& T,
                             const ValidityMonitor& Vp, const SafetyAutomaton& Q,
                             bool use_validity = true);

struct SynthesisStats {
  std::size_t spec_states = 0;       // |R|, the tracked property product
  std::size_t winning_states = 0;    // |W^r|
  std::size_t monitor_states = 0;    // |U| of the last attempt
  std::size_t validity_states = 0;   // |V'|
  std::size_t game_states = 0;       // |G| of the last attempt
  std::size_t game_bound = 0;        // worst-case |G| (saturating)
  int attempts = 0;                  // k values tried
  int solver_iterations = 0;         // fixpoint rounds of the last solve
  int inner_iterations = 0;          // Büchi attractor depth
  double wall_ms = 0;
};

struct SynthesisResult {
  enum class Outcome { Realizable, Unrealizable };
  enum class Reason { None, KExhausted, BuchiLost, SpecUnrealizable };

  Outcome outcome = Outcome::Unrealizable;
  Reason reason = Reason::None;
  std::optional<MealyMachine> shield;  // present iff Realizable
  int k = 0;  // achieved bound, or largest k tried
  SynthesisStats stats;

  bool realizable() const { return outcome == Outcome::Realizable; }
};

// Runs the full pipeline: split phi into tracked and validity parts
// (valid_indices selects the latter), build monitors, assemble the
// game, and search.  The KSafety engine tries k = 1..k_max and keeps
// the first win; the Büchi engine solves once and reports the measured
// recovery bound.  The monitor mode only applies to the KSafety
// engine.  Deterministic: identical inputs yield identical machines.
SynthesisResult synthesize(const std::vector<SafetyAutomaton>& phi,
                           const std::vector<std::size_t>& valid_indices,
                           const SynthesisConfig& cfg);

// Extracts the Mealy machine induced by a determinized strategy: the
// winning states reachable from the initial state under the chosen
// replies.  Inputs are the spec's signals; outputs are the spec's
// output signals, primed.  Throws std::logic_error if the initial
// state lost or play could leave the winning region.
MealyMachine strategy_to_mealy(const ShieldGame& game, const SolveResult& solved,
                               const DeterminizedStrategy& strategy);

// Worst-case reachable size of the shield game, saturating at
// SIZE_MAX: ((k+1)·2^|R| + 1) · (2·|V|) · 2 · (|R|·|V|), with the k
// factor replaced by 3 and an extra factor 4 (bits m, n) for the
// Büchi construction.
std::size_t shield_game_bound(std::size_t spec_states, std::size_t validity_spec_states,
                              int k, bool buchi);

}  // namespace shieldkit
