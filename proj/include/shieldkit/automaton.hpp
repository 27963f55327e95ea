#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shieldkit/signals.hpp"

namespace shieldkit {

// Name reserved for the absorbing unsafe state added by complete().
inline constexpr const char* kTrapName = "__trap";

// Deterministic safety automaton over full letters (inputs ++ outputs).
// delta[state][letter] is the successor, or kNoState while the
// automaton is still partial.  A word is accepted while it only visits
// safe states.
struct SafetyAutomaton {
  SignalSignature sig;
  std::vector<std::string> state_names;
  StateId init = 0;
  std::vector<std::vector<StateId>> delta;
  std::vector<bool> safe;
  // The designated absorbing unsafe state, if one was introduced.
  std::optional<StateId> trap;

  std::size_t state_count() const { return state_names.size(); }
  StateId next(StateId s, Letter l) const { return delta[s][l]; }
};

// One-state, all-safe, complete automaton: accepts everything.
SafetyAutomaton trivial_automaton(const SignalSignature& sig);

// Routes every missing transition to the designated trap, creating an
// absorbing unsafe state if the automaton has none.  Idempotent.
SafetyAutomaton complete(const SafetyAutomaton& aut);

// Synchronous product of one or more complete automata sharing one
// signature.  A product state is safe iff all components are safe.
// Only states reachable from the joint initial state are kept.
SafetyAutomaton product(const std::vector<SafetyAutomaton>& auts);

struct Diagnostics {
  bool is_complete = false;
  // A witness for incompleteness, if any.
  std::optional<std::pair<StateId, Letter>> missing;
  std::size_t n_states = 0;
  std::size_t n_edges = 0;  // defined transitions
  std::size_t n_reachable = 0;
  bool unsafe_reachable = false;
  std::string summary;  // one-line human-readable digest
};

// Structural report: completeness (with witness), state/edge counts,
// reachability of unsafe states.  Determinism is guaranteed by the
// representation and reported as such.
Diagnostics validate(const SafetyAutomaton& aut, const std::string& label = "");

// True iff both automata are complete, share a signature, and their
// reachable parts are equal up to state renaming.  Deterministic
// complete automata have a canonical breadth-first numbering, so this
// is exact, not a heuristic.
bool isomorphic(const SafetyAutomaton& a, const SafetyAutomaton& b);

}  // namespace shieldkit
