#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"
#include "shieldkit/signals.hpp"

namespace shieldkit {

// Two-player turn game in which the environment picks an env letter,
// the system replies with a sys letter, and the play moves on.  The
// system wins a Safety arena by staying inside `target` forever, and a
// Buchi arena by visiting `target` infinitely often.
struct GameArena {
  enum class Condition { Safety, Buchi };

  Condition condition = Condition::Safety;
  std::vector<std::string> state_names;
  StateId init = 0;
  std::uint32_t env_count = 1;
  std::uint32_t sys_count = 1;
  std::vector<StateId> delta;  // [(state * env_count + env) * sys_count + sys]
  std::vector<bool> target;

  std::size_t state_count() const { return state_names.size(); }
  std::size_t move_index(StateId s, Letter env, Letter sys) const {
    return (static_cast<std::size_t>(s) * env_count + env) * sys_count + sys;
  }
  StateId next(StateId s, Letter env, Letter sys) const {
    return delta[move_index(s, env, sys)];
  }
};

void check_arena(const GameArena& arena);

// Permissive winning strategy: the set of system replies that keep the
// play winning, per (state, env letter).  Meaningful only on winning
// states, where every env letter has at least one allowed reply.
struct StrategyRelation {
  std::vector<bool> allowed;  // parallel to GameArena::delta

  bool is_allowed(const GameArena& a, StateId s, Letter env, Letter sys) const {
    return allowed[a.move_index(s, env, sys)];
  }
  std::vector<Letter> allowed_letters(const GameArena& a, StateId s, Letter env) const;
};

struct SolveResult {
  std::vector<bool> winning;
  StrategyRelation strategy;
  // Fixpoint rounds until convergence.
  int iterations = 0;
  // Buchi only: depth of the final attractor computation, i.e. the
  // largest number of steps the strategy may need between visits to
  // the target set.
  int inner_iterations = 0;
  // Buchi only: attractor rank per state (0 on the target, undefined
  // outside the winning region).
  std::vector<int> rank;
};

// Greatest fixpoint of "stay in target and keep a reply into the
// region".  The strategy allows exactly the region-preserving replies.
SolveResult solve_safety(const GameArena& arena);

// Standard doubly-nested fixpoint for recurrence.  The strategy allows
// replies that strictly decrease the attractor rank, and any
// region-preserving reply on rank-0 (target) states.
SolveResult solve_buchi(const GameArena& arena);

// One concrete reply per (winning state, env letter): prefer(s, env)
// when that reply is allowed, otherwise the least allowed letter.
using PreferFn = std::function<std::optional<Letter>(StateId, Letter)>;

struct DeterminizedStrategy {
  std::vector<Letter> choice;  // [state * env_count + env]; valid on winning states
};

DeterminizedStrategy determinize(const GameArena& arena, const SolveResult& solved,
                                 const PreferFn& prefer);

// Reads a complete safety automaton as a game: the environment picks
// the input part of each letter, the system the output part.
GameArena spec_as_game(const SafetyAutomaton& aut);

}  // namespace shieldkit
