#include "shieldkit/game.hpp"

#include <algorithm>

#include "shieldkit/error.hpp"

namespace shieldkit {

void check_arena(const GameArena& arena) {
  if (arena.state_count() == 0) throw Error("arena has no states");
  if (arena.env_count == 0 || arena.sys_count == 0)
    throw Error("arena alphabets must be non-empty");
  if (arena.init >= arena.state_count()) throw Error("arena initial state out of range");
  std::size_t expected =
      arena.state_count() * arena.env_count * arena.sys_count;
  if (arena.delta.size() != expected || arena.target.size() != arena.state_count())
    throw Error("arena tables do not match its dimensions");
  for (StateId t : arena.delta)
    if (t >= arena.state_count()) throw Error("arena transition target out of range");
}

std::vector<Letter> StrategyRelation::allowed_letters(const GameArena& a, StateId s,
                                                      Letter env) const {
  std::vector<Letter> out;
  for (Letter y = 0; y < a.sys_count; ++y)
    if (allowed[a.move_index(s, env, y)]) out.push_back(y);
  return out;
}

namespace {

// States from which the system can force reaching `base` (which is its
// own rank-0 layer): rank[s] = attractor iteration that added s.
// Returns the attractor set; `depth` receives the largest rank.
std::vector<bool> attractor(const GameArena& a, const std::vector<bool>& base,
                            std::vector<int>& rank, int& depth) {
  std::vector<bool> attr = base;
  rank.assign(a.state_count(), -1);
  for (StateId s = 0; s < a.state_count(); ++s)
    if (base[s]) rank[s] = 0;
  depth = 0;
  // Rounds are synchronous: additions of one round only see the
  // previous round, so ranks are exact distances.
  std::vector<StateId> added(1);
  while (!added.empty()) {
    added.clear();
    for (StateId s = 0; s < a.state_count(); ++s) {
      if (attr[s]) continue;
      bool all_env = true;
      for (Letter e = 0; e < a.env_count && all_env; ++e) {
        bool some_sys = false;
        for (Letter y = 0; y < a.sys_count && !some_sys; ++y)
          some_sys = attr[a.next(s, e, y)];
        all_env = some_sys;
      }
      if (all_env) added.push_back(s);
    }
    if (!added.empty()) {
      ++depth;
      for (StateId s : added) {
        attr[s] = true;
        rank[s] = depth;
      }
    }
  }
  return attr;
}

}  // namespace

SolveResult solve_safety(const GameArena& arena) {
  check_arena(arena);
  SolveResult r;
  r.winning = arena.target;
  bool changed = true;
  while (changed) {
    changed = false;
    ++r.iterations;
    for (StateId s = 0; s < arena.state_count(); ++s) {
      if (!r.winning[s]) continue;
      bool controllable = true;
      for (Letter e = 0; e < arena.env_count && controllable; ++e) {
        bool some_sys = false;
        for (Letter y = 0; y < arena.sys_count && !some_sys; ++y)
          some_sys = r.winning[arena.next(s, e, y)];
        controllable = some_sys;
      }
      if (!controllable) {
        r.winning[s] = false;
        changed = true;
      }
    }
  }

  r.strategy.allowed.assign(arena.delta.size(), false);
  for (StateId s = 0; s < arena.state_count(); ++s) {
    if (!r.winning[s]) continue;
    for (Letter e = 0; e < arena.env_count; ++e)
      for (Letter y = 0; y < arena.sys_count; ++y)
        if (r.winning[arena.next(s, e, y)])
          r.strategy.allowed[arena.move_index(s, e, y)] = true;
  }
  return r;
}

SolveResult solve_buchi(const GameArena& arena) {
  check_arena(arena);
  SolveResult r;
  std::vector<bool> region(arena.state_count(), true);
  std::vector<int> rank;
  int depth = 0;
  bool shrunk = true;
  while (shrunk) {
    ++r.iterations;
    // Target states from which the system can re-enter the region.
    std::vector<bool> base(arena.state_count(), false);
    for (StateId s = 0; s < arena.state_count(); ++s) {
      if (!arena.target[s]) continue;
      bool controllable = true;
      for (Letter e = 0; e < arena.env_count && controllable; ++e) {
        bool some_sys = false;
        for (Letter y = 0; y < arena.sys_count && !some_sys; ++y)
          some_sys = region[arena.next(s, e, y)];
        controllable = some_sys;
      }
      base[s] = controllable;
    }
    std::vector<bool> next = attractor(arena, base, rank, depth);
    shrunk = next != region;
    region = std::move(next);
  }

  r.winning = region;
  r.rank = rank;
  r.inner_iterations = 0;
  for (StateId s = 0; s < arena.state_count(); ++s)
    if (r.winning[s]) r.inner_iterations = std::max(r.inner_iterations, rank[s]);

  r.strategy.allowed.assign(arena.delta.size(), false);
  for (StateId s = 0; s < arena.state_count(); ++s) {
    if (!r.winning[s]) continue;
    for (Letter e = 0; e < arena.env_count; ++e) {
      for (Letter y = 0; y < arena.sys_count; ++y) {
        StateId t = arena.next(s, e, y);
        if (!r.winning[t]) continue;
        // On the target the play may go anywhere inside the region;
        // elsewhere it must make progress towards the target.
        if (rank[s] == 0 || rank[t] < rank[s])
          r.strategy.allowed[arena.move_index(s, e, y)] = true;
      }
    }
  }
  return r;
}

DeterminizedStrategy determinize(const GameArena& arena, const SolveResult& solved,
                                 const PreferFn& prefer) {
  DeterminizedStrategy d;
  d.choice.assign(arena.state_count() * arena.env_count, 0);
  for (StateId s = 0; s < arena.state_count(); ++s) {
    if (!solved.winning[s]) continue;
    for (Letter e = 0; e < arena.env_count; ++e) {
      std::optional<Letter> pick;
      if (prefer) {
        if (auto p = prefer(s, e);
            p && *p < arena.sys_count && solved.strategy.is_allowed(arena, s, e, *p))
          pick = *p;
      }
      if (!pick) {
        for (Letter y = 0; y < arena.sys_count; ++y) {
          if (solved.strategy.is_allowed(arena, s, e, y)) {
            pick = y;
            break;
          }
        }
      }
      if (!pick)
        throw std::logic_error("winning state has no allowed reply for some env letter");
      d.choice[static_cast<std::size_t>(s) * arena.env_count + e] = *pick;
    }
  }
  return d;
}

GameArena spec_as_game(const SafetyAutomaton& aut) {
  GameArena g;
  g.condition = GameArena::Condition::Safety;
  g.state_names = aut.state_names;
  g.init = aut.init;
  g.env_count = aut.sig.input_count();
  g.sys_count = aut.sig.output_count();
  g.delta.reserve(aut.state_count() * g.env_count * g.sys_count);
  for (StateId s = 0; s < aut.state_count(); ++s) {
    for (Letter i = 0; i < g.env_count; ++i) {
      for (Letter o = 0; o < g.sys_count; ++o) {
        StateId t = aut.delta[s][join_parts(i, o, aut.sig)];
        if (t == kNoState) throw Error("spec automaton must be complete");
        g.delta.push_back(t);
      }
    }
  }
  g.target = aut.safe;
  return g;
}

}  // namespace shieldkit
