#include "shieldkit/shield.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>

#include "shieldkit/error.hpp"

namespace shieldkit {

std::size_t shield_game_bound(std::size_t spec_states, std::size_t validity_spec_states,
                              int k, bool buchi) {
  const std::size_t cap = SIZE_MAX;
  auto mul = [cap](std::size_t a, std::size_t b) -> std::size_t {
    if (a != 0 && b > cap / a) return cap;
    return a * b;
  };
  // counter values * subsets, plus the fail-safe state
  std::size_t counters = buchi ? 3 : static_cast<std::size_t>(k) + 1;
  std::size_t subsets =
      spec_states >= 64 ? cap : (std::size_t{1} << spec_states);
  std::size_t monitor = mul(counters, subsets);
  if (monitor != cap) monitor += 1;
  std::size_t validity = mul(2, validity_spec_states);
  std::size_t q = mul(spec_states, validity_spec_states);
  std::size_t total = mul(mul(mul(monitor, validity), 2), q);
  if (buchi) total = mul(total, 4);
  return total;
}

ShieldGame build_shield_game(const ViolationMonitor& U, const DeviationMonitor& T,
                             const ValidityMonitor& Vp, const SafetyAutomaton& Q,
                             bool use_validity) {
  const SignalSignature& sig = U.spec.sig;
  if (Vp.spec.sig != sig || Q.sig != sig)
    throw Error("shield game components must share one signature");
  if (T.output_bits != sig.output_bits())
    throw Error("deviation monitor output count does not match the signature");
  for (const auto& row : Q.delta)
    for (StateId t : row)
      if (t == kNoState) throw Error("shield game needs a complete property product");

  ShieldGame game;
  game.sig = sig;
  game.buchi = U.mode == MonitorMode::Buchi;

  GameArena& arena = game.arena;
  arena.condition =
      game.buchi ? GameArena::Condition::Buchi : GameArena::Condition::Safety;
  arena.env_count = sig.letter_count();
  arena.sys_count = sig.output_count() << (game.buchi ? 1 : 0);

  // Mixed-radix packing of (u, t, v, q, m, n) for interning.
  const std::uint64_t dim_u = U.state_count(), dim_v = Vp.state_count(),
                      dim_q = Q.state_count();
  {
    std::uint64_t limit = std::uint64_t{1} << 62;
    std::uint64_t keys = dim_u;
    for (std::uint64_t dim : {std::uint64_t{2}, dim_v, dim_q, std::uint64_t{4}}) {
      if (keys > limit / dim)
        throw Error("shield game would be too large to materialize");
      keys *= dim;
    }
  }
  auto pack = [&](const GameStateInfo& s) {
    return ((((std::uint64_t{s.u} * 2 + s.t) * dim_v + s.v) * dim_q + s.q) * 2 +
            (s.m ? 1 : 0)) * 2 + (s.n ? 1 : 0);
  };

  std::map<std::uint64_t, StateId> index;
  std::deque<GameStateInfo> queue;
  auto intern = [&](const GameStateInfo& s) -> StateId {
    auto it = index.find(pack(s));
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(arena.state_count());
    index.emplace(pack(s), id);
    std::string name = U.state_names[s.u] + (s.t ? " t1 " : " t0 ") +
                       Vp.state_names[s.v] + " " + Q.state_names[s.q];
    if (game.buchi)
      name += std::string(" m") + (s.m ? "1" : "0") + " n" + (s.n ? "1" : "0");
    arena.state_names.push_back(std::move(name));

    const MonitorState& u = U.states[s.u];
    bool v_unsafe = use_validity && !Vp.safe(s.v);
    bool ok;
    if (game.buchi) {
      bool d_ok = u.fail_safe || u.counter <= 1;
      ok = v_unsafe || (!s.m && !s.n && d_ok);
    } else {
      bool dev_ok = !( !u.fail_safe && u.counter == 0 ) || s.t == 0;
      ok = v_unsafe || (Q.safe[s.q] && dev_ok);
    }
    arena.target.push_back(ok);

    game.info.push_back(s);
    queue.push_back(s);
    return id;
  };

  GameStateInfo init;
  init.u = U.init;
  init.t = DeviationMonitor::same;
  init.v = Vp.init;
  init.q = Q.init;
  arena.init = intern(init);

  // Queue order equals state-id order, so appending each finished row
  // keeps arena.delta indexed by state id.
  while (!queue.empty()) {
    GameStateInfo s = queue.front();
    queue.pop_front();
    const MonitorState& u = U.states[s.u];
    std::vector<StateId> row;
    row.reserve(arena.env_count * arena.sys_count);
    for (Letter e = 0; e < arena.env_count; ++e) {
      Letter design_out = output_part(e, sig);
      Letter in = input_part(e, sig);
      for (Letter y = 0; y < arena.sys_count; ++y) {
        Letter shield_out = game.buchi ? y >> 1 : y;
        bool flag = game.buchi && (y & 1);
        GameStateInfo next;
        next.u = U.next(s.u, e, flag);
        next.t = T.next(design_out, shield_out);
        next.v = Vp.delta[s.v][e];
        next.q = Q.next(s.q, join_parts(in, shield_out, sig));
        if (game.buchi) {
          next.m = s.m || !Q.safe[s.q];
          next.n = s.n || (!u.fail_safe && u.counter == 0 && s.t == 1);
        }
        row.push_back(intern(next));
      }
    }
    arena.delta.insert(arena.delta.end(), row.begin(), row.end());
  }
  return game;
}

MealyMachine strategy_to_mealy(const ShieldGame& game, const SolveResult& solved,
                               const DeterminizedStrategy& strategy) {
  const GameArena& arena = game.arena;
  if (!solved.winning[arena.init])
    throw std::logic_error("cannot extract a shield from a lost game");

  MealyMachine m;
  m.sig.inputs = game.sig.inputs;
  m.sig.inputs.insert(m.sig.inputs.end(), game.sig.outputs.begin(),
                      game.sig.outputs.end());
  for (const auto& name : game.sig.outputs) m.sig.outputs.push_back(name + "'");
  check_signature(m.sig);

  std::vector<StateId> id(arena.state_count(), kNoState);
  std::vector<StateId> order;
  id[arena.init] = 0;
  order.push_back(arena.init);
  m.init = 0;
  for (std::size_t next = 0; next < order.size(); ++next) {
    StateId g = order[next];
    if (!solved.winning[g])
      throw std::logic_error("strategy reached a losing game state");
    m.state_names.push_back("g" + std::to_string(next));
    m.state_labels.push_back(arena.state_names[g]);
    auto& drow = m.delta.emplace_back();
    auto& lrow = m.lambda.emplace_back();
    drow.reserve(arena.env_count);
    lrow.reserve(arena.env_count);
    for (Letter e = 0; e < arena.env_count; ++e) {
      Letter y = strategy.choice[static_cast<std::size_t>(g) * arena.env_count + e];
      StateId t = arena.next(g, e, y);
      if (id[t] == kNoState) {
        id[t] = static_cast<StateId>(order.size());
        order.push_back(t);
      }
      drow.push_back(id[t]);
      lrow.push_back(game.buchi ? y >> 1 : y);
    }
  }
  check_machine(m);
  return m;
}

namespace {

SynthesisResult finish(SynthesisResult r,
                       std::chrono::steady_clock::time_point start) {
  r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return r;
}

}  // namespace

SynthesisResult synthesize(const std::vector<SafetyAutomaton>& phi,
                           const std::vector<std::size_t>& valid_indices,
                           const SynthesisConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  if (phi.empty()) throw Error("no properties given");
  if (cfg.k_max < 1) throw Error("k_max must be at least 1");

  std::vector<bool> is_valid(phi.size(), false);
  for (std::size_t i : valid_indices) {
    if (i >= phi.size() || is_valid[i])
      throw Error("validity properties must form a sublist of the properties");
    is_valid[i] = true;
  }

  const SignalSignature& sig = phi.front().sig;
  std::vector<SafetyAutomaton> tracked_parts, valid_parts;
  for (std::size_t i = 0; i < phi.size(); ++i)
    (is_valid[i] ? valid_parts : tracked_parts).push_back(phi[i]);

  SafetyAutomaton R =
      tracked_parts.empty() ? trivial_automaton(sig) : product(tracked_parts);
  SafetyAutomaton V =
      valid_parts.empty() ? trivial_automaton(sig) : product(valid_parts);
  SafetyAutomaton Q = product(phi);

  SynthesisResult result;
  result.stats.spec_states = R.state_count();

  std::vector<bool> winning = winning_region_of_spec(R);
  for (bool w : winning)
    if (w) ++result.stats.winning_states;
  if (!winning[R.init]) {
    result.outcome = SynthesisResult::Outcome::Unrealizable;
    result.reason = SynthesisResult::Reason::SpecUnrealizable;
    return finish(std::move(result), start);
  }

  ValidityMonitor Vp =
      build_validity_monitor(cfg.use_validity ? V : trivial_automaton(sig));
  result.stats.validity_states = Vp.state_count();
  DeviationMonitor T = build_deviation_monitor(sig.output_bits());

  const bool buchi = cfg.engine == Engine::BuchiStabilizing;
  const MonitorMode mode = buchi ? MonitorMode::Buchi : cfg.mode;

  auto attempt = [&](int k) -> std::optional<MealyMachine> {
    ViolationMonitor U = build_violation_monitor(R, mode, k);
    ShieldGame game = build_shield_game(U, T, Vp, Q, cfg.use_validity);

    ++result.stats.attempts;
    result.stats.monitor_states = U.state_count();
    result.stats.game_states = game.arena.state_count();
    result.stats.game_bound =
        shield_game_bound(R.state_count(), V.state_count(), k, buchi);
    if (game.arena.state_count() > result.stats.game_bound)
      throw std::logic_error("shield game exceeded its size bound");

    SolveResult solved =
        buchi ? solve_buchi(game.arena) : solve_safety(game.arena);
    result.stats.solver_iterations = solved.iterations;
    result.stats.inner_iterations = solved.inner_iterations;
    if (!solved.winning[game.arena.init]) return std::nullopt;

    // Minimum interference: prefer the design's own output.  The
    // Büchi shield additionally prefers raising the recovery flag.
    PreferFn prefer;
    if (buchi) {
      const GameArena* arena = &game.arena;
      const StrategyRelation* rel = &solved.strategy;
      prefer = [arena, rel, sig](StateId s, Letter e) -> std::optional<Letter> {
        Letter with_flag = (output_part(e, sig) << 1) | 1;
        if (rel->is_allowed(*arena, s, e, with_flag)) return with_flag;
        return output_part(e, sig) << 1;
      };
    } else {
      SignalSignature s = sig;
      prefer = [s](StateId, Letter e) -> std::optional<Letter> {
        return output_part(e, s);
      };
    }
    DeterminizedStrategy det = determinize(game.arena, solved, prefer);
    MealyMachine machine = strategy_to_mealy(game, solved, det);
    if (buchi) result.k = solved.inner_iterations;
    return machine;
  };

  if (buchi) {
    auto machine = attempt(2);
    if (machine) {
      result.outcome = SynthesisResult::Outcome::Realizable;
      result.shield = std::move(*machine);
    } else {
      result.reason = SynthesisResult::Reason::BuchiLost;
    }
    return finish(std::move(result), start);
  }

  for (int k = 1; k <= cfg.k_max; ++k) {
    auto machine = attempt(k);
    if (machine) {
      result.outcome = SynthesisResult::Outcome::Realizable;
      result.shield = std::move(*machine);
      result.k = k;
      return finish(std::move(result), start);
    }
  }
  result.reason = SynthesisResult::Reason::KExhausted;
  result.k = cfg.k_max;
  return finish(std::move(result), start);
}

}  // namespace shieldkit
