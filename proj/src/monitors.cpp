#include "shieldkit/monitors.hpp"

#include <deque>
#include <map>

#include "shieldkit/error.hpp"
#include "shieldkit/game.hpp"

namespace shieldkit {

std::vector<bool> winning_region_of_spec(const SafetyAutomaton& aut) {
  return solve_safety(spec_as_game(aut)).winning;
}

StepOutcome violation_monitor_step(const SafetyAutomaton& spec,
                                   const std::vector<bool>& winning,
                                   MonitorMode mode, int k,
                                   const MonitorState& state, Letter letter,
                                   bool recovery_flag) {
  if (state.fail_safe) return {state, false};

  const bool buchi = mode == MonitorMode::Buchi;
  const int budget = buchi ? 2 : k;

  // Successors the design may be in, pruned to the winning region.
  std::uint64_t tracked = 0;
  for (StateId r = 0; r < spec.state_count(); ++r) {
    if (!(state.subset >> r & 1)) continue;
    StateId t = spec.next(r, letter);
    if (winning[t]) tracked |= std::uint64_t{1} << t;
  }

  if (tracked != 0) {
    // No violation; the budget runs down.  In Buchi mode it only
    // leaves 2 when the shield raises its recovery flag.
    int c = state.counter;
    if (buchi && c == 2)
      c = recovery_flag ? 1 : 2;
    else if (c > 0)
      c = c - 1;
    return {MonitorState{false, tracked, c}, false};
  }

  // Violation.  A second one during an active recovery is fatal unless
  // the mode restarts the budget instead.
  bool second = buchi ? state.counter == 2 : state.counter > 1;
  if (second && mode != MonitorMode::ResetOnSecond)
    return {MonitorState{true, 0, 0}, true};

  std::uint64_t guess = 0;
  if (mode == MonitorMode::AllStatesGuess) {
    for (StateId r = 0; r < spec.state_count(); ++r)
      if (winning[r]) guess |= std::uint64_t{1} << r;
  } else {
    // States the design may have meant: some tracked state, the same
    // inputs, any output.
    Letter in = input_part(letter, spec.sig);
    for (StateId r = 0; r < spec.state_count(); ++r) {
      if (!(state.subset >> r & 1)) continue;
      for (Letter o = 0; o < spec.sig.output_count(); ++o) {
        StateId t = spec.next(r, join_parts(in, o, spec.sig));
        if (winning[t]) guess |= std::uint64_t{1} << t;
      }
    }
  }
  if (guess == 0)
    throw std::logic_error("violation monitor guessed an empty state set");
  return {MonitorState{false, guess, budget}, true};
}

namespace {

std::string subset_name(const SafetyAutomaton& spec, std::uint64_t subset) {
  std::string name = "{";
  bool first = true;
  for (StateId r = 0; r < spec.state_count(); ++r) {
    if (!(subset >> r & 1)) continue;
    if (!first) name += ',';
    name += spec.state_names[r];
    first = false;
  }
  name += '}';
  return name;
}

}  // namespace

ViolationMonitor build_violation_monitor(const SafetyAutomaton& spec, MonitorMode mode,
                                         int k) {
  if (spec.state_count() > 64)
    throw Error("violation monitor supports at most 64 spec states, got " +
                std::to_string(spec.state_count()));
  if (k < 1) throw Error("recovery budget k must be at least 1");
  for (const auto& row : spec.delta)
    for (StateId t : row)
      if (t == kNoState) throw Error("violation monitor needs a complete spec");

  ViolationMonitor m;
  m.spec = spec;
  m.winning = winning_region_of_spec(spec);
  m.mode = mode;
  m.k = mode == MonitorMode::Buchi ? 2 : k;
  if (!m.winning[spec.init])
    throw Error("specification is unrealizable: its initial state is losing");

  const char counter_letter = mode == MonitorMode::Buchi ? 'd' : 'c';
  std::map<MonitorState, StateId> index;
  std::deque<MonitorState> queue;
  auto intern = [&](const MonitorState& s) -> StateId {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(m.state_count());
    index.emplace(s, id);
    m.states.push_back(s);
    if (s.fail_safe) {
      m.state_names.emplace_back("u_E");
      m.fail_safe_state = id;
    } else {
      m.state_names.push_back(subset_name(spec, s.subset) + " " + counter_letter +
                              "=" + std::to_string(s.counter));
    }
    m.delta.emplace_back();
    m.violation.emplace_back();
    queue.push_back(s);
    return id;
  };

  m.init = intern(MonitorState{false, std::uint64_t{1} << spec.init, 0});
  const Letter letters = spec.sig.letter_count();
  const std::uint32_t flags = m.flag_count();
  while (!queue.empty()) {
    MonitorState s = queue.front();
    queue.pop_front();
    StateId id = index.at(s);
    m.delta[id].resize(letters * flags);
    m.violation[id].resize(letters * flags);
    for (Letter l = 0; l < letters; ++l) {
      for (std::uint32_t f = 0; f < flags; ++f) {
        StepOutcome out = violation_monitor_step(spec, m.winning, mode, m.k, s, l, f != 0);
        m.delta[id][l * flags + f] = intern(out.next);
        m.violation[id][l * flags + f] = out.violation;
      }
    }
  }
  return m;
}

ValidityMonitor build_validity_monitor(const SafetyAutomaton& valid_product) {
  for (const auto& row : valid_product.delta)
    for (StateId t : row)
      if (t == kNoState) throw Error("validity monitor needs a complete spec");

  ValidityMonitor m;
  m.spec = valid_product;
  m.winning = winning_region_of_spec(valid_product);

  std::map<std::pair<bool, StateId>, StateId> index;
  std::deque<std::pair<bool, StateId>> queue;
  auto intern = [&](bool b, StateId v) -> StateId {
    auto it = index.find({b, v});
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(m.state_count());
    index.emplace(std::pair{b, v}, id);
    m.state_names.push_back((b ? "b1:" : "b0:") + valid_product.state_names[v]);
    m.bit.push_back(b);
    m.vstate.push_back(v);
    m.delta.emplace_back();
    queue.emplace_back(b, v);
    return id;
  };

  m.init = intern(false, valid_product.init);
  const Letter letters = valid_product.sig.letter_count();
  while (!queue.empty()) {
    auto [b, v] = queue.front();
    queue.pop_front();
    StateId id = index.at({b, v});
    m.delta[id].resize(letters);
    for (Letter l = 0; l < letters; ++l) {
      StateId v2 = valid_product.next(v, l);
      bool b2 = b || !m.winning[v2];  // sticky once the region is left
      m.delta[id][l] = intern(b2, v2);
    }
  }
  return m;
}

DeviationMonitor build_deviation_monitor(int output_bits) {
  if (output_bits < 0) throw Error("negative output count");
  return DeviationMonitor{output_bits};
}

}  // namespace shieldkit
