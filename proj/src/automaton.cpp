#include "shieldkit/automaton.hpp"

#include <deque>
#include <map>

#include "shieldkit/error.hpp"

namespace shieldkit {

SafetyAutomaton trivial_automaton(const SignalSignature& sig) {
  check_signature(sig);
  SafetyAutomaton aut;
  aut.sig = sig;
  aut.state_names = {"ok"};
  aut.init = 0;
  aut.delta = {std::vector<StateId>(sig.letter_count(), 0)};
  aut.safe = {true};
  return aut;
}

SafetyAutomaton complete(const SafetyAutomaton& aut) {
  bool missing = false;
  for (const auto& row : aut.delta) {
    for (StateId t : row) {
      if (t == kNoState) {
        missing = true;
        break;
      }
    }
    if (missing) break;
  }
  if (!missing) return aut;

  SafetyAutomaton out = aut;
  StateId trap;
  if (out.trap) {
    trap = *out.trap;
  } else {
    trap = static_cast<StateId>(out.state_count());
    out.state_names.push_back(kTrapName);
    out.safe.push_back(false);
    out.delta.emplace_back(out.sig.letter_count(), trap);
    out.trap = trap;
  }
  for (auto& row : out.delta)
    for (StateId& t : row)
      if (t == kNoState) t = trap;
  return out;
}

SafetyAutomaton product(const std::vector<SafetyAutomaton>& auts) {
  if (auts.empty()) throw Error("product of zero automata");
  const SignalSignature& sig = auts.front().sig;
  for (const auto& a : auts) {
    if (a.sig != sig)
      throw Error("product requires all automata to share one signature");
    for (const auto& row : a.delta)
      for (StateId t : row)
        if (t == kNoState)
          throw Error("product requires complete automata");
  }

  Letter letters = sig.letter_count();
  SafetyAutomaton out;
  out.sig = sig;

  std::map<std::vector<StateId>, StateId> index;
  std::deque<std::vector<StateId>> queue;

  auto intern = [&](std::vector<StateId> tuple) -> StateId {
    auto it = index.find(tuple);
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(out.state_count());
    index.emplace(tuple, id);
    std::string name;
    bool all_safe = true;
    for (std::size_t i = 0; i < auts.size(); ++i) {
      if (i) name += ',';
      name += auts[i].state_names[tuple[i]];
      all_safe = all_safe && auts[i].safe[tuple[i]];
    }
    out.state_names.push_back(name);
    out.safe.push_back(all_safe);
    out.delta.emplace_back(letters, kNoState);
    queue.push_back(std::move(tuple));
    return id;
  };

  std::vector<StateId> init_tuple;
  init_tuple.reserve(auts.size());
  for (const auto& a : auts) init_tuple.push_back(a.init);
  out.init = intern(std::move(init_tuple));

  while (!queue.empty()) {
    std::vector<StateId> tuple = queue.front();
    queue.pop_front();
    StateId src = index.at(tuple);
    for (Letter l = 0; l < letters; ++l) {
      std::vector<StateId> succ(auts.size());
      for (std::size_t i = 0; i < auts.size(); ++i)
        succ[i] = auts[i].delta[tuple[i]][l];
      out.delta[src][l] = intern(std::move(succ));
    }
  }

  // The joint trap keeps its designation when every component has one
  // and the combination is reachable.
  std::vector<StateId> trap_tuple;
  for (const auto& a : auts) {
    if (!a.trap) return out;
    trap_tuple.push_back(*a.trap);
  }
  if (auto it = index.find(trap_tuple); it != index.end()) out.trap = it->second;
  return out;
}

Diagnostics validate(const SafetyAutomaton& aut, const std::string& label) {
  Diagnostics d;
  d.n_states = aut.state_count();
  d.is_complete = true;
  for (StateId s = 0; s < aut.state_count(); ++s) {
    for (Letter l = 0; l < aut.sig.letter_count(); ++l) {
      if (aut.delta[s][l] == kNoState) {
        if (d.is_complete) {
          d.is_complete = false;
          d.missing = {s, l};
        }
      } else {
        ++d.n_edges;
      }
    }
  }

  std::vector<bool> seen(aut.state_count(), false);
  std::deque<StateId> queue{aut.init};
  seen[aut.init] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    ++d.n_reachable;
    if (!aut.safe[s]) d.unsafe_reachable = true;
    for (Letter l = 0; l < aut.sig.letter_count(); ++l) {
      StateId t = aut.delta[s][l];
      if (t != kNoState && !seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }

  std::string& s = d.summary;
  if (!label.empty()) s = label + ": ";
  s += std::to_string(d.n_states) + " states, " + std::to_string(d.n_edges) + " edges, ";
  if (d.is_complete) {
    s += "complete";
  } else {
    std::vector<std::string> names = aut.sig.inputs;
    names.insert(names.end(), aut.sig.outputs.begin(), aut.sig.outputs.end());
    s += "incomplete: state " + aut.state_names[d.missing->first] +
         " missing letter " + format_assignment(d.missing->second, names);
  }
  s += ", deterministic, ";
  s += d.unsafe_reachable ? "unsafe reachable" : "unsafe states unreachable";
  return d;
}

bool isomorphic(const SafetyAutomaton& a, const SafetyAutomaton& b) {
  if (a.sig != b.sig) return false;
  Letter letters = a.sig.letter_count();

  // Breadth-first renumbering is canonical for deterministic automata.
  auto canon = [letters](const SafetyAutomaton& aut) {
    std::vector<StateId> id(aut.state_count(), kNoState);
    std::vector<StateId> order;
    id[aut.init] = 0;
    order.push_back(aut.init);
    for (std::size_t next = 0; next < order.size(); ++next) {
      StateId s = order[next];
      for (Letter l = 0; l < letters; ++l) {
        StateId t = aut.delta[s][l];
        if (t != kNoState && id[t] == kNoState) {
          id[t] = static_cast<StateId>(order.size());
          order.push_back(t);
        }
      }
    }
    std::vector<std::vector<StateId>> delta;
    std::vector<bool> safe;
    for (StateId s : order) {
      std::vector<StateId> row;
      row.reserve(letters);
      for (Letter l = 0; l < letters; ++l) {
        StateId t = aut.delta[s][l];
        row.push_back(t == kNoState ? kNoState : id[t]);
      }
      delta.push_back(std::move(row));
      safe.push_back(aut.safe[s]);
    }
    return std::pair{std::move(delta), std::move(safe)};
  };

  return canon(a) == canon(b);
}

}  // namespace shieldkit
