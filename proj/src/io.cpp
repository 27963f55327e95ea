#include "shieldkit/io.hpp"

#include <map>
#include <sstream>

namespace shieldkit {

namespace {

std::string minterm(Letter letter, const std::vector<std::string>& names) {
  if (names.empty()) return "true";
  std::string out;
  int width = static_cast<int>(names.size());
  for (int i = 0; i < width; ++i) {
    if (i) out += " & ";
    if (!letter_bit(letter, width, i)) out += '!';
    out += names[static_cast<std::size_t>(i)];
  }
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void list_directive(std::ostringstream& out, const char* name,
                    const std::vector<std::string>& items) {
  out << name << ':';
  for (const auto& item : items) out << ' ' << item;
  out << '\n';
}

}  // namespace

std::string export_mealy(const MealyMachine& m) {
  std::ostringstream out;
  list_directive(out, "inputs", m.sig.inputs);
  list_directive(out, "outputs", m.sig.outputs);
  list_directive(out, "states", m.state_names);
  out << "init: " << m.state_names[m.init] << '\n';
  if (m.state_labels.size() == m.state_names.size()) {
    for (std::size_t s = 0; s < m.state_names.size(); ++s)
      out << "# " << m.state_names[s] << ": " << m.state_labels[s] << '\n';
  }
  for (StateId s = 0; s < m.state_count(); ++s)
    for (Letter x = 0; x < m.sig.input_count(); ++x)
      out << m.state_names[s] << " -> " << m.state_names[m.delta[s][x]] << " : "
          << minterm(x, m.sig.inputs) << " emit: " << minterm(m.lambda[s][x], m.sig.outputs)
          << '\n';
  return out.str();
}

std::string dot_automaton(const SafetyAutomaton& aut, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __init [shape=point];\n";
  for (StateId s = 0; s < aut.state_count(); ++s)
    out << "  " << quoted(aut.state_names[s]) << " [shape="
        << (aut.safe[s] ? "circle" : "octagon") << "];\n";
  out << "  __init -> " << quoted(aut.state_names[aut.init]) << ";\n";
  for (StateId s = 0; s < aut.state_count(); ++s) {
    std::map<StateId, std::string> grouped;
    for (Letter l = 0; l < aut.sig.letter_count(); ++l) {
      StateId t = aut.delta[s][l];
      if (t == kNoState) continue;
      std::string& label = grouped[t];
      if (!label.empty()) label += ',';
      label += format_bits(l, aut.sig.total_bits());
    }
    for (const auto& [t, label] : grouped)
      out << "  " << quoted(aut.state_names[s]) << " -> " << quoted(aut.state_names[t])
          << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string dot_mealy(const MealyMachine& m, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __init [shape=point];\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    out << "  " << quoted(m.state_names[s]);
    if (m.state_labels.size() == m.state_names.size() && !m.state_labels[s].empty())
      out << " [tooltip=" << quoted(m.state_labels[s]) << "]";
    out << ";\n";
  }
  out << "  __init -> " << quoted(m.state_names[m.init]) << ";\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    std::map<std::pair<StateId, Letter>, std::string> grouped;
    for (Letter x = 0; x < m.sig.input_count(); ++x) {
      std::string& label = grouped[{m.delta[s][x], m.lambda[s][x]}];
      if (!label.empty()) label += ',';
      label += format_bits(x, m.sig.input_bits());
    }
    for (const auto& [key, ins] : grouped)
      out << "  " << quoted(m.state_names[s]) << " -> " << quoted(m.state_names[key.first])
          << " [label=" << quoted(ins + "/" + format_bits(key.second, m.sig.output_bits()))
          << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string dot_violation_monitor(const ViolationMonitor& m, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __init [shape=point];\n";
  for (StateId s = 0; s < m.state_count(); ++s)
    out << "  " << quoted(m.state_names[s]) << " [shape="
        << (m.states[s].fail_safe ? "octagon" : "box") << "];\n";
  out << "  __init -> " << quoted(m.state_names[m.init]) << ";\n";
  const std::uint32_t flags = m.flag_count();
  for (StateId s = 0; s < m.state_count(); ++s) {
    // Group edges by (target, violation flag) so corrections stand out.
    std::map<std::pair<StateId, bool>, std::string> grouped;
    for (Letter l = 0; l < m.spec.sig.letter_count(); ++l) {
      for (std::uint32_t f = 0; f < flags; ++f) {
        std::string& label = grouped[{m.delta[s][l * flags + f],
                                      m.violation[s][l * flags + f]}];
        if (!label.empty()) label += ',';
        label += format_bits(l, m.spec.sig.total_bits());
        if (flags == 2) label += f ? "+r" : "-r";
      }
    }
    for (const auto& [key, label] : grouped) {
      out << "  " << quoted(m.state_names[s]) << " -> " << quoted(m.state_names[key.first])
          << " [label=" << quoted(label);
      if (key.second) out << ", color=red";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string dot_arena(const GameArena& arena, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __init [shape=point];\n";
  for (StateId s = 0; s < arena.state_count(); ++s)
    out << "  " << quoted(arena.state_names[s]) << " [shape="
        << (arena.target[s] ? "doublecircle" : "circle") << "];\n";
  out << "  __init -> " << quoted(arena.state_names[arena.init]) << ";\n";
  for (StateId s = 0; s < arena.state_count(); ++s) {
    std::map<StateId, std::string> grouped;
    for (Letter e = 0; e < arena.env_count; ++e) {
      for (Letter y = 0; y < arena.sys_count; ++y) {
        std::string& label = grouped[arena.next(s, e, y)];
        if (!label.empty()) label += ',';
        label += std::to_string(e) + "/" + std::to_string(y);
      }
    }
    for (const auto& [t, label] : grouped)
      out << "  " << quoted(arena.state_names[s]) << " -> " << quoted(arena.state_names[t])
          << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace shieldkit
