#pragma once

#include <string>

#include "shieldkit/automaton.hpp"
#include "shieldkit/game.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/monitors.hpp"

namespace shieldkit {

// Native text form of a Mealy machine; parse_mealy reads it back to an
// identical machine.  Output is deterministic: states in index order,
// one edge per input letter in ascending order, minterm guards.
std::string export_mealy(const MealyMachine& m);

// Graphviz views.  All are deterministic.
std::string dot_automaton(const SafetyAutomaton& aut, const std::string& name = "spec");
std::string dot_mealy(const MealyMachine& m, const std::string& name = "machine");
// Monitor states carry their subset and counter annotations; edges
// that flag a violation are highlighted.
std::string dot_violation_monitor(const ViolationMonitor& m,
                                  const std::string& name = "monitor");
std::string dot_arena(const GameArena& arena, const std::string& name = "arena");

}  // namespace shieldkit
