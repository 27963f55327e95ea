#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"
#include "shieldkit/mealy.hpp"

namespace shieldkit {

// Text format shared by automata and Mealy machines:
//
//   # comment to end of line
//   inputs: p car
//   outputs: h f
//   states: S0 S1
//   init: S0
//   safe: S0 S1                       (automata only; default: all declared)
//   S0 -> S1 : !p & car               (automaton edge, guard over all signals)
//   S0 -> S1 : !p & car emit: h & !f  (machine edge: guard over inputs,
//                                      emit clause pinning every output)
//
// Guards expand to explicit letters.  Two guards leaving one state may
// not share a letter, even towards the same target.

// Parses a safety automaton.  Letters not covered by any guard are
// routed to the designated absorbing unsafe trap, which is created on
// demand.  When `signature` is given, the file may omit the inputs:
// and outputs: directives; if it declares them anyway they must match.
SafetyAutomaton parse_automaton(const std::string& text,
                                const std::optional<SignalSignature>& signature = {});

// Parses a Mealy machine.  Every state must cover every input letter,
// and each emit clause must be satisfied by exactly one output letter.
MealyMachine parse_mealy(const std::string& text);

// Parses a trace: one step per line, each a complete assignment like
// "p=0 car=1" to the given signals (any order within the line).
std::vector<Letter> parse_trace(const std::string& text,
                                const std::vector<std::string>& signals);

// Reads an entire file, throwing Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace shieldkit
