#pragma once

#include <string>
#include <vector>

#include "shieldkit/signals.hpp"

namespace shieldkit {

// Complete deterministic Mealy machine: reads a letter over its input
// signals, emits a letter over its output signals, moves on.
struct MealyMachine {
  SignalSignature sig;
  std::vector<std::string> state_names;
  // Optional longer descriptions (synthesized machines keep their game
  // tuple here); empty or parallel to state_names.
  std::vector<std::string> state_labels;
  StateId init = 0;
  std::vector<std::vector<StateId>> delta;   // [state][input letter]
  std::vector<std::vector<Letter>> lambda;   // [state][input letter]

  std::size_t state_count() const { return state_names.size(); }
};

// Throws Error unless the machine is well-formed and complete.
void check_machine(const MealyMachine& m);

// Output letters produced on `inputs` from the initial state.
std::vector<Letter> run_trace(const MealyMachine& m, const std::vector<Letter>& inputs);

// Serial composition: `second` observes `first` and overrides its
// outputs.  Each input signal of `second` is bound to a signal of
// `first` by name, preferring outputs over inputs and ignoring
// trailing apostrophes, so a corrector with inputs (p, h, f) attaches
// both to a design emitting (h, f) and to another corrector emitting
// (h', f').  Output lists must match positionally up to apostrophes.
// The composed machine keeps the signature of `first`.
MealyMachine compose(const MealyMachine& first, const MealyMachine& second);

}  // namespace shieldkit
