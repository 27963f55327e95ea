#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shieldkit {

// A letter is an assignment to an ordered list of Boolean signals,
// packed into an unsigned integer.  The first declared signal is the
// most significant bit, so the canonical order of an alphabet is plain
// numeric order of the packed values.
using Letter = std::uint32_t;
using StateId = std::uint32_t;

inline constexpr StateId kNoState = UINT32_MAX;

// Maximum number of signals in one signature.  Alphabets are
// materialized explicitly, so we keep them at desk scale.
inline constexpr int kMaxSignatureBits = 20;

// Named input and output signals of an automaton or Mealy machine.
// Names are unique across both lists; at most one list may be empty.
struct SignalSignature {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  int input_bits() const { return static_cast<int>(inputs.size()); }
  int output_bits() const { return static_cast<int>(outputs.size()); }
  int total_bits() const { return input_bits() + output_bits(); }

  std::uint32_t input_count() const { return 1u << input_bits(); }
  std::uint32_t output_count() const { return 1u << output_bits(); }
  std::uint32_t letter_count() const { return 1u << total_bits(); }

  // Position of `name` in inputs ++ outputs, if declared.
  std::optional<int> position_of(const std::string& name) const;

  bool operator==(const SignalSignature&) const = default;
};

// Throws Error if names collide, both lists are empty, or the
// signature exceeds kMaxSignatureBits.
void check_signature(const SignalSignature& sig);

// Bit of signal at `position` (0 = first declared = most significant)
// within a letter of `width` bits.
inline bool letter_bit(Letter letter, int width, int position) {
  return (letter >> (width - 1 - position)) & 1u;
}

inline Letter set_letter_bit(Letter letter, int width, int position, bool value) {
  Letter mask = 1u << (width - 1 - position);
  return value ? (letter | mask) : (letter & ~mask);
}

// Splits a full letter over inputs ++ outputs into its parts, and back.
inline Letter input_part(Letter full, const SignalSignature& sig) {
  return full >> sig.output_bits();
}
inline Letter output_part(Letter full, const SignalSignature& sig) {
  return full & (sig.output_count() - 1);
}
inline Letter join_parts(Letter in, Letter out, const SignalSignature& sig) {
  return (in << sig.output_bits()) | out;
}

// "p=1 car=0" rendering of an input/output/full letter.
std::string format_assignment(Letter letter, const std::vector<std::string>& names);
// "10" rendering, one character per signal in declaration order.
std::string format_bits(Letter letter, int width);

// Extracts, from a (machine input letter, machine output letter) pair,
// the letter over a separate list of signal names, each bound by name
// to one of the machine's signals.  Used to run a specification
// automaton alongside a Mealy machine whose signature declares the
// same signals, possibly among others and in a different order.
class SignalBinding {
public:
  // Binds each of `names` to a signal of `machine`.  Throws Error if a
  // name is not declared by the machine.
  SignalBinding(const std::vector<std::string>& names, const SignalSignature& machine);

  Letter extract(Letter machine_in, Letter machine_out) const;

private:
  struct Source {
    bool from_input;
    int position;
  };
  std::vector<Source> sources_;
  int machine_input_bits_;
  int machine_output_bits_;
};

}  // namespace shieldkit
