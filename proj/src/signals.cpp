#include "shieldkit/signals.hpp"

#include <set>

#include "shieldkit/error.hpp"

namespace shieldkit {

std::optional<int> SignalSignature::position_of(const std::string& name) const {
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i] == name) return static_cast<int>(i);
  for (std::size_t i = 0; i < outputs.size(); ++i)
    if (outputs[i] == name) return static_cast<int>(inputs.size() + i);
  return std::nullopt;
}

void check_signature(const SignalSignature& sig) {
  if (sig.inputs.empty() && sig.outputs.empty())
    throw Error("signature declares no signals");
  if (sig.total_bits() > kMaxSignatureBits)
    throw Error("signature has " + std::to_string(sig.total_bits()) +
                " signals; at most " + std::to_string(kMaxSignatureBits) +
                " are supported");
  std::set<std::string> seen;
  for (const auto* list : {&sig.inputs, &sig.outputs}) {
    for (const auto& name : *list) {
      if (name.empty()) throw Error("empty signal name");
      if (!seen.insert(name).second)
        throw Error("duplicate signal name '" + name + "'");
    }
  }
}

std::string format_assignment(Letter letter, const std::vector<std::string>& names) {
  std::string out;
  int width = static_cast<int>(names.size());
  for (int i = 0; i < width; ++i) {
    if (i) out += ' ';
    out += names[i];
    out += '=';
    out += letter_bit(letter, width, i) ? '1' : '0';
  }
  return out;
}

std::string format_bits(Letter letter, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    if (letter_bit(letter, width, i)) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

SignalBinding::SignalBinding(const std::vector<std::string>& names,
                             const SignalSignature& machine)
    : machine_input_bits_(machine.input_bits()),
      machine_output_bits_(machine.output_bits()) {
  sources_.reserve(names.size());
  for (const auto& name : names) {
    auto pos = machine.position_of(name);
    if (!pos) throw Error("signal '" + name + "' is not declared by the machine");
    if (*pos < machine_input_bits_)
      sources_.push_back({true, *pos});
    else
      sources_.push_back({false, *pos - machine_input_bits_});
  }
}

Letter SignalBinding::extract(Letter machine_in, Letter machine_out) const {
  Letter result = 0;
  int width = static_cast<int>(sources_.size());
  for (int i = 0; i < width; ++i) {
    const Source& src = sources_[static_cast<std::size_t>(i)];
    bool bit = src.from_input
                   ? letter_bit(machine_in, machine_input_bits_, src.position)
                   : letter_bit(machine_out, machine_output_bits_, src.position);
    result = set_letter_bit(result, width, i, bit);
  }
  return result;
}

}  // namespace shieldkit
