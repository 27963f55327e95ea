#include "shieldkit/mealy.hpp"

#include <deque>
#include <map>

#include "shieldkit/error.hpp"

namespace shieldkit {

void check_machine(const MealyMachine& m) {
  check_signature(m.sig);
  if (m.state_names.empty()) throw Error("machine has no states");
  if (m.init >= m.state_count()) throw Error("initial state out of range");
  if (m.delta.size() != m.state_count() || m.lambda.size() != m.state_count())
    throw Error("transition tables do not match the state list");
  for (StateId s = 0; s < m.state_count(); ++s) {
    if (m.delta[s].size() != m.sig.input_count() ||
        m.lambda[s].size() != m.sig.input_count())
      throw Error("machine is not complete at state " + m.state_names[s]);
    for (Letter x = 0; x < m.sig.input_count(); ++x) {
      if (m.delta[s][x] >= m.state_count())
        throw Error("transition target out of range at state " + m.state_names[s]);
      if (m.lambda[s][x] >= m.sig.output_count())
        throw Error("output letter out of range at state " + m.state_names[s]);
    }
  }
}

std::vector<Letter> run_trace(const MealyMachine& m, const std::vector<Letter>& inputs) {
  std::vector<Letter> outputs;
  outputs.reserve(inputs.size());
  StateId s = m.init;
  for (Letter x : inputs) {
    outputs.push_back(m.lambda[s][x]);
    s = m.delta[s][x];
  }
  return outputs;
}

namespace {

std::string strip_primes(const std::string& name) {
  std::size_t end = name.size();
  while (end > 0 && name[end - 1] == '\'') --end;
  return name.substr(0, end);
}

}  // namespace

MealyMachine compose(const MealyMachine& first, const MealyMachine& second) {
  if (second.sig.output_bits() != first.sig.output_bits())
    throw Error("composition requires matching output counts (" +
                std::to_string(first.sig.output_bits()) + " vs " +
                std::to_string(second.sig.output_bits()) + ")");
  for (int i = 0; i < first.sig.output_bits(); ++i) {
    if (strip_primes(first.sig.outputs[static_cast<std::size_t>(i)]) !=
        strip_primes(second.sig.outputs[static_cast<std::size_t>(i)]))
      throw Error("composition output mismatch at position " + std::to_string(i) +
                  ": '" + first.sig.outputs[static_cast<std::size_t>(i)] + "' vs '" +
                  second.sig.outputs[static_cast<std::size_t>(i)] + "'");
  }

  // Where each input bit of `second` comes from: an output bit of
  // `first` whose base name matches, else an input bit of `first`.
  struct Source {
    bool from_output;
    int position;
  };
  std::vector<Source> sources;
  for (const auto& name : second.sig.inputs) {
    const std::string base = strip_primes(name);
    int pos = -1;
    for (int i = 0; i < first.sig.output_bits(); ++i) {
      if (strip_primes(first.sig.outputs[static_cast<std::size_t>(i)]) == base) {
        pos = i;
        break;
      }
    }
    if (pos >= 0) {
      sources.push_back({true, pos});
      continue;
    }
    for (int i = 0; i < first.sig.input_bits(); ++i) {
      if (strip_primes(first.sig.inputs[static_cast<std::size_t>(i)]) == base) {
        pos = i;
        break;
      }
    }
    if (pos < 0)
      throw Error("composition cannot bind input '" + name + "'");
    sources.push_back({false, pos});
  }

  int in_bits = first.sig.input_bits();
  int out_bits = first.sig.output_bits();
  int second_in_bits = second.sig.input_bits();

  auto second_input = [&](Letter x, Letter y) {
    Letter result = 0;
    for (int i = 0; i < second_in_bits; ++i) {
      const Source& src = sources[static_cast<std::size_t>(i)];
      bool bit = src.from_output ? letter_bit(y, out_bits, src.position)
                                 : letter_bit(x, in_bits, src.position);
      result = set_letter_bit(result, second_in_bits, i, bit);
    }
    return result;
  };

  MealyMachine out;
  out.sig = first.sig;

  std::map<std::pair<StateId, StateId>, StateId> index;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId a, StateId b) -> StateId {
    auto it = index.find({a, b});
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(out.state_count());
    index.emplace(std::pair{a, b}, id);
    out.state_names.push_back(first.state_names[a] + "," + second.state_names[b]);
    out.delta.emplace_back(first.sig.input_count(), 0);
    out.lambda.emplace_back(first.sig.input_count(), 0);
    queue.emplace_back(a, b);
    return id;
  };

  out.init = intern(first.init, second.init);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    StateId src = index.at({a, b});
    for (Letter x = 0; x < first.sig.input_count(); ++x) {
      Letter y = first.lambda[a][x];
      Letter x2 = second_input(x, y);
      out.lambda[src][x] = second.lambda[b][x2];
      out.delta[src][x] = intern(first.delta[a][x], second.delta[b][x2]);
    }
  }
  return out;
}

}  // namespace shieldkit
