#include "shieldkit/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "shieldkit/error.hpp"
#include "shieldkit/expr.hpp"

namespace shieldkit {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Cursor over one line with 1-based column reporting.
struct LineCursor {
  const std::string& text;
  int line;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  int column() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line, column(), msg);
  }
  std::string word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected a name");
    return text.substr(start, pos - start);
  }
  void expect(const std::string& token) {
    skip_space();
    if (text.compare(pos, token.size(), token) != 0)
      fail("expected '" + token + "'");
    pos += token.size();
  }
  std::string rest() {
    skip_space();
    return text.substr(pos);
  }
};

struct Transition {
  int line;
  int guard_column;
  std::string src, dst;
  std::string guard;
  std::optional<std::string> emit;
  int emit_column = 0;
};

struct ParsedFile {
  std::optional<std::vector<std::string>> inputs, outputs, states, safe;
  std::optional<std::string> init;
  int states_line = 0;
  int init_line = 0;
  int safe_line = 0;
  std::vector<Transition> transitions;
};

ParsedFile scan(const std::string& text, bool mealy) {
  ParsedFile file;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.pop_back();
    LineCursor cur{raw, line_no};
    if (cur.at_end()) continue;

    std::string first = cur.word();
    cur.skip_space();
    bool directive = cur.pos < raw.size() && raw[cur.pos] == ':' &&
                     (first == "inputs" || first == "outputs" || first == "states" ||
                      first == "init" || first == "safe");
    if (directive) {
      ++cur.pos;
      auto read_list = [&] {
        std::vector<std::string> names;
        while (!cur.at_end()) names.push_back(cur.word());
        return names;
      };
      auto assign = [&](auto& slot, auto value) {
        if (slot) cur.fail("duplicate '" + first + ":' directive");
        slot = std::move(value);
      };
      if (first == "inputs") assign(file.inputs, read_list());
      else if (first == "outputs") assign(file.outputs, read_list());
      else if (first == "states") {
        assign(file.states, read_list());
        file.states_line = line_no;
      } else if (first == "safe") {
        if (mealy) cur.fail("machines have no 'safe:' directive");
        assign(file.safe, read_list());
        file.safe_line = line_no;
      } else {
        cur.skip_space();
        if (cur.at_end()) cur.fail("expected a state name");
        assign(file.init, cur.word());
        file.init_line = line_no;
        if (!cur.at_end()) cur.fail("trailing text after initial state");
      }
      continue;
    }

    Transition t;
    t.line = line_no;
    t.src = first;
    cur.expect("->");
    t.dst = cur.word();
    cur.expect(":");
    cur.skip_space();
    t.guard_column = cur.column();
    std::string rest = cur.rest();
    if (auto emit = rest.find("emit:"); emit != std::string::npos) {
      if (!mealy) throw ParseError(line_no, t.guard_column + static_cast<int>(emit),
                                   "automata edges have no 'emit:' clause");
      t.guard = rest.substr(0, emit);
      t.emit = rest.substr(emit + 5);
      t.emit_column = t.guard_column + static_cast<int>(emit) + 5;
    } else {
      if (mealy) cur.fail("machine edge is missing its 'emit:' clause");
      t.guard = rest;
    }
    file.transitions.push_back(std::move(t));
  }
  return file;
}

SignalSignature resolve_signature(const ParsedFile& file,
                                  const std::optional<SignalSignature>& given,
                                  bool inputs_required) {
  SignalSignature sig;
  if (given) {
    if (file.inputs && *file.inputs != given->inputs)
      throw Error("declared inputs do not match the expected signature");
    if (file.outputs && *file.outputs != given->outputs)
      throw Error("declared outputs do not match the expected signature");
    sig = *given;
  } else {
    if (!file.inputs && inputs_required) throw Error("missing 'inputs:' directive");
    if (!file.outputs) throw Error("missing 'outputs:' directive");
    if (file.inputs) sig.inputs = *file.inputs;
    sig.outputs = *file.outputs;
  }
  check_signature(sig);
  return sig;
}

std::map<std::string, StateId> resolve_states(const ParsedFile& file) {
  if (!file.states || file.states->empty())
    throw Error("missing or empty 'states:' directive");
  std::map<std::string, StateId> index;
  for (const auto& name : *file.states) {
    if (name == kTrapName)
      throw ParseError(file.states_line, 1,
                       std::string("state name '") + kTrapName + "' is reserved");
    if (!index.emplace(name, static_cast<StateId>(index.size())).second)
      throw ParseError(file.states_line, 1, "duplicate state '" + name + "'");
  }
  return index;
}

StateId lookup_state(const std::map<std::string, StateId>& states,
                     const std::string& name, int line) {
  auto it = states.find(name);
  if (it == states.end()) throw ParseError(line, 1, "unknown state '" + name + "'");
  return it->second;
}

}  // namespace

SafetyAutomaton parse_automaton(const std::string& text,
                                const std::optional<SignalSignature>& signature) {
  ParsedFile file = scan(text, /*mealy=*/false);
  SafetyAutomaton aut;
  aut.sig = resolve_signature(file, signature, /*inputs_required=*/false);
  auto states = resolve_states(file);
  aut.state_names = *file.states;
  aut.delta.assign(aut.state_count(),
                   std::vector<StateId>(aut.sig.letter_count(), kNoState));

  if (!file.init) throw Error("missing 'init:' directive");
  aut.init = lookup_state(states, *file.init, file.init_line);

  aut.safe.assign(aut.state_count(), !file.safe.has_value());
  if (file.safe)
    for (const auto& name : *file.safe)
      aut.safe[lookup_state(states, name, file.safe_line)] = true;

  std::vector<std::string> all_names = aut.sig.inputs;
  all_names.insert(all_names.end(), aut.sig.outputs.begin(), aut.sig.outputs.end());

  for (const auto& t : file.transitions) {
    StateId src = lookup_state(states, t.src, t.line);
    StateId dst = lookup_state(states, t.dst, t.line);
    BoolExpr guard = parse_expr(t.guard, all_names, t.line, t.guard_column);
    for (Letter l : satisfying_letters(guard, aut.sig.total_bits())) {
      if (aut.delta[src][l] != kNoState)
        throw ParseError(t.line, t.guard_column,
                         "overlapping guards: state " + t.src +
                             " already covers letter " + format_assignment(l, all_names));
      aut.delta[src][l] = dst;
    }
  }
  return complete(aut);
}

MealyMachine parse_mealy(const std::string& text) {
  ParsedFile file = scan(text, /*mealy=*/true);
  MealyMachine m;
  m.sig = resolve_signature(file, std::nullopt, /*inputs_required=*/true);
  auto states = resolve_states(file);
  m.state_names = *file.states;
  m.delta.assign(m.state_count(), std::vector<StateId>(m.sig.input_count(), kNoState));
  m.lambda.assign(m.state_count(), std::vector<Letter>(m.sig.input_count(), 0));

  if (!file.init) throw Error("missing 'init:' directive");
  m.init = lookup_state(states, *file.init, file.init_line);

  for (const auto& t : file.transitions) {
    StateId src = lookup_state(states, t.src, t.line);
    StateId dst = lookup_state(states, t.dst, t.line);
    BoolExpr guard = parse_expr(t.guard, m.sig.inputs, t.line, t.guard_column);
    BoolExpr emit = parse_expr(*t.emit, m.sig.outputs, t.line, t.emit_column);
    auto out_letters = satisfying_letters(emit, m.sig.output_bits());
    if (out_letters.size() != 1)
      throw ParseError(t.line, t.emit_column,
                       "emit clause must pin every output to one value (" +
                           std::to_string(out_letters.size()) + " letters satisfy it)");
    for (Letter x : satisfying_letters(guard, m.sig.input_bits())) {
      if (m.delta[src][x] != kNoState)
        throw ParseError(t.line, t.guard_column,
                         "overlapping guards: state " + t.src +
                             " already covers letter " +
                             format_assignment(x, m.sig.inputs));
      m.delta[src][x] = dst;
      m.lambda[src][x] = out_letters.front();
    }
  }

  for (StateId s = 0; s < m.state_count(); ++s)
    for (Letter x = 0; x < m.sig.input_count(); ++x)
      if (m.delta[s][x] == kNoState)
        throw Error("machine is incomplete: state " + m.state_names[s] +
                    " has no edge for " + format_assignment(x, m.sig.inputs));
  return m;
}

std::vector<Letter> parse_trace(const std::string& text,
                                const std::vector<std::string>& signals) {
  std::vector<Letter> steps;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  int width = static_cast<int>(signals.size());
  while (std::getline(stream, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.pop_back();
    LineCursor cur{raw, line_no};
    if (cur.at_end()) continue;

    Letter letter = 0;
    std::vector<bool> assigned(signals.size(), false);
    while (!cur.at_end()) {
      std::string name = cur.word();
      int pos = -1;
      for (std::size_t i = 0; i < signals.size(); ++i)
        if (signals[i] == name) pos = static_cast<int>(i);
      if (pos < 0) cur.fail("unknown signal '" + name + "'");
      cur.expect("=");
      cur.skip_space();
      if (cur.pos >= raw.size() || (raw[cur.pos] != '0' && raw[cur.pos] != '1'))
        cur.fail("expected 0 or 1");
      bool value = raw[cur.pos] == '1';
      ++cur.pos;
      if (assigned[static_cast<std::size_t>(pos)])
        cur.fail("signal '" + name + "' assigned twice");
      assigned[static_cast<std::size_t>(pos)] = true;
      letter = set_letter_bit(letter, width, pos, value);
    }
    for (std::size_t i = 0; i < signals.size(); ++i)
      if (!assigned[i])
        throw ParseError(line_no, 1, "signal '" + signals[i] + "' is not assigned");
    steps.push_back(letter);
  }
  return steps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace shieldkit
