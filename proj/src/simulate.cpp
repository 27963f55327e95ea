#include "shieldkit/simulate.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "shieldkit/error.hpp"

namespace shieldkit {

namespace {

std::vector<std::string> full_names(const SignalSignature& sig) {
  std::vector<std::string> names = sig.inputs;
  names.insert(names.end(), sig.outputs.begin(), sig.outputs.end());
  return names;
}

std::string monitor_name(const SafetyAutomaton& spec, const MonitorState& s,
                         char counter_letter) {
  if (s.fail_safe) return "u_E";
  std::string name = "{";
  bool first = true;
  for (StateId r = 0; r < spec.state_count(); ++r) {
    if (!(s.subset >> r & 1)) continue;
    if (!first) name += ',';
    name += spec.state_names[r];
    first = false;
  }
  name += "}";
  name += counter_letter;
  name += std::to_string(s.counter);
  return name;
}

}  // namespace

TraceReport evaluate_trace(const MealyMachine& design, const MealyMachine& shield,
                           const SafetyAutomaton& spec_R, int k,
                           const std::vector<Letter>& inputs, MonitorMode mode) {
  check_machine(design);
  check_machine(shield);
  if (shield.sig.output_bits() != design.sig.output_bits())
    throw Error("shield output count does not match the design");
  for (const auto& row : spec_R.delta)
    for (StateId t : row)
      if (t == kNoState) throw Error("trace evaluation needs a complete spec");

  SignalBinding shield_in(shield.sig.inputs, design.sig);
  SignalBinding spec_in(full_names(spec_R.sig), design.sig);
  std::vector<bool> winning = winning_region_of_spec(spec_R);
  if (!winning[spec_R.init])
    throw Error("specification is unrealizable: its initial state is losing");

  TraceReport report;
  report.input_names = design.sig.inputs;
  report.output_names = design.sig.outputs;

  StateId d = design.init, s = shield.init, q = spec_R.init;
  MonitorState monitor{false, std::uint64_t{1} << spec_R.init, 0};
  const char counter_letter = mode == MonitorMode::Buchi ? 'd' : 'c';

  for (Letter x : inputs) {
    if (x >= design.sig.input_count()) throw Error("input letter out of range");
    TraceStep step;
    step.input = x;
    step.design_out = design.lambda[d][x];
    Letter xs = shield_in.extract(x, step.design_out);
    step.shield_out = shield.lambda[s][xs];
    step.deviated = step.design_out != step.shield_out;
    step.monitor_before = monitor;
    step.spec_before = q;

    StepOutcome out = violation_monitor_step(
        spec_R, winning, mode, k, monitor, spec_in.extract(x, step.design_out));
    step.violation = out.violation;
    step.monitor_after = out.next;

    if (step.deviated) ++report.deviation_count;
    if (out.next.fail_safe) {
      report.fail_safe_entered = true;
    } else if (step.deviated && out.next.counter == 0) {
      report.illegal_deviation = true;
    }

    q = spec_R.next(q, spec_in.extract(x, step.shield_out));
    if (!spec_R.safe[q]) report.spec_violated_by_composition = true;

    report.monitor_names.push_back(
        monitor_name(spec_R, step.monitor_before, counter_letter));
    report.steps.push_back(step);

    monitor = out.next;
    d = design.delta[d][x];
    s = shield.delta[s][xs];
  }
  return report;
}

std::string format_report_table(const TraceReport& report) {
  std::vector<std::vector<std::string>> rows;
  auto add_row = [&](const std::string& head) -> std::vector<std::string>& {
    rows.emplace_back();
    rows.back().push_back(head);
    return rows.back();
  };

  std::size_t n = report.steps.size();
  auto& head = add_row("step");
  for (std::size_t i = 0; i < n; ++i) head.push_back(std::to_string(i));

  for (std::size_t b = 0; b < report.input_names.size(); ++b) {
    auto& row = add_row(report.input_names[b]);
    for (const auto& step : report.steps)
      row.push_back(letter_bit(step.input, static_cast<int>(report.input_names.size()),
                               static_cast<int>(b))
                        ? "1"
                        : "0");
  }
  int out_bits = static_cast<int>(report.output_names.size());
  auto& drow = add_row("design");
  for (const auto& step : report.steps)
    drow.push_back(format_bits(step.design_out, out_bits));
  auto& srow = add_row("shield");
  for (const auto& step : report.steps)
    srow.push_back(format_bits(step.shield_out, out_bits));
  auto& vrow = add_row("dev");
  for (const auto& step : report.steps)
    vrow.push_back(step.deviated ? "*" : ".");
  auto& mrow = add_row("monitor");
  for (const auto& name : report.monitor_names) mrow.push_back(name);

  std::vector<std::size_t> width(n + 1, 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c] << std::string(width[c] - row[c].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_lines(const TraceReport& report) {
  std::ostringstream out;
  int out_bits = static_cast<int>(report.output_names.size());
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const TraceStep& step = report.steps[i];
    out << i << ',' << format_bits(step.design_out, out_bits) << ','
        << format_bits(step.shield_out, out_bits) << ',' << (step.deviated ? 1 : 0)
        << ',' << report.monitor_names[i] << '\n';
  }
  return out.str();
}

Verdict model_check_safety(const MealyMachine& machine, const SafetyAutomaton& spec) {
  check_machine(machine);
  for (const auto& row : spec.delta)
    for (StateId t : row)
      if (t == kNoState) throw Error("model checking needs a complete spec");

  SignalBinding bind(full_names(spec.sig), machine.sig);

  // Breadth-first over machine x spec, keeping parent links so the
  // first unsafe visit yields a shortest input witness.
  std::size_t specs = spec.state_count();
  auto key = [specs](StateId m, StateId q) {
    return static_cast<std::size_t>(m) * specs + q;
  };
  std::vector<char> seen(machine.state_count() * specs, 0);
  std::vector<std::size_t> parent(machine.state_count() * specs, SIZE_MAX);
  std::vector<Letter> via(machine.state_count() * specs, 0);

  std::deque<std::pair<StateId, StateId>> queue;
  auto start = key(machine.init, spec.init);
  seen[start] = 1;
  queue.emplace_back(machine.init, spec.init);

  auto witness = [&](std::size_t at) {
    std::vector<Letter> trace;
    while (at != start) {
      trace.push_back(via[at]);
      at = parent[at];
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  if (!spec.safe[spec.init]) {
    Verdict v;
    v.safe = false;
    v.counterexample = std::vector<Letter>{};
    v.message = "spec starts in an unsafe state";
    return v;
  }

  while (!queue.empty()) {
    auto [m, q] = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < machine.sig.input_count(); ++x) {
      Letter y = machine.lambda[m][x];
      StateId q2 = spec.next(q, bind.extract(x, y));
      StateId m2 = machine.delta[m][x];
      std::size_t k2 = key(m2, q2);
      if (seen[k2]) continue;
      seen[k2] = 1;
      parent[k2] = key(m, q);
      via[k2] = x;
      if (!spec.safe[q2]) {
        Verdict v;
        v.safe = false;
        v.counterexample = witness(k2);
        v.message = "unsafe spec state '" + spec.state_names[q2] + "' reachable in " +
                    std::to_string(v.counterexample->size()) + " steps";
        return v;
      }
      queue.emplace_back(m2, q2);
    }
  }
  Verdict v;
  v.safe = true;
  v.message = "no unsafe spec state reachable";
  return v;
}

}  // namespace shieldkit
