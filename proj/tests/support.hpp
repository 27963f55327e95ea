#pragma once

#include <string>
#include <vector>

#include "shieldkit/automaton.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/parser.hpp"

// Compile definition set by the build: absolute path of the fixtures
// directory.
#ifndef SHIELDKIT_FIXTURES
#error "SHIELDKIT_FIXTURES must be defined by the build"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(SHIELDKIT_FIXTURES) + "/" + name;
}

inline shieldkit::SafetyAutomaton load_automaton(const std::string& name) {
  return shieldkit::parse_automaton(shieldkit::read_file(fixture_path(name)));
}

inline shieldkit::MealyMachine load_mealy(const std::string& name) {
  return shieldkit::parse_mealy(shieldkit::read_file(fixture_path(name)));
}

inline std::vector<shieldkit::Letter> load_trace(const std::string& name,
                                                 const std::vector<std::string>& signals) {
  return shieldkit::parse_trace(shieldkit::read_file(fixture_path(name)), signals);
}

// All input sequences of exactly `depth` letters over `count` letters,
// in lexicographic order.  Callers iterate with an odometer to avoid
// materializing the full set.
class SequenceOdometer {
public:
  SequenceOdometer(std::size_t depth, shieldkit::Letter count)
      : seq_(depth, 0), count_(count), done_(depth == 0 || count == 0) {}

  bool done() const { return done_; }
  const std::vector<shieldkit::Letter>& current() const { return seq_; }

  void advance() {
    for (std::size_t i = seq_.size(); i-- > 0;) {
      if (++seq_[i] < count_) return;
      seq_[i] = 0;
    }
    done_ = true;
  }

private:
  std::vector<shieldkit::Letter> seq_;
  shieldkit::Letter count_;
  bool done_;
};

}  // namespace testsupport
