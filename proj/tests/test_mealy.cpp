#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shieldkit/error.hpp"
#include "shieldkit/mealy.hpp"
#include "shieldkit/parser.hpp"
#include "support.hpp"

using namespace shieldkit;
using testsupport::load_mealy;
using testsupport::load_trace;
using testsupport::SequenceOdometer;

namespace {

// Pass-through corrector over the crossing controller's signals.
const char* kIdentityCorrector =
    "inputs: p h f\n"
    "outputs: h' f'\n"
    "states: I\n"
    "init: I\n"
    "I -> I : h & f emit: h' & f'\n"
    "I -> I : h & !f emit: h' & !f'\n"
    "I -> I : !h & f emit: !h' & f'\n"
    "I -> I : !h & !f emit: !h' & !f'\n";

// Corrector that drops the farm light whenever the highway light is on.
const char* kConservativeCorrector =
    "inputs: p h f\n"
    "outputs: h' f'\n"
    "states: I\n"
    "init: I\n"
    "I -> I : h emit: h' & !f'\n"
    "I -> I : !h & f emit: !h' & f'\n"
    "I -> I : !h & !f emit: !h' & !f'\n";

}  // namespace

TEST_CASE("buggy crossing controller reproduces its recorded run") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  REQUIRE(design.state_count() == 10);
  REQUIRE(design.sig.inputs == std::vector<std::string>{"p", "car"});
  REQUIRE(design.sig.outputs == std::vector<std::string>{"h", "f"});

  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});
  REQUIRE(inputs.size() == 15);
  auto outputs = run_trace(design, inputs);
  // h f packed, most significant first: green/red = 0b10, red/red =
  // 0b00, red/green = 0b01.
  std::vector<Letter> expected = {2, 0, 2, 0, 0, 1, 1, 2, 2, 2, 0, 0, 1, 0, 0};
  CHECK(outputs == expected);
}

TEST_CASE("machine parsing rejects structural mistakes") {
  const std::string header =
      "inputs: i\noutputs: o\nstates: A\ninit: A\n";
  SUBCASE("missing emit clause") {
    CHECK_THROWS_AS(parse_mealy(header + "A -> A : true\n"), ParseError);
  }
  SUBCASE("emit clause satisfiable by several letters") {
    try {
      parse_mealy(header + "A -> A : true emit: o | !o\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("2 letters") != std::string::npos);
    }
  }
  SUBCASE("emit clause satisfiable by no letter") {
    CHECK_THROWS_AS(parse_mealy(header + "A -> A : true emit: o & !o\n"), ParseError);
  }
  SUBCASE("input letter left uncovered") {
    CHECK_THROWS_AS(parse_mealy(header + "A -> A : i emit: o\n"), Error);
  }
  SUBCASE("overlapping guards") {
    CHECK_THROWS_AS(
        parse_mealy(header + "A -> A : i emit: o\nA -> A : true emit: o\n"),
        ParseError);
  }
  SUBCASE("automata have no emit clause") {
    CHECK_THROWS_AS(parse_automaton(header + "A -> A : true emit: o\n"), ParseError);
  }
  SUBCASE("machines have no safe directive") {
    CHECK_THROWS_AS(parse_mealy(header + "safe: A\nA -> A : true emit: o\n"),
                    ParseError);
  }
}

TEST_CASE("machine validation catches malformed tables") {
  MealyMachine m = parse_mealy(kIdentityCorrector);
  CHECK_NOTHROW(check_machine(m));
  SUBCASE("dangling transition target") {
    m.delta[0][0] = 5;
    CHECK_THROWS_AS(check_machine(m), Error);
  }
  SUBCASE("output letter out of range") {
    m.lambda[0][0] = 9;
    CHECK_THROWS_AS(check_machine(m), Error);
  }
  SUBCASE("initial state out of range") {
    m.init = 3;
    CHECK_THROWS_AS(check_machine(m), Error);
  }
  SUBCASE("row width mismatch") {
    m.delta[0].pop_back();
    CHECK_THROWS_AS(check_machine(m), Error);
  }
}

TEST_CASE("single state echo machine copies its input") {
  MealyMachine echo = parse_mealy(
      "inputs: i\noutputs: o\nstates: E\ninit: E\n"
      "E -> E : i emit: o\nE -> E : !i emit: !o\n");
  std::vector<Letter> word = {0, 1, 1, 0, 1};
  CHECK(run_trace(echo, word) == word);
  CHECK(run_trace(echo, {}).empty());
}

TEST_CASE("composition with a pass-through corrector preserves behavior") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine identity = parse_mealy(kIdentityCorrector);
  MealyMachine composed = compose(design, identity);
  CHECK(composed.sig == design.sig);

  for (std::size_t depth = 1; depth <= 8; ++depth) {
    bool all_equal = true;
    for (SequenceOdometer odo(depth, 4); !odo.done(); odo.advance()) {
      if (run_trace(composed, odo.current()) != run_trace(design, odo.current())) {
        all_equal = false;
        CAPTURE(depth);
        REQUIRE(all_equal);
      }
    }
    CHECK(all_equal);
  }
}

TEST_CASE("composition is associative on traces") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine first = parse_mealy(kConservativeCorrector);
  MealyMachine second = parse_mealy(kIdentityCorrector);

  MealyMachine left = compose(compose(design, first), second);
  MealyMachine right = compose(design, compose(first, second));
  CHECK(left.sig == right.sig);

  for (std::size_t depth = 1; depth <= 6; ++depth)
    for (SequenceOdometer odo(depth, 4); !odo.done(); odo.advance())
      REQUIRE(run_trace(left, odo.current()) == run_trace(right, odo.current()));
}

TEST_CASE("corrected outputs are what the corrector saw fit") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  MealyMachine conservative = parse_mealy(kConservativeCorrector);
  MealyMachine composed = compose(design, conservative);
  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});
  auto raw = run_trace(design, inputs);
  auto corrected = run_trace(composed, inputs);
  REQUIRE(raw.size() == corrected.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // h is passed through; f is cleared when h is on.
    bool h = (raw[i] & 2) != 0;
    bool f = (raw[i] & 1) != 0;
    Letter expect = static_cast<Letter>((h ? 2 : 0) | ((f && !h) ? 1 : 0));
    CHECK(corrected[i] == expect);
  }
}

TEST_CASE("composition rejects signature mismatches") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");

  SUBCASE("output arity differs") {
    MealyMachine narrow = parse_mealy(
        "inputs: p h f\noutputs: h'\nstates: I\ninit: I\n"
        "I -> I : h emit: h'\nI -> I : !h emit: !h'\n");
    CHECK_THROWS_AS(compose(design, narrow), Error);
  }
  SUBCASE("output base names differ") {
    MealyMachine renamed = parse_mealy(
        "inputs: p h f\noutputs: x' y'\nstates: I\ninit: I\n"
        "I -> I : true emit: !x' & !y'\n");
    CHECK_THROWS_AS(compose(design, renamed), Error);
  }
  SUBCASE("unbindable input name") {
    MealyMachine ghost = parse_mealy(
        "inputs: ghost\noutputs: h' f'\nstates: I\ninit: I\n"
        "I -> I : true emit: !h' & !f'\n");
    CHECK_THROWS_AS(compose(design, ghost), Error);
  }
}

TEST_CASE("primed input names bind to the upstream outputs") {
  MealyMachine design = load_mealy("traffic_design_buggy.mealy");
  // Same corrector, with primed input names and doubly primed outputs;
  // binding works on the prime-stripped base names.
  MealyMachine primed = parse_mealy(
      "inputs: p' h' f'\noutputs: h'' f''\nstates: I\ninit: I\n"
      "I -> I : h' & f' emit: h'' & f''\n"
      "I -> I : h' & !f' emit: h'' & !f''\n"
      "I -> I : !h' & f' emit: !h'' & f''\n"
      "I -> I : !h' & !f' emit: !h'' & !f''\n");
  MealyMachine composed = compose(design, primed);
  auto inputs = load_trace("traffic_recorded.trace", {"p", "car"});
  CHECK(run_trace(composed, inputs) == run_trace(design, inputs));
}
