// Turing machine demo generator: encodes machine configurations as labeled
// chain graphs and transition tables as graph equations, plus the goal
// disequation between the initial and final two-blank configurations.
#pragma once

#include <string>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/io.hpp"

namespace gsp {

struct TuringMachine {
  struct Transition {
    std::string state;
    std::string read;
    std::string next;
    std::string write;
    bool move_right = true;
  };

  std::vector<std::string> states;
  std::vector<std::string> alphabet;  // includes the blank symbol
  std::string blank = "b";
  std::string initial = "q0";
  std::string final_state = "qf";
  std::vector<Transition> transitions;
};

// Machine file format, one clause per line:
//   states q0 qf;  blank b;  alphabet b;  initial q0;  final qf;
//   delta q0 b -> qf b L;
TuringMachine parse_machine(const std::string& text);

// Encodes a configuration (state, tape-before, tape-after) as a rootless
// chain with start/head/end markers and an isolated state node. Node ids
// start at first_id.
Graph tm_config_graph(const TuringMachine& m, const std::string& state,
                      const std::vector<std::string>& before,
                      const std::vector<std::string>& after, std::uint32_t first_id = 0);

// The full problem: transition equations, the two blank-deletion equations
// and the initial/final goal disequation under the plain relation.
// Throws NondeterministicMachine on duplicate (state, symbol) transitions.
ProblemFile gen_tm(const TuringMachine& m);

}  // namespace gsp
