#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/types.hpp"

namespace conekit {

struct DanglingReference : std::runtime_error {
  explicit DanglingReference(const std::string& what) : std::runtime_error(what) {}
};

struct DeadState : std::runtime_error {
  explicit DeadState(const std::string& what) : std::runtime_error(what) {}
};

struct Transition {
  std::string from;
  std::string symbol;
  std::string to;
};

// Finite labeled automaton over named states and symbols. Possibly
// nondeterministic; admissibility is path existence. Every state is a valid
// start state (switching signals carry no designated initial state), and
// validation guarantees each state has an outgoing transition, so admissible
// signals never die.
class Automaton {
 public:
  // Canonicalizes (sorts, dedupes) and enforces the structural invariants.
  // Throws DanglingReference for an undeclared state/symbol in a transition,
  // DeadState when some state has no outgoing edge.
  static Automaton validate(std::vector<std::string> states,
                            std::vector<std::string> alphabet,
                            std::vector<Transition> transitions);

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  // True iff some state path realizes the word (subset tracking).
  bool admissible(const std::vector<std::string>& word) const;

  struct Walk {
    std::vector<std::string> states;   // length + 1 entries
    std::vector<std::string> symbols;  // length entries
  };

  // Seed-deterministic admissible walk: uniform start state, then a uniform
  // outgoing transition at each step.
  Walk random_walk(int length, std::uint64_t seed) const;

  struct Cycle {
    std::vector<std::string> states;  // r entries, anchor first
    std::vector<std::string> labels;  // r entries
  };

  // Simple cycles (no repeated state except the closing anchor) of length
  // 1..max_len. Each cycle is reported once per anchor state on it, so label
  // rotations appear as separate records; per anchor, label-duplicate state
  // paths are collapsed to the first in DFS order. Sorted by (length,
  // states, labels).
  std::vector<Cycle> simple_cycles(int max_len) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<Transition> transitions_;
  // Adjacency in state indices: out_[i] = (symbol index, target index),
  // sorted, mirroring transitions_.
  std::vector<std::vector<std::pair<int, int>>> out_;

  int state_index(const std::string& s) const;
};

}  // namespace conekit
