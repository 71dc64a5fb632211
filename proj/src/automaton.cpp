#include "conekit/automaton.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace conekit {

namespace {

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

int index_of(const std::vector<std::string>& v, const std::string& s) {
  const auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) return -1;
  return static_cast<int>(it - v.begin());
}

}  // namespace

int Automaton::state_index(const std::string& s) const {
  return index_of(states_, s);
}

Automaton Automaton::validate(std::vector<std::string> states,
                              std::vector<std::string> alphabet,
                              std::vector<Transition> transitions) {
  if (states.empty())
    throw std::invalid_argument("automaton: at least one state is required");
  sort_unique(states);
  sort_unique(alphabet);

  std::sort(transitions.begin(), transitions.end(),
            [](const Transition& a, const Transition& b) {
              return std::tie(a.from, a.symbol, a.to) <
                     std::tie(b.from, b.symbol, b.to);
            });
  transitions.erase(
      std::unique(transitions.begin(), transitions.end(),
                  [](const Transition& a, const Transition& b) {
                    return std::tie(a.from, a.symbol, a.to) ==
                           std::tie(b.from, b.symbol, b.to);
                  }),
      transitions.end());

  Automaton a;
  a.states_ = std::move(states);
  a.alphabet_ = std::move(alphabet);
  a.out_.assign(a.states_.size(), {});
  for (const Transition& t : transitions) {
    const int i = index_of(a.states_, t.from);
    const int j = index_of(a.states_, t.to);
    const int s = index_of(a.alphabet_, t.symbol);
    if (i < 0 || j < 0)
      throw DanglingReference("transition references undeclared state '" +
                              (i < 0 ? t.from : t.to) + "'");
    if (s < 0)
      throw DanglingReference("transition references undeclared symbol '" +
                              t.symbol + "'");
    a.out_[static_cast<size_t>(i)].emplace_back(s, j);
  }
  a.transitions_ = std::move(transitions);
  for (size_t i = 0; i < a.out_.size(); ++i)
    if (a.out_[i].empty())
      throw DeadState("state '" + a.states_[i] + "' has no outgoing transition");
  return a;
}

bool Automaton::admissible(const std::vector<std::string>& word) const {
  std::vector<char> cur(states_.size(), 1);
  for (const std::string& sym : word) {
    const int s = index_of(alphabet_, sym);
    if (s < 0) return false;
    std::vector<char> next(states_.size(), 0);
    bool any = false;
    for (size_t i = 0; i < states_.size(); ++i) {
      if (!cur[i]) continue;
      for (const auto& [symIdx, j] : out_[i])
        if (symIdx == s) {
          next[static_cast<size_t>(j)] = 1;
          any = true;
        }
    }
    if (!any) return false;
    cur = std::move(next);
  }
  return true;
}

Automaton::Walk Automaton::random_walk(int length, std::uint64_t seed) const {
  if (length < 0)
    throw std::invalid_argument("random_walk: negative length");
  std::mt19937_64 rng(seed);
  Walk w;
  size_t cur = std::uniform_int_distribution<size_t>(0, states_.size() - 1)(rng);
  w.states.push_back(states_[cur]);
  for (int k = 0; k < length; ++k) {
    const auto& edges = out_[cur];
    const size_t pick =
        std::uniform_int_distribution<size_t>(0, edges.size() - 1)(rng);
    w.symbols.push_back(alphabet_[static_cast<size_t>(edges[pick].first)]);
    cur = static_cast<size_t>(edges[pick].second);
    w.states.push_back(states_[cur]);
  }
  return w;
}

std::vector<Automaton::Cycle> Automaton::simple_cycles(int max_len) const {
  std::vector<Cycle> out;
  if (max_len <= 0) return out;

  const int n = static_cast<int>(states_.size());
  for (int anchor = 0; anchor < n; ++anchor) {
    std::set<std::vector<std::string>> seen_labels;
    std::vector<int> path = {anchor};
    std::vector<int> labels;
    std::vector<char> on_path(static_cast<size_t>(n), 0);
    on_path[static_cast<size_t>(anchor)] = 1;

    // Iterative DFS keeps the recursion depth independent of max_len.
    struct Frame {
      int state;
      size_t edge = 0;
    };
    std::vector<Frame> stack = {{anchor}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& edges = out_[static_cast<size_t>(f.state)];
      if (f.edge >= edges.size()) {
        stack.pop_back();
        if (!stack.empty()) {
          on_path[static_cast<size_t>(path.back())] = 0;
          path.pop_back();
          labels.pop_back();
        }
        continue;
      }
      const auto [sym, nxt] = edges[f.edge++];
      if (nxt == anchor) {
        std::vector<std::string> lab;
        for (int l : labels) lab.push_back(alphabet_[static_cast<size_t>(l)]);
        lab.push_back(alphabet_[static_cast<size_t>(sym)]);
        if (seen_labels.insert(lab).second) {
          Cycle c;
          for (int s : path) c.states.push_back(states_[static_cast<size_t>(s)]);
          c.labels = std::move(lab);
          out.push_back(std::move(c));
        }
        continue;
      }
      if (on_path[static_cast<size_t>(nxt)]) continue;
      if (static_cast<int>(path.size()) >= max_len) continue;
      on_path[static_cast<size_t>(nxt)] = 1;
      path.push_back(nxt);
      labels.push_back(sym);
      stack.push_back({nxt});
    }
  }

  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.labels.size() != b.labels.size())
      return a.labels.size() < b.labels.size();
    return std::tie(a.states, a.labels) < std::tie(b.states, b.labels);
  });
  return out;
}

}  // namespace conekit
