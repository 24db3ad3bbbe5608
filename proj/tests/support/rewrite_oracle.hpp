#pragma once

// Brute-force reference for bio queries: breadth-first multiset rewriting
// over stamped facts, written against the model data only.

#include <cstddef>
#include <vector>

#include "hylls/bio.hpp"

namespace hylls::oracle {

struct Stamped {
  unsigned t = 0;
  std::string pred;
  std::vector<Term> args;
  friend bool operator==(const Stamped&, const Stamped&) = default;
  friend auto operator<=>(const Stamped& a, const Stamped& b) {
    if (auto c = a.t <=> b.t; c != 0) return c;
    if (auto c = a.pred <=> b.pred; c != 0) return c;
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
  }
};
using State = std::vector<Stamped>;  // sorted multiset

// Every state reachable from the initial facts at 0 when a rule with delay
// d fires at stamp t only if t + d <= horizon; frames move one fact one
// step. Throws std::runtime_error past `limit` states.
std::vector<State> reachable_states(const BioModel& m, unsigned horizon, std::size_t limit = 4'000'000);

bool holds(const BioModel& m, const Query& q);

}  // namespace hylls::oracle
