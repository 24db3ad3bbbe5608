#include "bio_suite.hpp"

namespace hylls::suite {

const std::vector<SuiteModel>& bio_models() {
  static const std::vector<SuiteModel> models = {
      {"chain",
       "species a b c\n"
       "rule act_ab: pres(a) => pres(a), pres(b) delay 1\n"
       "rule act_bc: pres(b) => pres(b), pres(c) delay 1\n"
       "init pres(a)\n",
       5},
      {"ctc",
       "species C/4\n"
       "const d = 3\n"
       "var n f\n"
       "rule intrav: C(n, breast, f, [EPCAM]) => C(n, blood, 1, [EPCAM]) delay d\n"
       "init C(c1, breast, 0, [EPCAM])\n",
       5},
      {"inhibition",
       "species a b\n"
       "rule inh: pres(a) -| pres(b) delay 1\n"
       "init pres(a), pres(b)\n",
       3},
      {"cycle",
       "species a b\n"
       "rule ab: pres(a) => pres(b) delay 1\n"
       "rule ba: pres(b) => pres(a) delay 1\n"
       "init pres(a)\n",
       5},
      {"fork",
       "species a b c\n"
       "rule ab: pres(a) => pres(b) delay 1\n"
       "rule ac: pres(a) => pres(c) delay 1\n"
       "init pres(a)\n",
       3},
      {"join",
       "species a b c\n"
       "rule join: pres(a), pres(b) => pres(c) delay 1\n"
       "init pres(a), pres(b)\n",
       3},
      {"slow",
       "species a b c\n"
       "rule act_ab: pres(a) => pres(a), pres(b) delay 2\n"
       "rule bc: pres(b) => pres(c) delay 1\n"
       "init pres(a)\n",
       5},
      {"frameless",
       "species a b c\n"
       "rule act_ab: pres(a) => pres(a), pres(b) delay 1\n"
       "rule act_bc: pres(b) => pres(b), pres(c) delay 1\n"
       "init pres(a)\n"
       "frames off\n",
       4},
      {"pair",
       "species a b\n"
       "rule dimer: pres(a), pres(a) => pres(b) delay 1\n"
       "init pres(a), pres(a)\n",
       3},
      {"static",
       "species a b\n"
       "init pres(a)\n",
       2},
      {"cascade",
       "species a b c d\n"
       "rule act_ab: pres(a) => pres(a), pres(b) delay 1\n"
       "rule bc: pres(b) => pres(c) delay 1\n"
       "rule cd: pres(c), pres(a) => pres(d) delay 1\n"
       "init pres(a)\n",
       4},
      {"decay",
       "species a b\n"
       "rule deg: pres(a) => 1 delay 1\n"
       "rule act_ab: pres(b) => pres(b), pres(a) delay 2\n"
       "init pres(a), pres(b)\n",
       4},
  };
  return models;
}

std::vector<Query> standard_queries(const BioModel& m, unsigned horizon) {
  std::vector<Query> out;
  auto universe = fact_universe(m);
  for (const auto& f : universe) {
    for (unsigned t = 0; t <= horizon; ++t) out.push_back({Query::Kind::ReachAt, {f}, t});
    out.push_back({Query::Kind::ReachWithin, {f}, horizon});
  }
  if (universe.size() >= 2) out.push_back({Query::Kind::ReachAt, {universe[0], universe.back()}, horizon});
  return out;
}

std::string describe(const Query& q) {
  std::string facts;
  for (const auto& f : q.facts) facts += (facts.empty() ? "" : ", ") + print_fact(f);
  switch (q.kind) {
    case Query::Kind::ReachAt:
      return "reach " + facts + " at " + std::to_string(q.time);
    case Query::Kind::ReachWithin:
      return "reach " + facts + " within " + std::to_string(q.time);
    case Query::Kind::InvariantUpTo:
      return "invariant " + facts + " up to " + std::to_string(q.time);
    case Query::Kind::StableState:
      return "stable up to " + std::to_string(q.time);
  }
  return "";
}

}  // namespace hylls::suite
