// hylls: prove, check and query from the command line.
//
// Exit status: 0 proved / valid / holds, 1 refuted / invalid / fails,
// 2 exhausted / unknown, 3 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "criteria.hpp"
#include "hylls/bio.hpp"
#include "hylls/parser.hpp"
#include "hylls/proof_io.hpp"
#include "hylls/prover.hpp"
#include "hylls/sell.hpp"

using namespace hylls;

namespace {

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse errors carry offsets only; prefix the file they came from.
template <class F>
auto parse_file(const std::string& path, F parse) {
  std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return kYes;
    case Outcome::Refuted:
      return kNo;
    default:
      return kUnknown;
  }
}

int exit_for(BioVerdict v) {
  switch (v) {
    case BioVerdict::Holds:
      return kYes;
    case BioVerdict::Fails:
      return kNo;
    default:
      return kUnknown;
  }
}

struct SearchFlags {
  unsigned depth = 8;
  unsigned world_bound = 16;
  double timeout = 0;
  std::string format = "text";

  void add(CLI::App* app) {
    app->add_option("--depth", depth, "Copy budget along a branch")->capture_default_str();
    app->add_option("--world-bound", world_bound, "World constants tried as witnesses")->capture_default_str();
    app->add_option("--timeout", timeout, "Seconds; 0 for none");
    app->add_option("--format", format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  }
  SearchBudget budget() const {
    SearchBudget b;
    b.depth = depth;
    b.world_bound = world_bound;
    if (timeout > 0) b.timeout_seconds = timeout;
    return b;
  }
  bool structured() const { return format == "structured"; }
};

nlohmann::json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"memo_hits", s.memo_hits},
          {"iterations", s.iterations},
          {"depth_used", s.depth_used},
          {"timed_out", s.timed_out}};
}

// ---- SELL proof printing ------------------------------------------------

void sell_text(const SubexpSignature& sig, const SellProof& p, const SellSequent* s, unsigned depth,
               std::string& out) {
  out.append(2 * depth, ' ');
  out += sell_rule_name(p.rule);
  out += ": ";
  out += s ? print_sell_sequent(*s) : "?";
  out += '\n';
  std::vector<SellSequent> prem;
  bool ok = false;
  if (s) {
    try {
      prem = sell_premises(sig, p.rule, *s, p.principal, p.witness);
      ok = prem.size() == p.premises.size();
    } catch (const SellError&) {
    }
  }
  for (std::size_t i = 0; i < p.premises.size(); ++i) sell_text(sig, p.premises[i], ok ? &prem[i] : nullptr, depth + 1, out);
}

nlohmann::json sell_json(const SellProof& p) {
  nlohmann::json j;
  j["rule"] = std::string(sell_rule_name(p.rule));
  if (p.principal.zone == SellPrincipal::Zone::Work)
    j["principal"] = {{"zone", "work"}, {"index", p.principal.index}};
  else if (p.principal.zone == SellPrincipal::Zone::Theta)
    j["principal"] = {{"zone", "theta"}, {"label", p.principal.label}, {"index", p.principal.index}};
  nlohmann::json w = nlohmann::json::object();
  if (!p.witness.work_split.empty()) {
    for (const auto& f : p.witness.work_split) w["work_split"].push_back(print_sell_formula(f));
  }
  for (const auto& [label, f] : p.witness.theta_split) w["theta_split"].push_back({label, print_sell_formula(f)});
  if (p.witness.term) w["term"] = print_term(*p.witness.term);
  if (!p.witness.label.empty()) w["label"] = p.witness.label;
  if (!p.witness.eigen.empty()) w["eigen"] = p.witness.eigen;
  if (!w.empty()) j["witness"] = w;
  if (!p.premises.empty()) {
    j["premises"] = nlohmann::json::array();
    for (const auto& k : p.premises) j["premises"].push_back(sell_json(k));
  }
  return j;
}

// ---- commands -----------------------------------------------------------

struct ProveArgs {
  std::string file;
  std::string goal;
  std::string world = "iota";
  std::vector<std::string> gamma, delta;
  std::string domain = "temporal";
  bool naive = false;
  SearchFlags search;
};

int cmd_prove(const ProveArgs& a) {
  SequentFile f;
  if (!a.file.empty()) {
    if (!a.goal.empty()) throw InputError("give either a sequent file or --goal, not both");
    f = parse_file(a.file, parse_sequent_file);
  } else {
    if (a.goal.empty()) throw InputError("prove needs a sequent file or --goal");
    f.domain = &domain_by_name(a.domain);
    auto judgment = [&](const std::string& text) {
      SymbolTable& t = f.table;
      return parse_judgment(text, *f.domain, t);
    };
    for (const auto& g : a.gamma) f.sequent.gamma.push_back(judgment(g));
    for (const auto& d : a.delta) f.sequent.delta.push_back(judgment(d));
    f.sequent.goal = judgment(a.goal + " @ " + a.world);
    f.sequent = make_sequent(f.sequent.gamma, f.sequent.delta, f.sequent.goal);
  }
  KernelConfig cfg;
  cfg.domain = f.domain;
  Sequent s = expand_sequent(*f.domain, f.sequent);
  auto r = prove(cfg, s, a.search.budget(), a.naive ? SearchMode::Naive : SearchMode::Focused);
  if (a.search.structured()) {
    nlohmann::json out;
    out["outcome"] = std::string(outcome_name(r.outcome));
    out["sequent"] = print_sequent(*f.domain, s);
    out["stats"] = stats_json(r.stats);
    if (r.proof) out["proof"] = proof_to_json(*f.domain, *r.proof);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << outcome_name(r.outcome) << ": " << print_sequent(*f.domain, s) << "\n";
    if (r.proof) std::cout << emit_proof(cfg, *r.proof, s, ProofFormat::Text);
  }
  return exit_for(r.outcome);
}

int cmd_check(const std::string& seq_file, const std::string& proof_file) {
  SequentFile f = parse_file(seq_file, parse_sequent_file);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(proof_file));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(proof_file + ": " + e.what());
  }
  if (j.is_object() && j.contains("proof")) j = j["proof"];
  ProofNode p = proof_from_json(j, *f.domain, f.table);
  KernelConfig cfg;
  cfg.domain = f.domain;
  Sequent s = expand_sequent(*f.domain, f.sequent);
  Verdict v = check_proof(cfg, p, s);
  if (v.valid) {
    std::cout << "valid: " << p.size() << " nodes\n";
    return kYes;
  }
  std::cout << "invalid at [";
  for (std::size_t i = 0; i < v.path.size(); ++i) std::cout << (i ? " " : "") << v.path[i];
  std::cout << "]: " << v.reason << "\n";
  return kNo;
}

struct BioArgs {
  std::string model;
  std::string reach, invariant;
  bool stable = false;
  int at = -1, within = -1;
  bool sell = false;
  std::string style = "per-fact";
  SearchFlags search;
};

Query bio_query(const BioModel& m, const BioArgs& a) {
  int picked = !a.reach.empty() + !a.invariant.empty() + a.stable;
  if (picked != 1) throw InputError("give exactly one of --reach, --invariant, --stable");
  if ((a.at >= 0) == (a.within >= 0)) throw InputError("give exactly one of --at, --within");
  Query q;
  q.time = static_cast<unsigned>(a.at >= 0 ? a.at : a.within);
  if (!a.reach.empty()) {
    q.kind = a.at >= 0 ? Query::Kind::ReachAt : Query::Kind::ReachWithin;
    q.facts = parse_facts(m, a.reach);
  } else if (!a.invariant.empty()) {
    q.kind = Query::Kind::InvariantUpTo;
    q.facts = parse_facts(m, a.invariant);
  } else {
    q.kind = Query::Kind::StableState;
  }
  return q;
}

int cmd_bio(const BioArgs& a) {
  BioModel m = parse_file(a.model, parse_model);
  Query q = bio_query(m, a);
  SearchBudget b = a.search.budget();
  const ConstraintDomain& d = temporal_domain();
  if (a.sell) {
    SellBioAnswer r = answer_sell(m, q, b, a.style == "paper" ? SellStyle::Paper : SellStyle::PerFact);
    if (a.search.structured()) {
      nlohmann::json out{{"verdict", std::string(verdict_name(r.verdict))},
                         {"sequent", print_sell_sequent(r.sequent)},
                         {"stats", stats_json(r.stats)}};
      if (r.proof) out["proof"] = sell_json(*r.proof);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << verdict_name(r.verdict) << ": " << print_sell_sequent(r.sequent) << "\n";
      if (r.proof) {
        std::string text;
        sell_text(r.sig, *r.proof, &r.sequent, 0, text);
        std::cout << text;
      }
    }
    return exit_for(r.verdict);
  }
  BioAnswer r = answer(m, q, b);
  if (a.search.structured()) {
    nlohmann::json out{{"verdict", std::string(verdict_name(r.verdict))},
                       {"sequent", print_sequent(d, r.sequent)},
                       {"stats", stats_json(r.stats)}};
    if (r.proof) out["proof"] = proof_to_json(d, *r.proof);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << verdict_name(r.verdict) << ": " << print_judgment(d, r.sequent.goal) << "\n";
    if (r.proof) std::cout << emit_proof(KernelConfig{}, *r.proof, r.sequent, ProofFormat::Text);
  }
  return exit_for(r.verdict);
}

int cmd_sell_prove(const std::string& file, const std::string& sig_file, const SearchFlags& flags) {
  SubexpSignature sig = validate_signature(parse_signature(slurp(sig_file)));
  SellSequent s = parse_file(file, [&](const std::string& t) { return parse_sell_sequent(sig, t); });
  auto r = prove_sell(sig, s, flags.budget());
  SellSequent e = expand_sell_sequent(sig, s);
  if (flags.structured()) {
    nlohmann::json out{{"outcome", std::string(outcome_name(r.outcome))},
                       {"sequent", print_sell_sequent(e)},
                       {"stats", stats_json(r.stats)}};
    if (r.proof) out["proof"] = sell_json(*r.proof);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << outcome_name(r.outcome) << ": " << print_sell_sequent(e) << "\n";
    if (r.proof) {
      std::string text;
      sell_text(sig, *r.proof, &e, 0, text);
      std::cout << text;
    }
  }
  return exit_for(r.outcome);
}

int cmd_encode(const std::string& model, unsigned horizon, const std::string& style) {
  BioModel m = parse_file(model, parse_model);
  SellTheory t = compile_model_sell(m, horizon, style == "paper" ? SellStyle::Paper : SellStyle::PerFact);
  std::cout << "# signature\nlabels";
  for (const auto& l : t.sig.labels()) std::cout << " " << l;
  std::cout << "\n";
  for (const auto& a : t.sig.labels())
    for (const auto& b : t.sig.labels())
      if (a != b && t.sig.leq(a, b)) std::cout << "edge " << a << " " << b << "\n";
  std::cout << "unbounded";
  for (const auto& l : t.sig.labels())
    if (t.sig.unbounded(l)) std::cout << " " << l;
  std::cout << "\n# rules, stored under " << kCopyLabel << "\n";
  for (const auto& r : t.rules) std::cout << print_sell_formula(r) << "\n";
  std::cout << "# facts\n";
  for (const auto& f : t.facts) std::cout << print_sell_formula(f) << "\n";
  return kYes;
}

int cmd_selftest(const std::vector<int>& only) {
  using namespace hylls::acceptance;
  std::vector<int> ids = only.empty() ? criterion_ids() : only;
  int failed = 0;
  for (int id : ids) {
    CriterionResult r = run_criterion(id);
    std::cout << format_result(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria pass\n";
  return failed ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid linear logic and subexponential prover"};
  app.require_subcommand(1);

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "Search for a proof of a HyLL sequent");
  prove_cmd->add_option("file", pa.file, "Sequent file");
  prove_cmd->add_option("--goal", pa.goal, "Goal formula, instead of a file");
  prove_cmd->add_option("--world", pa.world, "World of the goal")->capture_default_str();
  prove_cmd->add_option("--gamma", pa.gamma, "Unbounded hypothesis \"F @ w\"");
  prove_cmd->add_option("--delta", pa.delta, "Linear hypothesis \"F @ w\"");
  prove_cmd->add_option("--domain", pa.domain, "temporal or prob")->capture_default_str();
  prove_cmd->add_flag("--naive", pa.naive, "Unfocused reference search");
  pa.search.add(prove_cmd);

  std::string seq_file, proof_file;
  auto* check_cmd = app.add_subcommand("check", "Check a structured proof against a sequent file");
  check_cmd->add_option("sequent", seq_file, "Sequent file")->required();
  check_cmd->add_option("proof", proof_file, "Structured proof (JSON)")->required();

  BioArgs ba;
  auto* bio_cmd = app.add_subcommand("bio", "Answer a query about a biological model");
  bio_cmd->add_option("model", ba.model, "Model file")->required();
  bio_cmd->add_option("--reach", ba.reach, "Facts to reach, comma separated");
  bio_cmd->add_option("--invariant", ba.invariant, "Facts reachable at every step");
  bio_cmd->add_flag("--stable", ba.stable, "The initial state at every step");
  bio_cmd->add_option("--at", ba.at, "Exact time");
  bio_cmd->add_option("--within", ba.within, "Horizon");
  bio_cmd->add_flag("--sell", ba.sell, "Search the SELL encoding instead");
  bio_cmd->add_option("--style", ba.style, "SELL rule form: per-fact or paper")
      ->check(CLI::IsMember({"per-fact", "paper"}));
  ba.search.depth = 40;
  ba.search.add(bio_cmd);

  std::string sell_file, sig_file;
  SearchFlags sell_flags;
  auto* sell_cmd = app.add_subcommand("sell-prove", "Search for a proof of a SELL sequent");
  sell_cmd->add_option("file", sell_file, "SELL sequent file")->required();
  sell_cmd->add_option("--sig", sig_file, "Signature file")->required();
  sell_flags.add(sell_cmd);

  std::string enc_model, enc_style = "per-fact";
  unsigned enc_horizon = 3;
  auto* enc_cmd = app.add_subcommand("encode", "Print the SELL theory of a model");
  enc_cmd->add_option("model", enc_model, "Model file")->required();
  enc_cmd->add_option("--horizon", enc_horizon, "Last stamp")->capture_default_str();
  enc_cmd->add_option("--style", enc_style, "per-fact or paper")->check(CLI::IsMember({"per-fact", "paper"}));

  std::vector<int> only;
  auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance criteria");
  self_cmd->add_option("criteria", only, "Criterion numbers; all when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*prove_cmd) return cmd_prove(pa);
    if (*check_cmd) return cmd_check(seq_file, proof_file);
    if (*bio_cmd) return cmd_bio(ba);
    if (*sell_cmd) return cmd_sell_prove(sell_file, sig_file, sell_flags);
    if (*enc_cmd) return cmd_encode(enc_model, enc_horizon, enc_style);
    if (*self_cmd) return cmd_selftest(only);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
