#include "hylls/proof_io.hpp"

#include <sstream>

namespace hylls {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

SequentFile parse_sequent_file(const std::string& text) {
  SequentFile out;
  std::vector<Judgment> gamma, delta;
  std::optional<Judgment> goal;
  std::istringstream in(text);
  std::string raw;
  std::size_t offset = 0;
  while (std::getline(in, raw)) {
    std::size_t line_start = offset;
    offset += raw.size() + 1;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto head = words(line);
    if (head[0] == "domain") {
      if (head.size() != 2) throw ParseError(ParseError::Kind::Syntax, line_start, "expected 'domain NAME'");
      try {
        out.domain = &domain_by_name(head[1]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(ParseError::Kind::Undeclared, line_start, e.what());
      }
    } else if (head[0] == "worlds") {
      out.table.world_vars.insert(head.begin() + 1, head.end());
    } else if (head[0] == "vars") {
      out.table.term_vars.insert(head.begin() + 1, head.end());
    } else if (colon != std::string::npos) {
      std::string key = trim(line.substr(0, colon));
      std::string body = line.substr(colon + 1);
      std::size_t body_offset = line_start + raw.find(':') + 1;
      Judgment j;
      try {
        j = parse_judgment(body, *out.domain, out.table);
      } catch (const ParseError& e) {
        throw ParseError(e.kind(), body_offset + e.offset(), std::string(e.what()).substr(std::string(e.what()).find(':') + 2));
      }
      if (key == "gamma")
        gamma.push_back(j);
      else if (key == "delta")
        delta.push_back(j);
      else if (key == "goal") {
        if (goal) throw ParseError(ParseError::Kind::Syntax, line_start, "duplicate goal");
        goal = j;
      } else
        throw ParseError(ParseError::Kind::Syntax, line_start, "unknown section '" + key + "'");
    } else {
      throw ParseError(ParseError::Kind::Syntax, line_start, "unrecognised line");
    }
  }
  if (!goal) throw ParseError(ParseError::Kind::Syntax, offset, "missing goal");
  out.sequent = make_sequent(std::move(gamma), std::move(delta), std::move(*goal));
  return out;
}

std::string print_sequent_file(const SequentFile& f) {
  const auto& d = *f.domain;
  std::string out = "domain " + d.name() + "\n";
  auto decl = [&](const char* kw, const std::set<std::string>& names) {
    if (names.empty()) return;
    out += kw;
    for (const auto& n : names) out += " " + n;
    out += "\n";
  };
  decl("worlds", f.table.world_vars);
  decl("vars", f.table.term_vars);
  for (const auto& j : f.sequent.gamma) out += "gamma: " + print_judgment(d, j) + "\n";
  for (const auto& j : f.sequent.delta) out += "delta: " + print_judgment(d, j) + "\n";
  out += "goal: " + print_judgment(d, f.sequent.goal) + "\n";
  return out;
}

nlohmann::json proof_to_json(const ConstraintDomain& d, const ProofNode& p) {
  nlohmann::json j;
  j["rule"] = std::string(rule_name(p.rule));
  switch (p.principal.zone) {
    case Principal::Zone::None:
      break;
    case Principal::Zone::Goal:
      j["principal"] = {{"zone", "goal"}};
      break;
    case Principal::Zone::Delta:
      j["principal"] = {{"zone", "delta"}, {"index", p.principal.index}};
      break;
    case Principal::Zone::Gamma:
      j["principal"] = {{"zone", "gamma"}, {"index", p.principal.index}};
      break;
  }
  nlohmann::json w = nlohmann::json::object();
  if (p.witness.split) {
    auto arr = nlohmann::json::array();
    for (const auto& x : *p.witness.split) arr.push_back(print_judgment(d, x));
    w["split"] = arr;
  }
  if (p.witness.term) w["term"] = print_term(*p.witness.term);
  if (p.witness.world) w["world"] = print_world(d, *p.witness.world);
  if (p.witness.eigen) w["eigen"] = *p.witness.eigen;
  if (!w.empty()) j["witness"] = w;
  auto kids = nlohmann::json::array();
  for (const auto& c : p.premises) kids.push_back(proof_to_json(d, c));
  j["premises"] = kids;
  return j;
}

ProofNode proof_from_json(const nlohmann::json& j, const ConstraintDomain& d, SymbolTable& table) {
  if (!j.is_object()) throw std::invalid_argument("proof node must be an object");
  ProofNode p;
  auto rule = rule_from_name(j.at("rule").get<std::string>());
  if (!rule) throw std::invalid_argument("unknown rule '" + j.at("rule").get<std::string>() + "'");
  p.rule = *rule;
  if (j.contains("principal")) {
    const auto& pr = j.at("principal");
    auto zone = pr.at("zone").get<std::string>();
    if (zone == "goal")
      p.principal = Principal::goal();
    else if (zone == "delta")
      p.principal = Principal::delta(pr.at("index").get<std::size_t>());
    else if (zone == "gamma")
      p.principal = Principal::gamma(pr.at("index").get<std::size_t>());
    else
      throw std::invalid_argument("unknown principal zone '" + zone + "'");
  }
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    if (w.contains("split")) {
      std::vector<Judgment> split;
      for (const auto& x : w.at("split")) split.push_back(parse_judgment(x.get<std::string>(), d, table));
      p.witness.split = std::move(split);
    }
    if (w.contains("term")) {
      TokenStream ts(tokenize(w.at("term").get<std::string>()));
      p.witness.term = parse_term(ts, table, {});
      if (!ts.at_end()) ts.fail("trailing input after term");
    }
    if (w.contains("world")) p.witness.world = parse_world(w.at("world").get<std::string>(), d, table);
    if (w.contains("eigen")) p.witness.eigen = w.at("eigen").get<std::string>();
  }
  if (j.contains("premises"))
    for (const auto& c : j.at("premises")) p.premises.push_back(proof_from_json(c, d, table));
  return p;
}

namespace {

void emit_text(const KernelConfig& cfg, const ProofNode& p, const Sequent* s, unsigned depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += rule_name(p.rule);
  out += ": ";
  out += s ? print_judgment(*cfg.domain, s->goal) : "?";
  out += '\n';
  std::vector<Sequent> prem;
  bool ok = false;
  if (s) {
    try {
      prem = rule_premises(cfg, p.rule, *s, p.principal, p.witness);
      ok = prem.size() == p.premises.size();
    } catch (const KernelError&) {
    }
  }
  for (std::size_t i = 0; i < p.premises.size(); ++i)
    emit_text(cfg, p.premises[i], ok ? &prem[i] : nullptr, depth + 1, out);
}

}  // namespace

std::string emit_proof(const KernelConfig& cfg, const ProofNode& p, const Sequent& s, ProofFormat format) {
  if (format == ProofFormat::Structured) return proof_to_json(*cfg.domain, p).dump(2) + "\n";
  std::string out;
  emit_text(cfg, p, &s, 0, out);
  return out;
}

}  // namespace hylls
