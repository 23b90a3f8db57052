/**
 * @file json_io.cpp
 * @brief Parsing of group, filtration and catalog descriptions and the
 * JSON form of every result the command-line tool emits.
 */

#include "obstr/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "obstr/builders.hpp"
#include "obstr/catalog.hpp"
#include "obstr/errors.hpp"
#include "obstr/lattice.hpp"
#include "obstr/version.hpp"

namespace obstr::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<long long> int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) parse_error("not an integer: " + item);
    } catch (const std::logic_error&) {
      parse_error("not an integer: " + item);
    }
  }
  return out;
}

int need_int(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) parse_error(std::string("missing integer field ") + key);
  return obj[key].get<int>();
}

int single(const std::vector<long long>& v, const std::string& what) {
  if (v.size() != 1) parse_error(what + " takes one integer parameter");
  return static_cast<int>(v[0]);
}

GroupPtr catalog_group(const std::string& name) {
  for (const auto& list : {property_catalog(), gm_catalog()})
    for (const auto& e : list)
      if (e.name == name) return e.G;
  parse_error("unknown catalog group " + name);
}

GroupPtr named_group(const std::string& kind, const std::vector<long long>& args) {
  if (kind == "cyclic" || kind == "c") return cyclic(single(args, kind));
  if (kind == "dihedral" || kind == "d") return dihedral(single(args, kind));
  if (kind == "quaternion" || kind == "q") return generalized_quaternion(single(args, kind));
  if (kind == "semidihedral" || kind == "sd") return semidihedral(single(args, kind));
  if (kind == "heisenberg") return heisenberg(single(args, kind));
  if (kind == "elem") {
    if (args.size() != 2) parse_error("elem takes p,d");
    return elem_abelian(static_cast<int>(args[0]), static_cast<int>(args[1]));
  }
  if (kind == "abelian") {
    if (args.empty()) parse_error("abelian takes a list of factor orders");
    return abelian(std::vector<int>(args.begin(), args.end()));
  }
  if (!args.empty()) parse_error(kind + " takes no parameters");
  if (kind == "klein" || kind == "v4") return klein();
  if (kind == "a4") return a4();
  if (kind == "sl2_3" || kind == "sl23" || kind == "sl2(3)") return sl2_3();
  parse_error("unknown group kind " + kind);
}

GroupPtr parse_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = lower(text.substr(0, colon));
  if (kind == "catalog") {
    if (colon == std::string::npos) parse_error("catalog needs a name");
    return catalog_group(text.substr(colon + 1));
  }
  std::vector<long long> args;
  if (colon != std::string::npos) args = int_list(text.substr(colon + 1));
  return named_group(kind, args);
}

std::vector<std::vector<int>> int_matrix(const Json& j) {
  if (!j.is_array()) parse_error("expected a matrix");
  std::vector<std::vector<int>> m;
  for (const auto& row : j) m.push_back(row.get<std::vector<int>>());
  return m;
}

GroupPtr parse_group_object(const Json& spec) {
  if (!spec.contains("kind") || !spec["kind"].is_string()) parse_error("group object needs a kind");
  const std::string kind = lower(spec["kind"].get<std::string>());
  if (kind == "cyclic") return cyclic(spec.contains("n") ? need_int(spec, "n") : need_int(spec, "order"));
  if (kind == "dihedral" || kind == "quaternion" || kind == "semidihedral")
    return named_group(kind, {need_int(spec, "order")});
  if (kind == "elem") return elem_abelian(need_int(spec, "p"), need_int(spec, "d"));
  if (kind == "abelian") return abelian(spec.at("factors").get<std::vector<int>>());
  if (kind == "heisenberg") return heisenberg(need_int(spec, "p"));
  if (kind == "klein" || kind == "a4" || kind == "sl2_3") return named_group(kind, {});
  if (kind == "catalog") return catalog_group(spec.at("name").get<std::string>());
  if (kind == "direct") {
    const auto& f = spec.at("factors");
    if (!f.is_array() || f.empty()) parse_error("direct needs a non-empty factor list");
    GroupPtr G = parse_group(f[0]);
    for (size_t k = 1; k < f.size(); ++k) G = direct_product(*G, *parse_group(f[k]));
    return G;
  }
  if (kind == "semidirect") {
    const int m = need_int(spec, "c_order");
    if (spec.contains("modulus")) return module_semidirect(need_int(spec, "modulus"), m, int_matrix(spec.at("matrix")));
    GroupPtr P = parse_group(spec.at("base"));
    if (spec.contains("action")) return semidirect(*P, m, spec["action"].get<std::vector<int>>());
    if (spec.contains("generators")) {
      auto act = automorphism_from_images(*P, spec["generators"].get<std::vector<int>>(),
                                          spec.at("images").get<std::vector<int>>());
      return semidirect(*P, m, act);
    }
    if (spec.contains("matrix")) {
      const int p = need_int(spec, "p");
      return linear_semidirect(p, m, int_matrix(spec["matrix"]));
    }
    parse_error("semidirect needs action, generators/images, or matrix");
  }
  if (kind == "table") return build_group(spec.at("table").get<std::vector<std::vector<int>>>());
  parse_error("unknown group kind " + kind);
}

Subgroup parse_subgroup(const GroupTable& G, int p, const Json& j) {
  if (j.is_string()) {
    const std::string k = lower(j.get<std::string>());
    if (k == "whole") return whole_group(G);
    if (k == "trivial") return trivial_subgroup(G);
    if (k == "center") return center(G);
    if (k == "sylow") {
      auto P = normal_sylow(G, p);
      if (!P) throw Error(ErrorCode::NotCyclicByP, "no normal Sylow subgroup");
      return *P;
    }
    parse_error("unknown subgroup keyword " + k);
  }
  std::vector<int> elems;
  bool gens = false;
  if (j.is_array()) {
    elems = j.get<std::vector<int>>();
  } else if (j.is_object() && j.contains("generators")) {
    elems = j["generators"].get<std::vector<int>>();
    gens = true;
  } else if (j.is_object() && j.contains("members")) {
    elems = j["members"].get<std::vector<int>>();
  } else {
    parse_error("a subgroup is a member list, {\"generators\": [...]} or a keyword");
  }
  for (int x : elems)
    if (x < 0 || x >= G.order()) parse_error("element index " + std::to_string(x) + " out of range");
  if (gens) return generated(G, elems);
  if (!is_subgroup(G, elems)) parse_error("member list is not a subgroup");
  return make_subgroup(G, elems);
}

Json tri_json(Tri t) { return tri_name(t); }

Json gm_verdict_json(const GmVerdict& v) {
  Json j;
  j["is_gm"] = v.is_gm;
  if (v.witness_theta)
    j["theta"] = {{"residue", *v.witness_theta}, {"modulus", v.theta_modulus}};
  else
    j["theta"] = nullptr;
  if (v.violation) {
    j["violation"] = {{"condition", v.violation->condition},
                      {"witness", subgroup_json(v.violation->witness)},
                      {"element", v.violation->element},
                      {"detail", v.violation->detail}};
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

Json group_header(const Json& group_spec, const GroupTable& G) {
  return {{"spec", group_spec}, {"order", G.order()}};
}

Json b_entries(const std::vector<FamilyBEntry>& b) {
  Json out = Json::array();
  for (const auto& e : b) {
    Json row{{"label", e.label}, {"value", rational_string(e.value)}};
    if (e.T) row["subgroup"] = subgroup_json(*e.T);
    out.push_back(row);
  }
  return out;
}

Json dqs_verdict_json(const DqsVerdict& v) {
  Json conds = Json::array();
  for (const auto& [name, ok] : v.conditions) conds.push_back({{"condition", name}, {"holds", ok}});
  Json j{{"vanishes", v.vanishes}, {"conditions", conds}, {"conditions_hold", v.conditions_hold}};
  if (v.congruence) j["congruence"] = *v.congruence;
  return j;
}

bool is_elementary_pp(const GroupTable& G, int p) {
  if (G.order() != p * p || !G.is_abelian()) return false;
  for (int g = 1; g < G.order(); ++g)
    if (G.elem_order(g) != p) return false;
  return true;
}

}  // namespace

GroupPtr parse_group(const Json& spec) {
  try {
    if (spec.is_string()) return parse_shorthand(spec.get<std::string>());
    if (spec.is_object()) return parse_group_object(spec);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("group spec: ") + e.what());
  }
  parse_error("a group spec is a string or an object");
}

Json read_spec_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) parse_error("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (body[first] == '{' || body[first] == '[' || body[first] == '"')) {
    try {
      return Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      parse_error(std::string("invalid JSON: ") + e.what());
    }
  }
  return body;
}

LocalActionData parse_filtration(const GroupPtr& G, const Json& spec, std::optional<int> p) {
  try {
    if (!spec.is_object()) parse_error("a filtration spec is an object");
    if (spec.contains("p")) {
      const int fp = spec["p"].get<int>();
      if (p && *p != fp) parse_error("filtration prime differs from -p");
      p = fp;
    }
    if (!p) parse_error("the filtration needs a prime p");
    if (!spec.contains("chain") || !spec["chain"].is_array() || spec["chain"].empty())
      parse_error("the filtration needs a non-empty chain");
    std::vector<FiltrationSegment> chain;
    for (const auto& seg : spec["chain"]) {
      if (!seg.contains("from")) parse_error("chain entry without from");
      FiltrationSegment s;
      s.from = seg["from"].get<long long>();
      if (seg.contains("subgroup"))
        s.group = parse_subgroup(*G, *p, seg["subgroup"]);
      else if (seg.contains("generators"))
        s.group = parse_subgroup(*G, *p, Json{{"generators", seg["generators"]}});
      else if (seg.contains("members"))
        s.group = parse_subgroup(*G, *p, seg["members"]);
      else
        parse_error("chain entry without subgroup");
      chain.push_back(std::move(s));
    }
    std::optional<TameCharacterDatum> tame;
    if (spec.contains("tame") && !spec["tame"].is_null()) tame = TameCharacterDatum{need_int(spec["tame"], "generator")};
    return make_data(G, *p, chain, tame);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("filtration spec: ") + e.what());
  }
}

std::vector<CatalogEntry> parse_catalog(const Json& doc) {
  const Json* list = &doc;
  if (doc.is_object() && doc.contains("entries")) list = &doc["entries"];
  if (!list->is_array()) parse_error("a catalog is an array of entries");
  std::vector<CatalogEntry> out;
  try {
    for (const auto& e : *list) {
      CatalogEntry c;
      c.name = e.value("name", std::string("entry") + std::to_string(out.size()));
      if (!e.contains("group")) parse_error("catalog entry " + c.name + " has no group");
      c.group_spec = e["group"];
      c.group = parse_group(c.group_spec);
      if (e.contains("p")) c.p = e["p"].get<int>();
      if (e.contains("tame") && !e["tame"].is_null()) c.tame = TameCharacterDatum{need_int(e["tame"], "generator")};
      if (e.contains("filtration")) {
        c.filtration_spec = e["filtration"];
        auto data = parse_filtration(c.group, *c.filtration_spec, c.p);
        if (!c.p) c.p = data.p();
        if (c.tame) data.tame = c.tame;
        auto v = validate(data, ValidationLevel::Structural);
        if (!v.empty()) throw Error(ErrorCode::InadmissibleChain, c.name + ": " + describe(v));
      }
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& ex) {
    parse_error(std::string("catalog: ") + ex.what());
  }
  return out;
}

ValidationLevel parse_level(const std::string& name) {
  const std::string n = lower(name);
  if (n == "structural") return ValidationLevel::Structural;
  if (n == "arithmetic") return ValidationLevel::Arithmetic;
  if (n == "strict") return ValidationLevel::Strict;
  parse_error("unknown level " + name);
}

const char* level_name(ValidationLevel level) {
  switch (level) {
    case ValidationLevel::Structural: return "structural";
    case ValidationLevel::Arithmetic: return "arithmetic";
    case ValidationLevel::Strict: return "strict";
  }
  return "";
}

SearchMode parse_mode(const std::string& name) {
  const std::string n = lower(name);
  if (n == "bertin") return SearchMode::Bertin;
  if (n == "kgb") return SearchMode::Kgb;
  parse_error("unknown search mode " + name);
}

DqsFamily parse_family(const std::string& name) {
  const std::string n = lower(name);
  if (n == "dihedral" || n == "d") return DqsFamily::Dihedral;
  if (n == "quaternion" || n == "q") return DqsFamily::Quaternion;
  if (n == "semidihedral" || n == "sd") return DqsFamily::Semidihedral;
  parse_error("unknown family " + name);
}

std::string rational_string(const Rational& r) { return r.numerator_str() + "/" + r.denominator_str(); }

Rational parse_rational(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (!value.is_string()) parse_error("a rational is an integer or a \"num/den\" string");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    parse_error(std::string("bad rational: ") + e.what());
  }
}

Json subgroup_json(const Subgroup& H) { return H.members(); }

Json filtration_json(const LocalActionData& data) {
  Json chain = Json::array();
  for (const auto& s : data.filt.chain) chain.push_back({{"from", s.from}, {"subgroup", subgroup_json(s.group)}});
  Json j{{"p", data.p()}, {"chain", chain}};
  if (data.tame) j["tame"] = {{"generator", data.tame->generator}};
  return j;
}

Json violations_json(const std::vector<Violation>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back({{"rule", x.rule}, {"detail", x.detail}});
  return out;
}

Json b_table_json(const LocalActionData& data, const BValues& b) {
  Json out = Json::array();
  for (const auto& e : b) {
    Json row{{"subgroup", subgroup_json(e.T)}, {"order", e.T.order()}};
    if (!e.T.is_trivial()) row["iota"] = iota(data, e.T);
    row["value"] = rational_string(e.value);
    out.push_back(row);
  }
  return out;
}

Json bertin_json(const BertinVerdict& v, const std::optional<std::vector<GSetOrbit>>& gset) {
  Json off = Json::array();
  for (const auto& T : v.offenders) off.push_back(subgroup_json(T));
  Json j{{"vanishes", v.vanishes}, {"offenders", off}};
  if (gset) {
    Json orbits = Json::array();
    for (const auto& o : *gset) orbits.push_back({{"stabilizer", subgroup_json(o.T)}, {"multiplicity", o.multiplicity}});
    j["gset"] = orbits;
  } else {
    j["gset"] = nullptr;
  }
  return j;
}

Json kgb_json(const KgbVerdict& v) {
  Json w = Json::array();
  for (const auto& e : v.witness) w.push_back({{"class", subgroup_json(e.T)}, {"generator", e.generator}});
  return {{"vanishes", v.vanishes}, {"witness", w}};
}

Json reducetop_json(const ReduceTopReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back({{"condition", it.condition}, {"verdict", tri_name(it.verdict)}, {"detail", it.detail}});
  return {{"a", tri_json(r.a)},   {"b", tri_json(r.b)},
          {"c", tri_json(r.c)},   {"d", tri_json(r.d)},
          {"overall", tri_json(r.overall)}, {"items", items}};
}

Json family_json(const LocalActionData& data) {
  const auto& G = *data.group();
  const int p = data.p();
  Json out = Json::object();
  if (!dqs_shapes(G, p).empty()) {
    try {
      auto inv = dqs_invariants(data);
      out["dqs"] = dqs_family_verdict_json(inv);
    } catch (const Error& e) {
      out["dqs"] = {{"error", error_code_name(e.code())}, {"message", e.what()}};
    }
  }
  try {
    auto r = sl23_analyze(data);
    out["sl2_3"] = {{"bertin_g", r.bertin_g},       {"bertin_p", r.bertin_p},
                    {"kgb_g", r.kgb_g},             {"kgb_p", r.kgb_p},
                    {"equivalent", r.equivalent},   {"i0", r.i0},
                    {"i1", r.i1},                   {"hbound_applicable", r.hbound_applicable},
                    {"hbound_holds", r.hbound_holds}, {"gamma_b_holds", r.gamma_b_holds},
                    {"c_and_j_hold", r.c_and_j_hold}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WrongGroup) throw;
  }
  try {
    auto t = a4_b(data);
    out["a4"] = {{"h2", subgroup_json(t.H2)},
                 {"h3", subgroup_json(t.H3)},
                 {"iota_h2", t.iota_h2},
                 {"b_h2", rational_string(t.b_h2)},
                 {"b_h3", rational_string(t.b_h3)}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WrongGroup) throw;
  }
  if (is_elementary_pp(G, p) && data.filt.chain.size() >= 2) {
    const auto jumps = data.filt.lower_jumps();
    const long long i0 = jumps.front();
    const bool deep = !data.filt.at(i0 + 1).is_trivial();
    if (!deep || jumps.size() == 2) out["cpxcp"] = cpxcp_json(p, i0, deep);
  }
  return out;
}

Json report_json(const Json& group_spec, const LocalActionData& data, ValidationLevel level) {
  const auto& G = *data.group();
  auto violations = validate(data, level);
  Json j;
  j["version"] = kVersion;
  j["input"] = {{"group", group_spec}, {"filtration", filtration_json(data)}, {"level", level_name(level)}};
  j["group"] = group_header(group_spec, G);
  j["p"] = data.p();
  Json upper = Json::array();
  for (const auto& u : upper_filtration(data.filt).jumps) upper.push_back(rational_string(u));
  j["jumps"] = {{"lower", data.filt.lower_jumps()}, {"upper", upper}};
  j["validation"] = {{"level", level_name(level)}, {"valid", violations.empty()}, {"violations", violations_json(violations)}};
  auto rep = analyze(data);
  j["b"] = b_table_json(data, rep.b);
  j["m"] = rational_string(rep.m);
  j["bertin"] = bertin_json(rep.bertin, bertin_gset(data));
  j["kgb"] = kgb_json(rep.kgb);
  j["reducetop"] = reducetop_json(reducetop(data));
  j["families"] = family_json(data);
  return j;
}

std::vector<std::string> check_report(const Json& report) {
  std::vector<std::string> bad;
  const auto& input = report.at("input");
  GroupPtr G = parse_group(input.at("group"));
  auto data = parse_filtration(G, input.at("filtration"));
  const auto level = parse_level(input.at("level").get<std::string>());
  auto v = validate(data, level);
  const bool valid = v.empty();
  if (valid != report.at("validation").at("valid").get<bool>()) bad.push_back("validation verdict differs");
  auto b = b_coefficients(data);
  const auto& rb = report.at("b");
  if (rb.size() != b.size()) {
    bad.push_back("b table size differs");
    return bad;
  }
  for (size_t k = 0; k < b.size(); ++k) {
    if (rb[k].at("subgroup").get<std::vector<int>>() != b[k].T.members())
      bad.push_back("b row " + std::to_string(k) + " subgroup differs");
    if (parse_rational(rb[k].at("value")) != b[k].value) bad.push_back("b row " + std::to_string(k) + " value differs");
  }
  if (bertin_from_values(b).vanishes != report.at("bertin").at("vanishes").get<bool>())
    bad.push_back("bertin verdict differs");
  if (kgb_from_values(data, b).vanishes != report.at("kgb").at("vanishes").get<bool>())
    bad.push_back("kgb verdict differs");
  return bad;
}

Json cursor_json(const EnumerationCursor& c) {
  Json chain = Json::array();
  for (const auto& [from, members] : c.chain) chain.push_back({{"from", from}, {"subgroup", members}});
  return {{"index", c.index}, {"chain", chain}};
}

EnumerationCursor parse_cursor(const Json& j) {
  try {
    EnumerationCursor c;
    c.index = j.at("index").get<long long>();
    for (const auto& s : j.at("chain"))
      c.chain.emplace_back(s.at("from").get<long long>(), s.at("subgroup").get<std::vector<int>>());
    return c;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("cursor: ") + e.what());
  }
}

Json search_json(const Json& group_spec, int p, const SearchResult& r) {
  Json j;
  j["version"] = kVersion;
  j["group"] = group_spec;
  j["p"] = p;
  j["mode"] = search_mode_name(r.mode);
  j["outcome"] = search_outcome_name(r.outcome);
  j["jump_bound"] = r.jump_bound;
  j["min_jump"] = r.min_jump;
  j["instances"] = r.instances;
  j["max_jump"] = r.max_jump;
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"from_seed", w.from_seed},
                    {"index", w.index},
                    {"filtration", filtration_json(w.data)},
                    {"lower_jumps", w.data.filt.lower_jumps()},
                    {"b", b_table_json(w.data, w.report.b)},
                    {"bertin", bertin_json(w.report.bertin, std::nullopt)},
                    {"kgb", kgb_json(w.report.kgb)},
                    {"realizability", w.from_seed ? "realized by the elliptic curve chain" : "not certified"}};
  } else {
    j["witness"] = nullptr;
  }
  j["cursor"] = r.cursor ? cursor_json(*r.cursor) : Json(nullptr);
  return j;
}

Json gm_json(const GroupTable& G, int p) {
  auto def = is_gm_definition(G, p);
  auto forb = is_gm_forbidden(G, p);
  Json j;
  j["version"] = kVersion;
  j["p"] = p;
  j["order"] = G.order();
  j["is_gm"] = def.is_gm;
  j["definition"] = gm_verdict_json(def);
  j["forbidden"] = gm_verdict_json(forb);
  j["agree"] = def.is_gm == forb.is_gm;
  return j;
}

Json dqs_family_verdict_json(const DqsInvariants& inv) {
  Json j;
  j["family"] = dqs_family_name(inv.family);
  j["p"] = inv.p;
  j["n"] = inv.n;
  j["i"] = inv.i_vector;
  if (inv.p == 2) j["d"] = inv.d_vector;
  j["c"] = inv.c_vector;
  if (inv.p == 2) j["d_admissible"] = dqs_d_admissible(inv);
  j["b"] = b_entries(dqs_b_closed_form(inv));
  j["bertin"] = dqs_verdict_json(dqs_bertin(inv));
  j["kgb"] = dqs_verdict_json(dqs_kgb(inv));
  return j;
}

Json cpxcp_json(int p, long long i0, bool deep) {
  auto v = cpxcp(p, i0, deep);
  Json j{{"p", p}, {"i0", i0}, {"deep", deep}, {"bertin", v.bertin}, {"kgb", v.kgb}, {"solver_used", v.solver_used}};
  j["solution"] = v.solution ? Json(*v.solution) : Json(nullptr);
  return j;
}

Json quotient_screen_json(const QuotientScreenResult& r) {
  Json j;
  if (r.witness)
    j["witness"] = {{"kernel", subgroup_json(r.witness->N)},
                    {"shape", r.witness->shape},
                    {"description", r.witness->description}};
  else
    j["witness"] = nullptr;
  j["residual_class"] = r.residual_class;
  j["residual_verified"] = r.residual_verified;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace obstr::io
