/**
 * @file obstr.cpp
 * @brief Command-line front end: analyze, classify, search, enumerate, gm
 * and family subcommands emitting deterministic JSON.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obstr/builders.hpp"
#include "obstr/classify.hpp"
#include "obstr/errors.hpp"
#include "obstr/families.hpp"
#include "obstr/json_io.hpp"
#include "obstr/version.hpp"

namespace {

using obstr::io::Json;

constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;

/// Raised when input data fails validation; carries the violations.
struct ValidationFailure {
  std::vector<obstr::Violation> violations;
};

void emit(const Json& j, const std::string& out) {
  const std::string text = obstr::io::dump(j);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw obstr::Error(obstr::ErrorCode::ParseError, "cannot write " + out);
  f << text;
}

void error_json(const std::string& code, const std::string& message, const Json& extra = Json()) {
  Json e{{"code", code}, {"message", message}};
  if (!extra.is_null()) e["violations"] = extra;
  std::cerr << Json{{"error", e}}.dump() << "\n";
}

unsigned thread_count(unsigned flag) {
  if (const char* env = std::getenv("OBSTR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw obstr::Error(obstr::ErrorCode::BadParameter, "OBSTR_THREADS must be a positive integer");
    }
  }
  return flag;
}

std::vector<long long> split_ints(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw obstr::Error(obstr::ErrorCode::ParseError, "not an integer: " + item);
    }
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw obstr::Error(obstr::ErrorCode::ParseError, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw obstr::Error(obstr::ErrorCode::ParseError, path + ": " + e.what());
  }
}

/// The built-in elliptic curve chain, offered when G is the builder's SL_2(3).
std::vector<obstr::LocalActionData> builtin_seeds(obstr::GroupPtr& G, int p) {
  if (p != 2 || G->order() != 24) return {};
  auto seed = obstr::sl23_elliptic_data();
  if (G->table() != seed.group()->table()) return {};
  G = seed.group();
  return {seed};
}

struct AnalyzeArgs {
  std::string group, filtration, level = "arithmetic", out, catalog;
  int p = 0;
  std::optional<int> theta;
};

Json analyze_one(const Json& group_spec, const obstr::GroupPtr& G, const Json& filt_spec, std::optional<int> p,
                 std::optional<int> theta, obstr::ValidationLevel level) {
  auto data = obstr::io::parse_filtration(G, filt_spec, p);
  if (theta) data.tame = obstr::TameCharacterDatum{*theta};
  auto v = obstr::validate(data, level);
  if (!v.empty()) throw ValidationFailure{v};
  return obstr::io::report_json(group_spec, data, level);
}

void run_analyze(const AnalyzeArgs& a) {
  const auto level = obstr::io::parse_level(a.level);
  std::optional<int> p;
  if (a.p > 0) p = a.p;
  if (!a.catalog.empty()) {
    auto entries = obstr::io::parse_catalog(read_json_file(a.catalog));
    Json reports = Json::array();
    for (const auto& e : entries) {
      if (!e.filtration_spec) continue;
      auto theta = a.theta;
      if (!theta && e.tame) theta = e.tame->generator;
      Json r = analyze_one(e.group_spec, e.group, *e.filtration_spec, e.p ? e.p : p, theta, level);
      reports.push_back({{"name", e.name}, {"report", r}});
    }
    emit({{"version", obstr::kVersion}, {"reports", reports}}, a.out);
    return;
  }
  if (a.group.empty() || a.filtration.empty())
    throw obstr::Error(obstr::ErrorCode::ParseError, "analyze needs --group and --filtration, or --catalog");
  Json gspec = obstr::io::read_spec_argument(a.group);
  auto G = obstr::io::parse_group(gspec);
  Json fspec = obstr::io::read_spec_argument(a.filtration);
  emit(analyze_one(gspec, G, fspec, p, a.theta, level), a.out);
}

struct SearchArgs {
  std::string group, mode = "bertin", out, checkpoint, resume;
  int p = 0;
  long long jump_bound = 20, min_jump = 1, max_nodes = 20'000'000;
  unsigned threads = 0;
  bool no_seeds = false;
};

struct SearchRun {
  Json group_spec;
  int p = 0;
  obstr::SearchResult result;
  long long previous_instances = 0;
};

SearchRun do_search(SearchArgs a) {
  SearchRun run;
  obstr::SearchOptions opt;
  std::optional<Json> checkpoint;
  if (!a.resume.empty()) {
    checkpoint = read_json_file(a.resume);
    const auto& c = *checkpoint;
    a.group.clear();
    run.group_spec = c.at("group");
    a.p = c.at("p").get<int>();
    a.mode = c.at("mode").get<std::string>();
    a.jump_bound = c.at("jump_bound").get<long long>();
    a.min_jump = c.at("min_jump").get<long long>();
    run.previous_instances = c.value("instances", 0LL);
    if (!c.at("cursor").is_null()) opt.resume_after = obstr::io::parse_cursor(c["cursor"]);
  } else {
    if (a.group.empty() || a.p <= 0) throw obstr::Error(obstr::ErrorCode::ParseError, "search needs --group and -p");
    run.group_spec = obstr::io::read_spec_argument(a.group);
  }
  auto G = obstr::io::parse_group(run.group_spec);
  run.p = a.p;
  opt.jump_bound = a.jump_bound;
  opt.min_jump = a.min_jump;
  opt.mode = obstr::io::parse_mode(a.mode);
  opt.threads = thread_count(a.threads);
  opt.max_nodes = a.max_nodes;
  auto seeds = builtin_seeds(G, a.p);
  if (!a.no_seeds && !checkpoint) opt.seeds = std::move(seeds);
  run.result = obstr::counterexample_search(G, a.p, opt);
  run.result.instances += run.previous_instances;
  return run;
}

Json checkpoint_json(const SearchRun& run) {
  const auto& r = run.result;
  return {{"version", obstr::kVersion},
          {"group", run.group_spec},
          {"p", run.p},
          {"mode", obstr::search_mode_name(r.mode)},
          {"jump_bound", r.jump_bound},
          {"min_jump", r.min_jump},
          {"instances", r.instances},
          {"outcome", obstr::search_outcome_name(r.outcome)},
          {"cursor", r.cursor ? obstr::io::cursor_json(*r.cursor) : Json(nullptr)}};
}

void run_search(const SearchArgs& a) {
  auto run = do_search(a);
  if (!a.checkpoint.empty()) emit(checkpoint_json(run), a.checkpoint);
  emit(obstr::io::search_json(run.group_spec, run.p, run.result), a.out);
}

void run_classify(const SearchArgs& a) {
  if (a.group.empty() || a.p <= 0) throw obstr::Error(obstr::ErrorCode::ParseError, "classify needs --group and -p");
  Json gspec = obstr::io::read_spec_argument(a.group);
  auto G = obstr::io::parse_group(gspec);
  Json j;
  j["version"] = obstr::kVersion;
  j["group"] = gspec;
  j["p"] = a.p;
  j["order"] = G->order();
  j["lists"] = {{"kgb", obstr::kgb_list_membership(*G, a.p)},
                {"almost", obstr::almost_list_membership(*G, a.p)},
                {"entry", obstr::list_entry_name(*G, a.p)}};
  try {
    j["quotient_screen"] = obstr::io::quotient_screen_json(obstr::quotient_screen(*G, a.p));
  } catch (const obstr::Error& e) {
    if (e.code() != obstr::ErrorCode::CapExceeded) throw;
    j["quotient_screen"] = nullptr;
  }
  auto run = do_search(a);
  j["search"] = obstr::io::search_json(run.group_spec, run.p, run.result);
  emit(j, a.out);
}

struct EnumerateArgs {
  std::string group, level = "arithmetic", out, summary;
  int p = 0;
  long long jump_bound = 20, min_jump = 1, limit = -1, max_nodes = 20'000'000;
};

void run_enumerate(const EnumerateArgs& a) {
  Json gspec = obstr::io::read_spec_argument(a.group);
  auto G = obstr::io::parse_group(gspec);
  obstr::EnumerationOptions eo;
  eo.jump_bound = a.jump_bound;
  eo.min_first_wild_jump = a.min_jump;
  eo.level = obstr::io::parse_level(a.level);
  eo.max_nodes = a.max_nodes;
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary);
    if (!file) throw obstr::Error(obstr::ErrorCode::ParseError, "cannot write " + a.out);
    os = &file;
  }
  auto st = obstr::enumerate_filtrations(G, a.p, eo, [&](const obstr::LocalActionData& d, long long idx) {
    Json line{{"index", idx}, {"lower_jumps", d.filt.lower_jumps()}, {"filtration", obstr::io::filtration_json(d)}};
    *os << line.dump() << "\n";
    return a.limit < 0 || idx + 1 < a.limit;
  });
  Json s{{"version", obstr::kVersion}, {"group", gspec},         {"p", a.p},
         {"level", a.level},         {"jump_bound", a.jump_bound}, {"min_jump", a.min_jump},
         {"emitted", st.emitted},    {"nodes", st.nodes},         {"max_jump", st.max_jump},
         {"capped", st.capped},      {"stopped", st.stopped}};
  s["cursor"] = st.emitted ? obstr::io::cursor_json(st.last) : Json(nullptr);
  if (os != &std::cout || !a.summary.empty()) emit(s, a.summary);
}

struct FamilyArgs {
  std::string family, i, d, out;
  int p = 2;
  bool deep = false;
};

void run_family(const FamilyArgs& a) {
  Json j;
  j["version"] = obstr::kVersion;
  const auto i = split_ints(a.i);
  if (a.family == "cpxcp") {
    if (i.size() != 1) throw obstr::Error(obstr::ErrorCode::BadParameter, "cpxcp takes one value --i i0");
    j["cpxcp"] = obstr::io::cpxcp_json(a.p, i[0], a.deep);
  } else {
    auto inv = obstr::dqs_invariants_from(obstr::io::parse_family(a.family), a.p, i,
                                          a.d.empty() ? std::vector<long long>{} : split_ints(a.d));
    j["dqs"] = obstr::io::dqs_family_verdict_json(inv);
  }
  emit(j, a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bertin and KGB obstructions for local actions on curves"};
  app.set_version_flag("--version", std::string("obstr ") + obstr::kVersion);
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Report b coefficients and obstruction verdicts for one filtration");
  c_an->add_option("--group", an.group, "Group spec: shorthand, JSON text or @file");
  c_an->add_option("-p", an.p, "Prime");
  c_an->add_option("--filtration", an.filtration, "Filtration spec: JSON text or @file");
  c_an->add_option("--theta", an.theta, "Generator of C fixing the tame character");
  c_an->add_option("--level", an.level, "structural, arithmetic or strict");
  c_an->add_option("--out", an.out, "Output file (default stdout)");
  c_an->add_option("--catalog", an.catalog, "Catalog file; analyzes every entry with a filtration");

  SearchArgs cl;
  auto* c_cl = app.add_subcommand("classify", "List membership, quotient screen and counterexample search");
  SearchArgs se;
  auto* c_se = app.add_subcommand("search", "Counterexample search with checkpoints");
  for (auto [cmd, args] : {std::pair{c_cl, &cl}, std::pair{c_se, &se}}) {
    cmd->add_option("--group", args->group, "Group spec");
    cmd->add_option("-p", args->p, "Prime");
    cmd->add_option("--jump-bound", args->jump_bound, "Largest lower jump");
    cmd->add_option("--mode", args->mode, "bertin or kgb");
    cmd->add_option("--min-jump", args->min_jump, "Smallest first wild lower jump");
    cmd->add_option("--threads", args->threads, "Worker threads (0 for all cores; OBSTR_THREADS overrides)");
    cmd->add_option("--max-nodes", args->max_nodes, "Enumeration node cap");
    cmd->add_flag("--no-builtin-seeds", args->no_seeds, "Skip the built-in seed instances");
    cmd->add_option("--out", args->out, "Output file (default stdout)");
  }
  c_se->add_option("--checkpoint", se.checkpoint, "Write a resumable checkpoint here");
  c_se->add_option("--resume", se.resume, "Continue from a checkpoint file");

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("enumerate", "Stream every valid filtration as JSON lines");
  c_en->add_option("--group", en.group, "Group spec")->required();
  c_en->add_option("-p", en.p, "Prime")->required();
  c_en->add_option("--jump-bound", en.jump_bound, "Largest lower jump");
  c_en->add_option("--min-jump", en.min_jump, "Smallest first wild lower jump");
  c_en->add_option("--level", en.level, "structural, arithmetic or strict");
  c_en->add_option("--limit", en.limit, "Stop after this many data");
  c_en->add_option("--max-nodes", en.max_nodes, "Enumeration node cap");
  c_en->add_option("--out", en.out, "JSON lines file (default stdout)");
  c_en->add_option("--summary", en.summary, "Summary file (default stdout when --out is a file)");

  std::string gm_group, gm_out;
  int gm_p = 0;
  auto* c_gm = app.add_subcommand("gm", "Green-Matignon test by definition and by forbidden subgroups");
  c_gm->add_option("--group", gm_group, "Group spec")->required();
  c_gm->add_option("-p", gm_p, "Prime")->required();
  c_gm->add_option("--out", gm_out, "Output file (default stdout)");

  FamilyArgs fa;
  auto* c_fa = app.add_subcommand("family", "Closed-form verdicts from family invariants");
  c_fa->add_option("--family", fa.family, "dihedral, quaternion, semidihedral or cpxcp")->required();
  c_fa->add_option("--i", fa.i, "Comma-separated i vector (i0 for cpxcp)")->required();
  c_fa->add_option("--d", fa.d, "Comma-separated d0,d1,d2 (p = 2)");
  c_fa->add_option("-p", fa.p, "Prime (default 2)");
  c_fa->add_flag("--deep", fa.deep, "cpxcp: G_{i0+1} is non-trivial");
  c_fa->add_option("--out", fa.out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_an->parsed()) run_analyze(an);
    if (c_cl->parsed()) run_classify(cl);
    if (c_se->parsed()) run_search(se);
    if (c_en->parsed()) run_enumerate(en);
    if (c_gm->parsed()) {
      Json gspec = obstr::io::read_spec_argument(gm_group);
      emit(obstr::io::gm_json(*obstr::io::parse_group(gspec), gm_p), gm_out);
    }
    if (c_fa->parsed()) run_family(fa);
  } catch (const ValidationFailure& f) {
    error_json("InvalidData", obstr::describe(f.violations), obstr::io::violations_json(f.violations));
    return kExitInvalid;
  } catch (const obstr::Error& e) {
    error_json(obstr::error_code_name(e.code()), e.what());
    const bool invalid = e.code() == obstr::ErrorCode::InadmissibleChain || e.code() == obstr::ErrorCode::NotNormal ||
                         e.code() == obstr::ErrorCode::InvalidData;
    return invalid ? kExitInvalid : kExitError;
  } catch (const nlohmann::json::exception& e) {
    error_json("ParseError", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    error_json("InternalError", e.what());
    return kExitError;
  }
  return 0;
}
