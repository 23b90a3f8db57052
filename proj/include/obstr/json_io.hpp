#pragma once
/**
 * @file json_io.hpp
 * @brief JSON group, filtration and catalog descriptions, and the JSON
 * form of reports, verdicts, search results and enumeration cursors.
 */

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "obstr/classify.hpp"
#include "obstr/families.hpp"
#include "obstr/gm.hpp"
#include "obstr/obstructions.hpp"
#include "obstr/ramification.hpp"

namespace obstr::io {

using Json = nlohmann::ordered_json;

/// Group from a shorthand string ("dihedral:8", "sd:16", "catalog:A4", ...)
/// or an object {"kind": ..., parameters}. Throws ParseError.
GroupPtr parse_group(const Json& spec);
/// A command-line argument: JSON text, "@path" to a JSON file, or a shorthand.
Json read_spec_argument(const std::string& text);

/// {"p": p, "chain": [{"from": i, "subgroup": ...}, ...], "tame": {"generator": g}}.
/// A subgroup is a member list, {"generators": [...]}, or one of "whole",
/// "trivial", "sylow", "center". The data is built without validation.
/// Throws ParseError.
LocalActionData parse_filtration(const GroupPtr& G, const Json& spec, std::optional<int> p = std::nullopt);

struct CatalogEntry {
  std::string name;
  Json group_spec;
  GroupPtr group;
  std::optional<int> p;
  std::optional<Json> filtration_spec;
  std::optional<TameCharacterDatum> tame;
};
/// An array of entries or {"entries": [...]}; entries with a filtration are
/// checked structurally. Throws ParseError, InadmissibleChain.
std::vector<CatalogEntry> parse_catalog(const Json& doc);

ValidationLevel parse_level(const std::string& name);
const char* level_name(ValidationLevel level);
SearchMode parse_mode(const std::string& name);
DqsFamily parse_family(const std::string& name);

/// Reduced "num/den", the denominator always present.
std::string rational_string(const Rational& r);
Rational parse_rational(const Json& value);

Json subgroup_json(const Subgroup& H);
Json filtration_json(const LocalActionData& data);
Json violations_json(const std::vector<Violation>& v);
Json b_table_json(const LocalActionData& data, const BValues& b);
Json bertin_json(const BertinVerdict& v, const std::optional<std::vector<GSetOrbit>>& gset);
Json kgb_json(const KgbVerdict& v);
Json reducetop_json(const ReduceTopReport& r);
/// Invariants and verdicts of every closed-form family G belongs to.
Json family_json(const LocalActionData& data);

/// Full report; `group_spec` and `level` are echoed so the report re-parses.
Json report_json(const Json& group_spec, const LocalActionData& data, ValidationLevel level);
/// Rebuilds the data from the echoed input, re-validates it and compares
/// every b value. Returns the list of mismatches (empty on success).
std::vector<std::string> check_report(const Json& report);

Json cursor_json(const EnumerationCursor& c);
EnumerationCursor parse_cursor(const Json& j);

Json search_json(const Json& group_spec, int p, const SearchResult& r);
Json gm_json(const GroupTable& G, int p);
Json dqs_family_verdict_json(const DqsInvariants& inv);
Json cpxcp_json(int p, long long i0, bool deep);
Json quotient_screen_json(const QuotientScreenResult& r);

/// Deterministic text: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace obstr::io
