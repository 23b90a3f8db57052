/**
 * @file test_json_io.cpp
 * @brief Group and filtration specifications, report round trips and
 * cursor serialization.
 */
#include <doctest.h>

#include <random>

#include "obstr/builders.hpp"
#include "obstr/catalog.hpp"
#include "obstr/errors.hpp"
#include "obstr/json_io.hpp"
#include "obstr/lattice.hpp"
#include "obstr/sampling.hpp"

using namespace obstr;
using io::Json;

TEST_CASE("group shorthands and objects") {
  CHECK(are_isomorphic(*io::parse_group("dihedral:8"), *dihedral(8)));
  CHECK(are_isomorphic(*io::parse_group("d:18"), *dihedral(18)));
  CHECK(are_isomorphic(*io::parse_group("q:16"), *generalized_quaternion(16)));
  CHECK(are_isomorphic(*io::parse_group("sd:16"), *semidihedral(16)));
  CHECK(io::parse_group("c:12")->order() == 12);
  CHECK(io::parse_group("klein")->order() == 4);
  CHECK(io::parse_group("sl2_3")->order() == 24);
  CHECK(io::parse_group("elem:3,2")->order() == 9);
  CHECK(io::parse_group("abelian:4,2")->order() == 8);
  CHECK(io::parse_group("heisenberg:3")->order() == 27);
  CHECK(are_isomorphic(*io::parse_group("catalog:A4"), *a4()));

  CHECK(are_isomorphic(*io::parse_group(Json{{"kind", "semidihedral"}, {"order", 16}}), *semidihedral(16)));
  auto z4sq = io::parse_group(Json{{"kind", "semidirect"}, {"modulus", 4}, {"c_order", 3}, {"matrix", {{0, 3}, {1, 3}}}});
  CHECK(z4sq->order() == 48);
  auto a4b = io::parse_group(Json{{"kind", "semidirect"},
                                  {"base", "elem:2,2"},
                                  {"c_order", 3},
                                  {"generators", {1, 2}},
                                  {"images", {2, 3}}});
  CHECK(are_isomorphic(*a4b, *a4()));
  auto tab = io::parse_group(Json{{"kind", "table"}, {"table", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}});
  CHECK(tab->order() == 3);
  CHECK(io::parse_group(Json{{"kind", "direct"}, {"factors", {"c:2", "c:3"}}})->order() == 6);

  CHECK_THROWS_AS(io::parse_group("nonsense:3"), Error);
  CHECK_THROWS_AS(io::parse_group("dihedral:x"), Error);
  CHECK_THROWS_AS(io::parse_group(Json{{"kind", "cyclic"}}), Error);
  CHECK_THROWS_AS(io::parse_group("catalog:none"), Error);
}

TEST_CASE("spec arguments") {
  CHECK(io::read_spec_argument("sd:16") == Json("sd:16"));
  CHECK(io::read_spec_argument(R"({"kind":"a4"})")["kind"] == "a4");
  CHECK_THROWS_AS(io::read_spec_argument("{bad"), Error);
}

TEST_CASE("filtration specs with keywords and generators") {
  auto G = generalized_quaternion(8);
  Json spec = Json::parse(R"({"p":2,"chain":[{"from":0,"subgroup":"whole"},{"from":2,"subgroup":"center"},
                                            {"from":4,"subgroup":"trivial"}]})");
  auto d = io::parse_filtration(G, spec);
  CHECK(validate(d, ValidationLevel::Arithmetic).empty());
  CHECK(d.filt.lower_jumps() == std::vector<long long>{1, 3});
  auto back = io::parse_filtration(G, io::filtration_json(d));
  CHECK(back.filt == d.filt);

  auto D = dihedral(8);
  Json bad = Json::parse(R"({"p":2,"chain":[{"from":0,"subgroup":"whole"},{"from":2,"subgroup":{"generators":[4]}},
                                           {"from":3,"subgroup":"trivial"}]})");
  auto v = validate(io::parse_filtration(D, bad), ValidationLevel::Structural);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().rule == "normality");

  CHECK_THROWS_AS(io::parse_filtration(D, Json::parse(R"({"chain":[]})"), 2), Error);
  CHECK_THROWS_AS(io::parse_filtration(D, Json::parse(R"({"p":3,"chain":[{"from":0,"subgroup":"whole"}]})"), 2), Error);
  CHECK_THROWS_AS(io::parse_filtration(D, Json::parse(R"({"p":2,"chain":[{"from":0,"subgroup":[0,1]}]})")), Error);
  CHECK_THROWS_AS(io::parse_filtration(D, Json::parse(R"({"p":2,"chain":[{"from":0,"subgroup":[0,99]}]})")), Error);

  auto C6 = cyclic(6);
  auto t = io::parse_filtration(C6, Json::parse(R"({"p":3,"chain":[{"from":0,"subgroup":"whole"},
      {"from":1,"subgroup":"sylow"},{"from":3,"subgroup":"trivial"}],"tame":{"generator":3}})"));
  REQUIRE(t.tame);
  CHECK(t.tame->generator == 3);
}

TEST_CASE("rational strings") {
  CHECK(io::rational_string(Rational(-1, 2)) == "-1/2");
  CHECK(io::rational_string(Rational(3)) == "3/1");
  CHECK(io::rational_string(Rational(0)) == "0/1");
  CHECK(io::parse_rational("6/4") == Rational(3, 2));
  CHECK(io::parse_rational(Json(5)) == Rational(5));
  CHECK_THROWS_AS(io::parse_rational(Json(0.5)), Error);
}

TEST_CASE("Q8 report") {
  auto G = generalized_quaternion(8);
  auto d = io::parse_filtration(G, Json::parse(R"({"p":2,"chain":[{"from":0,"subgroup":"whole"},
      {"from":2,"subgroup":"center"},{"from":4,"subgroup":"trivial"}]})"));
  auto r = io::report_json("q:8", d, ValidationLevel::Arithmetic);
  CHECK(r["b"][1]["order"] == 2);
  CHECK(r["b"][1]["value"] == "-1/2");
  CHECK(r["bertin"]["vanishes"] == false);
  CHECK(r["validation"]["valid"] == true);
  CHECK(r["families"].contains("dqs"));
  CHECK(io::check_report(Json::parse(io::dump(r))).empty());
  Json tampered = r;
  tampered["b"][1]["value"] = "1/2";
  CHECK_FALSE(io::check_report(tampered).empty());
}

TEST_CASE("reports round trip on sampled instances") {
  std::mt19937_64 rng(20261014);
  int checked = 0;
  for (const auto& e : property_catalog()) {
    if (e.G->order() > 48) continue;
    Sampler s(e.G, e.p);
    for (int k = 0; k < 3; ++k) {
      auto d = s.draw(rng);
      if (!d) continue;
      auto r = io::report_json("catalog:" + e.name, *d, ValidationLevel::Structural);
      auto text = io::dump(r);
      CHECK(text == io::dump(io::report_json("catalog:" + e.name, *d, ValidationLevel::Structural)));
      auto bad = io::check_report(Json::parse(text));
      CHECK_MESSAGE(bad.empty(), e.name);
      ++checked;
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("catalog documents") {
  Json doc = Json::parse(R"({"entries":[
      {"name":"q8","group":"q:8","p":2,"filtration":{"chain":[{"from":0,"subgroup":"whole"},
          {"from":2,"subgroup":"center"},{"from":4,"subgroup":"trivial"}]}},
      {"name":"a4","group":{"kind":"a4"},"p":2}]})");
  auto entries = io::parse_catalog(doc);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "q8");
  CHECK(entries[0].filtration_spec.has_value());
  CHECK(entries[1].group->order() == 12);
  CHECK_FALSE(entries[1].filtration_spec.has_value());

  Json bad = Json::parse(R"([{"name":"x","group":"d:8","p":2,"filtration":{"chain":[{"from":0,"subgroup":"whole"},
      {"from":2,"subgroup":{"generators":[4]}},{"from":3,"subgroup":"trivial"}]}}])");
  CHECK_THROWS_AS(io::parse_catalog(bad), Error);
}

TEST_CASE("cursor and search serialization") {
  EnumerationCursor c;
  c.index = 7;
  c.chain = {{0, {0, 1, 2, 3}}, {3, {0}}};
  auto back = io::parse_cursor(io::cursor_json(c));
  CHECK(back.index == 7);
  CHECK(back.chain == c.chain);

  SearchOptions opt;
  opt.threads = 1;
  auto r = counterexample_search(semidihedral(16), 2, opt);
  auto j = io::search_json("sd:16", 2, r);
  CHECK(j["outcome"] == "counterexample found");
  CHECK(j["witness"]["realizability"] == "not certified");
  CHECK(j["cursor"]["index"] == r.witness->index);
}

TEST_CASE("gm and family verdict json") {
  auto g = io::gm_json(*a4(), 2);
  CHECK(g["is_gm"] == true);
  CHECK(g["agree"] == true);
  auto f = io::cpxcp_json(3, 2, false);
  CHECK(f["bertin"] == true);
  CHECK(f["kgb"] == false);
  auto q = io::dqs_family_verdict_json(dqs_invariants_from(DqsFamily::Quaternion, 2, {1, 2}, {2, 2, 2}));
  CHECK(q["family"] == "quaternion");
  CHECK(q["b"][0]["label"] == "e");
}
