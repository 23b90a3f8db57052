/**
 * @file test_ramification.cpp
 * @brief Filtrations, Artin characters, Herbrand transforms, restriction,
 * quotient and admissibility rules.
 */
#include <doctest.h>

#include <random>

#include "obstr/builders.hpp"
#include "obstr/lattice.hpp"
#include "obstr/ramification.hpp"

using namespace obstr;

namespace {

LocalActionData q8_special_chain() {
  auto G = generalized_quaternion(8);
  Subgroup Z = center(*G);
  return chain_filtration(G, 2, {{0, whole_group(*G)}, {2, Z}, {4, trivial_subgroup(*G)}});
}

LocalActionData a4_chain(long long r, ValidationLevel level = ValidationLevel::Structural) {
  auto G = a4();
  Subgroup E = *normal_sylow(*G, 2);
  return make_data(G, 2, {{0, whole_group(*G)}, {1, E}, {r + 1, trivial_subgroup(*G)}});
}

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
  for (const auto& x : v)
    if (x.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("cyclic filtrations place lower jumps at partial sums weighted by p^j") {
  auto d = cyclic_filtration(3, 2, {1, 2});
  CHECK(d.filt.lower_jumps() == std::vector<long long>{1, 7});
  auto up = cyclic_upper_jumps(d.filt);
  REQUIRE(up.size() == 2);
  CHECK(up[0] == Rational(1));
  CHECK(up[1] == Rational(3));

  auto c2 = cyclic_filtration(2, 1, {3});
  CHECK(c2.filt.at(3LL).order() == 2);
  CHECK(c2.filt.at(4LL).is_trivial());

  auto c6 = cyclic_filtration(3, 1, {1}, 2);
  CHECK(c6.filt.lower_jumps() == std::vector<long long>{0, 2});
  CHECK(validate(c6, ValidationLevel::Arithmetic).empty());

  CHECK_THROWS_AS(cyclic_filtration(4, 1, {1}), Error);
  CHECK_THROWS_AS(cyclic_filtration(3, 1, {0}), Error);
}

TEST_CASE("iota on cyclic p-power filtrations") {
  auto d = cyclic_filtration(3, 2, {1, 2});
  const auto& G = *d.group();
  Subgroup H = whole_group(G);
  Subgroup H3 = cyclic_subgroup(G, 3);
  CHECK(iota(d, H) == 2);
  CHECK(iota(d, H3) == 1 + 1 + 3 * 2);
  CHECK_THROWS_AS(iota(d, trivial_subgroup(G)), Error);

  auto t = cyclic_filtration(5, 1, {2}, 4);
  CHECK(iota(t, cyclic_subgroup(*t.group(), 5)) == 1);
}

TEST_CASE("Artin character: tame, C2 and the quaternion chain") {
  auto tame = cyclic_filtration(7, 0, {}, 6);
  auto a = artin_character(tame).a;
  CHECK(a.at(0) == Rational(5));
  for (int g = 1; g < 6; ++g) CHECK(a.at(g) == Rational(-1));

  auto c2 = cyclic_filtration(2, 1, {5});
  CHECK(artin_character(c2).a.at(1) == Rational(-6));

  auto q = q8_special_chain();
  const auto& G = *q.group();
  auto aq = artin_character(q);
  CHECK(aq.a.at(0) == Rational(16));
  for (int g = 1; g < 8; ++g) {
    if (G.elem_order(g) == 4) CHECK(aq.a.at(g) == Rational(-2));
    if (G.elem_order(g) == 2) CHECK(aq.a.at(g) == Rational(-4));
  }
  CHECK(inner_product(aq.a, trivial_character(q.group())) == Rational(0));
  CHECK(iota(q, center(G)) == 4);
  for (const auto& S : all_cyclic_subgroups(G))
    if (S.order() == 4) CHECK(iota(q, S) == 2);
}

TEST_CASE("Herbrand transforms") {
  auto d = cyclic_filtration(2, 3, {1, 2, 4});
  for (int u = 0; u <= 1; ++u) CHECK(herbrand_phi(d.filt, u) == Rational(u));
  auto back = lower_from_upper(d.group(), 2, upper_filtration(d.filt));
  CHECK(back == d.filt);
  for (long long u : {0LL, 1LL, 3LL, 7LL, 20LL}) CHECK(herbrand_psi(d.filt, herbrand_phi(d.filt, u)) == Rational(u));

  auto A = a4_chain(5);
  for (long long u = 0; u <= 5; ++u) CHECK(herbrand_phi(A.filt, u) == Rational(u, 3));
  CHECK(upper_group(A.filt, Rational(1, 3)).order() == 4);
  auto back4 = lower_from_upper(A.group(), 2, upper_filtration(A.filt));
  CHECK(back4 == A.filt);

  UpperFiltration bad;
  bad.jumps = {Rational(1, 2)};
  bad.groups = {whole_group(*cyclic(2))};
  CHECK_THROWS_AS(lower_from_upper(cyclic(2), 2, bad), Error);
}

TEST_CASE("restriction identity and lambda") {
  auto q = q8_special_chain();
  auto R = restrict_to(q, center(*q.group()));
  CHECK(R.lambda == Rational(6));
  CHECK(R.data.filt.lower_jumps() == std::vector<long long>{3});

  auto whole = restrict_to(q, whole_group(*q.group()));
  CHECK(whole.lambda == Rational(0));

  auto t = cyclic_filtration(3, 1, {2}, 4);
  auto tame_part = restrict_to(t, cyclic_subgroup(*t.group(), 3));
  CHECK(tame_part.data.filt.lower_jumps() == std::vector<long long>{0});

  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<long long> iv;
    for (int j = 0; j < n; ++j) iv.push_back(1 + static_cast<long long>(rng() % 5));
    int m = trial % 2 ? 1 : 3;
    auto d = cyclic_filtration(2, n, iv, m);
    const auto& subs = all_cyclic_subgroups(*d.group());
    const auto& H = subs[rng() % subs.size()];
    CHECK_NOTHROW(restrict_to(d, H));
  }
}

TEST_CASE("quotient by upper pushforward") {
  auto d = cyclic_filtration(2, 2, {1, 2});
  CHECK(d.filt.lower_jumps() == std::vector<long long>{1, 5});
  auto Q = quotient(d, cyclic_subgroup(*d.group(), 2));
  CHECK(Q.data.group()->order() == 2);
  CHECK(Q.data.filt.lower_jumps() == std::vector<long long>{1});

  auto same = quotient(d, trivial_subgroup(*d.group()));
  CHECK(same.data.filt.lower_jumps() == d.filt.lower_jumps());

  auto S = sl2_3();
  auto dq = make_data(S, 2, {{0, whole_group(*S)}, {1, *normal_sylow(*S, 2)}, {2, trivial_subgroup(*S)}});
  auto nonnormal = all_cyclic_subgroups(*S);
  for (const auto& K : nonnormal)
    if (K.order() == 3) {
      CHECK_THROWS_AS(quotient(dq, K), Error);
      break;
    }
}

TEST_CASE("validation examples") {
  auto tame = cyclic_filtration(5, 0, {}, 4);
  CHECK(validate(tame, ValidationLevel::Structural).empty());
  CHECK(validate(tame, ValidationLevel::Arithmetic).empty());

  auto q = q8_special_chain();
  CHECK(validate(q, ValidationLevel::Arithmetic).empty());

  auto D = dihedral(6);
  Subgroup P = *normal_sylow(*D, 3);
  auto even = make_data(D, 3, {{0, whole_group(*D)}, {1, P}, {3, trivial_subgroup(*D)}});
  CHECK(has_rule(validate(even, ValidationLevel::Structural), "tame_module"));
  auto v = validate(even, ValidationLevel::Arithmetic);
  REQUIRE(has_rule(v, "i0_odd"));
  bool named = false;
  for (const auto& x : v) named = named || x.detail.find("i0 must be odd") != std::string::npos;
  CHECK(named);
  auto odd = make_data(D, 3, {{0, whole_group(*D)}, {1, P}, {2, trivial_subgroup(*D)}});
  CHECK(validate(odd, ValidationLevel::Arithmetic).empty());

  CHECK(validate(a4_chain(5), ValidationLevel::Arithmetic).empty());
  CHECK(has_rule(validate(a4_chain(3), ValidationLevel::Structural), "tame_module"));
  CHECK(has_rule(validate(a4_chain(2), ValidationLevel::Arithmetic), "first_jump_prime_to_p"));

  auto K = klein();
  Subgroup two = cyclic_subgroup(*K, 1);
  auto ha = make_data(K, 2, {{0, whole_group(*K)}, {2, two}, {3, trivial_subgroup(*K)}});
  CHECK(has_rule(validate(ha, ValidationLevel::Structural), "hasse_arf"));

  auto D8 = dihedral(8);
  Subgroup refl;
  for (const auto& S : all_cyclic_subgroups(*D8))
    if (S.order() == 2 && !is_normal(*D8, S)) {
      refl = S;
      break;
    }
  auto nn = make_data(D8, 2, {{0, whole_group(*D8)}, {2, refl}, {3, trivial_subgroup(*D8)}});
  auto vn = validate(nn, ValidationLevel::Structural);
  REQUIRE(!vn.empty());
  CHECK(vn.front().rule == "normality");
  CHECK_THROWS_AS(chain_filtration(D8, 2, nn.filt.chain), Error);

  Validator val(D8, 2);
  auto first = val.first_violation(nn, ValidationLevel::Arithmetic);
  REQUIRE(first.has_value());
  CHECK(first->rule == "normality");

  auto wrongp = make_data(cyclic(6), 3, {{0, whole_group(*cyclic(6))}, {2, trivial_subgroup(*cyclic(6))}});
  CHECK(has_rule(validate(wrongp, ValidationLevel::Structural), "wild_inertia"));
}

TEST_CASE("elementary quotient rule") {
  auto G = cyclic(4);
  auto d = make_data(G, 2, {{0, whole_group(*G)}, {3, trivial_subgroup(*G)}});
  CHECK(has_rule(validate(d, ValidationLevel::Structural), "elementary_quotient"));
}
