/**
 * @file acceptance.cpp
 * @brief Acceptance run: one exact check per criterion and one PASS or FAIL
 * line each. The exit status is zero when the failing criteria are exactly
 * those passed to --expect-red (none by default).
 */

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "obstr/builders.hpp"
#include "obstr/catalog.hpp"
#include "obstr/classify.hpp"
#include "obstr/families.hpp"
#include "obstr/gm.hpp"
#include "obstr/lattice.hpp"
#include "obstr/obstructions.hpp"
#include "obstr/sampling.hpp"

using namespace obstr;

namespace {

/// Collects the first few failure messages of one criterion.
struct Check {
  long long failures = 0;
  std::vector<std::string> messages;
  std::ostringstream info;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (messages.size() < 5) messages.push_back(what);
  }
};

std::vector<LocalActionData> random_suite(int count, ValidationLevel level, unsigned seed) {
  std::vector<LocalActionData> out;
  std::mt19937_64 rng(seed);
  SamplerOptions opt;
  opt.level = level;
  std::vector<Sampler> samplers;
  for (const auto& c : property_catalog()) samplers.emplace_back(c.G, c.p, opt);
  for (int k = 0; static_cast<int>(out.size()) < count && k < count * 8; ++k)
    if (auto d = samplers[static_cast<size_t>(k) % samplers.size()].draw(rng)) out.push_back(std::move(*d));
  return out;
}

std::string rs(const Rational& r) { return r.str(); }

void criterion1(Check& c) {
  auto G = generalized_quaternion(8);
  auto d = chain_filtration(G, 2, {{0, whole_group(*G)}, {2, center(*G)}, {4, trivial_subgroup(*G)}});
  auto b = b_coefficients(d);
  const Rational bz = b_value(b, *G, center(*G));
  c.expect(bz == Rational(-1, 2), "b_Z = " + rs(bz));
  c.expect(!bertin_vanishes(d).vanishes, "Bertin vanishes");
  c.info << "Q8 special chain: b_Z = " << rs(bz) << ", Bertin fails";
}

void criterion2(Check& c) {
  int checked = 0;
  for (int p : {2, 3, 5, 7}) {
    auto G = elem_abelian(p, 2);
    for (long long i0 = 1; i0 <= 30; ++i0) {
      auto d = make_data(G, p, {{0, whole_group(*G)}, {i0 + 1, trivial_subgroup(*G)}});
      if (!validate(d, ValidationLevel::Structural).empty()) continue;
      ++checked;
      const bool expect = (i0 + 1) % p == 0;
      c.expect(bertin_vanishes(d).vanishes == expect, "p=" + std::to_string(p) + " i0=" + std::to_string(i0));
      c.expect(cpxcp(p, i0, false).bertin == expect, "closed form p=" + std::to_string(p) + " i0=" + std::to_string(i0));
    }
  }
  auto data = [](int p, long long i0) { return cpxcp_data(p, i0); };
  auto d3 = data(3, 2);
  c.expect(bertin_vanishes(d3).vanishes, "p=3 i0=2 Bertin");
  c.expect(!kgb_vanishes(d3).vanishes, "p=3 i0=2 KGB vanishes");
  c.expect(!cpxcp(3, 2, false).kgb, "p=3 i0=2 closed-form KGB vanishes");
  auto d2 = data(2, 1);
  c.expect(bertin_vanishes(d2).vanishes && kgb_vanishes(d2).vanishes, "p=2 i0=1 not both vanishing");
  auto w = cpxcp(2, 1, false);
  c.expect(w.kgb && w.solution && *w.solution == std::vector<long long>{1, 1, 1}, "p=2 witness is not (1,1,1)");
  auto d5 = data(5, 4);
  c.expect(bertin_vanishes(d5).vanishes && kgb_vanishes(d5).vanishes, "p=5 i0=4 not both vanishing");
  c.expect(cpxcp(5, 4, false).bertin && cpxcp(5, 4, false).kgb, "p=5 i0=4 closed form");
  c.info << checked << " equal-jump instances for p in {2,3,5,7}; p=3,i0=2 KGB fails; p=2 witness (1,1,1)";
}

void criterion3(Check& c) {
  auto suite = random_suite(240, ValidationLevel::Structural, 11);
  c.expect(suite.size() >= 200, "suite has only " + std::to_string(suite.size()) + " instances");
  std::set<int> orders;
  for (const auto& d : suite) {
    orders.insert(d.group()->order());
    auto b = b_coefficients(d);
    auto o = b_oracle(d);
    bool same = b.size() == o.size();
    for (size_t i = 0; same && i < b.size(); ++i) same = b[i].value == o[i].value && b[i].T == o[i].T;
    c.expect(same, "closed form and oracle differ on a group of order " + std::to_string(d.group()->order()));
  }
  c.info << suite.size() << " instances over " << orders.size() << " group orders <= 200";
}

void criterion4(Check& c) {
  auto suite = random_suite(220, ValidationLevel::Structural, 29);
  c.expect(suite.size() >= 200, "suite too small");
  long long quotients = 0, restrictions = 0;
  for (const auto& d : suite) {
    const auto& G = *d.group();
    auto a = artin_character(d).a;
    c.expect(inner_product(a, trivial_character(d.group())) == Rational(0), "<a, 1> != 0");
    for (const auto& N : normal_subgroups(G)) {
      auto Q = quotient(d, N);
      c.expect(sharp(a, N) == artin_character(Q.data).a, "sharp differs from the quotient Artin character");
      ++quotients;
    }
    std::vector<Subgroup> targets = all_cyclic_subgroups(G);
    targets.push_back(d.split.P);
    for (const auto& H : targets) {
      auto R = restrict_to(d, H);
      auto aH = artin_character(R.data).a;
      auto reg = regular_character(R.data.group());
      bool ok = true;
      for (int k = 0; k < R.data.group()->order(); ++k)
        ok = ok && a.at(R.embedding.embed[k]) == R.lambda * reg.at(k) + aH.at(k);
      c.expect(ok, "restriction identity fails");
      ++restrictions;
    }
  }
  c.info << suite.size() << " instances, " << quotients << " quotients, " << restrictions << " restrictions";
}

void criterion5(Check& c) {
  auto cat = gm_catalog();
  std::set<std::string> types, types_small;
  int max_order = 0;
  std::string largest;
  for (const auto& g : cat) {
    if (g.G->order() > max_order) {
      max_order = g.G->order();
      largest = g.name;
    }
    auto d = is_gm_definition(*g.G, g.p);
    auto f = is_gm_forbidden(*g.G, g.p);
    c.expect(d.is_gm == f.is_gm, "disagreement on " + g.name);
    if (!f.is_gm && f.violation) {
      types.insert(f.violation->condition);
      if (g.G->order() <= 400) types_small.insert(f.violation->condition);
    }
  }
  c.expect(cat.size() >= 60, "catalog too small");
  c.expect(types == std::set<std::string>{"type1", "type2", "type3", "type4"}, "not all forbidden types occur");
  c.expect(max_order <= 400, "largest group " + largest + " has order " + std::to_string(max_order) +
                                 "; a type 4 subgroup needs |E| | p-1 with |E| not dividing p+1, so |QE| >= 5^3 * 4");
  c.info << cat.size() << " groups agree; forbidden types found: " << types.size() << " (" << types_small.size()
         << " within order 400)";
}

void criterion6(Check& c) {
  auto suite = random_suite(240, ValidationLevel::Arithmetic, 23);
  int determinate = 0;
  for (const auto& d : suite) {
    auto r = reducetop(d);
    if (r.overall == Tri::Indeterminate) continue;
    ++determinate;
    c.expect((r.overall == Tri::True) == bertin_vanishes(d).vanishes, "reducetop differs from Bertin");
  }
  c.expect(determinate >= 50, "too few determinate instances");
  c.info << determinate << " determinate of " << suite.size() << " arithmetic-valid instances";
}

void criterion7(Check& c) {
  std::vector<std::pair<GroupPtr, int>> groups{{klein(), 2}};
  for (int n = 2; n <= 5; ++n) {
    groups.emplace_back(dihedral(2 << n), 2);
    groups.emplace_back(generalized_quaternion(2 << n), 2);
    if (n >= 3) groups.emplace_back(semidihedral(2 << n), 2);
  }
  for (int p : {3, 5, 7}) {
    int order = 2;
    for (int n = 1; n <= 5; ++n) {
      order *= p;
      if (order > 2 * 3 * 3 * 3 * 3 * 3) break;
      groups.emplace_back(dihedral(order), p);
    }
  }
  EnumerationOptions eo;
  eo.jump_bound = 50;
  long long total = 0;
  for (const auto& [G, p] : groups) {
    auto all = enumerate_all(G, p, eo);
    total += static_cast<long long>(all.size());
    for (const auto& d : all) {
      auto generic = b_coefficients(d);
      auto inv = dqs_invariants(d);
      for (const auto& e : dqs_b_closed_form(inv))
        c.expect(e.T && e.value == b_value(generic, *G, *e.T), "closed form differs at " + e.label);
      c.expect(dqs_kgb(inv).vanishes == kgb_from_values(d, generic).vanishes, "KGB closed form differs");
      if (p != 2) continue;
      const Rational bh = b_value(generic, *G, inv.shape->H);
      const Rational b1 = b_value(generic, *G, inv.shape->D1);
      const Rational b2 = b_value(generic, *G, inv.shape->D2);
      const auto& dv = inv.d_vector;
      c.expect(Rational(dv[0]) == b1 + b2 && Rational(dv[1]) == bh + b2 && Rational(dv[2]) == bh + b1,
               "d system fails");
      c.expect(b1.is_integer() && b1.sign() > 0 && b2.is_integer() && b2.sign() > 0, "b_D is not a positive integer");
      for (long long x : dv) c.expect(x > 0, "d_i not positive");
      const Rational half(1, 2);
      c.expect(((bh - b1) * half).is_integer() && ((b1 - b2) * half).is_integer(), "congruence mod 2 fails");
    }
  }
  c.expect(total > 1000, "too few instances");
  c.info << total << " arithmetic-valid instances over " << groups.size() << " groups, jumps <= 50";
}

void criterion8(Check& c) {
  EnumerationOptions eo;
  eo.jump_bound = 20;
  long long listed = 0;
  std::vector<std::tuple<std::string, GroupPtr, int>> pass{{"C12 (p=2)", cyclic(12), 2}, {"C12 (p=3)", cyclic(12), 3},
                                                           {"D18", dihedral(18), 3},     {"D16", dihedral(16), 2},
                                                           {"Q16", generalized_quaternion(16), 2},
                                                           {"A4", a4(), 2}};
  for (const auto& [name, G, p] : pass) {
    auto all = enumerate_all(G, p, eo);
    c.expect(!all.empty(), name + " has no instances");
    listed += static_cast<long long>(all.size());
    for (const auto& d : all) {
      auto b = b_coefficients(d);
      c.expect(bertin_from_values(b).vanishes, name + " Bertin fails");
      c.expect(kgb_from_values(d, b).vanishes, name + " KGB fails");
    }
  }
  SearchOptions so;
  so.jump_bound = 24;
  std::vector<std::tuple<std::string, GroupPtr, int>> fail{{"C3xC3", elem_abelian(3, 2), 3},
                                                           {"Z/4xZ/2", abelian({4, 2}), 2},
                                                           {"SD16", semidihedral(16), 2},
                                                           {"(Z/4)^2:C3", module_semidirect(4, 3, {{0, 3}, {1, 3}}), 2}};
  int found = 0;
  for (const auto& [name, G, p] : fail) {
    auto r = counterexample_search(G, p, so);
    c.expect(r.outcome == SearchOutcome::CounterexampleFound, name + ": " + search_outcome_name(r.outcome));
    found += r.witness ? 1 : 0;
  }
  SearchOptions seeded = so;
  auto seed = sl23_elliptic_data();
  seeded.seeds.push_back(seed);
  auto sl = counterexample_search(seed.group(), 2, seeded);
  c.expect(sl.witness && sl.witness->from_seed, "SL2(3) elliptic seed not reported");
  found += sl.witness ? 1 : 0;
  c.info << listed << " listed-group instances pass; " << found << " of 5 searches find failures";
}

void criterion9(Check& c) {
  auto G = sl2_3();
  EnumerationOptions eo;
  eo.jump_bound = 16;
  auto all = enumerate_all(G, 2, eo);
  c.expect(!all.empty(), "no SL2(3) instances");
  for (const auto& d : all) {
    auto r = sl23_analyze(d);
    c.expect(r.bertin_g == r.bertin_p, "Bertin(G) differs from Bertin(P)");
    c.expect(r.gamma_b_holds, "b at the order 4 class differs from (i0+1)/2");
  }
  eo.level = ValidationLevel::Structural;
  auto structural = enumerate_all(G, 2, eo);
  for (const auto& d : structural) {
    auto r = sl23_analyze(d);
    c.expect(r.bertin_g == r.bertin_p, "Bertin(G) differs from Bertin(P) on a structural filtration");
  }
  Subgroup Z = center(*G);
  Subgroup T4;
  for (const auto& S : all_cyclic_subgroups(*G))
    if (S.order() == 4) {
      T4 = S;
      break;
    }
  c.expect(b_prime(*G, 2, Z) == -4, "b'(Z) != -4");
  c.expect(b_prime(*G, 2, T4) == 0, "b'(order 4) != 0");
  c.expect(b_double_prime(*G, 2, Z) == -6, "b''(Z) != -6");
  c.info << all.size() << " arithmetic-valid (" << structural.size()
         << " structural) SL2(3) filtrations up to jump 16; b' values -4/0/-6";
}

void criterion10(Check& c) {
  int plans = 0;
  {
    auto G = abelian({4, 2});
    int g4 = 0;
    for (int x = 0; x < G->order() && !g4; ++x)
      if (G->elem_order(x) == 4) g4 = x;
    Subgroup J = cyclic_subgroup(*G, g4);
    Subgroup H;
    for (int x = 0; x < G->order(); ++x)
      if (G->elem_order(x) == 2 && !J.contains(x)) {
        H = cyclic_subgroup(*G, x);
        break;
      }
    auto q = quotient_group(*G, J);
    for (long long r : {1LL, 5LL, 9LL, 13LL}) {
      auto qd = make_data(q.group, 2, {{0, whole_group(*q.group)}, {r + 1, trivial_subgroup(*q.group)}});
      c.expect(validate(qd, ValidationLevel::Arithmetic).empty(), "Z/2 quotient data invalid");
      auto plan = prescribed_planner(G, 2, J, qd, 2);
      c.expect(plan.round_trip, "Z/4xZ/2 quotient does not round trip");
      const Rational bh = b_value(b_coefficients(plan.data), *G, H);
      c.expect(bh == Rational(r + 1, 4) && !bh.is_integer(), "Z/4xZ/2 b_H = " + rs(bh));
      ++plans;
    }
  }
  {
    auto G = module_semidirect(4, 3, {{0, 3}, {1, 3}});
    auto P = *normal_sylow(*G, 2);
    std::vector<int> dbl;
    for (int x : P.members()) dbl.push_back(G->mul(x, x));
    Subgroup J = generated(*G, dbl);
    auto q = quotient_group(*G, J);
    Subgroup V = *normal_sylow(*q.group, 2);
    for (long long r : {1LL, 5LL, 13LL, 17LL}) {
      auto qd = make_data(q.group, 2, {{0, whole_group(*q.group)}, {1, V}, {r + 1, trivial_subgroup(*q.group)}});
      c.expect(validate(qd, ValidationLevel::Arithmetic).empty(), "A4 quotient data invalid");
      auto plan = prescribed_planner(G, 2, J, qd, 2);
      c.expect(plan.round_trip, "(Z/4)^2:C3 quotient does not round trip");
      for (const auto& e : b_coefficients(plan.data))
        if (e.T.order() == 4)
          c.expect(e.value == Rational(r + 1, 4) && !e.value.is_integer(), "(Z/4)^2:C3 b_T = " + rs(e.value));
      ++plans;
    }
  }
  c.info << plans << " planned filtrations round trip with b_T = (r+1)/4 in both setups";
}

}  // namespace

/// `--expect-red 5,7` makes the exit status zero exactly when the listed
/// criteria, and no others, fail.
int main(int argc, char** argv) {
  std::set<int> expect_red;
  for (int k = 1; k + 1 < argc; ++k)
    if (std::string(argv[k]) == "--expect-red") {
      std::stringstream ss(argv[k + 1]);
      std::string item;
      while (std::getline(ss, item, ',')) expect_red.insert(std::stoi(item));
    }
  const std::vector<std::pair<int, std::function<void(Check&)>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  std::set<int> red;
  for (const auto& [n, fn] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures == 0;
    if (!ok) red.insert(n);
    std::printf("criterion %d: %s  %s (%.2f s)\n", n, ok ? "PASS" : "FAIL", c.info.str().c_str(), secs);
    for (const auto& m : c.messages) std::printf("    %s\n", m.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria pass\n", criteria.size() - red.size(), criteria.size());
  if (!expect_red.empty()) std::printf("expected red: %s\n", red == expect_red ? "matches" : "does not match");
  return red == expect_red ? 0 : 1;
}
