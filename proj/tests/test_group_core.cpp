#include <algorithm>
#include <set>

#include "doctest.h"
#include "obstr/builders.hpp"
#include "obstr/class_function.hpp"
#include "obstr/lattice.hpp"
#include "obstr/rational.hpp"

using namespace obstr;

namespace {

// Independent oracle: count subgroups by testing every subset.
int brute_force_subgroup_count(const GroupTable& G) {
  const int n = G.order();
  int count = 0;
  for (long mask = 0; mask < (1L << n); ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> els;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) els.push_back(i);
    bool closed = true;
    for (int a : els) {
      for (int b : els)
        if (!(mask >> G.mul(a, b) & 1)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) ++count;
  }
  return count;
}

// Independent oracle: cyclic subgroups from powers, classes by explicit conjugation.
int brute_force_cyclic_class_count(const GroupTable& G) {
  std::set<std::set<int>> cyc;
  for (int g = 0; g < G.order(); ++g) {
    std::set<int> s;
    int x = 0;
    do {
      s.insert(x);
      x = G.mul(x, g);
    } while (x != 0);
    cyc.insert(s);
  }
  std::set<std::set<int>> done;
  int classes = 0;
  for (const auto& s : cyc) {
    if (done.count(s)) continue;
    ++classes;
    for (int g = 0; g < G.order(); ++g) {
      std::set<int> c;
      for (int x : s) c.insert(G.mul(G.mul(g, x), G.inv(g)));
      done.insert(c);
    }
  }
  return classes;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and promotes on overflow") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK((a - b).str() == "1/6");
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational::parse("-12/8") == Rational(-3, 2));
  Rational big(1);
  for (int i = 0; i < 5; ++i) big *= Rational(1000000000000LL);
  CHECK(big.is_big());
  CHECK(big.numerator_str() == "1" + std::string(60, '0'));
  Rational back = big / big;
  CHECK(!back.is_big());
  CHECK(back == Rational(1));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK(Rational(-7, 2).floor() == -4);
}

TEST_CASE("build_group validates axioms") {
  auto T = build_group({{0}});
  CHECK(T->order() == 1);
  auto V = klein();
  int inv = 0;
  for (int g = 1; g < 4; ++g) inv += V->elem_order(g) == 2;
  CHECK(inv == 3);
  CHECK_THROWS_AS(build_group({{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(build_group({{1, 0}, {0, 1}}), Error);
  // A latin square with identity that is not associative (order 5 loop).
  std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(build_group(loop), Error);
}

TEST_CASE("quaternion model has a unique involution") {
  auto Q = generalized_quaternion(8);
  CHECK(Q->order() == 8);
  int inv = 0;
  for (int g = 1; g < 8; ++g) inv += Q->elem_order(g) == 2;
  CHECK(inv == 1);
}

TEST_CASE("cyclic subgroup class representatives") {
  auto C6 = cyclic(6);
  auto reps = cyclic_subgroup_reps(*C6).reps;
  REQUIRE(reps.size() == 4);
  CHECK(reps[0].is_trivial());
  std::vector<int> orders;
  for (auto& r : reps) orders.push_back(r.order());
  CHECK(orders == std::vector<int>{1, 2, 3, 6});

  auto Q = generalized_quaternion(8);
  CHECK(cyclic_subgroup_reps(*Q).reps.size() == 5);
  CHECK(brute_force_cyclic_class_count(*Q) == 5);

  for (auto G : {dihedral(18), semidihedral(16), sl2_3(), a4(), dihedral(16)})
    CHECK(static_cast<int>(cyclic_subgroup_reps(*G).reps.size()) == brute_force_cyclic_class_count(*G));

  // Dihedral of order 2p^n, p odd: the p-power subgroups plus one reflection class.
  auto D = dihedral(2 * 27);
  auto r = cyclic_subgroup_reps(*D).reps;
  CHECK(r.size() == 5);
  int outside = 0;
  for (auto& s : r)
    if (s.order() == 2) ++outside;
  CHECK(outside == 1);
}

TEST_CASE("normalizers and centralizers") {
  auto C = cyclic(12);
  auto H = cyclic_subgroup(*C, 4);
  CHECK(normalizer(*C, H).order() == 12);
  CHECK(centralizer(*C, H).order() == 12);

  auto D = dihedral(2 * 9);
  auto D1 = cyclic_subgroup(*D, 9);  // a reflection
  CHECK(D1.order() == 2);
  CHECK(normalizer(*D, D1) == D1);

  auto G = sl2_3();
  auto split_P = normal_sylow(*G, 2);
  REQUIRE(split_P);
  for (const auto& T : all_cyclic_subgroups(*G)) {
    if (T.order() != 4) continue;
    auto N = normalizer(*G, T);
    CHECK(N == *split_P);
    for (int g : N.members())
      for (int t : T.members()) CHECK(T.contains(G->conjugate(g, t)));
    auto Cc = centralizer(*G, T);
    CHECK(Cc.subset_of(N));
    for (int g : Cc.members())
      for (int t : T.members()) CHECK(G->mul(g, t) == G->mul(t, g));
    break;
  }
}

TEST_CASE("all_subgroups agrees with subset brute force") {
  CHECK(all_subgroups(*cyclic(5)).size() == 2);
  auto Q = generalized_quaternion(8);
  CHECK(all_subgroups(*Q).size() == 6);
  CHECK(brute_force_subgroup_count(*Q) == 6);
  auto A = a4();
  CHECK(all_subgroups(*A).size() == 10);
  CHECK(brute_force_subgroup_count(*A) == 10);
  for (auto G : {dihedral(8), klein(), dihedral(12), cyclic(12)})
    CHECK(static_cast<int>(all_subgroups(*G).size()) == brute_force_subgroup_count(*G));
  CHECK_THROWS_AS(all_subgroups(*cyclic(3000)), Error);
}

TEST_CASE("normal subgroups are exactly the normal members of the lattice") {
  for (auto G : {sl2_3(), a4(), dihedral(16), generalized_quaternion(16), semidihedral(16)}) {
    std::vector<Subgroup> expect;
    for (const auto& S : all_subgroups(*G))
      if (is_normal(*G, S)) expect.push_back(S);
    CHECK(normal_subgroups(*G) == expect);
  }
}

TEST_CASE("moebius and psi") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  CHECK(moebius(2) == -1);
  auto C = cyclic(12);
  CHECK(psi(*C, trivial_subgroup(*C), whole_group(*C)) == 0);
  for (int p : {2, 3, 5}) {
    auto E = elem_abelian(p, 2);
    CHECK(psi(*E, trivial_subgroup(*E), whole_group(*E)) == -p);
  }
  auto S3 = dihedral(6);
  CHECK(psi(*S3, trivial_subgroup(*S3), whole_group(*S3)) == -3);
  CHECK_THROWS_AS(psi(*klein(), whole_group(*klein()), whole_group(*klein())), Error);
}

TEST_CASE("psi equals inclusion-exclusion over the explicit cyclic list") {
  for (auto G : {sl2_3(), dihedral(18), generalized_quaternion(16), abelian({4, 2}), a4()}) {
    for (const auto& H : all_cyclic_subgroups(*G))
      for (const auto& J : all_subgroups(*G)) {
        if (!H.subset_of(J)) continue;
        long long expect = 0;
        for (int g = 0; g < G->order(); ++g) {
          // Count each cyclic Gamma once through its least generator.
          auto Gam = cyclic_subgroup(*G, g);
          bool least = true;
          for (int x : Gam.members())
            if (G->elem_order(x) == Gam.order() && x < g) least = false;
          if (!least || !H.subset_of(Gam) || !Gam.subset_of(J)) continue;
          long long idx = Gam.order() / H.order();
          int mu = 1;
          for (long long q = 2; q <= idx; ++q)
            if (idx % q == 0) {
              idx /= q;
              if (idx % q == 0) mu = 0;
              mu = -mu;
            }
          expect += mu;
        }
        CHECK(psi(*G, H, J) == expect);
      }
  }
}

TEST_CASE("induced trivial characters and inner products") {
  auto S3 = dihedral(6);
  auto T = cyclic_subgroup(*S3, 3);  // a reflection
  REQUIRE(T.order() == 2);
  auto ind = induced_trivial_char(S3, T);
  CHECK(ind.at(0) == 3);
  CHECK(ind.at(3) == 1);
  CHECK(ind.at(1) == 0);
  auto triv = trivial_character(S3);
  CHECK(induced_trivial_char(S3, whole_group(*S3)) == triv);
  CHECK(induced_trivial_char(S3, trivial_subgroup(*S3)) == regular_character(S3));
  CHECK(inner_product(regular_character(S3), triv) == 1);
  CHECK(inner_product(ind, triv) == 1);
}

TEST_CASE("induced characters of cyclic reps are linearly independent") {
  for (auto G : {sl2_3(), dihedral(18), semidihedral(16), a4(), cyclic(12)}) {
    auto reps = cyclic_subgroup_reps(*G).reps;
    std::vector<std::vector<Rational>> rows;
    for (auto& T : reps) rows.push_back(induced_trivial_char(G, T).values());
    // Gaussian elimination rank.
    int rank = 0;
    const int cols = G->num_classes();
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
      int piv = -1;
      for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (!rows[r][c].is_zero()) piv = r;
      if (piv < 0) continue;
      std::swap(rows[piv], rows[rank]);
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == rank || rows[r][c].is_zero()) continue;
        Rational f = rows[r][c] / rows[rank][c];
        for (int k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
      }
      ++rank;
    }
    CHECK(rank == static_cast<int>(reps.size()));
  }
}
