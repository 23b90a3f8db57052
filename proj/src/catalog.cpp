/**
 * @file catalog.cpp
 * @brief Named cyclic-by-p groups.
 */
#include "obstr/catalog.hpp"

#include "obstr/builders.hpp"

namespace obstr {

GroupPtr module_semidirect(int n, int m, const std::vector<std::vector<int>>& matrix) {
  const int d = static_cast<int>(matrix.size());
  GroupPtr A = abelian(std::vector<int>(d, n));
  std::vector<int> act(A->order());
  for (int x = 0; x < A->order(); ++x) {
    std::vector<int> v(d);
    int t = x;
    for (int i = 0; i < d; ++i) {
      v[i] = t % n;
      t /= n;
    }
    int img = 0, scale = 1;
    for (int i = 0; i < d; ++i) {
      long long s = 0;
      for (int j = 0; j < d; ++j) s += static_cast<long long>(matrix[i][j]) * v[j];
      img += static_cast<int>(((s % n) + n) % n) * scale;
      scale *= n;
    }
    act[x] = img;
  }
  return semidirect(*A, m, act);
}

namespace {

/// Z/n x| C_m with c x c^{-1} = k x.
GroupPtr power_semidirect(int n, int m, int k) { return module_semidirect(n, m, {{k}}); }

GroupPtr diag_semidirect(int p, int m, int a, int b) { return module_semidirect(p, m, {{a, 0}, {0, b}}); }

GroupPtr times(const GroupPtr& A, const GroupPtr& B) { return direct_product(*A, *B); }

/// Heisenberg group of order p^3 extended by (a,b,c) -> (s a, t b, s t c).
GroupPtr heisenberg_semidirect(int p, int m, int s, int t) {
  GroupPtr Q = heisenberg(p);
  std::vector<int> act(Q->order());
  for (int x = 0; x < Q->order(); ++x) {
    int a = x % p, b = (x / p) % p, c = x / (p * p);
    act[x] = (s * a) % p + p * ((t * b) % p) + p * p * ((s * t % p) * c % p);
  }
  return semidirect(*Q, m, act);
}

}  // namespace

GroupPtr linear_semidirect(int p, int m, const std::vector<std::vector<int>>& matrix) {
  return module_semidirect(p, m, matrix);
}

std::vector<CatalogGroup> property_catalog() {
  return {
      {"C4", cyclic(4), 2},
      {"C8", cyclic(8), 2},
      {"C9", cyclic(9), 3},
      {"C6", cyclic(6), 3},
      {"C12_p2", cyclic(12), 2},
      {"C12_p3", cyclic(12), 3},
      {"C10", cyclic(10), 5},
      {"C20", cyclic(20), 2},
      {"D6", dihedral(6), 3},
      {"D10", dihedral(10), 5},
      {"D18", dihedral(18), 3},
      {"V4", klein(), 2},
      {"D8", dihedral(8), 2},
      {"D16", dihedral(16), 2},
      {"Q8", generalized_quaternion(8), 2},
      {"Q16", generalized_quaternion(16), 2},
      {"SD16", semidihedral(16), 2},
      {"SD32", semidihedral(32), 2},
      {"A4", a4(), 2},
      {"SL2(3)", sl2_3(), 2},
      {"C3xC3", elem_abelian(3, 2), 3},
      {"C4xC2", abelian({4, 2}), 2},
      {"C2^3", elem_abelian(2, 3), 2},
      {"Heis3", heisenberg(3), 3},
      {"(C3)^2:C2", diag_semidirect(3, 2, 2, 2), 3},
      {"C5:C4", power_semidirect(5, 4, 2), 5},
      {"C7:C3", power_semidirect(7, 3, 2), 7},
      {"(C3)^2:C4", linear_semidirect(3, 4, {{0, 2}, {1, 0}}), 3},
      {"(C2)^3:C7", linear_semidirect(2, 7, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}), 2},
      {"(C4)^2:C3", module_semidirect(4, 3, {{0, 3}, {1, 3}}), 2},
      {"(C3)^2:C8", linear_semidirect(3, 8, {{0, 1}, {1, 1}}), 3},
      {"C5xC5", elem_abelian(5, 2), 5},
      {"C3:C4", power_semidirect(3, 4, 2), 3},
  };
}

std::vector<CatalogGroup> gm_catalog() {
  std::vector<CatalogGroup> out = {
      // p-groups
      {"C2", cyclic(2), 2},
      {"C4", cyclic(4), 2},
      {"C8", cyclic(8), 2},
      {"V4", klein(), 2},
      {"C2^3", elem_abelian(2, 3), 2},
      {"C2^4", elem_abelian(2, 4), 2},
      {"C4xC2", abelian({4, 2}), 2},
      {"D8", dihedral(8), 2},
      {"Q8", generalized_quaternion(8), 2},
      {"D16", dihedral(16), 2},
      {"Q16", generalized_quaternion(16), 2},
      {"SD16", semidihedral(16), 2},
      {"C3", cyclic(3), 3},
      {"C9", cyclic(9), 3},
      {"C3xC3", elem_abelian(3, 2), 3},
      {"Heis3", heisenberg(3), 3},
      {"C5xC5", elem_abelian(5, 2), 5},
      {"C25", cyclic(25), 5},
      {"Heis5", heisenberg(5), 5},
      // cyclic groups
      {"C6_p2", cyclic(6), 2},
      {"C6_p3", cyclic(6), 3},
      {"C10", cyclic(10), 5},
      {"C12_p2", cyclic(12), 2},
      {"C12_p3", cyclic(12), 3},
      {"C15_p3", cyclic(15), 3},
      {"C15_p5", cyclic(15), 5},
      {"C20", cyclic(20), 5},
      {"C21", cyclic(21), 7},
      {"C30", cyclic(30), 5},
      {"C35", cyclic(35), 5},
      // dihedral, p odd
      {"D6", dihedral(6), 3},
      {"D10", dihedral(10), 5},
      {"D14", dihedral(14), 7},
      {"D18", dihedral(18), 3},
      {"D50", dihedral(50), 5},
      {"D54", dihedral(54), 3},
      {"D98", dihedral(98), 7},
      // C_p^a x| C_m with faithful action
      {"C5:C4", power_semidirect(5, 4, 2), 5},
      {"C7:C3", power_semidirect(7, 3, 2), 7},
      {"C7:C6", power_semidirect(7, 6, 3), 7},
      {"C11:C5", power_semidirect(11, 5, 3), 11},
      {"C11:C10", power_semidirect(11, 10, 2), 11},
      {"C13:C3", power_semidirect(13, 3, 3), 13},
      {"C13:C4", power_semidirect(13, 4, 5), 13},
      {"C13:C6", power_semidirect(13, 6, 4), 13},
      {"C13:C12", power_semidirect(13, 12, 2), 13},
      {"C9:C6", power_semidirect(9, 6, 2), 3},
      // cyclic P, action neither faithful nor trivial
      {"C3:C4", power_semidirect(3, 4, 2), 3},
      {"C3:C8", power_semidirect(3, 8, 2), 3},
      {"C5:C8", power_semidirect(5, 8, 2), 5},
      {"C5:C4_inv", power_semidirect(5, 4, 4), 5},
      {"C7:C9", power_semidirect(7, 9, 2), 7},
      {"C7:C12", power_semidirect(7, 12, 2), 7},
      {"D10xC3", times(dihedral(10), cyclic(3)), 5},
      // abelian subgroups that are neither cyclic nor p-groups
      {"C3xC3xC2", times(elem_abelian(3, 2), cyclic(2)), 3},
      {"C2xC2xC3", times(klein(), cyclic(3)), 2},
      {"C5xC5xC2", times(elem_abelian(5, 2), cyclic(2)), 5},
      {"C3xC3xC4", times(elem_abelian(3, 2), cyclic(4)), 3},
      {"C2xC2xC5", times(klein(), cyclic(5)), 2},
      // products with a cyclic centralizer
      {"S3xC3", times(dihedral(6), cyclic(3)), 3},
      {"A4xC2", times(a4(), cyclic(2)), 2},
      {"C5xD10", times(cyclic(5), dihedral(10)), 5},
      // rank-two elementary abelian P
      {"(C3)^2:C2", diag_semidirect(3, 2, 2, 2), 3},
      {"(C3)^2:C4", linear_semidirect(3, 4, {{0, 2}, {1, 0}}), 3},
      {"(C3)^2:C8", linear_semidirect(3, 8, {{0, 1}, {1, 1}}), 3},
      {"(C5)^2:C4_scalar", diag_semidirect(5, 4, 2, 2), 5},
      {"(C5)^2:C4_2,3", diag_semidirect(5, 4, 2, 3), 5},
      {"(C5)^2:C4_2,4", diag_semidirect(5, 4, 2, 4), 5},
      {"(C5)^2:C4_2,1", diag_semidirect(5, 4, 2, 1), 5},
      {"(C5)^2:C3", linear_semidirect(5, 3, {{0, 4}, {1, 4}}), 5},
      {"(C7)^2:C3_scalar", diag_semidirect(7, 3, 2, 2), 7},
      {"(C7)^2:C3_2,4", diag_semidirect(7, 3, 2, 4), 7},
      {"(C7)^2:C3_2,1", diag_semidirect(7, 3, 2, 1), 7},
      {"(C7)^2:C6_3,5", diag_semidirect(7, 6, 3, 5), 7},
      // 2-groups extended by odd cyclic groups
      {"A4", a4(), 2},
      {"SL2(3)", sl2_3(), 2},
      {"(C4)^2:C3", module_semidirect(4, 3, {{0, 3}, {1, 3}}), 2},
      {"(C2)^3:C7", linear_semidirect(2, 7, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}), 2},
      {"(C2)^4:C5", linear_semidirect(2, 5, {{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}), 2},
      {"(C2)^4:C15", linear_semidirect(2, 15, {{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}}), 2},
      // extraspecial P of exponent p
      {"Heis3:C2", heisenberg_semidirect(3, 2, 2, 2), 3},
      {"Heis3:C2_det", heisenberg_semidirect(3, 2, 2, 1), 3},
      {"Heis5:C4", heisenberg_semidirect(5, 4, 2, 3), 5},
  };
  return out;
}

}  // namespace obstr
