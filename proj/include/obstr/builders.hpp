#pragma once
/**
 * @file builders.hpp
 * @brief Explicit element models for the named group families and the
 * decomposition G = P.C of a cyclic-by-p group.
 */

#include <vector>

#include "obstr/group.hpp"
#include "obstr/lattice.hpp"

namespace obstr {

/// Z/n, element k is the residue k.
GroupPtr cyclic(int n);
/// Dihedral group of order 2m: element k + m*f is r^k s^f.
GroupPtr dihedral(int order);
/// Generalized quaternion group of order 2^a (a >= 3): element k + N*f is x^k y^f with N = 2^{a-1}.
GroupPtr generalized_quaternion(int order);
/// Semidihedral group of order 2^a (a >= 4): element k + N*f is x^k y^f with y x y = x^{N/2 - 1}.
GroupPtr semidihedral(int order);
GroupPtr klein();
GroupPtr a4();
GroupPtr sl2_3();
/// (Z/p)^d, element index sum v_i p^i.
GroupPtr elem_abelian(int p, int d);
/// Z/p^a1 x Z/p^a2 x ... given by the list of cyclic factor orders, index mixed radix.
GroupPtr abelian(const std::vector<int>& factor_orders);
/// Heisenberg group of order p^3 (exponent p for odd p): element (a,b,c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
GroupPtr heisenberg(int p);
/// Element a + |A|*b is (a,b).
GroupPtr direct_product(const GroupTable& A, const GroupTable& B);

/// P x| C_m where the generator c of C_m acts on P by the permutation `action`
/// (c x c^{-1} = action[x]). Element x + |P|*k is x c^k.
/// Throws NotAutomorphism if action is not an automorphism and
/// OrderMismatch if action^m is not the identity.
GroupPtr semidirect(const GroupTable& P, int c_order, const std::vector<int>& action);

/// The automorphism of P sending gens[i] to images[i]; throws NotAutomorphism.
std::vector<int> automorphism_from_images(const GroupTable& P, const std::vector<int>& gens,
                                          const std::vector<int>& images);
/// The automorphism of (Z/p)^d given by a d x d matrix acting on column vectors.
std::vector<int> linear_automorphism(int p, const std::vector<std::vector<int>>& matrix);

struct StructureSplit {
  int p = 0;
  Subgroup P;  ///< normal Sylow p-subgroup
  Subgroup C;  ///< cyclic complement of order prime to p
  Subgroup B;  ///< subgroup of C of order gcd(|C|, p-1)
  Subgroup D;  ///< C_P(C)
  int c_generator = 0;  ///< least generator of C
};

/// Throws NotCyclicByP if there is no normal Sylow p-subgroup or no cyclic complement.
StructureSplit structure_split(const GroupTable& G, int p);

/// True if G has a normal Sylow p-subgroup with cyclic quotient.
bool is_cyclic_by_p(const GroupTable& G, int p);

/// Brute-force isomorphism test for small groups (order fingerprints first).
bool are_isomorphic(const GroupTable& A, const GroupTable& B);

}  // namespace obstr

namespace obstr {

enum class DqsFamily { Dihedral, Quaternion, Semidihedral };
const char* dqs_family_name(DqsFamily f);

/// A presentation of G as one of the groups of order 2p^n generated by a
/// cyclic H = <tau> of order p^n and an element sigma outside H.
struct DqsShape {
  DqsFamily family = DqsFamily::Dihedral;
  int p = 0;
  int n = 0;
  int tau = 0;
  int sigma = 0;
  Subgroup H;
  /// Cyclic class representatives of <sigma> and <tau sigma> (p = 2), or of
  /// <sigma> only (p odd). For p = 2 they are ordered by (order, members).
  Subgroup D1, D2;
  /// Index-2 subgroups <2H, D_i> for i = 0, 1, 2 with D_0 = H (p = 2 only).
  Subgroup M[3];
};

/// Every presentation of G as a dihedral, generalized quaternion or
/// semidihedral group (one per admissible choice of H).
std::vector<DqsShape> dqs_shapes(const GroupTable& G, int p);

}  // namespace obstr
