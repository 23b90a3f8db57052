#pragma once
/**
 * @file families.hpp
 * @brief Closed forms for dihedral, generalized quaternion and semidihedral
 * groups, for (Z/p)^2, SL_2(3) and A_4.
 */

#include <optional>
#include <string>
#include <vector>

#include "obstr/builders.hpp"
#include "obstr/obstructions.hpp"
#include "obstr/ramification.hpp"

namespace obstr {

struct DqsInvariants {
  DqsFamily family = DqsFamily::Dihedral;
  int p = 0;
  int n = 0;
  std::vector<long long> i_vector;  ///< i_0, ..., i_{n-1}
  std::vector<long long> d_vector;  ///< d_0, d_1, d_2 (p = 2 only)
  std::vector<long long> c_vector;  ///< c(l) = i_0 + ... + i_l
  /// Present when the invariants were read off an action.
  std::optional<DqsShape> shape;
  GroupPtr group;
};

/// Reads i from the restriction to H and d_i = <a, psi_i> with psi_i the
/// quadratic character trivial on M_i. Throws NotFamilyGroup, InvalidData.
DqsInvariants dqs_invariants(const LocalActionData& data, size_t shape_index = 0);

/// Builds invariants directly. Throws BadParameter on a malformed vector or
/// an impossible family/p/n combination.
DqsInvariants dqs_invariants_from(DqsFamily family, int p, std::vector<long long> i_vector,
                                  std::vector<long long> d_vector = {});

/// d even and either all equal or two equal with the third smaller (p = 2).
bool dqs_d_admissible(const DqsInvariants& inv);

struct FamilyBEntry {
  std::string label;  ///< "e", "H", "p^j H", "D1", "D2"
  std::optional<Subgroup> T;
  Rational value;
};
/// b_T for every class of cyclic subgroups, from i and d alone.
std::vector<FamilyBEntry> dqs_b_closed_form(const DqsInvariants& inv);

struct DqsVerdict {
  bool vanishes = false;
  /// Conditions (a) to (d) on i and d, evaluated literally for n >= 2.
  std::vector<std::pair<std::string, bool>> conditions;
  bool conditions_hold = false;
  /// b_H = b_D1 = b_D2 mod 2 (p = 2 only).
  std::optional<bool> congruence;
};
DqsVerdict dqs_bertin(const DqsInvariants& inv);
/// Equal to the Bertin verdict for these families.
DqsVerdict dqs_kgb(const DqsInvariants& inv);

struct CpxcpVerdict {
  bool bertin = false;
  bool kgb = false;
  bool solver_used = false;
  /// c_0, ..., c_p in (Z/p)^* solving sum_{i<p} c_i (1,i) + c_p (0,1) = 0.
  std::optional<std::vector<long long>> solution;
};
/// Closed-form verdicts for (Z/p)^2 with first jump i0; `deep` means G_{i0+1} != {e}.
CpxcpVerdict cpxcp(int p, long long i0, bool deep);
/// Solver for the generator equation; nullopt when unsolvable.
std::optional<std::vector<long long>> oomph_solve(int p);
/// (Z/p)^2 with lower jumps i0 and, when i1 > 0, i0 + p i1.
LocalActionData cpxcp_data(int p, long long i0, long long i1 = 0);

struct Sl23Report {
  bool bertin_g = false;
  bool bertin_p = false;
  bool kgb_g = false;
  bool kgb_p = false;
  bool equivalent = false;  ///< all four verdicts agree
  long long i0 = 0, i1 = 0;  ///< invariants of a cyclic subgroup of order 4
  bool hbound_applicable = false;
  bool hbound_holds = true;  ///< i1 = i0 + 3 + 6h' with h' >= 0
  bool gamma_b_holds = true;  ///< b at the order 4 class equals (i0 + 1)/2
  bool c_and_j_hold = true;   ///< b = 0 at the order 3 class, 1 at the order 6 class
};
/// Throws WrongGroup unless G is SL_2(3) with p = 2.
Sl23Report sl23_analyze(const LocalActionData& data);
/// SL_2(3) with P_0 = P_1 = P, P_2 = P_3 = Z(P), P_4 = {e}.
LocalActionData sl23_elliptic_data();

struct A4Table {
  Subgroup H2, H3;
  long long iota_h2 = 0;
  Rational b_h2, b_h3;
};
/// Throws WrongGroup unless G is A_4 with p = 2.
A4Table a4_b(const LocalActionData& data);

}  // namespace obstr
