#pragma once
/**
 * @file gm.hpp
 * @brief Green-Matignon groups: the definitional test, the forbidden
 * subgroup scan, the congruences satisfied by GM groups and the eigenvalue
 * filtration of a p-group under a coprime automorphism.
 */

#include <optional>
#include <string>
#include <vector>

#include "obstr/builders.hpp"
#include "obstr/group.hpp"

namespace obstr {

struct GmViolation {
  /// "a", "b" for the definition; "type1" to "type4" for the subgroup scan.
  std::string condition;
  /// The offending subgroup: C_P(c) for "a", T for "b", the subgroup QE for a type.
  Subgroup witness;
  /// The element c for "a", an element of N_B(T) for "b", a generator of E for a type.
  int element = 0;
  std::string detail;
};

struct GmVerdict {
  bool is_gm = false;
  /// Theta(b0) for the generator b0 = c0^{|C|/|B|} of B, as a residue mod theta_modulus.
  std::optional<long long> witness_theta;
  long long theta_modulus = 1;  ///< p^e with p^e the exponent of P
  std::optional<GmViolation> violation;
};

/// Conditions (a) and (b) of the definition, with Theta ranging over the
/// Teichmuller lifts of units of order |B| mod p. Throws NotCyclicByP.
GmVerdict is_gm_definition(const GroupTable& G, int p);

/// Scan of all subgroups for the four forbidden types. Throws NotCyclicByP, CapExceeded.
GmVerdict is_gm_forbidden(const GroupTable& G, int p);

/// Condition (b) for one value theta = Theta(b0) mod p^e; nullopt when it holds.
std::optional<GmViolation> theta_violation(const GroupTable& G, int p, long long theta);

/// Existence of an embedding with vanishing Bertin obstruction, which holds
/// exactly for GM groups.
bool weak_bertin(const GroupTable& G, int p);

struct GroovyReport {
  long long b_prime = 0;
  long long np_index = 1;  ///< [N_P(T):T]
  bool a = true;           ///< b' = 0 mod [N_P(T):T]
  bool centralized = false;  ///< C_C(T) != 1
  long long b_double_prime = 0;
  bool b = true;  ///< if centralized: T <= D and b'' = 0 mod |C|
  bool c = true;  ///< if not centralized: N_C(T) = 1 or every cyclic overgroup of T lies in P
};

/// Throws NotGm unless G is GM, NotPSubgroup unless T is a non-trivial cyclic subgroup of P.
GroovyReport groovy_congruences(const GroupTable& G, int p, const Subgroup& T);

struct EigenStep {
  Subgroup Q;         ///< Q_i
  int x = 0;          ///< generator of Q_i / Q_{i-1} with b x b^{-1} = x^e
  long long e = 1;    ///< residue mod the exponent of Q
  long long eigenvalue = 1;  ///< e mod p
};
struct EigenFiltration {
  int p = 0;
  long long modulus = 1;  ///< exponent of Q
  std::vector<EigenStep> steps;  ///< Q_1 < ... < Q_m = Q
};

/// `b` is an automorphism of the p-group Q given as an element permutation;
/// its order must divide p-1. Throws NotAutomorphism, BadAutomorphismOrder, BadParameter.
EigenFiltration eigen_filtration(const GroupTable& Q, const std::vector<int>& b);

/// Conjugation by g restricted to the normal subgroup P, in the numbering of
/// subgroup_as_group(G, P).
std::vector<int> conjugation_on(const GroupTable& G, const Subgroup& P, int g);

}  // namespace obstr
