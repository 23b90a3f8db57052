#pragma once
/**
 * @file lattice.hpp
 * @brief Subgroup machinery: generation, normalizers, conjugacy, cyclic
 * class representatives, the full lattice, quotients and Moebius sums.
 */

#include <optional>
#include <unordered_map>
#include <vector>

#include "obstr/group.hpp"

namespace obstr {

/// Representatives of the conjugacy classes of cyclic subgroups.
/// reps[0] is the trivial subgroup; reps are sorted by (order, members).
struct CyclicClassSet {
  std::vector<Subgroup> reps;
};

/// Cached lattice data owned by a GroupTable.
struct LatticeCache {
  /// Every cyclic subgroup, sorted by (order, members).
  std::vector<Subgroup> cyclic;
  /// For each cyclic subgroup, the index of its class in `reps`.
  std::vector<int> cyclic_class;
  /// Index into `cyclic` of <g> for every element g.
  std::vector<int> cyclic_of_elem;
  std::unordered_map<ElemSet, int, ElemSetHash> cyclic_index;
  CyclicClassSet reps;
  /// For each rep, indices into `cyclic` of its conjugates.
  std::vector<std::vector<int>> rep_conjugates;

  mutable std::once_flag all_once;
  mutable std::optional<std::vector<Subgroup>> all;
  mutable bool all_capped = false;

  mutable std::once_flag normal_once;
  mutable std::vector<Subgroup> normal;
};

constexpr int kDefaultSubgroupCap = 2000;

Subgroup trivial_subgroup(const GroupTable& G);
Subgroup whole_group(const GroupTable& G);
Subgroup generated(const GroupTable& G, const std::vector<int>& gens);
Subgroup join(const GroupTable& G, const Subgroup& A, const Subgroup& B);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
Subgroup cyclic_subgroup(const GroupTable& G, int g);

/// True if the element set is a subgroup.
bool is_subgroup(const GroupTable& G, const std::vector<int>& elements);
/// Validates and wraps; throws Error(InvalidData) if not a subgroup.
Subgroup make_subgroup(const GroupTable& G, std::vector<int> elements);

Subgroup normalizer(const GroupTable& G, const Subgroup& H);
Subgroup centralizer(const GroupTable& G, const Subgroup& H);
Subgroup centralizer(const GroupTable& G, int g);
Subgroup center(const GroupTable& G);
bool is_normal(const GroupTable& G, const Subgroup& H);
bool is_normal_in(const GroupTable& G, const Subgroup& N, const Subgroup& K);
bool is_cyclic(const GroupTable& G, const Subgroup& H);
/// A generator of a cyclic subgroup; throws Error(NotCyclic) otherwise.
int cyclic_generator(const GroupTable& G, const Subgroup& H);
bool is_abelian(const GroupTable& G, const Subgroup& H);
bool is_p_group(const Subgroup& H, int p);
/// Largest exponent e with x^e = 1 for all x in H (least common multiple of orders).
int exponent(const GroupTable& G, const Subgroup& H);
Subgroup commutator_subgroup(const GroupTable& G, const Subgroup& A, const Subgroup& B);
/// A short list of elements generating H.
std::vector<int> generating_set(const GroupTable& G, const Subgroup& H);

Subgroup conjugate_subgroup(const GroupTable& G, const Subgroup& H, int g);
/// Distinct conjugates of H, in order of first appearance over g = 0..n-1.
std::vector<Subgroup> conjugates(const GroupTable& G, const Subgroup& H);
bool are_conjugate(const GroupTable& G, const Subgroup& A, const Subgroup& B);

const std::vector<Subgroup>& all_cyclic_subgroups(const GroupTable& G);
CyclicClassSet cyclic_subgroup_reps(const GroupTable& G);
/// Index in cyclic_subgroup_reps(G).reps of the class containing the cyclic subgroup T.
int cyclic_rep_index(const GroupTable& G, const Subgroup& T);

/// Every subgroup, sorted by (order, members). Throws Error(CapExceeded) when |G| > cap.
const std::vector<Subgroup>& all_subgroups(const GroupTable& G, int cap = kDefaultSubgroupCap);
/// Every normal subgroup, sorted by (order, members).
const std::vector<Subgroup>& normal_subgroups(const GroupTable& G);

/// Unique Sylow p-subgroup if it is normal.
std::optional<Subgroup> normal_sylow(const GroupTable& G, int p);

int moebius(long long d);
/// Sum of mu([Gamma:H]) over cyclic Gamma with H <= Gamma <= J. H must be cyclic.
long long psi(const GroupTable& G, const Subgroup& H, const Subgroup& J);

/// A subgroup H as a group in its own right: element k of the result is members[k].
struct SubgroupGroup {
  GroupPtr group;
  std::vector<int> embed;              // result index -> G index
  std::vector<int> locate;             // G index -> result index, or -1
  Subgroup image(const Subgroup& K) const;   // subgroup of result -> subgroup of G
  Subgroup preimage(const Subgroup& K, int universe) const;  // subgroup of G inside H -> subgroup of result
};
SubgroupGroup subgroup_as_group(const GroupTable& G, const Subgroup& H);

/// The quotient G/N; cosets are numbered by their least element, identity first.
struct QuotientGroup {
  GroupPtr group;
  std::vector<int> project;  // G index -> quotient index
  std::vector<int> lift;     // quotient index -> least element of the coset
  Subgroup image(const Subgroup& K) const;
  Subgroup preimage(const Subgroup& K, const GroupTable& G) const;
};
QuotientGroup quotient_group(const GroupTable& G, const Subgroup& N);

/// Decomposes n into prime powers, ascending primes.
std::vector<std::pair<long long, int>> factorize(long long n);
bool is_prime(long long n);
/// Largest power of p dividing n.
long long p_part(long long n, long long p);

}  // namespace obstr
