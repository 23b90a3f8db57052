#pragma once
/**
 * @file obstructions.hpp
 * @brief The b_T coefficients, Bertin and KGB decisions, the sharp operator
 * and the reduction of the Bertin question to the Sylow subgroup.
 */

#include <optional>
#include <string>
#include <vector>

#include "obstr/class_function.hpp"
#include "obstr/lattice.hpp"
#include "obstr/ramification.hpp"

namespace obstr {

/// b_T for one representative T of a conjugacy class of cyclic subgroups.
struct BEntry {
  Subgroup T;
  Rational value;
};
/// One entry per class representative in the order of cyclic_subgroup_reps
/// (the trivial subgroup first).
using BValues = std::vector<BEntry>;

/// Closed form: b_T = (-delta(T,e) a(e) + sum_{Gamma in S(T)} mu([Gamma:T]) iota(Gamma)) / [N(T):T].
BValues b_coefficients(const LocalActionData& data);
/// Solves -a = sum_T b_T 1_T^G exactly. Throws SingularSystem.
BValues b_oracle(const LocalActionData& data);
/// Looks up the value for a cyclic subgroup (any conjugate of a representative).
const Rational& b_value(const BValues& b, const GroupTable& G, const Subgroup& T);

struct BertinVerdict {
  bool vanishes = false;
  /// Non-trivial representatives whose b_T is negative or not an integer.
  std::vector<Subgroup> offenders;
};
BertinVerdict bertin_from_values(const BValues& b);
BertinVerdict bertin_vanishes(const LocalActionData& data);

struct GSetOrbit {
  Subgroup T;
  long long multiplicity = 0;
};
/// Orbits G/T with multiplicity b_T > 0; std::nullopt unless Bertin vanishes.
std::optional<std::vector<GSetOrbit>> bertin_gset(const LocalActionData& data);

struct KgbWitnessEntry {
  Subgroup T;      ///< conjugacy class representative the slot belongs to
  int generator = 0;  ///< generator of a conjugate of T
};
struct KgbVerdict {
  bool vanishes = false;
  bool bertin = false;
  std::vector<KgbWitnessEntry> witness;
};
struct KgbOptions {
  /// Repetition counts above this value trigger cycle detection on state sets.
  long long period_threshold = -1;  ///< -1 selects 2 |G|
  bool want_witness = true;
};
KgbVerdict kgb_vanishes(const LocalActionData& data, const KgbOptions& options = {});
/// The same decision from precomputed values.
KgbVerdict kgb_from_values(const LocalActionData& data, const BValues& b, const KgbOptions& options = {});

/// chi^#(gamma) = (1/|N|) sum over the coset gamma of chi.
ClassFunction sharp(const ClassFunction& chi, const QuotientGroup& q, const Subgroup& N);
/// Builds G/N itself. Throws NotNormal.
ClassFunction sharp(const ClassFunction& chi, const Subgroup& N);

/// Sum of mu([Gamma:T]) over cyclic Gamma containing T with Gamma not inside P.
/// Throws NotPSubgroup unless T is a non-trivial cyclic p-subgroup.
long long b_prime(const GroupTable& G, int p, const Subgroup& T);
/// Sum of mu([Gamma:T]) over all cyclic Gamma containing T.
long long b_double_prime(const GroupTable& G, int p, const Subgroup& T);

/// Conjugation character of N_C(T) on T: x y x^{-1} = y^{exponents[k]} for
/// x = elements[k] and y in T, with exponents taken mod |T|.
struct ExponentCharacter {
  std::vector<int> elements;
  std::vector<long long> exponents;
};
ExponentCharacter chi_T(const GroupTable& G, const StructureSplit& split, const Subgroup& T);

/// The unique torsion unit mod p^e congruent to u mod p: u^{p^{e-1}} mod p^e.
long long teichmuller_lift(long long u, long long p, int e);

/// Residue j mod |N_C(T)| with theta_0^j on N_C(T) valued in (Z/p)^* and
/// Teichmuller lift chi_T; nullopt when no residue works. Throws NoTameDatum.
std::optional<long long> j_T(const LocalActionData& data, const Subgroup& T);

enum class Tri { False, True, Indeterminate };
const char* tri_name(Tri t);
/// Conjunction: False dominates, then Indeterminate.
Tri tri_and(Tri a, Tri b);

struct ReduceTopItem {
  std::string condition;  ///< "a", "b", "c.i", "c.ii", "d.i", "d.ii"
  Tri verdict = Tri::True;
  std::string detail;
};
struct ReduceTopReport {
  Tri a = Tri::True, b = Tri::True, c = Tri::True, d = Tri::True;
  Tri overall = Tri::True;
  /// Failing or indeterminate items only.
  std::vector<ReduceTopItem> items;
};
ReduceTopReport reducetop(const LocalActionData& data);

struct ObstructionReport {
  BValues b;
  BertinVerdict bertin;
  KgbVerdict kgb;
  Rational m;  ///< -b_{e}
};
ObstructionReport analyze(const LocalActionData& data, const KgbOptions& options = {});

}  // namespace obstr
