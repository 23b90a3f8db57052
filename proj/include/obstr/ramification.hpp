#pragma once
/**
 * @file ramification.hpp
 * @brief Lower-numbered ramification filtrations as abstract local action
 * data: admissibility, the Artin character, Herbrand transforms,
 * restriction and quotient.
 */

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obstr/builders.hpp"
#include "obstr/class_function.hpp"
#include "obstr/rational.hpp"

namespace obstr {

/// G_i = group for from <= i < next.from.
struct FiltrationSegment {
  long long from = 0;
  Subgroup group;
};

/// G_0 = G strictly decreasing to {e}; chain.back().group is trivial and
/// chain.back().from is the terminal index m with G_m = {e}.
struct Filtration {
  GroupPtr G;
  int p = 0;
  std::vector<FiltrationSegment> chain;

  /// G_i for integer i (i <= 0 gives G).
  const Subgroup& at(long long i) const;
  /// G_u for real u, i.e. G_{ceil(u)}.
  const Subgroup& at(const Rational& u) const;
  long long terminal() const { return chain.back().from; }
  /// Lower jumps b with G_b != G_{b+1}, one per segment except the last.
  std::vector<long long> lower_jumps() const;
  bool operator==(const Filtration& o) const;
};

/// c0 generates C; theta0(c0^k) = zeta^k for a fixed primitive |C|-th root
/// of unity zeta in k, normalised so that zeta^{|C|/g} equals
/// w^{(p-1)/g}, where g = gcd(|C|, p-1) and w is the least primitive root mod p.
struct TameCharacterDatum {
  int generator = 0;
};

struct LocalActionData {
  StructureSplit split;
  Filtration filt;
  std::optional<TameCharacterDatum> tame;

  const GroupPtr& group() const { return filt.G; }
  int p() const { return filt.p; }
};

struct ArtinCharacter {
  ClassFunction a;
  /// i_G(g) = #{i >= 0 : g in G_i} for a representative of each class (class 0 holds 0).
  std::vector<long long> i_G;
};

/// Structural: chain shape, normality, elementary quotients, tame module,
/// Hasse-Arf and integrality of quotient jumps. Arithmetic adds the parity
/// and tame-value conditions satisfied by every action over k. Strict adds
/// the growth of upper jumps on cyclic subgroups and the prime-to-p jumps of
/// order p sections, which hold for actions but are not needed by the
/// classification results.
enum class ValidationLevel { Structural, Arithmetic, Strict };

struct Violation {
  std::string rule;
  std::string detail;
};

/// Upper numbering: G^v = groups[k] for jumps[k-1] < v <= jumps[k]; trivial beyond the last jump.
struct UpperFiltration {
  std::vector<Rational> jumps;
  std::vector<Subgroup> groups;
};

/// Reusable checker holding everything about G that validation needs.
class Validator {
 public:
  Validator(GroupPtr G, int p);
  ~Validator();
  Validator(Validator&&) noexcept;
  std::vector<Violation> check(const LocalActionData& data, ValidationLevel level) const;
  /// Stops at the first violation; used by enumeration loops.
  std::optional<Violation> first_violation(const LocalActionData& data, ValidationLevel level) const;
  /// Checks a chain whose last segment is still open (its group need not be
  /// trivial). Every rule decided by the drops made so far is applied, so a
  /// violation here rules out every completion of the prefix.
  std::optional<Violation> prefix_violation(const LocalActionData& prefix, ValidationLevel level) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

std::vector<Violation> validate(const LocalActionData& data, ValidationLevel level);
std::string describe(const std::vector<Violation>& v);

/// Computed from the i_G counts and from the induced-character formula; the
/// two must agree exactly (throws InvalidData otherwise).
ArtinCharacter artin_character(const LocalActionData& data);
/// The same two computations without building an ArtinCharacter cache.
ClassFunction artin_character_by_counts(const Filtration& f);
ClassFunction artin_character_by_induction(const Filtration& f);

/// i+1 for the largest i with Gamma <= G_i. Throws TrivialSubgroup.
long long iota(const Filtration& f, const Subgroup& Gamma);
inline long long iota(const LocalActionData& d, const Subgroup& Gamma) { return iota(d.filt, Gamma); }

Rational herbrand_phi(const Filtration& f, const Rational& u);
Rational herbrand_psi(const Filtration& f, const Rational& v);
UpperFiltration upper_filtration(const Filtration& f);
const Subgroup& upper_group(const Filtration& f, const Rational& v);
/// Converts upper jump data back to lower numbering; throws
/// InadmissibleChain if a lower jump is not an integer.
Filtration lower_from_upper(const GroupPtr& G, int p, const UpperFiltration& up);

/// Makes a StructureSplit with a prescribed complement.
StructureSplit make_split(const GroupTable& G, int p, const Subgroup& C);

/// Restriction to H: H_i = H cap G_i, plus the scalar lambda with
/// res a_phi = lambda reg_H + a_{phi_H}, verified at every element.
struct Restriction {
  LocalActionData data;
  SubgroupGroup embedding;
  Rational lambda;
};
Restriction restrict_to(const LocalActionData& data, const Subgroup& H);
/// The filtration H_i = H cap G_i on H itself (no data wrapping).
Filtration restricted_filtration(const Filtration& f, const SubgroupGroup& H);

struct Quotient {
  LocalActionData data;
  QuotientGroup map;
};
/// Upper numbering pushforward. Throws NotNormal, InadmissibleChain.
Quotient quotient(const LocalActionData& data, const Subgroup& N);

/// C_{m p^n} with lower jumps at m * sum_{j <= l} p^j i_j.
LocalActionData cyclic_filtration(int p, int n, const std::vector<long long>& i_vector, int m = 1);
/// Wraps an explicit chain after structural validation (throws InadmissibleChain).
LocalActionData chain_filtration(const GroupPtr& G, int p, const std::vector<FiltrationSegment>& chain,
                                 std::optional<TameCharacterDatum> tame = std::nullopt,
                                 ValidationLevel level = ValidationLevel::Structural);
/// Builds data from a chain without validation.
LocalActionData make_data(const GroupPtr& G, int p, const std::vector<FiltrationSegment>& chain,
                          std::optional<TameCharacterDatum> tame = std::nullopt);

/// Jumps of a cyclic p-group filtration in the upper numbering, i.e. the
/// sequence i_0, i_0 + i_1, ... of its own Herbrand function.
std::vector<Rational> cyclic_upper_jumps(const Filtration& f);

}  // namespace obstr
