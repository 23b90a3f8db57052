#pragma once
/**
 * @file classify.hpp
 * @brief Membership in the Bertin and almost Bertin lists, quotient screens,
 * exhaustive enumeration of filtrations, counterexample search and the
 * prescribed-kernel planner.
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obstr/obstructions.hpp"
#include "obstr/ramification.hpp"

namespace obstr {

/// Cyclic, dihedral D_{2p^n}, A_4 (p = 2) or generalized quaternion of order >= 16 (p = 2).
bool kgb_list_membership(const GroupTable& G, int p);
/// The list above together with SL_2(3) and Q_8 (p = 2).
bool almost_list_membership(const GroupTable& G, int p);
/// Human-readable name of the list entry G matches, or "" when none.
std::string list_entry_name(const GroupTable& G, int p);

struct QuotientWitness {
  Subgroup N;       ///< G/N has the excluded shape
  int shape = 0;    ///< item number in the list of excluded quotients for this p
  std::string description;
};
struct QuotientScreenResult {
  std::optional<QuotientWitness> witness;
  /// When no witness exists: "cyclic", "dihedral", "A4", "SL2(3)",
  /// "generalized quaternion" or "semidihedral".
  std::string residual_class;
  /// The residual class was confirmed by direct recognition of G.
  bool residual_verified = false;
};
/// Throws NotCyclicByP, CapExceeded.
QuotientScreenResult quotient_screen(const GroupTable& G, int p);
/// Tests one group against the excluded shapes; 0 when it has none of them.
int excluded_shape(const GroupTable& Q, int p);

/// Position of an enumerated chain: start index and members of each segment.
struct EnumerationCursor {
  long long index = -1;  ///< enumeration index of the datum the cursor points at
  std::vector<std::pair<long long, std::vector<int>>> chain;
};

struct EnumerationOptions {
  /// Largest lower jump allowed, so the terminal index is at most jump_bound + 1.
  long long jump_bound = 20;
  /// Smallest allowed first wild lower jump (P = G_b with b >= this value).
  long long min_first_wild_jump = 1;
  ValidationLevel level = ValidationLevel::Arithmetic;
  std::optional<TameCharacterDatum> tame;
  /// Search-tree nodes visited before the enumeration stops with capped set.
  long long max_nodes = 20'000'000;
  /// Resume strictly after this datum.
  std::optional<EnumerationCursor> resume_after;
};

struct EnumerationStats {
  long long nodes = 0;
  long long emitted = 0;
  long long max_jump = 0;  ///< largest last lower jump among emitted data
  bool capped = false;
  bool stopped = false;  ///< the sink asked to stop
  EnumerationCursor last;  ///< position of the last emitted datum
};

/// Receives each datum with its enumeration index; returns false to stop.
using FiltrationSink = std::function<bool(const LocalActionData&, long long index)>;

/// Depth-first over normal chains inside P ordered by (start index, members).
/// Throws NotCyclicByP.
EnumerationStats enumerate_filtrations(const GroupPtr& G, int p, const EnumerationOptions& options,
                                       const FiltrationSink& sink);
/// Collects the whole stream.
std::vector<LocalActionData> enumerate_all(const GroupPtr& G, int p, const EnumerationOptions& options);

EnumerationCursor cursor_of(const LocalActionData& data, long long index);

/// Bertin: the Bertin obstruction fails. Kgb: the Bertin obstruction
/// vanishes but the KGB obstruction does not, i.e. a failure invisible to
/// the Bertin test.
enum class SearchMode { Bertin, Kgb };
const char* search_mode_name(SearchMode m);

enum class SearchOutcome { CounterexampleFound, ExhaustedBound, CapExceeded };
const char* search_outcome_name(SearchOutcome o);

struct SearchOptions {
  long long jump_bound = 20;
  SearchMode mode = SearchMode::Bertin;
  long long min_jump = 1;
  /// Worker threads evaluating obstructions; 0 selects the hardware count.
  unsigned threads = 0;
  /// Instances checked before the enumeration, in order.
  std::vector<LocalActionData> seeds;
  long long max_nodes = 20'000'000;
  /// Continue an earlier search strictly after this enumerated datum.
  std::optional<EnumerationCursor> resume_after;
};

struct SearchWitness {
  LocalActionData data;
  ObstructionReport report;
  bool from_seed = false;
  long long index = -1;  ///< enumeration index, or seed position when from_seed
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::ExhaustedBound;
  std::optional<SearchWitness> witness;
  long long instances = 0;  ///< seeds and enumerated data examined
  long long max_jump = 0;
  long long jump_bound = 0;
  long long min_jump = 1;
  SearchMode mode = SearchMode::Bertin;
  /// Last enumerated datum examined; resuming from it continues the search.
  std::optional<EnumerationCursor> cursor;
};

/// First arithmetic-valid datum whose obstruction fails in the chosen mode.
SearchResult counterexample_search(const GroupPtr& G, int p, const SearchOptions& options);

struct PlannedFiltration {
  LocalActionData data;
  /// Lower jumps n_1 < n_2 < ... at which the chain inside J drops.
  std::vector<long long> kernel_indices;
  /// quotient(data, J) reproduces the input exactly.
  bool round_trip = false;
  /// P lies in G_{M-1}.
  bool sylow_deep = false;
  std::string provenance;
};

struct PlannerOptions {
  /// Candidates n = n_0 + k p^{M-1} tried for each segment, k < search_span.
  long long search_span = 64;
};

/// `quotient_data` lives on quotient_group(G, J). The result keeps the
/// preimage of the quotient filtration up to its last jump, then places a
/// G-normal chain J = J_1 > J_2 > ... > {e} with elementary abelian steps
/// dropping at lower jumps n_k = -1 mod p^{M-1}, where n_1 exceeds the last
/// quotient jump by more than M. The first arithmetic-valid placement is
/// returned. Throws NotPKernel, NoValidPlacement.
PlannedFiltration prescribed_planner(const GroupPtr& G, int p, const Subgroup& J,
                                     const LocalActionData& quotient_data, long long M,
                                     const PlannerOptions& options = {});

}  // namespace obstr
