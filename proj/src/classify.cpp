/**
 * @file classify.cpp
 * @brief List membership, quotient screens, filtration enumeration,
 * counterexample search and the prescribed-kernel planner.
 */
#include "obstr/classify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "obstr/errors.hpp"
#include "obstr/lattice.hpp"

namespace obstr {

namespace {

bool is_elementary_abelian(const GroupTable& G, const Subgroup& E, int p) {
  if (E.is_trivial()) return true;
  return is_p_group(E, p) && is_abelian(G, E) && exponent(G, E) == p;
}

bool centralizes(const GroupTable& G, int c, const Subgroup& E) {
  for (int x : E.members())
    if (G.conjugate(c, x) != x) return false;
  return true;
}

/// c^k acts non-trivially on E for 0 < k < m.
bool acts_faithfully(const GroupTable& G, int c, int m, const Subgroup& E) {
  int ck = 0;
  for (int k = 1; k < m; ++k) {
    ck = G.mul(ck, c);
    if (centralizes(G, ck, E)) return false;
  }
  return true;
}

bool acts_by_inversion(const GroupTable& G, int c, const Subgroup& E) {
  for (int x : E.members())
    if (G.conjugate(c, x) != G.inv(x)) return false;
  return true;
}

bool fixed_point_free(const GroupTable& G, int c, const Subgroup& E) {
  for (int x : E.members())
    if (x != 0 && G.conjugate(c, x) == x) return false;
  return true;
}

/// No normal subgroup of G lies strictly between {e} and E.
bool irreducible_normal(const GroupTable& G, const Subgroup& E) {
  for (const auto& N : normal_subgroups(G))
    if (!N.is_trivial() && N.order() < E.order() && N.subset_of(E)) return false;
  return true;
}

int count_order_dividing(const GroupTable& G, const Subgroup& H, int k) {
  int n = 0;
  for (int x : H.members())
    if (k % G.elem_order(x) == 0) ++n;
  return n;
}

bool has_family(const GroupTable& G, int p, DqsFamily f) {
  for (const auto& s : dqs_shapes(G, p))
    if (s.family == f) return true;
  return false;
}

bool is_whole_cyclic(const GroupTable& G) { return is_cyclic(G, whole_group(G)); }

bool is_dihedral_list(const GroupTable& G, int p) {
  const int n = G.order();
  if (p == 2 && n == 4) return !is_whole_cyclic(G);
  if (n % 2 != 0 || p_part(n / 2, p) != n / 2) return false;
  if (p == 2 && n < 8) return false;
  return has_family(G, p, DqsFamily::Dihedral);
}

bool is_a4(const GroupTable& G, int p) {
  if (p != 2 || G.order() != 12 || G.is_abelian()) return false;
  auto P = normal_sylow(G, 2);
  return P && !is_cyclic(G, *P);
}

bool is_sl23(const GroupTable& G, int p) {
  if (p != 2 || G.order() != 24) return false;
  auto P = normal_sylow(G, 2);
  if (!P || !has_family(*subgroup_as_group(G, *P).group, 2, DqsFamily::Quaternion)) return false;
  for (int x = 0; x < G.order(); ++x)
    if (G.elem_order(x) == 3 && !centralizes(G, x, *P)) return true;
  return false;
}

bool is_quaternion(const GroupTable& G, int p, int min_order) {
  return p == 2 && G.order() >= min_order && p_part(G.order(), 2) == G.order() &&
         has_family(G, 2, DqsFamily::Quaternion);
}

bool is_semidihedral(const GroupTable& G, int p) {
  return p == 2 && p_part(G.order(), 2) == G.order() && has_family(G, 2, DqsFamily::Semidihedral);
}

void require_cyclic_by_p(const GroupTable& G, int p) {
  if (!is_prime(p) || !is_cyclic_by_p(G, p))
    throw Error(ErrorCode::NotCyclicByP, "group is not a p-group extended by a cyclic group of order prime to p");
}

}  // namespace

std::string list_entry_name(const GroupTable& G, int p) {
  if (is_whole_cyclic(G)) return "cyclic";
  if (is_dihedral_list(G, p)) return "dihedral";
  if (is_a4(G, p)) return "A4";
  if (is_quaternion(G, p, 16)) return "generalized quaternion";
  if (is_sl23(G, p)) return "SL2(3)";
  if (is_quaternion(G, p, 8)) return "Q8";
  return "";
}

bool kgb_list_membership(const GroupTable& G, int p) {
  require_cyclic_by_p(G, p);
  auto s = list_entry_name(G, p);
  return !s.empty() && s != "SL2(3)" && s != "Q8";
}

bool almost_list_membership(const GroupTable& G, int p) {
  require_cyclic_by_p(G, p);
  return !list_entry_name(G, p).empty();
}

int excluded_shape(const GroupTable& Q, int p) {
  const int n = Q.order();
  if (n == 1) return 0;
  StructureSplit sp = structure_split(Q, p);
  const Subgroup& E = sp.P;
  const int m = sp.C.order();
  const int c = sp.c_generator;
  const bool elem = !E.is_trivial() && is_elementary_abelian(Q, E, p);
  if (p != 2) {
    if (n == p * p && Q.is_abelian() && exponent(Q, whole_group(Q)) == p) return 1;
    if (elem && m >= 3 && acts_faithfully(Q, c, m, E) && irreducible_normal(Q, E)) return 2;
    if (elem && E.order() == p * p && m == 2 && acts_by_inversion(Q, c, E)) return 3;
    if (n % (2 * p) == 0 && is_prime(n / (2 * p)) && n / (2 * p) > 2) {
      const int ell = n / (2 * p);
      Subgroup Z = center(Q);
      for (const auto& N : normal_subgroups(Q)) {
        if (N.order() != 2 * p || is_abelian(Q, N)) continue;
        for (int z : Z.members()) {
          if (Q.elem_order(z) != ell) continue;
          if (!N.contains(z)) return 4;
        }
      }
    }
    if (E.order() == p && m == 4 && acts_by_inversion(Q, c, E)) return 5;
    return 0;
  }
  if (elem && m >= 5 && acts_faithfully(Q, c, m, E) && irreducible_normal(Q, E)) return 1;
  if (elem && E.order() == 16 && m == 3 && fixed_point_free(Q, c, E)) return 2;
  if (E.order() == 16 && m == 3 && is_abelian(Q, E) && exponent(Q, E) == 4 && count_order_dividing(Q, E, 2) == 4 &&
      acts_faithfully(Q, c, m, E))
    return 3;
  if (elem && E.order() == 8 && (m == 1 || (m == 3 && acts_faithfully(Q, c, m, E)))) return 4;
  if (elem && E.order() == 4 && is_prime(m) && Q.is_abelian()) return 5;
  if (elem && E.order() == 4 && m % 3 == 0 && is_prime(m / 3) && m / 3 > 2 && !centralizes(Q, c, E)) return 6;
  if (n == 8 && Q.is_abelian() && exponent(Q, whole_group(Q)) == 4 && count_order_dividing(Q, whole_group(Q), 2) == 4)
    return 7;
  return 0;
}

namespace {

const char* shape_description(int p, int shape) {
  if (p != 2) {
    switch (shape) {
      case 1: return "C_p x C_p";
      case 2: return "E.C_m with C_m faithful and irreducible, m >= 3";
      case 3: return "(C_p x C_p).C_2 with C_2 acting by inversion";
      case 4: return "D_2p x C_l for a prime l > 2";
      case 5: return "C_p.C_4 with a generator of C_4 acting by inversion";
    }
  } else {
    switch (shape) {
      case 1: return "E.D with D cyclic of odd order >= 5 acting faithfully and irreducibly";
      case 2: return "E.C_3 with |E| = 16 and no fixed points";
      case 3: return "(Z/4 x Z/4).C_3 with C_3 faithful";
      case 4: return "E.D with |E| = 8 and D of order 1 or 3 faithful";
      case 5: return "(Z/2)^2 x C_l for a prime l";
      case 6: return "(Z/2)^2.C_3l with l an odd prime and C acting non-trivially";
      case 7: return "Z/4 x Z/2";
    }
  }
  return "";
}

}  // namespace

QuotientScreenResult quotient_screen(const GroupTable& G, int p) {
  require_cyclic_by_p(G, p);
  std::vector<Subgroup> normals = normal_subgroups(G);
  std::sort(normals.begin(), normals.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a.members() < b.members();
  });
  QuotientScreenResult out;
  for (const auto& N : normals) {
    auto Q = quotient_group(G, N);
    int s = excluded_shape(*Q.group, p);
    if (s) {
      out.witness = QuotientWitness{N, s, shape_description(p, s)};
      return out;
    }
  }
  if (is_whole_cyclic(G)) out.residual_class = "cyclic";
  else if (is_dihedral_list(G, p)) out.residual_class = "dihedral";
  else if (is_a4(G, p)) out.residual_class = "A4";
  else if (is_sl23(G, p)) out.residual_class = "SL2(3)";
  else if (is_quaternion(G, p, 8)) out.residual_class = "generalized quaternion";
  else if (is_semidihedral(G, p)) out.residual_class = "semidihedral";
  out.residual_verified = !out.residual_class.empty();
  if (!out.residual_verified) out.residual_class = "unrecognized";
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class Enumerator {
 public:
  Enumerator(const GroupPtr& G, int p, const EnumerationOptions& opt, const FiltrationSink& sink)
      : G_(G), p_(p), opt_(opt), sink_(sink), val_(G, p), split_(structure_split(*G, p)) {
    const auto& T = *G_;
    for (const auto& N : normal_subgroups(T))
      if (N.subset_of(split_.P)) normals_.push_back(N);
    std::sort(normals_.begin(), normals_.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members() < b.members(); });
    for (size_t i = 0; i < normals_.size(); ++i) rank_[normals_[i].members()] = static_cast<int>(i);
    const size_t k = normals_.size();
    step_ok_.assign(k * k, false);
    for (size_t a = 0; a < k; ++a)
      for (size_t b = 0; b < k; ++b) {
        const auto& S = normals_[a];
        const auto& N = normals_[b];
        if (!N.subset_of(S) || N.order() == S.order()) continue;
        bool ok = true;
        auto gens = generating_set(T, S);
        for (size_t x = 0; x < gens.size() && ok; ++x) {
          if (!N.contains(T.power(gens[x], p_))) ok = false;
          for (size_t y = x + 1; y < gens.size() && ok; ++y) {
            int u = gens[x], v = gens[y];
            if (!N.contains(T.mul(T.mul(u, v), T.mul(T.inv(u), T.inv(v))))) ok = false;
          }
        }
        step_ok_[a * k + b] = ok;
      }
    trivial_rank_ = 0;  // {e} = {0} is lexicographically least
    if (opt_.resume_after) {
      for (const auto& [from, members] : opt_.resume_after->chain) {
        auto it = rank_.find(members);
        cursor_.emplace_back(from, it == rank_.end() ? -1 : it->second);
      }
      next_index_ = opt_.resume_after->index + 1;
    }
  }

  EnumerationStats run() {
    const auto& T = *G_;
    const bool pinned = !cursor_.empty();
    chain_.assign({{0, whole_group(T)}});
    ranks_.assign({split_.P.order() == T.order() ? rank_.at(split_.P.members()) : -1});
    const long long first = std::max<long long>(2, opt_.min_first_wild_jump + 1);
    if (split_.P.order() == T.order()) {
      dfs(first, pinned);
    } else if (split_.P.is_trivial()) {
      visit(1, trivial_rank_, pinned && cursor_.size() > 1 && cursor_[1] == std::make_pair(1LL, trivial_rank_));
    } else {
      chain_.push_back({1, split_.P});
      ranks_.push_back(rank_.at(split_.P.members()));
      dfs(first, pinned);
    }
    return stats_;
  }

 private:
  LocalActionData current() const {
    LocalActionData d;
    d.split = opt_.tame ? make_split(*G_, p_, cyclic_subgroup(*G_, opt_.tame->generator)) : split_;
    if (opt_.tame) d.split.c_generator = opt_.tame->generator;
    d.filt.G = G_;
    d.filt.p = p_;
    d.filt.chain = chain_;
    d.tame = opt_.tame;
    return d;
  }

  bool halted() const { return stats_.capped || stats_.stopped; }

  /// Extends chain_ by one segment; `pinned` means chain_ equals the cursor so far.
  void dfs(long long first_from, bool pinned) {
    const long long last_from = chain_.back().from;
    const int cur_rank = ranks_.back();
    const size_t depth = chain_.size();
    const long long lo = std::max(last_from + 1, first_from);
    const long long hi = opt_.jump_bound + 1;
    const size_t k = normals_.size();
    for (long long f = lo; f <= hi && !halted(); ++f) {
      for (size_t r = 0; r < k && !halted(); ++r) {
        if (cur_rank < 0 || !step_ok_[static_cast<size_t>(cur_rank) * k + r]) continue;
        bool child_pinned = false;
        if (pinned) {
          if (depth >= cursor_.size()) continue;
          auto key = std::make_pair(f, static_cast<int>(r));
          if (key < cursor_[depth]) continue;
          child_pinned = key == cursor_[depth];
        }
        visit(f, static_cast<int>(r), child_pinned);
      }
    }
  }

  /// Appends (f, normals_[r]) and either emits the finished chain or descends.
  void visit(long long f, int r, bool pinned) {
    if (++stats_.nodes > opt_.max_nodes) {
      stats_.capped = true;
      return;
    }
    chain_.push_back({f, normals_[static_cast<size_t>(r)]});
    ranks_.push_back(r);
    LocalActionData d = current();
    if (normals_[static_cast<size_t>(r)].is_trivial()) {
      bool is_cursor = pinned && chain_.size() == cursor_.size();
      if (!is_cursor && !val_.first_violation(d, opt_.level)) {
        long long idx = next_index_++;
        ++stats_.emitted;
        stats_.max_jump = std::max(stats_.max_jump, f - 1);
        stats_.last = cursor_of(d, idx);
        if (!sink_(d, idx)) stats_.stopped = true;
      }
    } else if (!val_.prefix_violation(d, opt_.level)) {
      dfs(f + 1, pinned);
    }
    chain_.pop_back();
    ranks_.pop_back();
  }

  GroupPtr G_;
  int p_;
  const EnumerationOptions& opt_;
  const FiltrationSink& sink_;
  Validator val_;
  StructureSplit split_;
  std::vector<Subgroup> normals_;
  std::map<std::vector<int>, int> rank_;
  std::vector<bool> step_ok_;
  int trivial_rank_ = 0;
  std::vector<std::pair<long long, int>> cursor_;
  std::vector<FiltrationSegment> chain_;
  std::vector<int> ranks_;
  long long next_index_ = 0;
  EnumerationStats stats_;
};

}  // namespace

EnumerationCursor cursor_of(const LocalActionData& data, long long index) {
  EnumerationCursor c;
  c.index = index;
  for (const auto& seg : data.filt.chain) c.chain.emplace_back(seg.from, seg.group.members());
  return c;
}

EnumerationStats enumerate_filtrations(const GroupPtr& G, int p, const EnumerationOptions& options,
                                       const FiltrationSink& sink) {
  require_cyclic_by_p(*G, p);
  if (options.jump_bound < 0) throw Error(ErrorCode::BadParameter, "jump bound must be non-negative");
  Enumerator e(G, p, options, sink);
  return e.run();
}

std::vector<LocalActionData> enumerate_all(const GroupPtr& G, int p, const EnumerationOptions& options) {
  std::vector<LocalActionData> out;
  auto st = enumerate_filtrations(G, p, options, [&](const LocalActionData& d, long long) {
    out.push_back(d);
    return true;
  });
  if (st.capped) throw Error(ErrorCode::CapExceeded, "enumeration node cap reached");
  return out;
}

// ---------------------------------------------------------------------------
// Search

const char* search_mode_name(SearchMode m) { return m == SearchMode::Bertin ? "bertin" : "kgb"; }

const char* search_outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::CounterexampleFound: return "counterexample found";
    case SearchOutcome::ExhaustedBound: return "exhausted bound";
    case SearchOutcome::CapExceeded: return "cap exceeded";
  }
  return "";
}

namespace {

bool fails(const LocalActionData& d, SearchMode mode) {
  if (mode == SearchMode::Bertin) return !bertin_vanishes(d).vanishes;
  KgbOptions ko;
  ko.want_witness = false;
  auto k = kgb_vanishes(d, ko);
  return k.bertin && !k.vanishes;
}

/// Index of the first failing datum, evaluated by a pool of workers.
std::optional<size_t> first_failure(const std::vector<LocalActionData>& batch, SearchMode mode, unsigned threads) {
  if (batch.empty()) return std::nullopt;
  std::vector<char> bad(batch.size(), 0);
  std::atomic<size_t> next{0};
  std::atomic<size_t> best{batch.size()};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= batch.size() || i > best.load()) return;
      if (fails(batch[i], mode)) {
        bad[i] = 1;
        size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(batch.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < batch.size(); ++i)
    if (bad[i]) return i;
  return std::nullopt;
}

}  // namespace

SearchResult counterexample_search(const GroupPtr& G, int p, const SearchOptions& options) {
  require_cyclic_by_p(*G, p);
  SearchResult res;
  res.jump_bound = options.jump_bound;
  res.min_jump = options.min_jump;
  res.mode = options.mode;
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  Validator val(G, p);
  KgbOptions full;
  for (size_t s = 0; s < options.seeds.size(); ++s) {
    const auto& d = options.seeds[s];
    if (val.first_violation(d, ValidationLevel::Arithmetic)) continue;
    ++res.instances;
    if (fails(d, options.mode)) {
      res.outcome = SearchOutcome::CounterexampleFound;
      res.witness = SearchWitness{d, analyze(d, full), true, static_cast<long long>(s)};
      res.max_jump = d.filt.terminal() - 1;
      return res;
    }
  }
  // Lattice caches are filled once before the workers share the group.
  all_subgroups(*G);
  cyclic_subgroup_reps(*G);

  const size_t batch_size = 64 * threads;
  std::vector<LocalActionData> batch;
  std::vector<long long> indices;
  auto flush = [&]() -> bool {
    auto hit = first_failure(batch, options.mode, threads);
    for (size_t i = 0; i < batch.size(); ++i) {
      if (hit && i > *hit) break;
      ++res.instances;
      res.max_jump = std::max(res.max_jump, batch[i].filt.terminal() - 1);
      res.cursor = cursor_of(batch[i], indices[i]);
    }
    if (hit) {
      const auto& d = batch[*hit];
      res.outcome = SearchOutcome::CounterexampleFound;
      res.witness = SearchWitness{d, analyze(d, full), false, indices[*hit]};
    }
    batch.clear();
    indices.clear();
    return !hit;
  };
  EnumerationOptions eo;
  eo.jump_bound = options.jump_bound;
  eo.min_first_wild_jump = options.min_jump;
  eo.level = ValidationLevel::Arithmetic;
  eo.max_nodes = options.max_nodes;
  eo.resume_after = options.resume_after;
  if (options.resume_after) res.cursor = options.resume_after;
  auto st = enumerate_filtrations(G, p, eo, [&](const LocalActionData& d, long long idx) {
    batch.push_back(d);
    indices.push_back(idx);
    if (batch.size() >= batch_size) return flush();
    return true;
  });
  if (!res.witness) flush();
  if (res.witness) return res;
  res.outcome = st.capped ? SearchOutcome::CapExceeded : SearchOutcome::ExhaustedBound;
  return res;
}

// ---------------------------------------------------------------------------
// Planner

namespace {

/// J > J^p[J,J] > ... > {e}; each term is characteristic in J, hence normal in G.
std::vector<Subgroup> frattini_chain(const GroupTable& G, int p, const Subgroup& J) {
  std::vector<Subgroup> out{J};
  Subgroup cur = J;
  while (!cur.is_trivial()) {
    std::vector<int> gens;
    for (int x : cur.members()) gens.push_back(G.power(x, p));
    Subgroup pw = generated(G, gens);
    Subgroup next = join(G, pw, commutator_subgroup(G, cur, cur));
    out.push_back(next);
    cur = next;
  }
  return out;
}

bool same_filtration(const Filtration& a, const Filtration& b) {
  if (a.chain.size() != b.chain.size()) return false;
  for (size_t k = 0; k < a.chain.size(); ++k)
    if (a.chain[k].from != b.chain[k].from || !(a.chain[k].group == b.chain[k].group)) return false;
  return true;
}

}  // namespace

PlannedFiltration prescribed_planner(const GroupPtr& G, int p, const Subgroup& J,
                                     const LocalActionData& quotient_data, long long M,
                                     const PlannerOptions& options) {
  const auto& T = *G;
  require_cyclic_by_p(T, p);
  if (M < 1) throw Error(ErrorCode::BadParameter, "M must be positive");
  if (!is_normal(T, J)) throw Error(ErrorCode::NotNormal, "kernel is not normal");
  auto P = normal_sylow(T, p);
  if (!P || !J.subset_of(*P)) throw Error(ErrorCode::NotPKernel, "kernel is not inside the Sylow subgroup");
  QuotientGroup q = quotient_group(T, J);
  if (quotient_data.group()->order() != q.group->order())
    throw Error(ErrorCode::BadParameter, "quotient data lives on a group of the wrong order");

  PlannedFiltration out;
  out.provenance =
      "data-level plan; realizability is inherited from the existence of lifts with prescribed quotient and "
      "kernel placement, not re-derived";
  const auto& hchain = quotient_data.filt.chain;
  std::vector<FiltrationSegment> base;
  for (size_t k = 0; k + 1 < hchain.size(); ++k) base.push_back({hchain[k].from, q.preimage(hchain[k].group, T)});
  const long long hb = quotient_data.filt.terminal() - 1;  // last quotient jump (or -1 when H is trivial)
  long long modulus = 1;
  for (long long k = 1; k < M; ++k) modulus *= p;

  Validator val(G, p);
  StructureSplit split = structure_split(T, p);
  auto data_of = [&](const std::vector<FiltrationSegment>& ch) {
    LocalActionData d;
    d.split = split;
    d.filt.G = G;
    d.filt.p = p;
    d.filt.chain = ch;
    return d;
  };

  if (J.is_trivial()) {
    base.push_back({quotient_data.filt.terminal(), J});
    out.data = data_of(base);
  } else {
    auto fchain = frattini_chain(T, p, J);  // J = J_1 > ... > {e}
    std::vector<FiltrationSegment> ch = base;
    if (ch.empty()) ch = {{0, J}};
    else ch.push_back({hb + 1, J});
    // Placement of the drops J_t -> J_{t+1} at lower jumps n_t.
    std::vector<long long> ns;
    std::function<bool(size_t, long long)> place = [&](size_t t, long long lo) -> bool {
      long long start = lo;
      long long r = ((-1 - start) % modulus + modulus) % modulus;
      start += r;  // smallest value >= lo that is -1 mod p^{M-1}
      for (long long k = 0; k < options.search_span; ++k) {
        long long n = start + k * modulus;
        ch.push_back({n + 1, fchain[t + 1]});
        ns.push_back(n);
        LocalActionData d = data_of(ch);
        bool last = t + 2 == fchain.size();
        bool ok = last ? !val.first_violation(d, ValidationLevel::Arithmetic)
                       : !val.prefix_violation(d, ValidationLevel::Arithmetic);
        if (ok && (last || place(t + 1, n + 1))) return true;
        ch.pop_back();
        ns.pop_back();
      }
      return false;
    };
    long long lo = std::max<long long>(hb + M + 1, ch.back().from);
    if (!place(0, lo))
      throw Error(ErrorCode::NoValidPlacement, "no arithmetic-valid placement of the kernel within the search span");
    out.kernel_indices = ns;
    out.data = data_of(ch);
  }
  Quotient back = quotient(out.data, J);
  out.round_trip = same_filtration(back.data.filt, quotient_data.filt);
  out.sylow_deep = P->subset_of(out.data.filt.at(M - 1));
  return out;
}

}  // namespace obstr
