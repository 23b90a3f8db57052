/**
 * @file obstructions.cpp
 * @brief b_T coefficients, Bertin and KGB decisions, sharp, and the
 * reduction of the Bertin question to the Sylow subgroup.
 */
#include "obstr/obstructions.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fp_poly.hpp"

namespace obstr {

namespace {

Rational identity_value(const Filtration& f) {
  Rational e = 0;
  for (size_t k = 0; k + 1 < f.chain.size(); ++k)
    e += Rational(f.chain[k + 1].from - f.chain[k].from) * Rational(f.chain[k].group.order() - 1);
  return e;
}

std::string members_str(const Subgroup& S) {
  std::string s = "{";
  for (size_t i = 0; i < S.members().size(); ++i) s += (i ? "," : "") + std::to_string(S.members()[i]);
  return s + "}";
}

}  // namespace

BValues b_coefficients(const LocalActionData& data) {
  const auto& G = *data.group();
  const auto& L = G.lattice();
  const auto& reps = L.reps.reps;
  std::vector<long long> io(L.cyclic.size(), 0);
  for (size_t j = 0; j < L.cyclic.size(); ++j)
    if (!L.cyclic[j].is_trivial()) io[j] = iota(data.filt, L.cyclic[j]);
  const Rational ae = identity_value(data.filt);
  BValues out;
  out.reserve(reps.size());
  for (const auto& T : reps) {
    Rational sum = T.is_trivial() ? -ae : Rational(0);
    long long acc = 0;
    for (size_t j = 0; j < L.cyclic.size(); ++j) {
      const auto& Gam = L.cyclic[j];
      if (Gam.is_trivial() || !T.subset_of(Gam)) continue;
      acc += moebius(Gam.order() / T.order()) * io[j];
    }
    sum += Rational(acc);
    long long idx = normalizer(G, T).order() / T.order();
    out.push_back({T, sum / Rational(idx)});
  }
  return out;
}

BValues b_oracle(const LocalActionData& data) {
  const auto& Gp = data.group();
  const auto& G = *Gp;
  const auto& reps = G.lattice().reps.reps;
  const int rows = G.num_classes();
  const int cols = static_cast<int>(reps.size());
  ClassFunction a = artin_character_by_counts(data.filt);
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(cols + 1));
  for (int c = 0; c < cols; ++c) {
    ClassFunction ind = induced_trivial_char(Gp, reps[c]);
    for (int r = 0; r < rows; ++r) M[r][c] = ind.on_class(r);
  }
  for (int r = 0; r < rows; ++r) M[r][cols] = -a.on_class(r);
  int row = 0;
  std::vector<int> pivot_row(cols, -1);
  for (int c = 0; c < cols && row < rows; ++c) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (M[r][c].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[row]);
    Rational inv = Rational(1) / M[row][c];
    for (int k = c; k <= cols; ++k) M[row][k] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || M[r][c].sign() == 0) continue;
      Rational f = M[r][c];
      for (int k = c; k <= cols; ++k) M[r][k] -= f * M[row][k];
    }
    pivot_row[c] = row++;
  }
  for (int c = 0; c < cols; ++c)
    if (pivot_row[c] < 0) throw Error(ErrorCode::SingularSystem, "induced characters are linearly dependent");
  for (int r = row; r < rows; ++r)
    if (M[r][cols].sign() != 0) throw Error(ErrorCode::SingularSystem, "inconsistent system for b_T");
  BValues out;
  for (int c = 0; c < cols; ++c) out.push_back({reps[c], M[pivot_row[c]][cols]});
  return out;
}

const Rational& b_value(const BValues& b, const GroupTable& G, const Subgroup& T) {
  return b.at(static_cast<size_t>(cyclic_rep_index(G, T))).value;
}

BertinVerdict bertin_from_values(const BValues& b) {
  BertinVerdict v;
  for (const auto& e : b) {
    if (e.T.is_trivial()) continue;
    if (!e.value.is_integer() || e.value.sign() < 0) v.offenders.push_back(e.T);
  }
  v.vanishes = v.offenders.empty();
  return v;
}

BertinVerdict bertin_vanishes(const LocalActionData& data) { return bertin_from_values(b_coefficients(data)); }

std::optional<std::vector<GSetOrbit>> bertin_gset(const LocalActionData& data) {
  auto b = b_coefficients(data);
  if (!bertin_from_values(b).vanishes) return std::nullopt;
  std::vector<GSetOrbit> out;
  for (const auto& e : b)
    if (!e.T.is_trivial() && e.value.sign() > 0) out.push_back({e.T, e.value.to_integer()});
  return out;
}

namespace {

/// Layered reachability over (product, generated subgroup) states.
class KgbSearch {
 public:
  explicit KgbSearch(const GroupTable& G) : G_(G), n_(G.order()) { intern(trivial_subgroup(G)); }

  using Layer = std::vector<uint64_t>;

  int intern(const Subgroup& S) {
    auto it = ids_.find(S.bits());
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(subs_.size());
    subs_.push_back(S);
    ids_.emplace(S.bits(), id);
    return id;
  }

  int join_with(int sid, int g) {
    if (subs_[sid].contains(g)) return sid;
    uint64_t key = static_cast<uint64_t>(sid) * n_ + g;
    auto it = join_cache_.find(key);
    if (it != join_cache_.end()) return it->second;
    int id = intern(join(G_, subs_[sid], cyclic_subgroup(G_, g)));
    join_cache_.emplace(key, id);
    return id;
  }

  uint64_t key(int sid, int prod) const { return static_cast<uint64_t>(sid) * n_ + prod; }
  int sid_of(uint64_t k) const { return static_cast<int>(k / n_); }
  int prod_of(uint64_t k) const { return static_cast<int>(k % n_); }

  Layer step(const Layer& S, const std::vector<int>& cands) {
    Layer out;
    out.reserve(S.size() * 2);
    for (uint64_t s : S) {
      int sid = sid_of(s), x = prod_of(s);
      for (int g : cands) out.push_back(key(join_with(sid, g), G_.mul(x, g)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const Subgroup& sub(int id) const { return subs_[id]; }

 private:
  const GroupTable& G_;
  const uint64_t n_;
  std::vector<Subgroup> subs_;
  std::unordered_map<ElemSet, int, ElemSetHash> ids_;
  std::unordered_map<uint64_t, int> join_cache_;
};

/// States after t applications inside one block, with eventual periodicity.
struct Block {
  int rep = 0;
  long long count = 0;
  std::vector<int> cands;
  std::vector<char> is_cand;
  std::vector<KgbSearch::Layer> seq;
  long long pre = -1, period = 0;
  const KgbSearch::Layer& at(long long t) const {
    if (t < static_cast<long long>(seq.size())) return seq[static_cast<size_t>(t)];
    return seq[static_cast<size_t>(pre + (t - pre) % period)];
  }
};

}  // namespace

KgbVerdict kgb_from_values(const LocalActionData& data, const BValues& b, const KgbOptions& options) {
  KgbVerdict v;
  v.bertin = bertin_from_values(b).vanishes;
  if (!v.bertin) return v;
  const auto& G = *data.group();
  const auto& L = G.lattice();
  const int n = G.order();
  const long long target_order = n / data.filt.at(1LL).order();
  const long long threshold = options.period_threshold < 0 ? 2LL * n : options.period_threshold;
  KgbSearch search(G);
  std::vector<Block> blocks;
  KgbSearch::Layer cur{search.key(0, 0)};
  for (size_t r = 0; r < b.size(); ++r) {
    if (b[r].T.is_trivial() || b[r].value.sign() == 0) continue;
    Block blk;
    blk.rep = static_cast<int>(r);
    blk.count = b[r].value.to_integer();
    blk.is_cand.assign(n, 0);
    for (int g = 1; g < n; ++g)
      if (L.cyclic_class[L.cyclic_of_elem[g]] == static_cast<int>(r)) {
        blk.cands.push_back(g);
        blk.is_cand[g] = 1;
      }
    blk.seq.push_back(cur);
    std::map<KgbSearch::Layer, long long> seen;
    const bool detect = blk.count > threshold;
    if (detect) seen.emplace(cur, 0);
    for (long long t = 1; t <= blk.count; ++t) {
      KgbSearch::Layer nxt = search.step(blk.seq.back(), blk.cands);
      if (detect) {
        auto it = seen.find(nxt);
        if (it != seen.end()) {
          blk.pre = it->second;
          blk.period = t - it->second;
          break;
        }
        seen.emplace(nxt, t);
      }
      blk.seq.push_back(std::move(nxt));
    }
    cur = blk.at(blk.count);
    blocks.push_back(std::move(blk));
  }
  const int whole = search.intern(whole_group(G));
  std::optional<uint64_t> final_state;
  for (uint64_t s : cur)
    if (search.sid_of(s) == whole && G.elem_order(search.prod_of(s)) == target_order) {
      final_state = s;
      break;
    }
  if (!final_state) return v;
  v.vanishes = true;
  if (!options.want_witness) return v;
  uint64_t s = *final_state;
  std::vector<KgbWitnessEntry> rev;
  for (size_t bi = blocks.size(); bi-- > 0;) {
    const auto& blk = blocks[bi];
    for (long long t = blk.count; t >= 1; --t) {
      const auto& prev = blk.at(t - 1);
      int sid = search.sid_of(s), x = search.prod_of(s);
      bool found = false;
      for (uint64_t u : prev) {
        int g = G.mul(G.inv(search.prod_of(u)), x);
        if (!blk.is_cand[g] || search.join_with(search.sid_of(u), g) != sid) continue;
        rev.push_back({b[blk.rep].T, g});
        s = u;
        found = true;
        break;
      }
      if (!found) throw Error(ErrorCode::InvalidData, "KGB witness reconstruction failed");
    }
  }
  v.witness.assign(rev.rbegin(), rev.rend());
  return v;
}

KgbVerdict kgb_vanishes(const LocalActionData& data, const KgbOptions& options) {
  return kgb_from_values(data, b_coefficients(data), options);
}

ClassFunction sharp(const ClassFunction& chi, const QuotientGroup& q, const Subgroup& N) {
  const auto& Qg = q.group;
  std::vector<Rational> sums(Qg->order());
  const auto& G = *chi.group();
  for (int g = 0; g < G.order(); ++g) sums[q.project[g]] += chi.at(g);
  ClassFunction out(Qg);
  for (int c = 0; c < Qg->num_classes(); ++c)
    out.on_class(c) = sums[Qg->conj_classes()[c][0]] / Rational(N.order());
  return out;
}

ClassFunction sharp(const ClassFunction& chi, const Subgroup& N) {
  const auto& G = *chi.group();
  if (!is_normal(G, N)) throw Error(ErrorCode::NotNormal, "sharp needs a normal subgroup");
  return sharp(chi, quotient_group(G, N), N);
}

namespace {

void require_p_cyclic(const GroupTable& G, int p, const Subgroup& T) {
  if (T.is_trivial() || !is_p_group(T, p) || !is_cyclic(G, T))
    throw Error(ErrorCode::NotPSubgroup, "expected a non-trivial cyclic p-subgroup");
}

long long overgroup_mobius(const GroupTable& G, const Subgroup& T, const Subgroup* outside) {
  long long s = 0;
  for (const auto& Gam : all_cyclic_subgroups(G)) {
    if (!T.subset_of(Gam)) continue;
    if (outside && Gam.subset_of(*outside)) continue;
    s += moebius(Gam.order() / T.order());
  }
  return s;
}

}  // namespace

long long b_prime(const GroupTable& G, int p, const Subgroup& T) {
  require_p_cyclic(G, p, T);
  auto P = normal_sylow(G, p);
  if (!P) throw Error(ErrorCode::NotCyclicByP, "no normal Sylow subgroup");
  return overgroup_mobius(G, T, &*P);
}

long long b_double_prime(const GroupTable& G, int p, const Subgroup& T) {
  require_p_cyclic(G, p, T);
  return overgroup_mobius(G, T, nullptr);
}

ExponentCharacter chi_T(const GroupTable& G, const StructureSplit& split, const Subgroup& T) {
  require_p_cyclic(G, split.p, T);
  ExponentCharacter out;
  int t = cyclic_generator(G, T);
  for (int x : split.C.members()) {
    int y = G.conjugate(x, t);
    if (!T.contains(y)) continue;
    long long k = 1;
    for (int z = t; z != y; z = G.mul(z, t)) ++k;
    out.elements.push_back(x);
    out.exponents.push_back(k % T.order());
  }
  return out;
}

long long teichmuller_lift(long long u, long long p, int e) {
  long long pe = 1, pe1 = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  for (int i = 0; i + 1 < e; ++i) pe1 *= p;
  return pow_mod(mod_ll(u, pe), pe1, pe);
}

namespace {

int p_exponent(long long order, int p) {
  int e = 0;
  while (order > 1) {
    order /= p;
    ++e;
  }
  return e;
}

/// theta_0(c0^e) as an element of (Z/p)^*, or nullopt if it lies outside F_p.
std::optional<long long> theta0_power_in_fp(long long e, long long m, int p) {
  long long g = gcd_ll(m, p - 1);
  long long step = m / g;
  if (mod_ll(e, m) % step != 0) return std::nullopt;
  long long w = fp::primitive_root(p);
  return pow_mod(w, ((p - 1) / g) * ((mod_ll(e, m) / step) % g), p);
}

}  // namespace

std::optional<long long> j_T(const LocalActionData& data, const Subgroup& T) {
  if (!data.tame) throw Error(ErrorCode::NoTameDatum, "j_T needs a tame character datum");
  const auto& G = *data.group();
  const int p = data.p();
  auto chi = chi_T(G, data.split, T);
  const long long m = data.split.C.order();
  const long long r = static_cast<long long>(chi.elements.size());
  if (r == 1) return 0;
  const int c0 = data.split.c_generator;
  const int x = G.power(c0, m / r);
  long long kx = 0;
  for (size_t i = 0; i < chi.elements.size(); ++i)
    if (chi.elements[i] == x) kx = chi.exponents[i];
  const int eT = p_exponent(T.order(), p);
  for (long long j = 0; j < r; ++j) {
    auto val = theta0_power_in_fp((m / r) * j, m, p);
    if (!val) continue;
    if (mod_ll(teichmuller_lift(*val, p, eT) - kx, T.order()) == 0) return j;
  }
  return std::nullopt;
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "indeterminate";
  }
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Indeterminate || b == Tri::Indeterminate) return Tri::Indeterminate;
  return Tri::True;
}

ReduceTopReport reducetop(const LocalActionData& data) {
  const auto& G = *data.group();
  const int p = data.p();
  const auto& sp = data.split;
  const Subgroup& P = sp.P;
  const Subgroup& C = sp.C;
  const long long m = C.order();
  ReduceTopReport rep;
  auto note = [&](Tri& slot, const char* cond, Tri v, const std::string& detail) {
    slot = tri_and(slot, v);
    if (v != Tri::True) rep.items.push_back({cond, v, detail});
  };

  Restriction R = restrict_to(data, P);
  BValues bP = b_coefficients(R.data);
  auto vP = bertin_from_values(bP);
  note(rep.a, "a", vP.vanishes ? Tri::True : Tri::False, vP.vanishes ? "" : "Bertin obstruction of the restriction to P");

  if (m > 1) {
    Subgroup DC = join(G, sp.D, C);
    for (int t : C.members()) {
      if (t == 0) continue;
      Subgroup CG = centralizer(G, t);
      if (!(CG == DC) || !is_cyclic(G, CG)) {
        note(rep.b, "b", Tri::False, "centralizer of " + std::to_string(t) + " is " + members_str(CG));
        break;
      }
    }
  }

  const int c0 = sp.c_generator;
  const int eP = exponent(G, P) > 1 ? p_exponent(exponent(G, P), p) : 1;
  for (const auto& T : all_cyclic_subgroups(G)) {
    if (T.is_trivial() || !T.subset_of(P)) continue;
    Subgroup NG = normalizer(G, T);
    const long long idx = intersect(NG, P).order() / T.order();
    const long long bp = b_prime(G, p, T);
    if (bp % idx != 0)
      note(rep.c, "c.i", Tri::False, "b' = " + std::to_string(bp) + " not divisible by " + std::to_string(idx) +
                                         " at " + members_str(T));
    Subgroup TP = R.embedding.preimage(T, static_cast<int>(P.order()));
    Rational btp = b_value(bP, *R.data.group(), TP);
    if (Rational(idx) * btp < Rational(-bp))
      note(rep.c, "c.ii", Tri::False, "[N_P(T):T] b_{T,P} = " + (Rational(idx) * btp).str() + " < " +
                                          std::to_string(-bp) + " at " + members_str(T));
    if (m == 1) continue;
    Subgroup CC = intersect(C, centralizer(G, T));
    Subgroup NC = intersect(C, NG);
    const long long r = NC.order();
    if (CC.order() > 1) {
      long long bpp = b_double_prime(G, p, T);
      if (bpp % r != 0)
        note(rep.d, "d.i", Tri::False, "b'' = " + std::to_string(bpp) + " not divisible by " + std::to_string(r) +
                                           " at " + members_str(T));
      continue;
    }
    if (r == 1) continue;
    if (bp % r != 0) {
      note(rep.d, "d.ii", Tri::False, "b' = " + std::to_string(bp) + " not divisible by " + std::to_string(r) +
                                          " at " + members_str(T));
      continue;
    }
    if ((p - 1) % r != 0) {
      note(rep.d, "d.ii", Tri::False, "theta on N_C(T) is not valued in (Z/p)^* at " + members_str(T));
      continue;
    }
    if (!data.tame) {
      note(rep.d, "d.ii", Tri::Indeterminate, "needs the tame character at " + members_str(T));
      continue;
    }
    const int x = G.power(c0, m / r);
    auto chi = chi_T(G, sp, T);
    long long kx = 0;
    for (size_t i = 0; i < chi.elements.size(); ++i)
      if (chi.elements[i] == x) kx = chi.exponents[i];
    auto val = theta0_power_in_fp((m / r) * P.order(), m, p);
    bool ok = false;
    if (val) {
      long long lift = teichmuller_lift(*val, p, eP) % T.order();
      ok = mod_ll(lift * kx - 1, T.order()) == 0;
    }
    if (!ok)
      note(rep.d, "d.ii", Tri::False, "Teichmuller lift of theta differs from chi_T^{-1} at " + members_str(T));
  }
  rep.overall = tri_and(tri_and(rep.a, rep.b), tri_and(rep.c, rep.d));
  return rep;
}

ObstructionReport analyze(const LocalActionData& data, const KgbOptions& options) {
  ObstructionReport r;
  r.b = b_coefficients(data);
  r.bertin = bertin_from_values(r.b);
  r.kgb = kgb_from_values(data, r.b, options);
  r.m = -r.b.front().value;
  return r;
}

}  // namespace obstr
