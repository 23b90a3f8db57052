#include "obstr/lattice.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "obstr/rational.hpp"

namespace obstr {

namespace {

// Closure of `seed` under right multiplication by `gens`. The seed must
// already contain the identity.
ElemSet close_under(const GroupTable& G, ElemSet seed, const std::vector<int>& gens) {
  std::vector<int> queue = seed.elements();
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    for (int s : gens) {
      int y = G.mul(x, s);
      if (!seed.contains(y)) {
        seed.insert(y);
        queue.push_back(y);
      }
    }
  }
  return seed;
}

std::vector<int> small_generating_set(const GroupTable& G, const Subgroup& H) {
  std::vector<int> gens;
  ElemSet cur(G.order());
  cur.insert(0);
  // Prefer elements of large order so the set stays short.
  std::vector<int> m = H.members();
  std::stable_sort(m.begin(), m.end(), [&](int a, int b) { return G.elem_order(a) > G.elem_order(b); });
  for (int g : m) {
    if (cur.contains(g)) continue;
    gens.push_back(g);
    cur = close_under(G, cur, gens);
  }
  return gens;
}

void build_lattice(const GroupTable& G, LatticeCache& L) {
  const int n = G.order();
  L.cyclic_of_elem.assign(n, -1);
  std::vector<ElemSet> gen_of(n);
  std::unordered_map<ElemSet, int, ElemSetHash> seen;
  std::vector<Subgroup> cyc;
  for (int g = 0; g < n; ++g) {
    ElemSet s(n);
    int x = 0;
    do {
      s.insert(x);
      x = G.mul(x, g);
    } while (x != 0);
    if (!seen.count(s)) {
      seen.emplace(s, 0);
      cyc.emplace_back(s);
    }
    gen_of[g] = s;
  }
  std::sort(cyc.begin(), cyc.end());
  L.cyclic = cyc;
  for (size_t i = 0; i < cyc.size(); ++i) L.cyclic_index.emplace(cyc[i].bits(), static_cast<int>(i));
  for (int g = 0; g < n; ++g) L.cyclic_of_elem[g] = L.cyclic_index.at(gen_of[g]);
  L.cyclic_class.assign(cyc.size(), -1);
  for (size_t i = 0; i < cyc.size(); ++i) {
    if (L.cyclic_class[i] >= 0) continue;
    int rep = static_cast<int>(L.reps.reps.size());
    L.reps.reps.push_back(cyc[i]);
    std::vector<int> conj_ids;
    int gen = cyclic_generator(G, cyc[i]);
    for (int g = 0; g < n; ++g) {
      int idx = L.cyclic_of_elem[G.conjugate(g, gen)];
      if (L.cyclic_class[idx] < 0) {
        L.cyclic_class[idx] = rep;
        conj_ids.push_back(idx);
      }
    }
    std::sort(conj_ids.begin(), conj_ids.end());
    L.rep_conjugates.push_back(std::move(conj_ids));
  }
}

}  // namespace

const LatticeCache& GroupTable::lattice() const {
  std::call_once(*lattice_once_, [this] {
    auto L = std::make_unique<LatticeCache>();
    build_lattice(*this, *L);
    lattice_ = std::move(L);
  });
  return *lattice_;
}

Subgroup trivial_subgroup(const GroupTable& G) { return Subgroup({0}, G.order()); }

Subgroup whole_group(const GroupTable& G) {
  std::vector<int> all(G.order());
  for (int i = 0; i < G.order(); ++i) all[i] = i;
  return Subgroup(std::move(all), G.order());
}

Subgroup generated(const GroupTable& G, const std::vector<int>& gens) {
  ElemSet s(G.order());
  s.insert(0);
  return Subgroup(close_under(G, s, gens));
}

Subgroup join(const GroupTable& G, const Subgroup& A, const Subgroup& B) {
  if (B.subset_of(A)) return A;
  if (A.subset_of(B)) return B;
  std::vector<int> gens = small_generating_set(G, A);
  auto gb = small_generating_set(G, B);
  gens.insert(gens.end(), gb.begin(), gb.end());
  return Subgroup(close_under(G, A.bits(), gens));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) { return Subgroup(A.bits() & B.bits()); }

Subgroup cyclic_subgroup(const GroupTable& G, int g) { return G.lattice().cyclic[G.lattice().cyclic_of_elem[g]]; }

bool is_subgroup(const GroupTable& G, const std::vector<int>& elements) {
  ElemSet s(G.order());
  for (int g : elements) {
    if (g < 0 || g >= G.order()) return false;
    s.insert(g);
  }
  if (!s.contains(0)) return false;
  for (int a : elements)
    for (int b : elements)
      if (!s.contains(G.mul(a, G.inv(b)))) return false;
  return true;
}

Subgroup make_subgroup(const GroupTable& G, std::vector<int> elements) {
  if (!is_subgroup(G, elements)) throw Error(ErrorCode::InvalidData, "element set is not a subgroup");
  return Subgroup(std::move(elements), G.order());
}

Subgroup normalizer(const GroupTable& G, const Subgroup& H) {
  std::vector<int> out;
  auto gens = small_generating_set(G, H);
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int h : gens)
      if (!H.contains(G.conjugate(g, h))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return Subgroup(std::move(out), G.order());
}

Subgroup centralizer(const GroupTable& G, const Subgroup& H) {
  std::vector<int> out;
  auto gens = small_generating_set(G, H);
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int h : gens)
      if (G.mul(g, h) != G.mul(h, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return Subgroup(std::move(out), G.order());
}

Subgroup centralizer(const GroupTable& G, int x) {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g)
    if (G.mul(g, x) == G.mul(x, g)) out.push_back(g);
  return Subgroup(std::move(out), G.order());
}

Subgroup center(const GroupTable& G) { return centralizer(G, whole_group(G)); }

bool is_normal(const GroupTable& G, const Subgroup& H) { return is_normal_in(G, H, whole_group(G)); }

bool is_normal_in(const GroupTable& G, const Subgroup& N, const Subgroup& K) {
  auto gens = small_generating_set(G, N);
  auto kgens = small_generating_set(G, K);
  for (int g : kgens)
    for (int h : gens)
      if (!N.contains(G.conjugate(g, h))) return false;
  return true;
}

bool is_cyclic(const GroupTable& G, const Subgroup& H) {
  for (int h : H.members())
    if (G.elem_order(h) == H.order()) return true;
  return false;
}

int cyclic_generator(const GroupTable& G, const Subgroup& H) {
  for (int h : H.members())
    if (G.elem_order(h) == H.order()) return h;
  throw Error(ErrorCode::NotCyclic, "subgroup of order " + std::to_string(H.order()) + " is not cyclic");
}

bool is_abelian(const GroupTable& G, const Subgroup& H) {
  auto gens = small_generating_set(G, H);
  for (int a : gens)
    for (int b : gens)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_p_group(const Subgroup& H, int p) {
  long long n = H.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

int exponent(const GroupTable& G, const Subgroup& H) {
  long long e = 1;
  for (int h : H.members()) e = lcm_ll(e, G.elem_order(h));
  return static_cast<int>(e);
}

Subgroup commutator_subgroup(const GroupTable& G, const Subgroup& A, const Subgroup& B) {
  std::vector<int> gens;
  ElemSet seen(G.order());
  for (int a : A.members())
    for (int b : B.members()) {
      int c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
      if (!seen.contains(c)) {
        seen.insert(c);
        gens.push_back(c);
      }
    }
  return generated(G, gens);
}

Subgroup conjugate_subgroup(const GroupTable& G, const Subgroup& H, int g) {
  ElemSet s(G.order());
  for (int h : H.members()) s.insert(G.conjugate(g, h));
  return Subgroup(s);
}

std::vector<Subgroup> conjugates(const GroupTable& G, const Subgroup& H) {
  std::vector<Subgroup> out;
  std::unordered_map<ElemSet, int, ElemSetHash> seen;
  for (int g = 0; g < G.order(); ++g) {
    Subgroup c = conjugate_subgroup(G, H, g);
    if (seen.emplace(c.bits(), 0).second) out.push_back(std::move(c));
  }
  return out;
}

bool are_conjugate(const GroupTable& G, const Subgroup& A, const Subgroup& B) {
  if (A.order() != B.order()) return false;
  for (int g = 0; g < G.order(); ++g)
    if (conjugate_subgroup(G, A, g) == B) return true;
  return false;
}

const std::vector<Subgroup>& all_cyclic_subgroups(const GroupTable& G) { return G.lattice().cyclic; }

CyclicClassSet cyclic_subgroup_reps(const GroupTable& G) { return G.lattice().reps; }

int cyclic_rep_index(const GroupTable& G, const Subgroup& T) {
  const auto& L = G.lattice();
  auto it = L.cyclic_index.find(T.bits());
  if (it == L.cyclic_index.end()) throw Error(ErrorCode::NotCyclic, "subgroup is not cyclic");
  return L.cyclic_class[it->second];
}

const std::vector<Subgroup>& all_subgroups(const GroupTable& G, int cap) {
  if (G.order() > cap)
    throw Error(ErrorCode::CapExceeded, "|G| = " + std::to_string(G.order()) + " exceeds subgroup cap " + std::to_string(cap));
  const auto& L = G.lattice();
  std::call_once(L.all_once, [&] {
    const auto& cyc = L.cyclic;
    std::vector<int> cyc_gen(cyc.size());
    for (size_t i = 0; i < cyc.size(); ++i) cyc_gen[i] = cyclic_generator(G, cyc[i]);
    std::unordered_map<ElemSet, int, ElemSetHash> index;
    std::vector<Subgroup> subs;
    std::vector<std::vector<int>> gens;
    for (size_t i = 0; i < cyc.size(); ++i) {
      index.emplace(cyc[i].bits(), static_cast<int>(subs.size()));
      subs.push_back(cyc[i]);
      gens.push_back(cyc[i].is_trivial() ? std::vector<int>{} : std::vector<int>{cyc_gen[i]});
    }
    for (size_t s = 0; s < subs.size(); ++s) {
      for (size_t c = 0; c < cyc.size(); ++c) {
        if (cyc[c].subset_of(subs[s])) continue;
        std::vector<int> g = gens[s];
        g.push_back(cyc_gen[c]);
        ElemSet closed = close_under(G, subs[s].bits(), g);
        if (index.count(closed)) continue;
        index.emplace(closed, static_cast<int>(subs.size()));
        subs.emplace_back(closed);
        gens.push_back(std::move(g));
      }
    }
    std::sort(subs.begin(), subs.end());
    L.all = std::move(subs);
  });
  return *L.all;
}

const std::vector<Subgroup>& normal_subgroups(const GroupTable& G) {
  const auto& L = G.lattice();
  std::call_once(L.normal_once, [&] {
    std::unordered_map<ElemSet, int, ElemSetHash> index;
    std::vector<Subgroup> subs;
    auto add = [&](const Subgroup& s) {
      if (index.emplace(s.bits(), 0).second) subs.push_back(s);
    };
    add(trivial_subgroup(G));
    std::vector<Subgroup> closures;
    for (const auto& cls : G.conj_classes()) {
      Subgroup s = generated(G, cls);
      closures.push_back(s);
      add(s);
    }
    for (size_t s = 0; s < subs.size(); ++s)
      for (const auto& c : closures) {
        if (c.subset_of(subs[s])) continue;
        add(join(G, subs[s], c));
      }
    std::sort(subs.begin(), subs.end());
    L.normal = std::move(subs);
  });
  return L.normal;
}

std::optional<Subgroup> normal_sylow(const GroupTable& G, int p) {
  std::vector<int> els;
  for (int g = 0; g < G.order(); ++g) {
    long long o = G.elem_order(g);
    if (p_part(o, p) == o) els.push_back(g);
  }
  if (static_cast<long long>(els.size()) != p_part(G.order(), p)) return std::nullopt;
  if (!is_subgroup(G, els)) return std::nullopt;
  return Subgroup(std::move(els), G.order());
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

long long p_part(long long n, long long p) {
  long long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

int moebius(long long d) {
  if (d < 1) throw Error(ErrorCode::BadParameter, "moebius requires a positive integer");
  int s = 1;
  for (auto [q, e] : factorize(d)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

long long psi(const GroupTable& G, const Subgroup& H, const Subgroup& J) {
  if (!is_cyclic(G, H)) throw Error(ErrorCode::NotCyclic, "psi requires a cyclic first argument");
  long long s = 0;
  for (const auto& C : G.lattice().cyclic)
    if (H.subset_of(C) && C.subset_of(J)) s += moebius(C.order() / H.order());
  return s;
}

Subgroup SubgroupGroup::image(const Subgroup& K) const {
  std::vector<int> out;
  for (int k : K.members()) out.push_back(embed[k]);
  return Subgroup(std::move(out), static_cast<int>(locate.size()));
}

Subgroup SubgroupGroup::preimage(const Subgroup& K, int universe) const {
  std::vector<int> out;
  for (int k : K.members())
    if (locate[k] >= 0) out.push_back(locate[k]);
  return Subgroup(std::move(out), universe);
}

SubgroupGroup subgroup_as_group(const GroupTable& G, const Subgroup& H) {
  SubgroupGroup R;
  R.embed = H.members();
  R.locate.assign(G.order(), -1);
  for (size_t i = 0; i < R.embed.size(); ++i) R.locate[R.embed[i]] = static_cast<int>(i);
  const int m = H.order();
  R.group = build_group(m, [&](int a, int b) { return R.locate[G.mul(R.embed[a], R.embed[b])]; });
  return R;
}

Subgroup QuotientGroup::image(const Subgroup& K) const {
  std::vector<int> out;
  for (int k : K.members()) out.push_back(project[k]);
  return Subgroup(std::move(out), group->order());
}

Subgroup QuotientGroup::preimage(const Subgroup& K, const GroupTable& G) const {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g)
    if (K.contains(project[g])) out.push_back(g);
  return Subgroup(std::move(out), G.order());
}

QuotientGroup quotient_group(const GroupTable& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw Error(ErrorCode::NotNormal, "quotient by a non-normal subgroup");
  QuotientGroup Q;
  Q.project.assign(G.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    if (Q.project[g] >= 0) continue;
    int id = static_cast<int>(Q.lift.size());
    Q.lift.push_back(g);
    for (int x : N.members()) Q.project[G.mul(g, x)] = id;
  }
  const int m = static_cast<int>(Q.lift.size());
  Q.group = build_group(m, [&](int a, int b) { return Q.project[G.mul(Q.lift[a], Q.lift[b])]; });
  return Q;
}

}  // namespace obstr

namespace obstr {
std::vector<int> generating_set(const GroupTable& G, const Subgroup& H) { return small_generating_set(G, H); }
}  // namespace obstr
