#include "obstr/ramification.hpp"

#include <algorithm>
#include <sstream>

#include "obstr/lattice.hpp"

namespace obstr {

namespace {

long long ceil_rational(const Rational& u) { return -(-u).floor(); }

// Appends a segment, merging with the previous one when the group repeats.
void push_segment(std::vector<FiltrationSegment>& chain, long long from, const Subgroup& g) {
  if (!chain.empty() && chain.back().group == g) return;
  chain.push_back({from, g});
}

}  // namespace

const Subgroup& Filtration::at(long long i) const {
  size_t k = 0;
  while (k + 1 < chain.size() && chain[k + 1].from <= i) ++k;
  return chain[k].group;
}

const Subgroup& Filtration::at(const Rational& u) const { return at(ceil_rational(u)); }

std::vector<long long> Filtration::lower_jumps() const {
  std::vector<long long> out;
  for (size_t k = 0; k + 1 < chain.size(); ++k) out.push_back(chain[k + 1].from - 1);
  return out;
}

bool Filtration::operator==(const Filtration& o) const {
  if (p != o.p || chain.size() != o.chain.size() || G->order() != o.G->order()) return false;
  for (size_t k = 0; k < chain.size(); ++k)
    if (chain[k].from != o.chain[k].from || !(chain[k].group == o.chain[k].group)) return false;
  return true;
}

long long iota(const Filtration& f, const Subgroup& Gamma) {
  if (Gamma.is_trivial()) throw Error(ErrorCode::TrivialSubgroup, "iota of the trivial subgroup");
  for (const auto& seg : f.chain)
    if (!Gamma.subset_of(seg.group)) return seg.from;
  throw Error(ErrorCode::InvalidData, "filtration does not end in the trivial group");
}

ClassFunction artin_character_by_counts(const Filtration& f) {
  const auto& G = f.G;
  ClassFunction a(G);
  for (int c = 1; c < G->num_classes(); ++c) {
    int g = G->conj_classes()[c][0];
    a.on_class(c) = -iota(f, cyclic_subgroup(*G, g));
  }
  Rational e = 0;
  for (size_t k = 0; k + 1 < f.chain.size(); ++k)
    e += Rational(f.chain[k + 1].from - f.chain[k].from) * Rational(f.chain[k].group.order() - 1);
  a.on_class(0) = e;
  return a;
}

ClassFunction artin_character_by_induction(const Filtration& f) {
  const auto& G = f.G;
  ClassFunction a(G);
  ClassFunction reg = regular_character(G);
  for (size_t k = 0; k + 1 < f.chain.size(); ++k) {
    const auto& S = f.chain[k].group;
    Rational weight = Rational(f.chain[k + 1].from - f.chain[k].from) * Rational(S.order(), G->order());
    a += (reg - induced_trivial_char(G, S)) * weight;
  }
  return a;
}

ArtinCharacter artin_character(const LocalActionData& data) {
  ArtinCharacter r;
  r.a = artin_character_by_counts(data.filt);
  if (!(r.a == artin_character_by_induction(data.filt)))
    throw Error(ErrorCode::InvalidData, "Artin character formulas disagree");
  r.i_G.assign(data.group()->num_classes(), 0);
  for (int c = 1; c < data.group()->num_classes(); ++c) r.i_G[c] = (-r.a.on_class(c)).to_integer();
  return r;
}

Rational herbrand_phi(const Filtration& f, const Rational& u) {
  const Rational n = f.G->order();
  Rational total = 0, lo = 0;
  for (size_t k = 0; k + 1 < f.chain.size(); ++k) {
    Rational hi = f.chain[k + 1].from - 1;
    if (u <= lo) return total;
    Rational top = u < hi ? u : hi;
    if (top > lo) total += (top - lo) * Rational(f.chain[k].group.order()) / n;
    lo = hi > lo ? hi : lo;
  }
  if (u > lo) total += (u - lo) / n;
  return total;
}

UpperFiltration upper_filtration(const Filtration& f) {
  UpperFiltration up;
  for (size_t k = 0; k + 1 < f.chain.size(); ++k) {
    up.jumps.push_back(herbrand_phi(f, f.chain[k + 1].from - 1));
    up.groups.push_back(f.chain[k].group);
  }
  return up;
}

Rational herbrand_psi(const Filtration& f, const Rational& v) {
  auto up = upper_filtration(f);
  const long long n = f.G->order();
  Rational total = 0, lo = 0;
  for (size_t k = 0; k < up.jumps.size(); ++k) {
    if (v <= lo) return total;
    Rational top = v < up.jumps[k] ? v : up.jumps[k];
    if (top > lo) total += (top - lo) * Rational(n / up.groups[k].order());
    lo = up.jumps[k] > lo ? up.jumps[k] : lo;
  }
  if (v > lo) total += (v - lo) * Rational(n);
  return total;
}

const Subgroup& upper_group(const Filtration& f, const Rational& v) {
  auto up = upper_filtration(f);
  for (size_t k = 0; k < up.jumps.size(); ++k)
    if (v <= up.jumps[k]) return f.chain[k].group;
  return f.chain.back().group;
}

Filtration lower_from_upper(const GroupPtr& G, int p, const UpperFiltration& up) {
  Filtration f;
  f.G = G;
  f.p = p;
  f.chain.push_back({0, up.groups.empty() ? trivial_subgroup(*G) : up.groups[0]});
  Rational b = 0, prev = 0;
  for (size_t k = 0; k < up.jumps.size(); ++k) {
    b += (up.jumps[k] - prev) * Rational(G->order() / up.groups[k].order());
    prev = up.jumps[k];
    if (!b.is_integer())
      throw Error(ErrorCode::InadmissibleChain, "lower jump " + b.str() + " is not an integer");
    Subgroup next = k + 1 < up.groups.size() ? up.groups[k + 1] : trivial_subgroup(*G);
    f.chain.push_back({b.to_integer() + 1, next});
  }
  return f;
}

StructureSplit make_split(const GroupTable& G, int p, const Subgroup& C) {
  auto P = normal_sylow(G, p);
  if (!P) throw Error(ErrorCode::NotCyclicByP, "no normal Sylow subgroup");
  if (C.order() * P->order() != G.order() || !is_cyclic(G, C))
    throw Error(ErrorCode::NotCyclicByP, "prescribed complement is not a cyclic complement");
  StructureSplit s;
  s.p = p;
  s.P = *P;
  s.C = C;
  s.c_generator = cyclic_generator(G, C);
  int m = C.order();
  int b = static_cast<int>(gcd_ll(m, p - 1));
  s.B = cyclic_subgroup(G, G.power(s.c_generator, m / b));
  s.D = intersect(*P, centralizer(G, C));
  return s;
}

LocalActionData make_data(const GroupPtr& G, int p, const std::vector<FiltrationSegment>& chain,
                          std::optional<TameCharacterDatum> tame) {
  LocalActionData d;
  d.filt.G = G;
  d.filt.p = p;
  d.filt.chain = chain;
  d.tame = tame;
  if (tame) {
    if (tame->generator < 0 || tame->generator >= G->order())
      throw Error(ErrorCode::InvalidData, "tame generator out of range");
    d.split = make_split(*G, p, cyclic_subgroup(*G, tame->generator));
    d.split.c_generator = tame->generator;
  } else {
    d.split = structure_split(*G, p);
  }
  return d;
}

LocalActionData chain_filtration(const GroupPtr& G, int p, const std::vector<FiltrationSegment>& chain,
                                 std::optional<TameCharacterDatum> tame, ValidationLevel level) {
  LocalActionData d = make_data(G, p, chain, tame);
  auto v = validate(d, level);
  if (!v.empty()) throw Error(ErrorCode::InadmissibleChain, describe(v));
  return d;
}

LocalActionData cyclic_filtration(int p, int n, const std::vector<long long>& i_vector, int m) {
  if (!is_prime(p) || n < 0 || m < 1 || gcd_ll(m, p) != 1 || static_cast<int>(i_vector.size()) != n)
    throw Error(ErrorCode::BadParameter, "cyclic_filtration needs a prime p, n = |i|, and m prime to p");
  for (auto i : i_vector)
    if (i < 1) throw Error(ErrorCode::BadParameter, "jump gaps must be positive");
  long long pn = 1;
  for (int j = 0; j < n; ++j) pn *= p;
  const int N = static_cast<int>(pn * m);
  GroupPtr G = cyclic(N);
  auto multiples = [&](long long step) {
    std::vector<int> els;
    for (int k = 0; k < N; k += static_cast<int>(step)) els.push_back(k);
    return Subgroup(std::move(els), N);
  };
  std::vector<FiltrationSegment> chain;
  chain.push_back({0, whole_group(*G)});
  if (m > 1) chain.push_back({1, multiples(m)});
  long long q = 0, pj = 1;
  for (int l = 0; l < n; ++l) {
    q += static_cast<long long>(m) * pj * i_vector[l];
    pj *= p;
    chain.push_back({q + 1, multiples(m * pj)});
  }
  return make_data(G, p, chain);
}

Filtration restricted_filtration(const Filtration& f, const SubgroupGroup& H) {
  Filtration r;
  r.G = H.group;
  r.p = f.p;
  const int universe = H.group->order();
  for (const auto& seg : f.chain) {
    Subgroup img = H.preimage(seg.group, universe);
    push_segment(r.chain, seg.from, img);
  }
  return r;
}

Restriction restrict_to(const LocalActionData& data, const Subgroup& H) {
  Restriction R;
  R.embedding = subgroup_as_group(*data.group(), H);
  Filtration f = restricted_filtration(data.filt, R.embedding);
  R.data.filt = f;
  R.data.split = structure_split(*f.G, data.p());
  ClassFunction aG = artin_character(data).a;
  ClassFunction aH = artin_character(R.data).a;
  R.lambda = (aG.at(0) - aH.at(0)) / Rational(H.order());
  ClassFunction regH = regular_character(f.G);
  for (int h = 0; h < f.G->order(); ++h) {
    Rational lhs = aG.at(R.embedding.embed[h]);
    Rational rhs = R.lambda * regH.at(h) + aH.at(h);
    if (!(lhs == rhs)) throw Error(ErrorCode::InvalidData, "restriction identity fails");
  }
  return R;
}

Quotient quotient(const LocalActionData& data, const Subgroup& N) {
  const auto& G = *data.group();
  if (!is_normal(G, N)) throw Error(ErrorCode::NotNormal, "quotient by a non-normal subgroup");
  Quotient Q;
  Q.map = quotient_group(G, N);
  auto up = upper_filtration(data.filt);
  UpperFiltration img;
  for (size_t k = 0; k < up.jumps.size(); ++k) {
    Subgroup s = Q.map.image(up.groups[k]);
    if (s.is_trivial()) break;
    if (!img.groups.empty() && img.groups.back() == s) {
      img.jumps.back() = up.jumps[k];
    } else {
      img.groups.push_back(s);
      img.jumps.push_back(up.jumps[k]);
    }
  }
  Q.data.filt = lower_from_upper(Q.map.group, data.p(), img);
  Q.data.split = make_split(*Q.map.group, data.p(), Q.map.image(data.split.C));
  return Q;
}

std::vector<Rational> cyclic_upper_jumps(const Filtration& f) { return upper_filtration(f).jumps; }

std::string describe(const std::vector<Violation>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << "; ";
    os << v[i].rule << ": " << v[i].detail;
  }
  return os.str();
}

std::vector<Violation> validate(const LocalActionData& data, ValidationLevel level) {
  return Validator(data.group(), data.p()).check(data, level);
}

}  // namespace obstr
