/**
 * @file sampling.cpp
 * @brief Random admissible local action data.
 */
#include "obstr/sampling.hpp"

#include <algorithm>

#include "obstr/lattice.hpp"

namespace obstr {

struct Sampler::Impl {
  GroupPtr G;
  int p;
  SamplerOptions opt;
  Validator val;
  Subgroup P;
  StructureSplit split;
  std::vector<int> c_generators;
  std::vector<Subgroup> inside;  // normal subgroups of G contained in P, P excluded

  Impl(GroupPtr g, int prime, SamplerOptions o) : G(g), p(prime), opt(o), val(g, prime) {
    split = structure_split(*G, p);
    P = split.P;
    for (int c : split.C.members())
      if (G->elem_order(c) == split.C.order()) c_generators.push_back(c);
    for (const auto& N : normal_subgroups(*G))
      if (N.subset_of(P) && N.order() < P.order()) inside.push_back(N);
  }

  bool elementary_over(const Subgroup& S, const Subgroup& N) const {
    auto gens = generating_set(*G, S);
    for (size_t a = 0; a < gens.size(); ++a) {
      if (!N.contains(G->power(gens[a], p))) return false;
      for (size_t b = a + 1; b < gens.size(); ++b) {
        int x = gens[a], y = gens[b];
        if (!N.contains(G->mul(G->mul(x, y), G->mul(G->inv(x), G->inv(y))))) return false;
      }
    }
    return true;
  }

  LocalActionData candidate(std::mt19937_64& rng) const {
    std::vector<FiltrationSegment> chain;
    chain.push_back({0, whole_group(*G)});
    long long pos = 0;
    if (split.C.order() > 1) {
      pos = 1;
      if (P.order() > 1) chain.push_back({1, P});
    }
    Subgroup cur = P;
    std::uniform_int_distribution<long long> gap(1, opt.max_gap);
    while (!cur.is_trivial()) {
      std::vector<const Subgroup*> cands;
      for (const auto& N : inside)
        if (N.subset_of(cur) && N.order() < cur.order() && elementary_over(cur, N)) cands.push_back(&N);
      const Subgroup& nxt = *cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
      pos += gap(rng);
      chain.push_back({pos, nxt});
      cur = nxt;
    }
    if (!chain.back().group.is_trivial()) chain.push_back({std::max<long long>(pos, 1), trivial_subgroup(*G)});
    std::optional<TameCharacterDatum> tame;
    if (split.C.order() > 1 && std::bernoulli_distribution(opt.tame_datum_rate)(rng)) {
      int c = c_generators[std::uniform_int_distribution<size_t>(0, c_generators.size() - 1)(rng)];
      tame = TameCharacterDatum{c};
    }
    return make_data(G, p, chain, tame);
  }
};

Sampler::Sampler(GroupPtr G, int p, SamplerOptions options)
    : impl_(std::make_unique<Impl>(std::move(G), p, options)) {}
Sampler::~Sampler() = default;
Sampler::Sampler(Sampler&&) noexcept = default;

const Validator& Sampler::validator() const { return impl_->val; }

std::optional<LocalActionData> Sampler::draw(std::mt19937_64& rng) const {
  for (int t = 0; t < impl_->opt.attempts; ++t) {
    LocalActionData d = impl_->candidate(rng);
    if (!impl_->val.first_violation(d, impl_->opt.level)) return d;
  }
  return std::nullopt;
}

}  // namespace obstr
