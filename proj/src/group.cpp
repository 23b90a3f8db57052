#include "obstr/group.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "obstr/lattice.hpp"

namespace obstr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonGroup: return "NonGroup";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NotCyclicByP: return "NotCyclicByP";
    case ErrorCode::InvalidData: return "InvalidData";
    case ErrorCode::TrivialSubgroup: return "TrivialSubgroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::InadmissibleChain: return "InadmissibleChain";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotPSubgroup: return "NotPSubgroup";
    case ErrorCode::NoTameDatum: return "NoTameDatum";
    case ErrorCode::NotGm: return "NotGm";
    case ErrorCode::WrongGroup: return "WrongGroup";
    case ErrorCode::NotFamilyGroup: return "NotFamilyGroup";
    case ErrorCode::NoValidPlacement: return "NoValidPlacement";
    case ErrorCode::NotPKernel: return "NotPKernel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadAutomorphismOrder: return "BadAutomorphismOrder";
  }
  return "Unknown";
}

ElemSet::ElemSet(int universe) : universe_(universe), words_((static_cast<size_t>(universe) + 63) / 64, 0) {}

int ElemSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool ElemSet::subset_of(const ElemSet& o) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

ElemSet ElemSet::operator&(const ElemSet& o) const {
  ElemSet r = *this;
  for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

ElemSet ElemSet::operator|(const ElemSet& o) const {
  ElemSet r = *this;
  for (size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

std::vector<int> ElemSet::elements() const {
  std::vector<int> out;
  for (size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<int>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElemSet::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Subgroup::Subgroup(std::vector<int> members, int universe) : members_(std::move(members)), bits_(universe) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int g : members_) bits_.insert(g);
}

Subgroup::Subgroup(const ElemSet& bits) : members_(bits.elements()), bits_(bits) {}

bool Subgroup::operator<(const Subgroup& o) const {
  if (members_.size() != o.members_.size()) return members_.size() < o.members_.size();
  return members_ < o.members_;
}

GroupTable::~GroupTable() = default;

int GroupTable::power(int a, long long k) const {
  int ord = elem_order_[a];
  k %= ord;
  if (k < 0) k += ord;
  int r = 0, base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::vector<std::vector<int>> GroupTable::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

GroupPtr build_group(const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  auto fail = [](const std::string& why) { throw Error(ErrorCode::NonGroup, why); };
  if (n == 0) fail("empty table");
  std::shared_ptr<GroupTable> G(new GroupTable());
  G->n_ = n;
  G->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(mul[a].size()) != n) fail("row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b) {
      int v = mul[a][b];
      if (v < 0 || v >= n) fail("entry (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
      G->mul_[static_cast<size_t>(a) * n + b] = v;
    }
  }
  for (int g = 0; g < n; ++g) {
    if (G->mul(0, g) != g || G->mul(g, 0) != g) fail("element 0 is not an identity at " + std::to_string(g));
  }
  // Latin square: every row and column is a permutation.
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row[G->mul(a, b)]++) fail("row " + std::to_string(a) + " repeats an entry");
      if (col[G->mul(b, a)]++) fail("column " + std::to_string(a) + " repeats an entry");
    }
  }
  auto check_triple = [&](int a, int b, int c) {
    if (G->mul(G->mul(a, b), c) != G->mul(a, G->mul(b, c)))
      fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed5eedULL + static_cast<unsigned>(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 10000; ++t) check_triple(pick(rng), pick(rng), pick(rng));
  }
  G->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G->mul(a, b) == 0) G->inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (G->mul(G->inv_[a], a) != 0) fail("left and right inverses differ at " + std::to_string(a));
  G->elem_order_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = G->mul(x, a);
      ++k;
    }
    if (n % k != 0) fail("order of " + std::to_string(a) + " does not divide |G|");
    G->elem_order_[a] = k;
  }
  G->class_of_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (G->class_of_[a] >= 0) continue;
    int id = static_cast<int>(G->classes_.size());
    std::vector<int> cls;
    for (int g = 0; g < n; ++g) {
      int c = G->conjugate(g, a);
      if (G->class_of_[c] < 0) {
        G->class_of_[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    G->classes_.push_back(std::move(cls));
  }
  G->inv_class_.resize(G->classes_.size());
  for (size_t c = 0; c < G->classes_.size(); ++c) G->inv_class_[c] = G->class_of_[G->inv_[G->classes_[c][0]]];
  G->lattice_once_ = std::make_unique<std::once_flag>();
  return G;
}

GroupPtr build_group(int n, const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return build_group(t);
}

}  // namespace obstr
