/**
 * @file families.cpp
 * @brief Closed-form analyzers for the named families.
 */
#include "obstr/families.hpp"

#include <algorithm>
#include <numeric>

#include "obstr/errors.hpp"
#include "obstr/lattice.hpp"

namespace obstr {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string power_label(int p, int j) {
  if (j == 0) return "H";
  return (j == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(j)) + "H";
}

void fill_c(DqsInvariants& inv) {
  inv.c_vector.clear();
  long long s = 0;
  for (long long i : inv.i_vector) inv.c_vector.push_back(s += i);
}

bool nonneg_integer(const Rational& r) { return r.is_integer() && r.sign() >= 0; }

}  // namespace

DqsInvariants dqs_invariants_from(DqsFamily family, int p, std::vector<long long> i_vector,
                                  std::vector<long long> d_vector) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParameter, "p must be prime");
  const int n = static_cast<int>(i_vector.size());
  if (n < 1) throw Error(ErrorCode::BadParameter, "the i vector is empty");
  if (family != DqsFamily::Dihedral && p != 2)
    throw Error(ErrorCode::BadParameter, "quaternion and semidihedral families need p = 2");
  if (family == DqsFamily::Quaternion && n < 2) throw Error(ErrorCode::BadParameter, "quaternion needs n >= 2");
  if (family == DqsFamily::Semidihedral && n < 3) throw Error(ErrorCode::BadParameter, "semidihedral needs n >= 3");
  for (long long i : i_vector)
    if (i <= 0) throw Error(ErrorCode::BadParameter, "i_j must be positive");
  if (p == 2 && d_vector.size() != 3) throw Error(ErrorCode::BadParameter, "p = 2 needs three d values");
  if (p != 2 && !d_vector.empty()) throw Error(ErrorCode::BadParameter, "d values are only defined for p = 2");
  DqsInvariants inv;
  inv.family = family;
  inv.p = p;
  inv.n = n;
  inv.i_vector = std::move(i_vector);
  inv.d_vector = std::move(d_vector);
  fill_c(inv);
  return inv;
}

DqsInvariants dqs_invariants(const LocalActionData& data, size_t shape_index) {
  const auto& G = *data.group();
  const int p = data.p();
  auto shapes = dqs_shapes(G, p);
  if (shape_index >= shapes.size())
    throw Error(ErrorCode::NotFamilyGroup, "not a dihedral, quaternion or semidihedral group of order 2p^n");
  const DqsShape& sh = shapes[shape_index];
  DqsInvariants inv;
  inv.family = sh.family;
  inv.p = p;
  inv.n = sh.n;
  inv.group = data.group();

  auto R = restrict_to(data, sh.H);
  auto ups = cyclic_upper_jumps(R.data.filt);
  if (static_cast<int>(ups.size()) != sh.n)
    throw Error(ErrorCode::InvalidData, "H is not totally wildly ramified");
  Rational prev(0);
  for (const auto& u : ups) {
    Rational step = u - prev;
    if (!step.is_integer() || step.sign() <= 0)
      throw Error(ErrorCode::InvalidData, "upper jumps of H are not increasing integers");
    inv.i_vector.push_back(step.to_integer());
    prev = u;
  }
  fill_c(inv);

  if (p == 2) {
    auto a = artin_character(data).a;
    for (int i = 0; i < 3; ++i) {
      Rational s(0);
      for (int g = 0; g < G.order(); ++g) s += sh.M[i].contains(g) ? a.at(g) : -a.at(g);
      s /= Rational(G.order());
      if (!s.is_integer()) throw Error(ErrorCode::InvalidData, "d_" + std::to_string(i) + " is not an integer");
      inv.d_vector.push_back(s.to_integer());
    }
  }
  inv.shape = sh;
  return inv;
}

bool dqs_d_admissible(const DqsInvariants& inv) {
  if (inv.p != 2) return true;
  auto s = inv.d_vector;
  if (s.size() != 3) return false;
  for (long long d : s)
    if (d <= 0 || d % 2 != 0) return false;
  std::sort(s.begin(), s.end());
  return s[1] == s[2];
}

std::vector<FamilyBEntry> dqs_b_closed_form(const DqsInvariants& inv) {
  const int p = inv.p;
  const int n = inv.n;
  const auto& i = inv.i_vector;
  const bool special_top = inv.family != DqsFamily::Dihedral;
  std::vector<FamilyBEntry> out;

  auto subgroup_at = [&](int j) -> std::optional<Subgroup> {
    if (!inv.shape) return std::nullopt;
    return cyclic_subgroup(*inv.group, inv.group->power(inv.shape->tau, ipow(p, j)));
  };

  // iota(p^j H) = 1 + i_0 + p i_1 + ... + p^j i_j
  std::vector<long long> iota_h(static_cast<size_t>(n));
  long long acc = 1;
  for (int j = 0; j < n; ++j) {
    acc += ipow(p, j) * i[static_cast<size_t>(j)];
    iota_h[static_cast<size_t>(j)] = acc;
  }

  std::vector<Rational> bd(3, Rational(0));
  if (p == 2) {
    const auto& d = inv.d_vector;
    long long total = d[0] + d[1] + d[2];
    for (int k = 0; k < 3; ++k) bd[static_cast<size_t>(k)] = Rational(total - 2 * d[static_cast<size_t>(k)], 2);
  }

  long long order = 2 * ipow(p, n);
  long long a_e = 0;
  long long mu_sum = 0;
  for (int j = 0; j < n; ++j) a_e += (ipow(p, n - j) - ipow(p, n - j - 1)) * iota_h[static_cast<size_t>(j)];
  mu_sum -= iota_h[static_cast<size_t>(n - 1)];
  if (p != 2) {
    a_e += ipow(p, n);
    mu_sum -= ipow(p, n);
  } else {
    for (int k = 1; k <= 2; ++k) {
      Rational io = bd[static_cast<size_t>(k)] * Rational(2);
      long long iv = io.to_integer();
      a_e += ipow(2, n - 1) * iv;
      bool order_two = inv.family == DqsFamily::Dihedral || (inv.family == DqsFamily::Semidihedral && k == 1);
      if (order_two) mu_sum -= ipow(2, n - 1) * iv;
    }
  }
  out.push_back({"e", inv.shape ? std::optional<Subgroup>(trivial_subgroup(*inv.group)) : std::nullopt,
                 Rational(mu_sum - a_e, order)});

  for (int j = 0; j < n; ++j) {
    Rational v;
    if (j == n - 1 && special_top) {
      const auto& d = inv.d_vector;
      Rational half_top(i[static_cast<size_t>(j)], 2);
      v = inv.family == DqsFamily::Quaternion ? half_top - Rational(d[0], 2)
                                              : half_top - Rational(d[0] + d[1] - d[2], 4);
    } else if (j == 0) {
      v = Rational(1 + i[0], 2);
    } else {
      v = Rational(i[static_cast<size_t>(j)], 2);
    }
    out.push_back({power_label(p, j), subgroup_at(j), v});
  }
  if (p != 2) {
    out.push_back({"D1", inv.shape ? std::optional<Subgroup>(inv.shape->D1) : std::nullopt, Rational(1)});
  } else {
    out.push_back({"D1", inv.shape ? std::optional<Subgroup>(inv.shape->D1) : std::nullopt, bd[1]});
    out.push_back({"D2", inv.shape ? std::optional<Subgroup>(inv.shape->D2) : std::nullopt, bd[2]});
  }
  return out;
}

DqsVerdict dqs_bertin(const DqsInvariants& inv) {
  DqsVerdict v;
  auto b = dqs_b_closed_form(inv);
  v.vanishes = true;
  for (const auto& e : b)
    if (e.label != "e" && !nonneg_integer(e.value)) v.vanishes = false;

  const auto& i = inv.i_vector;
  const int n = inv.n;
  bool a = i[0] % 2 == 1;
  for (int j = 1; j < n - 1; ++j) a = a && i[static_cast<size_t>(j)] % 2 == 0;
  v.conditions.push_back({"a", a});
  bool top_even = n >= 2 && i[static_cast<size_t>(n - 1)] % 2 == 0;
  switch (inv.family) {
    case DqsFamily::Dihedral:
      v.conditions.push_back({"b", n < 2 || top_even});
      break;
    case DqsFamily::Quaternion:
      v.conditions.push_back({"c", top_even && i[static_cast<size_t>(n - 1)] >= inv.d_vector[0]});
      break;
    case DqsFamily::Semidihedral: {
      const auto& d = inv.d_vector;
      Rational top = Rational(i[static_cast<size_t>(n - 1)], 2) - Rational(d[0] + d[1] - d[2], 4);
      v.conditions.push_back({"d", nonneg_integer(top)});
      break;
    }
  }
  v.conditions_hold = std::all_of(v.conditions.begin(), v.conditions.end(), [](const auto& c) { return c.second; });

  if (inv.p == 2) {
    Rational bh = b[1].value;
    Rational b1 = b[b.size() - 2].value;
    Rational b2 = b.back().value;
    auto same_parity = [](const Rational& x, const Rational& y) {
      Rational diff = (x - y) / Rational(2);
      return diff.is_integer();
    };
    v.congruence = same_parity(bh, b1) && same_parity(b1, b2);
  }
  return v;
}

DqsVerdict dqs_kgb(const DqsInvariants& inv) { return dqs_bertin(inv); }

std::optional<std::vector<long long>> oomph_solve(int p) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParameter, "p must be prime");
  // reach[k] holds, for every (x, y) reachable after k terms, the coefficient used last.
  const int states = p * p;
  std::vector<std::vector<int>> last(static_cast<size_t>(p + 2), std::vector<int>(static_cast<size_t>(states), -1));
  last[0][0] = 0;
  auto term = [&](int k) { return k < p ? std::pair<int, int>{1, k} : std::pair<int, int>{0, 1}; };
  for (int k = 0; k <= p; ++k) {
    auto [hx, hy] = term(k);
    for (int s = 0; s < states; ++s) {
      if (last[static_cast<size_t>(k)][static_cast<size_t>(s)] < 0) continue;
      int x = s / p, y = s % p;
      for (int c = 1; c < p; ++c) {
        int nx = (x + c * hx) % p, ny = (y + c * hy) % p;
        auto& slot = last[static_cast<size_t>(k + 1)][static_cast<size_t>(nx * p + ny)];
        if (slot < 0) slot = c;
      }
    }
  }
  if (last[static_cast<size_t>(p + 1)][0] < 0) return std::nullopt;
  std::vector<long long> c(static_cast<size_t>(p + 1));
  int s = 0;
  for (int k = p; k >= 0; --k) {
    int ck = last[static_cast<size_t>(k + 1)][static_cast<size_t>(s)];
    c[static_cast<size_t>(k)] = ck;
    auto [hx, hy] = term(k);
    int x = s / p, y = s % p;
    x = ((x - ck * hx) % p + p) % p;
    y = ((y - ck * hy) % p + p) % p;
    s = x * p + y;
  }
  return c;
}

CpxcpVerdict cpxcp(int p, long long i0, bool deep) {
  if (!is_prime(p) || i0 <= 0) throw Error(ErrorCode::BadParameter, "need a prime p and i0 > 0");
  CpxcpVerdict v;
  v.bertin = (i0 + 1) % p == 0;
  if (!v.bertin) return v;
  if (i0 + 1 > p || deep) {
    v.kgb = true;
    return v;
  }
  v.solver_used = true;
  v.solution = oomph_solve(p);
  v.kgb = v.solution.has_value();
  return v;
}

LocalActionData cpxcp_data(int p, long long i0, long long i1) {
  auto G = elem_abelian(p, 2);
  std::vector<FiltrationSegment> chain = {{0, whole_group(*G)}};
  if (i1 > 0) {
    chain.push_back({i0 + 1, cyclic_subgroup(*G, 1)});
    chain.push_back({i0 + p * i1 + 1, trivial_subgroup(*G)});
  } else {
    chain.push_back({i0 + 1, trivial_subgroup(*G)});
  }
  return chain_filtration(G, p, chain);
}

Sl23Report sl23_analyze(const LocalActionData& data) {
  const auto& G = *data.group();
  if (data.p() != 2 || !are_isomorphic(G, *sl2_3())) throw Error(ErrorCode::WrongGroup, "expected SL_2(3) with p = 2");
  Sl23Report r;
  Subgroup P = data.split.P;
  auto RP = restrict_to(data, P);
  auto b = b_coefficients(data);
  r.bertin_g = bertin_from_values(b).vanishes;
  r.bertin_p = bertin_vanishes(RP.data).vanishes;
  r.kgb_g = kgb_from_values(data, b).vanishes;
  r.kgb_p = kgb_vanishes(RP.data).vanishes;
  r.equivalent = r.bertin_g == r.bertin_p && r.bertin_g == r.kgb_g && r.bertin_g == r.kgb_p;

  Subgroup gamma;
  Subgroup c3;
  Subgroup j6;
  for (const auto& T : all_cyclic_subgroups(G)) {
    if (T.order() == 4 && gamma.order() == 0) gamma = T;
    if (T.order() == 3 && c3.order() == 0) c3 = T;
    if (T.order() == 6 && j6.order() == 0) j6 = T;
  }
  auto ups = cyclic_upper_jumps(restrict_to(data, gamma).data.filt);
  if (ups.size() == 2 && ups[0].is_integer() && ups[1].is_integer()) {
    r.i0 = ups[0].to_integer();
    r.i1 = (ups[1] - ups[0]).to_integer();
  }
  r.gamma_b_holds = b_value(b, G, gamma) == Rational(r.i0 + 1, 2);
  r.c_and_j_hold = b_value(b, G, c3) == Rational(0) && b_value(b, G, j6) == Rational(1);
  r.hbound_applicable = r.bertin_p && validate(data, ValidationLevel::Strict).empty();
  if (r.hbound_applicable) {
    long long h = r.i1 - r.i0 - 3;
    r.hbound_holds = h >= 0 && h % 6 == 0;
  }
  return r;
}

LocalActionData sl23_elliptic_data() {
  auto G = sl2_3();
  Subgroup P = *normal_sylow(*G, 2);
  return chain_filtration(G, 2, {{0, whole_group(*G)}, {1, P}, {2, center(*G)}, {4, trivial_subgroup(*G)}});
}

A4Table a4_b(const LocalActionData& data) {
  const auto& G = *data.group();
  if (data.p() != 2 || !are_isomorphic(G, *a4())) throw Error(ErrorCode::WrongGroup, "expected A_4 with p = 2");
  A4Table t;
  for (const auto& T : all_cyclic_subgroups(G)) {
    if (T.order() == 2 && t.H2.order() == 0) t.H2 = T;
    if (T.order() == 3 && t.H3.order() == 0) t.H3 = T;
  }
  t.iota_h2 = iota(data, t.H2);
  t.b_h2 = Rational(t.iota_h2, 2);
  t.b_h3 = Rational(1);
  return t;
}

}  // namespace obstr
