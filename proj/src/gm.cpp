/**
 * @file gm.cpp
 * @brief Green-Matignon group tests and the eigenvalue filtration.
 */
#include "obstr/gm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "obstr/errors.hpp"
#include "obstr/lattice.hpp"
#include "obstr/obstructions.hpp"
#include "obstr/rational.hpp"

namespace obstr {

namespace {

long long mult_order(long long u, long long p) {
  long long k = 1;
  long long x = u % p;
  while (x != 1) {
    x = x * u % p;
    ++k;
  }
  return k;
}

std::vector<long long> units_of_order(long long p, long long n) {
  std::vector<long long> out;
  for (long long u = 1; u < p; ++u)
    if (mult_order(u, p) == n) out.push_back(u);
  return out;
}

/// Exponent of P, at least p, and the power e with p^e equal to it.
std::pair<long long, int> theta_modulus(const GroupTable& G, const StructureSplit& sp) {
  long long m = std::max<long long>(exponent(G, sp.P), sp.p);
  int e = 0;
  for (long long x = m; x > 1; x /= sp.p) ++e;
  return {m, e};
}

int b_generator(const GroupTable& G, const StructureSplit& sp) {
  return G.power(sp.c_generator, sp.C.order() / sp.B.order());
}

/// Element of H of the given order, or -1.
int element_of_order(const GroupTable& G, const Subgroup& H, int order) {
  for (int h : H.members())
    if (G.elem_order(h) == order) return h;
  return -1;
}

bool centralizes(const GroupTable& G, int g, const Subgroup& T) {
  for (int t : T.members())
    if (G.conjugate(g, t) != t) return false;
  return true;
}

std::string subgroup_text(const Subgroup& H) {
  std::ostringstream os;
  os << "order " << H.order() << " {";
  for (size_t i = 0; i < H.members().size(); ++i) os << (i ? "," : "") << H.members()[i];
  os << "}";
  return os.str();
}

std::optional<GmViolation> condition_a(const GroupTable& G, const StructureSplit& sp) {
  bool d_cyclic = is_cyclic(G, sp.D);
  for (int c : sp.C.members()) {
    if (c == 0) continue;
    Subgroup cp = intersect(centralizer(G, c), sp.P);
    if (cp == sp.D && d_cyclic) continue;
    GmViolation v;
    v.condition = "a";
    v.witness = cp;
    v.element = c;
    v.detail = cp == sp.D ? "C_P(C) is not cyclic" : "C_P(c) differs from C_P(C)";
    return v;
  }
  return std::nullopt;
}

std::optional<GmViolation> theta_check(const GroupTable& G, const StructureSplit& sp, long long theta,
                                       long long modulus) {
  int b0 = b_generator(G, sp);
  int nb = sp.B.order();
  std::vector<int> c_nontrivial;
  for (int c : sp.C.members())
    if (c != 0) c_nontrivial.push_back(c);
  for (const auto& T : all_cyclic_subgroups(G)) {
    if (T.is_trivial() || !T.subset_of(sp.P)) continue;
    bool centralized = false;
    for (int c : c_nontrivial)
      if (centralizes(G, c, T)) {
        centralized = true;
        break;
      }
    if (centralized) continue;
    int y = cyclic_generator(G, T);
    int x = 0;
    long long th = 1;
    for (int k = 0; k < nb; ++k) {
      if (T.contains(G.conjugate(x, y)) && G.conjugate(x, y) != G.power(y, th % T.order())) {
        GmViolation v;
        v.condition = "b";
        v.witness = T;
        v.element = x;
        v.detail = "conjugation on T is not y -> y^Theta(x) for Theta(b0) = " + std::to_string(theta);
        return v;
      }
      x = G.mul(x, b0);
      th = th * theta % modulus;
    }
  }
  return std::nullopt;
}

bool is_scalar_on(const GroupTable& G, int e, const Subgroup& Q, int p) {
  for (int lambda = 1; lambda < p; ++lambda) {
    bool all = true;
    for (int q : Q.members())
      if (G.conjugate(e, q) != G.power(q, lambda)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

std::optional<GmViolation> forbidden_type(const GroupTable& G, int p, const Subgroup& P, const Subgroup& H,
                                          int type) {
  Subgroup Q = intersect(H, P);
  int k = H.order() / Q.order();
  auto found = [&](const char* detail) {
    GmViolation v;
    v.condition = "type" + std::to_string(type);
    v.witness = H;
    v.element = element_of_order(G, H, k);
    v.detail = detail;
    return v;
  };
  int pp = p * p;
  switch (type) {
    case 1:
      if (Q.order() == pp && k > 1 && is_prime(k) && is_abelian(G, H) && exponent(G, H) == p * k)
        return found("Z/p x Z/p x Z/r");
      break;
    case 2:
      if (Q.order() == p && k > 1) {
        int cq = intersect(centralizer(G, Q), H).order();
        if (cq > p && cq < H.order()) return found("E acts on Q of order p neither faithfully nor trivially");
      }
      break;
    case 3:
      if (Q.order() == pp && k > 1 && (p - 1) % k == 0 && exponent(G, Q) == p &&
          intersect(centralizer(G, Q), H) == Q) {
        int e = element_of_order(G, H, k);
        if (intersect(centralizer(G, e), Q).is_trivial() && !is_scalar_on(G, e, Q, p))
          return found("E acts on (Z/p)^2 faithfully by two distinct non-trivial eigenvalues");
      }
      break;
    case 4:
      if (Q.order() == pp * p && (p + 1) % k != 0 && exponent(G, Q) == p && !is_abelian(G, Q)) {
        Subgroup ZQ = intersect(centralizer(G, Q), Q);
        int e = element_of_order(G, H, k);
        if (ZQ.order() == p && intersect(centralizer(G, e), Q) == ZQ)
          return found("extraspecial p^3 of exponent p with C_Q(E) = Z(Q)");
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<int> conjugation_on(const GroupTable& G, const Subgroup& P, int g) {
  auto S = subgroup_as_group(G, P);
  std::vector<int> out(static_cast<size_t>(P.order()));
  for (int i = 0; i < P.order(); ++i) {
    int img = S.locate[static_cast<size_t>(G.conjugate(g, S.embed[static_cast<size_t>(i)]))];
    if (img < 0) throw Error(ErrorCode::BadParameter, "element does not normalize the subgroup");
    out[static_cast<size_t>(i)] = img;
  }
  return out;
}

std::optional<GmViolation> theta_violation(const GroupTable& G, int p, long long theta) {
  auto sp = structure_split(G, p);
  auto [modulus, e] = theta_modulus(G, sp);
  (void)e;
  return theta_check(G, sp, ((theta % modulus) + modulus) % modulus, modulus);
}

GmVerdict is_gm_definition(const GroupTable& G, int p) {
  auto sp = structure_split(G, p);
  GmVerdict v;
  auto [modulus, e] = theta_modulus(G, sp);
  v.theta_modulus = modulus;
  if (auto bad = condition_a(G, sp)) {
    v.violation = std::move(bad);
    return v;
  }
  int nb = sp.B.order();
  if (nb <= 2) {
    v.is_gm = true;
    return v;
  }
  std::optional<GmViolation> first;
  for (long long u : units_of_order(p, nb)) {
    long long theta = teichmuller_lift(u, p, e);
    auto bad = theta_check(G, sp, theta, modulus);
    if (!bad) {
      v.is_gm = true;
      v.witness_theta = theta;
      return v;
    }
    if (!first) first = std::move(bad);
  }
  first->detail = "no Teichmuller lift of a unit of order " + std::to_string(nb) + " works; first candidate: " +
                  first->detail;
  v.violation = std::move(first);
  return v;
}

GmVerdict is_gm_forbidden(const GroupTable& G, int p) {
  auto sp = structure_split(G, p);
  GmVerdict v;
  auto [modulus, e] = theta_modulus(G, sp);
  v.theta_modulus = modulus;
  const auto& subs = all_subgroups(G);
  for (int type = 1; type <= 4; ++type)
    for (const auto& H : subs)
      if (auto bad = forbidden_type(G, p, sp.P, H, type)) {
        bad->detail += ": " + subgroup_text(H);
        v.violation = std::move(bad);
        return v;
      }
  v.is_gm = true;
  int nb = sp.B.order();
  if (nb <= 2) return v;
  // B acts on [G,G] by a scalar, which the eigenvalue filtration of P exposes.
  std::optional<long long> eigen;
  if (!sp.P.is_trivial()) {
    auto Pg = subgroup_as_group(G, sp.P);
    auto f = eigen_filtration(*Pg.group, conjugation_on(G, sp.P, b_generator(G, sp)));
    for (const auto& s : f.steps)
      if (s.eigenvalue != 1) {
        eigen = s.eigenvalue;
        break;
      }
  }
  if (!eigen || mult_order(*eigen, p) != nb) eigen = units_of_order(p, nb).front();
  v.witness_theta = teichmuller_lift(*eigen, p, e);
  return v;
}

bool weak_bertin(const GroupTable& G, int p) { return is_gm_definition(G, p).is_gm; }

GroovyReport groovy_congruences(const GroupTable& G, int p, const Subgroup& T) {
  auto sp = structure_split(G, p);
  if (T.is_trivial() || !T.subset_of(sp.P) || !is_cyclic(G, T))
    throw Error(ErrorCode::NotPSubgroup, "T must be a non-trivial cyclic subgroup of P");
  if (!is_gm_definition(G, p).is_gm) throw Error(ErrorCode::NotGm, "the group is not a GM group");
  GroovyReport r;
  r.b_prime = b_prime(G, p, T);
  r.np_index = intersect(normalizer(G, T), sp.P).order() / T.order();
  r.a = r.b_prime % r.np_index == 0;
  r.centralized = !intersect(centralizer(G, T), sp.C).is_trivial();
  r.b_double_prime = b_double_prime(G, p, T);
  if (r.centralized) {
    r.b = T.subset_of(sp.D) && r.b_double_prime % sp.C.order() == 0;
  } else if (!intersect(normalizer(G, T), sp.C).is_trivial()) {
    for (const auto& S : all_cyclic_subgroups(G))
      if (T.subset_of(S) && !S.subset_of(sp.P)) {
        r.c = false;
        break;
      }
  }
  return r;
}

EigenFiltration eigen_filtration(const GroupTable& Q, const std::vector<int>& b) {
  const int n = Q.order();
  if (static_cast<int>(b.size()) != n) throw Error(ErrorCode::NotAutomorphism, "wrong permutation length");
  {
    std::vector<int> sorted = b;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
      if (sorted[static_cast<size_t>(i)] != i) throw Error(ErrorCode::NotAutomorphism, "not a permutation");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (b[static_cast<size_t>(Q.mul(x, y))] != Q.mul(b[static_cast<size_t>(x)], b[static_cast<size_t>(y)]))
          throw Error(ErrorCode::NotAutomorphism, "not a homomorphism");
  }
  EigenFiltration out;
  if (n == 1) return out;
  auto fac = factorize(n);
  if (fac.size() != 1) throw Error(ErrorCode::BadParameter, "Q must be a p-group");
  const int p = static_cast<int>(fac[0].first);
  out.p = p;
  out.modulus = exponent(Q, whole_group(Q));
  int ep = 0;
  for (long long x = out.modulus; x > 1; x /= p) ++ep;

  long long order = 1;
  std::vector<int> iter = b;
  auto is_identity = [](const std::vector<int>& f) {
    for (size_t i = 0; i < f.size(); ++i)
      if (f[i] != static_cast<int>(i)) return false;
    return true;
  };
  while (!is_identity(iter)) {
    for (auto& v : iter) v = b[static_cast<size_t>(v)];
    ++order;
  }
  if ((p - 1) % order != 0)
    throw Error(ErrorCode::BadAutomorphismOrder,
                "automorphism of order " + std::to_string(order) + " does not divide p-1 = " + std::to_string(p - 1));

  auto invariant = [&](const Subgroup& S) {
    for (int s : S.members())
      if (!S.contains(b[static_cast<size_t>(s)])) return false;
    return true;
  };
  Subgroup cur = trivial_subgroup(Q);
  while (cur.order() < n) {
    bool advanced = false;
    for (int y = 0; y < n && !advanced; ++y) {
      if (cur.contains(y) || !cur.contains(Q.power(y, p))) continue;
      Subgroup S = join(Q, cur, cyclic_subgroup(Q, y));
      if (!is_normal(Q, S) || !invariant(S)) continue;
      int by = b[static_cast<size_t>(y)];
      long long lambda = 0;
      for (int l = 1; l < p; ++l)
        if (cur.contains(Q.mul(by, Q.inv(Q.power(y, l))))) {
          lambda = l;
          break;
        }
      if (lambda == 0) continue;
      long long e = teichmuller_lift(lambda, p, ep);
      for (int x : S.members()) {
        if (cur.contains(x) || b[static_cast<size_t>(x)] != Q.power(x, e)) continue;
        out.steps.push_back({S, x, e, lambda});
        cur = S;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw Error(ErrorCode::InvalidData, "no invariant eigen-step found");
  }
  return out;
}

}  // namespace obstr
