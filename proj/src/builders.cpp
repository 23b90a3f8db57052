#include "obstr/builders.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "obstr/rational.hpp"

namespace obstr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParameter, what);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GroupPtr cyclic(int n) {
  require(n >= 1, "cyclic group order must be positive");
  return build_group(n, [n](int a, int b) { return (a + b) % n; });
}

GroupPtr dihedral(int order) {
  require(order >= 2 && order % 2 == 0, "dihedral order must be even and at least 2");
  const int m = order / 2;
  return build_group(order, [m](int a, int b) {
    int ka = a % m, fa = a / m, kb = b % m, fb = b / m;
    int k = fa ? (ka - kb + m) % m : (ka + kb) % m;
    return k + m * (fa ^ fb);
  });
}

GroupPtr generalized_quaternion(int order) {
  require(order >= 8 && is_power_of_two(order), "generalized quaternion order must be 2^a with a >= 3");
  const int N = order / 2;
  return build_group(order, [N](int a, int b) {
    int ka = a % N, fa = a / N, kb = b % N, fb = b / N;
    int k = fa ? (ka - kb + N) % N : (ka + kb) % N;
    if (fa && fb) k = (k + N / 2) % N;
    return k + N * (fa ^ fb);
  });
}

GroupPtr semidihedral(int order) {
  require(order >= 16 && is_power_of_two(order), "semidihedral order must be 2^a with a >= 4");
  const int N = order / 2;
  const int s = N / 2 - 1;
  return build_group(order, [N, s](int a, int b) {
    int ka = a % N, fa = a / N, kb = b % N, fb = b / N;
    int k = fa ? (ka + s * kb) % N : (ka + kb) % N;
    return k + N * (fa ^ fb);
  });
}

GroupPtr elem_abelian(int p, int d) {
  require(is_prime(p) && d >= 0, "elem_abelian needs a prime p and d >= 0");
  return abelian(std::vector<int>(d, p));
}

GroupPtr abelian(const std::vector<int>& factor_orders) {
  int n = 1;
  for (int f : factor_orders) {
    require(f >= 1, "abelian factor orders must be positive");
    n *= f;
  }
  return build_group(n, [&](int a, int b) {
    int r = 0, scale = 1;
    for (int f : factor_orders) {
      r += ((a % f + b % f) % f) * scale;
      a /= f;
      b /= f;
      scale *= f;
    }
    return r;
  });
}

GroupPtr klein() { return elem_abelian(2, 2); }

GroupPtr heisenberg(int p) {
  require(is_prime(p), "heisenberg needs a prime");
  return build_group(p * p * p, [p](int x, int y) {
    int a = x % p, b = (x / p) % p, c = x / (p * p);
    int a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
    return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
  });
}

GroupPtr direct_product(const GroupTable& A, const GroupTable& B) {
  const int na = A.order();
  return build_group(na * B.order(), [&](int x, int y) {
    return A.mul(x % na, y % na) + na * B.mul(x / na, y / na);
  });
}

GroupPtr semidirect(const GroupTable& P, int c_order, const std::vector<int>& action) {
  const int np = P.order();
  if (c_order < 1) throw Error(ErrorCode::BadParameter, "complement order must be positive");
  if (static_cast<int>(action.size()) != np) throw Error(ErrorCode::NotAutomorphism, "action has the wrong length");
  std::vector<char> hit(np, 0);
  for (int x : action) {
    if (x < 0 || x >= np || hit[x]) throw Error(ErrorCode::NotAutomorphism, "action is not a bijection");
    hit[x] = 1;
  }
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < np; ++y)
      if (action[P.mul(x, y)] != P.mul(action[x], action[y]))
        throw Error(ErrorCode::NotAutomorphism,
                    "action is not multiplicative at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  // powers[k][x] = action^k (x)
  std::vector<std::vector<int>> powers(c_order + 1, std::vector<int>(np));
  for (int x = 0; x < np; ++x) powers[0][x] = x;
  for (int k = 1; k <= c_order; ++k)
    for (int x = 0; x < np; ++x) powers[k][x] = action[powers[k - 1][x]];
  for (int x = 0; x < np; ++x)
    if (powers[c_order][x] != x) throw Error(ErrorCode::OrderMismatch, "action^m is not the identity");
  return build_group(np * c_order, [&](int u, int v) {
    int x = u % np, a = u / np, y = v % np, b = v / np;
    return P.mul(x, powers[a][y]) + np * ((a + b) % c_order);
  });
}

std::vector<int> automorphism_from_images(const GroupTable& P, const std::vector<int>& gens,
                                          const std::vector<int>& images) {
  const int n = P.order();
  if (gens.size() != images.size()) throw Error(ErrorCode::NotAutomorphism, "generator/image length mismatch");
  std::vector<int> f(n, -1);
  f[0] = 0;
  std::vector<int> queue = {0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    for (size_t i = 0; i < gens.size(); ++i) {
      int y = P.mul(x, gens[i]);
      int fy = P.mul(f[x], images[i]);
      if (f[y] < 0) {
        f[y] = fy;
        queue.push_back(y);
      } else if (f[y] != fy) {
        throw Error(ErrorCode::NotAutomorphism, "images do not define a homomorphism");
      }
    }
  }
  if (static_cast<int>(queue.size()) != n) throw Error(ErrorCode::NotAutomorphism, "generators do not generate");
  std::vector<char> hit(n, 0);
  for (int x : f) {
    if (hit[x]) throw Error(ErrorCode::NotAutomorphism, "map is not injective");
    hit[x] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (f[P.mul(x, y)] != P.mul(f[x], f[y])) throw Error(ErrorCode::NotAutomorphism, "map is not multiplicative");
  return f;
}

std::vector<int> linear_automorphism(int p, const std::vector<std::vector<int>>& matrix) {
  const int d = static_cast<int>(matrix.size());
  int n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  std::vector<int> f(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> v(d);
    int t = x;
    for (int i = 0; i < d; ++i) {
      v[i] = t % p;
      t /= p;
    }
    int img = 0, scale = 1;
    for (int i = 0; i < d; ++i) {
      long long s = 0;
      for (int j = 0; j < d; ++j) s += static_cast<long long>(matrix[i][j]) * v[j];
      img += static_cast<int>(mod_ll(s, p)) * scale;
      scale *= p;
    }
    f[x] = img;
  }
  std::vector<char> hit(n, 0);
  for (int x : f) {
    if (hit[x]) throw Error(ErrorCode::NotAutomorphism, "matrix is singular mod p");
    hit[x] = 1;
  }
  return f;
}

GroupPtr a4() {
  auto V = klein();
  // generator permutes the three involutions 1 -> 2 -> 3 -> 1
  return semidirect(*V, 3, automorphism_from_images(*V, {1, 2}, {2, 3}));
}

GroupPtr sl2_3() {
  auto Q = generalized_quaternion(8);
  // x = 1 (order 4), y = 4 (order 4), xy = 5; the order-3 automorphism x -> y -> xy.
  return semidirect(*Q, 3, automorphism_from_images(*Q, {1, 4}, {4, Q->mul(1, 4)}));
}

StructureSplit structure_split(const GroupTable& G, int p) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParameter, "p must be prime");
  auto P = normal_sylow(G, p);
  if (!P) throw Error(ErrorCode::NotCyclicByP, "no normal Sylow " + std::to_string(p) + "-subgroup");
  const int m = G.order() / P->order();
  std::optional<Subgroup> C;
  for (const auto& S : all_cyclic_subgroups(G))
    if (S.order() == m) {
      C = S;
      break;
    }
  if (!C) throw Error(ErrorCode::NotCyclicByP, "no cyclic complement of order " + std::to_string(m));
  StructureSplit s;
  s.p = p;
  s.P = *P;
  s.C = *C;
  s.c_generator = -1;
  for (int c : C->members())
    if (G.elem_order(c) == m) {
      s.c_generator = c;
      break;
    }
  int b = static_cast<int>(gcd_ll(m, p - 1));
  s.B = cyclic_subgroup(G, G.power(s.c_generator, m / b));
  s.D = intersect(*P, centralizer(G, *C));
  return s;
}

bool is_cyclic_by_p(const GroupTable& G, int p) {
  try {
    structure_split(G, p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

std::vector<int> order_histogram(const GroupTable& G) {
  std::vector<int> h(G.order() + 1, 0);
  for (int g = 0; g < G.order(); ++g) ++h[G.elem_order(g)];
  return h;
}

bool extend_iso(const GroupTable& A, const GroupTable& B, const std::vector<int>& gens, size_t k,
                std::vector<int>& images) {
  if (k == gens.size()) {
    const int n = A.order();
    std::vector<int> f(n, -1);
    f[0] = 0;
    std::vector<int> queue = {0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int x = queue[qi];
      for (size_t i = 0; i < gens.size(); ++i) {
        int y = A.mul(x, gens[i]);
        int fy = B.mul(f[x], images[i]);
        if (f[y] < 0) {
          f[y] = fy;
          queue.push_back(y);
        } else if (f[y] != fy) {
          return false;
        }
      }
    }
    std::vector<char> hit(n, 0);
    for (int x : f) {
      if (hit[x]) return false;
      hit[x] = 1;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (f[A.mul(x, y)] != B.mul(f[x], f[y])) return false;
    return true;
  }
  for (int b = 0; b < B.order(); ++b) {
    if (B.elem_order(b) != A.elem_order(gens[k])) continue;
    images[k] = b;
    if (extend_iso(A, B, gens, k + 1, images)) return true;
  }
  return false;
}

}  // namespace

bool are_isomorphic(const GroupTable& A, const GroupTable& B) {
  if (A.order() != B.order()) return false;
  if (A.num_classes() != B.num_classes()) return false;
  if (order_histogram(A) != order_histogram(B)) return false;
  if (A.order() > 64) throw Error(ErrorCode::CapExceeded, "isomorphism search is limited to order 64");
  // Greedy generating set of A.
  std::vector<int> gens;
  Subgroup S = trivial_subgroup(A);
  std::vector<int> els(A.order());
  for (int i = 0; i < A.order(); ++i) els[i] = i;
  std::stable_sort(els.begin(), els.end(), [&](int a, int b) { return A.elem_order(a) > A.elem_order(b); });
  for (int g : els) {
    if (S.contains(g)) continue;
    gens.push_back(g);
    S = generated(A, gens);
  }
  std::vector<int> images(gens.size(), 0);
  return extend_iso(A, B, gens, 0, images);
}

}  // namespace obstr

namespace obstr {

const char* dqs_family_name(DqsFamily f) {
  switch (f) {
    case DqsFamily::Dihedral: return "dihedral";
    case DqsFamily::Quaternion: return "quaternion";
    case DqsFamily::Semidihedral: return "semidihedral";
  }
  return "?";
}

std::vector<DqsShape> dqs_shapes(const GroupTable& G, int p) {
  std::vector<DqsShape> out;
  if (!is_prime(p) || G.order() % 2 != 0) return out;
  long long pn = G.order() / 2;
  if (p_part(pn, p) != pn) return out;
  int n = 0;
  for (long long t = pn; t > 1; t /= p) ++n;
  if (n < 1) return out;
  const auto reps = cyclic_subgroup_reps(G).reps;
  for (const auto& H : all_cyclic_subgroups(G)) {
    if (H.order() != pn) continue;
    int tau = cyclic_generator(G, H);
    int tau_inv = G.inv(tau);
    long long half = pn / 2;
    for (int s = 0; s < G.order(); ++s) {
      if (H.contains(s)) continue;
      int s2 = G.mul(s, s);
      int conj = G.conjugate(s, tau);
      std::optional<DqsFamily> fam;
      if (s2 == 0 && conj == tau_inv) fam = DqsFamily::Dihedral;
      else if (p == 2 && n >= 2 && s2 == G.power(tau, half) && conj == tau_inv) fam = DqsFamily::Quaternion;
      else if (p == 2 && n >= 3 && s2 == 0 && conj == G.power(tau, half - 1)) fam = DqsFamily::Semidihedral;
      if (!fam) continue;
      DqsShape sh;
      sh.family = *fam;
      sh.p = p;
      sh.n = n;
      sh.tau = tau;
      sh.sigma = s;
      sh.H = H;
      Subgroup a = reps[cyclic_rep_index(G, cyclic_subgroup(G, s))];
      if (p == 2) {
        Subgroup b = reps[cyclic_rep_index(G, cyclic_subgroup(G, G.mul(tau, s)))];
        if (b < a) std::swap(a, b);
        sh.D1 = a;
        sh.D2 = b;
        Subgroup twoH = cyclic_subgroup(G, G.power(tau, 2));
        sh.M[0] = H;
        sh.M[1] = join(G, twoH, sh.D1);
        sh.M[2] = join(G, twoH, sh.D2);
      } else {
        sh.D1 = a;
      }
      out.push_back(std::move(sh));
      break;
    }
  }
  return out;
}

}  // namespace obstr
