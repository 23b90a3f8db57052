#include "fp_poly.hpp"

#include <stdexcept>

#include "obstr/lattice.hpp"
#include "obstr/rational.hpp"

namespace obstr::fp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

long long inv_mod(long long a, long long p) {
  a = mod_ll(a, p);
  if (a == 0) throw std::domain_error("inverse of zero mod p");
  return pow_mod(a, p - 2, p);
}

Poly mul(const Poly& a, const Poly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, long long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    long long x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = mod_ll(x - y, p);
  }
  trim(r);
  return r;
}

namespace {

void divmod(Poly& a, const Poly& b, long long p, Poly* q) {
  trim(a);
  int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  long long lead_inv = inv_mod(b[db], p);
  if (q) q->assign(a.size() > static_cast<size_t>(db) ? a.size() - db : 1, 0);
  while (degree(a) >= db) {
    int da = degree(a);
    long long c = a[da] * lead_inv % p;
    if (q) (*q)[da - db] = c;
    for (int i = 0; i <= db; ++i) a[da - db + i] = mod_ll(a[da - db + i] - c * b[i], p);
    trim(a);
  }
  if (q) trim(*q);
}

}  // namespace

Poly rem(Poly a, const Poly& b, long long p) {
  divmod(a, b, p, nullptr);
  return a;
}

Poly quo(Poly a, const Poly& b, long long p) {
  Poly q;
  divmod(a, b, p, &q);
  return q;
}

Poly monic(Poly a, long long p) {
  trim(a);
  if (a.empty()) return a;
  long long c = inv_mod(a.back(), p);
  for (auto& x : a) x = x * c % p;
  return a;
}

Poly gcd(Poly a, Poly b, long long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly x_power_mod(long long e, const Poly& f, long long p) {
  Poly result = rem(Poly{1}, f, p), base = rem(Poly{0, 1}, f, p);
  while (e > 0) {
    if (e & 1) result = rem(mul(result, base, p), f, p);
    base = rem(mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

Poly compose_power(const Poly& f, long long j) {
  Poly r(static_cast<size_t>((f.size() - 1) * j + 1), 0);
  for (size_t i = 0; i < f.size(); ++i) r[i * j] = f[i];
  return r;
}

Poly cyclotomic(long long m, long long p) {
  Poly num(static_cast<size_t>(m + 1), 0);
  num[0] = p - 1;
  num[m] = 1;
  for (long long d = 1; d < m; ++d)
    if (m % d == 0) num = quo(num, cyclotomic(d, p), p);
  return num;
}

bool irreducible(const Poly& f, long long p) {
  int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly x = {0, 1};
  // f | x^{p^n} - x and gcd(f, x^{p^{n/q}} - x) = 1 for prime q | n.
  auto frob = [&](int k) {
    Poly r = rem(x, f, p);
    for (int i = 0; i < k; ++i) {
      // r <- r^p mod f
      Poly acc = {1}, base = r;
      long long e = p;
      while (e > 0) {
        if (e & 1) acc = rem(mul(acc, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
      }
      r = acc;
    }
    return r;
  };
  if (!sub(frob(n), x, p).empty()) return false;
  for (auto [q, e] : factorize(n)) {
    (void)e;
    Poly g = gcd(f, sub(frob(static_cast<int>(n / q)), x, p), p);
    if (degree(g) != 0) return false;
  }
  return true;
}

Poly matrix_minpoly(const std::vector<std::vector<long long>>& A, long long p) {
  const int d = static_cast<int>(A.size());
  // Krylov on the full matrix space: find the first power dependent on lower ones.
  std::vector<std::vector<long long>> basis;  // row-reduced flattened powers
  std::vector<int> pivots;
  std::vector<Poly> combos;  // each basis row as a combination of powers
  std::vector<std::vector<long long>> cur(d, std::vector<long long>(d, 0));
  for (int i = 0; i < d; ++i) cur[i][i] = 1;
  for (int k = 0; k <= d * d; ++k) {
    std::vector<long long> v;
    v.reserve(static_cast<size_t>(d) * d);
    for (auto& row : cur)
      for (auto x : row) v.push_back(mod_ll(x, p));
    Poly combo(static_cast<size_t>(k + 1), 0);
    combo[k] = 1;
    for (size_t b = 0; b < basis.size(); ++b) {
      long long c = v[pivots[b]];
      if (!c) continue;
      for (size_t t = 0; t < v.size(); ++t) v[t] = mod_ll(v[t] - c * basis[b][t], p);
      Poly scaled = combos[b];
      for (auto& s : scaled) s = s * c % p;
      combo = sub(combo, scaled, p);
      combo.resize(std::max(combo.size(), static_cast<size_t>(k + 1)), 0);
    }
    int piv = -1;
    for (size_t t = 0; t < v.size(); ++t)
      if (v[t]) {
        piv = static_cast<int>(t);
        break;
      }
    if (piv < 0) return monic(combo, p);
    long long inv = inv_mod(v[piv], p);
    for (auto& x : v) x = x * inv % p;
    for (auto& x : combo) x = x * inv % p;
    basis.push_back(v);
    pivots.push_back(piv);
    combos.push_back(combo);
    // cur <- cur * A
    std::vector<std::vector<long long>> nxt(d, std::vector<long long>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        long long s = 0;
        for (int t = 0; t < d; ++t) s += cur[i][t] * A[t][j] % p;
        nxt[i][j] = s % p;
      }
    cur = std::move(nxt);
  }
  throw std::logic_error("minimal polynomial search did not terminate");
}

long long primitive_root(long long p) {
  if (p == 2) return 1;
  auto fac = factorize(p - 1);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (pow_mod(g, (p - 1) / q, p) == 1) ok = false;
    }
    if (ok) return g;
  }
  return 1;
}

}  // namespace obstr::fp
