/**
 * @file validate.cpp
 * @brief Structural and arithmetic admissibility rules for local action data.
 */
#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "fp_poly.hpp"
#include "obstr/lattice.hpp"
#include "obstr/ramification.hpp"

namespace obstr {

namespace {

std::string members_str(const Subgroup& S) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < S.members().size(); ++i) os << (i ? "," : "") << S.members()[i];
  os << "}";
  return os.str();
}

/// One drop of a restricted filtration H_i = H cap G_i.
struct RestrictedJump {
  long long lower = 0;
  Rational upper;
  int order_after = 1;
};

/// Jumps of the restriction to a subgroup of the given order, where
/// orders[k] = |H cap chain[k].group|.
std::vector<RestrictedJump> restricted_jumps(const Filtration& f, const std::vector<int>& orders, int total) {
  std::vector<RestrictedJump> out;
  Rational phi = 0;
  for (size_t k = 0; k + 1 < f.chain.size(); ++k) {
    long long lo = std::max<long long>(f.chain[k].from - 1, 0);
    long long hi = std::max<long long>(f.chain[k + 1].from - 1, 0);
    phi += Rational(hi - lo) * Rational(orders[k], total);
    if (orders[k + 1] < orders[k]) out.push_back({hi, phi, orders[k + 1]});
  }
  return out;
}

std::vector<int> intersection_orders(const Filtration& f, const Subgroup& H) {
  std::vector<int> o;
  o.reserve(f.chain.size());
  for (const auto& seg : f.chain) o.push_back((seg.group.bits() & H.bits()).count());
  return o;
}

/// Keeps one subgroup per conjugacy class.
std::vector<Subgroup> conjugacy_reps(const GroupTable& G, const std::vector<Subgroup>& list) {
  std::set<Subgroup> seen;
  std::vector<Subgroup> out;
  for (const auto& K : list) {
    auto cs = conjugates(G, K);
    Subgroup key = *std::min_element(cs.begin(), cs.end());
    if (seen.insert(key).second) out.push_back(key);
  }
  return out;
}

fp::Poly eval_at(const fp::Poly& f, const fp::Poly& y, const fp::Poly& mod, long long p) {
  fp::Poly r;
  for (size_t k = f.size(); k-- > 0;) {
    r = fp::mul(r, y, p);
    if (r.empty()) r.push_back(0);
    r[0] = ((r[0] + f[k]) % p + p) % p;
    r = fp::rem(r, mod, p);
  }
  return r;
}

struct FamilyEntry {
  Subgroup K;                   // in G
  SubgroupGroup emb;
  std::vector<DqsShape> shapes;  // in K coordinates
  bool is_q8 = false;
};

}  // namespace

struct Validator::Impl {
  GroupPtr G;
  int p = 0;
  std::optional<Subgroup> P;
  bool lattice_complete = true;
  std::vector<Subgroup> abelian_reps;     // non-trivial
  std::vector<Subgroup> cyclic_p_reps;    // non-trivial cyclic p-subgroups
  std::vector<Subgroup> normal_proper;    // non-trivial proper normal subgroups
  std::vector<FamilyEntry> families;
  /// Non-cyclic p-subgroup representatives with their index-p subgroups.
  std::vector<std::pair<Subgroup, std::vector<Subgroup>>> p_sections;

  Impl(GroupPtr g, int prime) : G(std::move(g)), p(prime) {
    const auto& T = *G;
    P = normal_sylow(T, p);
    for (const auto& R : cyclic_subgroup_reps(T).reps)
      if (!R.is_trivial() && is_p_group(R, p)) cyclic_p_reps.push_back(R);
    for (const auto& N : normal_subgroups(T))
      if (!N.is_trivial() && N.order() != T.order()) normal_proper.push_back(N);
    std::vector<Subgroup> all;
    try {
      all = all_subgroups(T);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
      lattice_complete = false;
      all = all_cyclic_subgroups(T);
    }
    std::vector<Subgroup> ab;
    for (const auto& K : all)
      if (!K.is_trivial() && is_abelian(T, K)) ab.push_back(K);
    abelian_reps = conjugacy_reps(T, ab);
    if (!lattice_complete) return;
    std::vector<Subgroup> psubs;
    for (const auto& K : all)
      if (!K.is_trivial() && is_p_group(K, p) && !is_cyclic(T, K)) psubs.push_back(K);
    for (const auto& K : conjugacy_reps(T, psubs)) {
      std::vector<Subgroup> maximal;
      for (const auto& N : all)
        if (N.order() * p == K.order() && N.subset_of(K)) maximal.push_back(N);
      p_sections.emplace_back(K, std::move(maximal));
    }
    std::vector<Subgroup> fam;
    for (const auto& K : all) {
      if (K.order() < 4 || K.order() % 2 != 0) continue;
      long long half = K.order() / 2;
      if (p_part(half, p) != half) continue;
      fam.push_back(K);
    }
    for (const auto& K : conjugacy_reps(T, fam)) {
      FamilyEntry fe;
      fe.K = K;
      fe.emb = subgroup_as_group(T, K);
      fe.shapes = dqs_shapes(*fe.emb.group, p);
      if (fe.shapes.empty()) continue;
      fe.is_q8 = K.order() == 8 && fe.shapes.front().family == DqsFamily::Quaternion;
      families.push_back(std::move(fe));
    }
  }

  using Sink = std::function<bool(Violation)>;  // returns false to stop

  /// With `partial` set, the last segment is open: its group is where the
  /// chain currently stands and only drops already made are checked.
  bool structural(const LocalActionData& d, const Sink& emit, bool partial = false) const {
    const auto& T = *G;
    const auto& ch = d.filt.chain;
    auto bad = [&](const char* rule, const std::string& msg) {
      emit({rule, msg});
      return true;
    };
    if (d.filt.G.get() != G.get() && d.filt.G->order() != T.order())
      return !bad("chain_shape", "filtration refers to a different group");
    if (d.filt.p != p) return !bad("chain_shape", "filtration prime differs from validator prime");
    if (ch.empty()) return !bad("chain_shape", "empty chain");
    if (ch[0].from != 0) return !bad("chain_shape", "chain must start at index 0");
    for (size_t k = 0; k < ch.size(); ++k) {
      if (ch[k].group.bits().universe() != T.order() || !is_subgroup(T, ch[k].group.members()))
        return !bad("chain_shape", "segment " + std::to_string(k) + " is not a subgroup");
      if (k > 0 && ch[k].from <= ch[k - 1].from)
        return !bad("chain_shape", "start indices must increase at segment " + std::to_string(k));
      if (k > 0 && (!ch[k].group.subset_of(ch[k - 1].group) || ch[k].group.order() == ch[k - 1].group.order()))
        return !bad("chain_shape", "groups must strictly decrease at segment " + std::to_string(k));
    }
    if (ch[0].group.order() != T.order()) return !bad("chain_shape", "G_0 must be the whole group");
    if (!partial && !ch.back().group.is_trivial()) return !bad("chain_shape", "chain must end in the trivial group");
    bool abnormal = false;
    for (size_t k = 0; k < ch.size(); ++k)
      if (!is_normal(T, ch[k].group)) {
        abnormal = true;
        if (!emit({"normality", "G_" + std::to_string(ch[k].from) + " = " + members_str(ch[k].group) +
                                    " is not normal"}))
          break;
      }
    if (abnormal) return false;

    if (!P) return !bad("wild_inertia", "no normal Sylow " + std::to_string(p) + "-subgroup");
    if (!(d.filt.at(1LL) == *P))
      return !bad("wild_inertia", "G_1 = " + members_str(d.filt.at(1LL)) + " is not the Sylow subgroup");
    const auto& sp = d.split;
    if (!(sp.P == *P) || sp.C.order() * P->order() != T.order() || !is_cyclic(T, sp.C) ||
        sp.C.bits().universe() != T.order())
      return !bad("wild_inertia", "G_0/G_1 is not cyclic or the split is inconsistent");
    if (!sp.C.contains(sp.c_generator) || T.elem_order(sp.c_generator) != sp.C.order())
      return !bad("wild_inertia", "complement generator does not generate C");

    for (size_t k = 0; k + 1 < ch.size(); ++k) {
      if (ch[k + 1].from - 1 < 1) continue;
      const auto& S = ch[k].group;
      const auto& Nx = ch[k + 1].group;
      auto gens = generating_set(T, S);
      for (size_t a = 0; a < gens.size(); ++a) {
        if (!Nx.contains(T.power(gens[a], p)))
          if (!emit({"elementary_quotient", "x^p not in G_" + std::to_string(ch[k + 1].from) + " for x = " +
                                               std::to_string(gens[a])}))
            return false;
        for (size_t b = a + 1; b < gens.size(); ++b) {
          int x = gens[a], y = gens[b];
          int c = T.mul(T.mul(x, y), T.mul(T.inv(x), T.inv(y)));
          if (!Nx.contains(c))
            if (!emit({"elementary_quotient", "G_" + std::to_string(ch[k].from) + "/G_" +
                                                  std::to_string(ch[k + 1].from) + " is not abelian"}))
              return false;
        }
      }
    }
    if (!tame_module(d, emit)) return false;
    if (!hasse_arf(d, emit)) return false;
    return quotient_integrality(d, emit);
  }

  bool tame_module(const LocalActionData& d, const Sink& emit) const {
    const auto& T = *G;
    const long long m = d.split.C.order();
    if (m <= 1) return true;
    const auto& ch = d.filt.chain;
    const int c0 = d.split.c_generator;
    fp::Poly phi_m = fp::cyclotomic(m, p);
    fp::Poly acc = phi_m;
    for (size_t k = 1; k + 1 < ch.size(); ++k) {
      const auto& S = ch[k].group;
      const auto& Nx = ch[k + 1].group;
      long long b = ch[k + 1].from - 1;
      std::vector<int> coord(T.order(), -1);
      std::vector<int> listed;
      for (int x : Nx.members()) {
        coord[x] = 0;
        listed.push_back(x);
      }
      std::vector<int> basis;
      int pj = 1;
      for (int x : S.members()) {
        if (coord[x] >= 0) continue;
        basis.push_back(x);
        size_t cur = listed.size();
        int xa = 0;
        for (int a = 1; a < p; ++a) {
          xa = T.mul(xa, x);
          for (size_t t = 0; t < cur; ++t) {
            int z = T.mul(xa, listed[t]);
            if (coord[z] >= 0) continue;
            coord[z] = coord[listed[t]] + a * pj;
            listed.push_back(z);
          }
        }
        pj *= p;
      }
      if (static_cast<int>(listed.size()) != S.order()) return true;  // reported as elementary_quotient
      const size_t dim = basis.size();
      std::vector<std::vector<long long>> A(dim, std::vector<long long>(dim, 0));
      for (size_t j = 0; j < dim; ++j) {
        int code = coord[T.conjugate(c0, basis[j])];
        for (size_t r = 0; r < dim; ++r) {
          A[r][j] = code % p;
          code /= p;
        }
      }
      fp::Poly f = fp::matrix_minpoly(A, p);
      if (!fp::irreducible(f, p)) {
        return emit({"tame_module", "C acts on G_" + std::to_string(b) + "/G_" + std::to_string(b + 1) +
                                        " with reducible minimal polynomial"});
      }
      fp::Poly y = fp::x_power_mod(b, phi_m, p);
      acc = fp::gcd(acc, eval_at(f, y, phi_m, p), p);
    }
    if (d.tame) {
      long long g = gcd_ll(m, p - 1);
      long long w = fp::primitive_root(p);
      fp::Poly target(static_cast<size_t>(m / g + 1), 0);
      target[m / g] = 1;
      target[0] = (p - pow_mod(w, (p - 1) / g, p)) % p;
      acc = fp::gcd(acc, target, p);
    }
    if (fp::degree(acc) < 1)
      return emit({"tame_module", "no primitive |C|-th root of unity matches the conjugation action on the jump quotients"});
    return true;
  }

  bool hasse_arf(const LocalActionData& d, const Sink& emit) const {
    for (const auto& K : abelian_reps) {
      auto jumps = restricted_jumps(d.filt, intersection_orders(d.filt, K), K.order());
      for (const auto& j : jumps)
        if (!j.upper.is_integer())
          if (!emit({"hasse_arf", "abelian subgroup " + members_str(K) + " has upper jump " + j.upper.str()}))
            return false;
    }
    return true;
  }

  bool quotient_integrality(const LocalActionData& d, const Sink& emit) const {
    const auto& ch = d.filt.chain;
    const long long n = G->order();
    std::vector<Rational> upper;  // phi at the end of each segment
    {
      Rational phi = 0;
      for (size_t k = 0; k + 1 < ch.size(); ++k) {
        long long lo = std::max<long long>(ch[k].from - 1, 0);
        long long hi = std::max<long long>(ch[k + 1].from - 1, 0);
        phi += Rational(hi - lo) * Rational(ch[k].group.order(), n);
        upper.push_back(phi);
      }
    }
    for (const auto& N : normal_proper) {
      const long long q = n / N.order();
      Rational b = 0, prev = 0;
      long long prev_img = -1;
      std::vector<std::pair<Rational, long long>> img;  // (jump, image order on that range)
      for (size_t k = 0; k + 1 < ch.size(); ++k) {
        long long io = ch[k].group.order() / (ch[k].group.bits() & N.bits()).count();
        if (io == 1) break;
        if (io == prev_img) img.back().first = upper[k];
        else img.push_back({upper[k], io});
        prev_img = io;
      }
      for (const auto& [v, io] : img) {
        b += (v - prev) * Rational(q / io);
        prev = v;
        if (!b.is_integer()) {
          if (!emit({"quotient_integrality", "G/N has lower jump " + b.str() + " for N = " + members_str(N)}))
            return false;
          break;
        }
      }
    }
    return true;
  }

  bool arithmetic(const LocalActionData& d, const Sink& emit, bool partial, bool strict) const {
    const auto& T = *G;
    const long long m = d.split.C.order();
    const int c0 = d.split.c_generator;
    if (strict && !strict_rules(d, emit)) return false;
    for (const auto& Gam : cyclic_p_reps) {
      if (partial && Gam.subset_of(d.filt.chain.back().group)) continue;
      long long i = iota(d.filt, Gam) - 1;
      if (i % p == 0)
        if (!emit({"first_jump_prime_to_p", "subgroup " + members_str(Gam) + " has first jump " + std::to_string(i)}))
          return false;
      if (m <= 1) continue;
      int gam = cyclic_generator(T, Gam);
      long long g = gcd_ll(m, p - 1);
      long long w = fp::primitive_root(p);
      int c = 0;
      for (long long s = 1; s < m; ++s) {
        c = T.mul(c, c0);
        int conj = T.conjugate(c, gam);
        if (!Gam.contains(conj)) continue;
        long long r = 1;
        for (int x = gam; x != conj; x = T.mul(x, gam)) ++r;
        long long si = s * i;
        bool ok = p == 2 ? si % m == 0 : si % (m / g) == 0;
        if (ok && d.tame) {
          long long val = pow_mod(w, ((p - 1) / g) * ((si / (m / g)) % g), p);
          ok = val == mod_ll(r, p);
        }
        if (!ok)
          if (!emit({"tame_values", "theta_0^" + std::to_string(i) + " at c0^" + std::to_string(s) +
                                        " is incompatible with conjugation on " + members_str(Gam)}))
            return false;
      }
    }
    return partial || families_check(d, emit);
  }

  /// Necessary conditions from the theory of Artin-Schreier-Witt extensions:
  /// every section K/N of order p has an integral upper jump prime to p, and
  /// consecutive upper jumps of a cyclic subgroup satisfy u' >= p u with
  /// p not dividing u' unless u' = p u.
  bool strict_rules(const LocalActionData& d, const Sink& emit) const {
    for (const auto& [K, maximal] : p_sections) {
      for (const auto& N : maximal) {
        Rational phi = 0;
        const auto& ch = d.filt.chain;
        for (size_t k = 0; k + 1 < ch.size(); ++k) {
          long long lo = std::max<long long>(ch[k].from - 1, 0);
          long long hi = std::max<long long>(ch[k + 1].from - 1, 0);
          phi += Rational(hi - lo) * Rational((ch[k].group.bits() & K.bits()).count(), K.order());
          if (!(ch[k + 1].group.bits() & K.bits()).subset_of(N.bits())) continue;
          if (!phi.is_integer() || phi.to_integer() % p == 0)
            if (!emit({"quotient_jump_prime_to_p", "K/N has upper jump " + phi.str() + " for K = " +
                                                       members_str(K) + ", N = " + members_str(N)}))
              return false;
          break;
        }
      }
    }
    for (const auto& Gam : cyclic_p_reps) {
      if (Gam.order() < p * p) continue;
      auto jumps = restricted_jumps(d.filt, intersection_orders(d.filt, Gam), Gam.order());
      for (size_t j = 0; j + 1 < jumps.size(); ++j) {
        const Rational& u = jumps[j].upper;
        const Rational& w = jumps[j + 1].upper;
        Rational pu = u * Rational(p);
        bool ok = w >= pu;
        if (ok && !(w == pu) && w.is_integer() && w.to_integer() % p == 0) ok = false;
        if (!ok)
          if (!emit({"upper_growth", "cyclic subgroup " + members_str(Gam) + " has upper jumps " + u.str() + ", " +
                                         w.str()}))
            return false;
      }
    }
    return true;
  }

  bool families_check(const LocalActionData& d, const Sink& emit) const {
    const auto& f = d.filt;
    const auto& ch = f.chain;
    std::vector<long long> count(G->order(), 0);
    for (int x = 1; x < G->order(); ++x) {
      size_t k = 0;
      while (k < ch.size() && ch[k].group.contains(x)) ++k;
      count[x] = ch[k].from;
    }
    for (const auto& fe : families) {
      auto ko = intersection_orders(f, fe.K);
      Rational a_e = 0;
      for (size_t k = 0; k + 1 < ch.size(); ++k) a_e += Rational(ch[k + 1].from - ch[k].from) * Rational(ko[k] - 1);
      bool q8_special = false;
      if (fe.is_q8) {
        q8_special = true;
        for (long long i = 0; i <= 4; ++i) {
          int want = i <= 1 ? 8 : (i <= 3 ? 2 : 1);
          if ((f.at(i).bits() & fe.K.bits()).count() != want) q8_special = false;
        }
      }
      for (const auto& sh : fe.shapes) {
        const std::string tag = std::string(dqs_family_name(sh.family)) + " subgroup " + members_str(fe.K);
        Subgroup H = fe.emb.image(sh.H);
        auto jumps = restricted_jumps(f, intersection_orders(f, H), H.order());
        if (static_cast<int>(jumps.size()) != sh.n) continue;
        std::vector<long long> iv;
        bool integral = true;
        for (size_t j = 0; j < jumps.size(); ++j) {
          Rational gap = j ? jumps[j].upper - jumps[j - 1].upper : jumps[j].upper;
          if (!gap.is_integer()) integral = false;
          else iv.push_back(gap.to_integer());
        }
        if (!integral) continue;
        const int n = sh.n;
        auto report = [&](const char* rule, const std::string& msg) { return emit({rule, msg + " (" + tag + ")"}); };
        if (iv[0] % 2 == 0)
          if (!report("i0_odd", "i0 must be odd, got " + std::to_string(iv[0]))) return false;
        for (int j = 1; j < n; ++j) {
          bool last = j == n - 1;
          if (iv[j] % 2 == 0) continue;
          if (sh.family == DqsFamily::Dihedral || !last) {
            if (!report("i_j_even", "i_" + std::to_string(j) + " must be even, got " + std::to_string(iv[j])))
              return false;
          } else if (!q8_special) {
            if (!report("i_last_even", "i_" + std::to_string(j) + " must be even, got " + std::to_string(iv[j])))
              return false;
          }
        }
        if (sh.p != 2) continue;
        long long dv[3];
        bool d_ok = true;
        for (int t = 0; t < 3; ++t) {
          Rational sum = a_e;
          for (int x : sh.M[t].members())
            if (x != 0) sum -= Rational(count[fe.emb.embed[x]]);
          Rational di = sum * Rational(2, fe.K.order());
          if (!di.is_integer() || di.to_integer() <= 0 || di.to_integer() % 2 != 0) {
            d_ok = false;
            if (!report("d_even", "d_" + std::to_string(t) + " = " + di.str() + " must be a positive even integer"))
              return false;
          } else {
            dv[t] = di.to_integer();
          }
        }
        if (!d_ok) continue;
        long long s[3] = {dv[0], dv[1], dv[2]};
        std::sort(s, s + 3);
        if (!(s[1] == s[2]))
          if (!report("d_shape", "d = [" + std::to_string(dv[0]) + "," + std::to_string(dv[1]) + "," +
                                     std::to_string(dv[2]) + "] must be equal or two equal and the third smaller"))
            return false;
        if (sh.family == DqsFamily::Quaternion && !q8_special && iv[n - 1] % 2 == 0 && iv[n - 1] < dv[0])
          if (!report("quaternion_bound", "i_" + std::to_string(n - 1) + " = " + std::to_string(iv[n - 1]) +
                                              " is below d_0 = " + std::to_string(dv[0])))
            return false;
      }
    }
    return true;
  }

  void run(const LocalActionData& d, ValidationLevel level, const Sink& emit) const {
    if (!structural(d, emit)) return;
    if (level != ValidationLevel::Structural) arithmetic(d, emit, false, level == ValidationLevel::Strict);
  }

  void run_prefix(const LocalActionData& d, ValidationLevel level, const Sink& emit) const {
    if (!structural(d, emit, true)) return;
    if (level != ValidationLevel::Structural) arithmetic(d, emit, true, level == ValidationLevel::Strict);
  }
};

Validator::Validator(GroupPtr G, int p) : impl_(std::make_unique<Impl>(std::move(G), p)) {}
Validator::~Validator() = default;
Validator::Validator(Validator&&) noexcept = default;

std::vector<Violation> Validator::check(const LocalActionData& data, ValidationLevel level) const {
  std::vector<Violation> out;
  impl_->run(data, level, [&](Violation v) {
    out.push_back(std::move(v));
    return true;
  });
  return out;
}

std::optional<Violation> Validator::first_violation(const LocalActionData& data, ValidationLevel level) const {
  std::optional<Violation> out;
  impl_->run(data, level, [&](Violation v) {
    out = std::move(v);
    return false;
  });
  return out;
}

std::optional<Violation> Validator::prefix_violation(const LocalActionData& prefix, ValidationLevel level) const {
  std::optional<Violation> out;
  impl_->run_prefix(prefix, level, [&](Violation v) {
    out = std::move(v);
    return false;
  });
  return out;
}

}  // namespace obstr
