#pragma once
// Dense polynomials over Z/p, coefficients stored low degree first.

#include <vector>

namespace obstr::fp {

using Poly = std::vector<long long>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly mul(const Poly& a, const Poly& b, long long p);
Poly sub(const Poly& a, const Poly& b, long long p);
/// Remainder of a modulo a non-zero b.
Poly rem(Poly a, const Poly& b, long long p);
/// Quotient of a by b (exact or not).
Poly quo(Poly a, const Poly& b, long long p);
Poly monic(Poly a, long long p);
Poly gcd(Poly a, Poly b, long long p);
/// x^e mod f.
Poly x_power_mod(long long e, const Poly& f, long long p);
/// f(x^j).
Poly compose_power(const Poly& f, long long j);
/// Cyclotomic polynomial Phi_m reduced mod p.
Poly cyclotomic(long long m, long long p);
/// Rabin irreducibility test for a monic polynomial of positive degree.
bool irreducible(const Poly& f, long long p);
/// Minimal polynomial of a square matrix over Z/p (monic).
Poly matrix_minpoly(const std::vector<std::vector<long long>>& A, long long p);
long long inv_mod(long long a, long long p);
/// Least primitive root modulo the prime p.
long long primitive_root(long long p);

}  // namespace obstr::fp
