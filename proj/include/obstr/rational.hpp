#pragma once
/**
 * @file rational.hpp
 * @brief Exact rational numbers with a 128-bit fast path.
 *
 * Values live in a reduced __int128 numerator/denominator pair. Any
 * operation that would overflow transparently promotes to an arbitrary
 * precision representation and demotes again when the result fits.
 */

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace obstr {

class Rational {
 public:
  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  /// Parses "a", "-a" or "a/b" (decimal, arbitrary length).
  static Rational parse(const std::string& text);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  /// True when the value is held in the arbitrary precision form.
  bool is_big() const { return static_cast<bool>(big_); }

  /// Integer value; throws std::overflow_error if not an integer in range.
  long long to_integer() const;
  /// Largest integer not exceeding the value; throws if out of range.
  long long floor() const;
  double to_double() const;

  std::string numerator_str() const;
  std::string denominator_str() const;
  /// Reduced "num/den", or just "num" when the denominator is 1.
  std::string str() const;

  struct Big;

 private:
  explicit Rational(std::shared_ptr<const Big> big);
  void normalize_small();
  static Rational from_big(const Big& b);
  Big to_big() const;

  __int128 num_ = 0;
  __int128 den_ = 1;
  std::shared_ptr<const Big> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
/// Non-negative residue of a mod m (m > 0).
long long mod_ll(long long a, long long m);
/// a^e mod m for e >= 0, m > 0.
long long pow_mod(long long a, long long e, long long m);

}  // namespace obstr
