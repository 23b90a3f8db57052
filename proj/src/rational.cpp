#include "obstr/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace obstr {

namespace mp = boost::multiprecision;

struct Rational::Big {
  mp::cpp_rational v;
};

namespace {

__int128 abs128(__int128 x) { return x < 0 ? -x : x; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mp::cpp_int to_cpp_int(__int128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  mp::cpp_int hi = static_cast<std::uint64_t>(u >> 64);
  mp::cpp_int r = (hi << 64) + static_cast<std::uint64_t>(u & ~std::uint64_t{0});
  return neg ? -r : r;
}

// The small form keeps both parts strictly inside +-2^126 so that negation
// and the cross products below can be detected with the builtins alone.
const mp::cpp_int kSmallLimit = mp::cpp_int(1) << 126;

bool small_ok(__int128 x) {
  constexpr __int128 lim = static_cast<__int128>(1) << 126;
  return x > -lim && x < lim;
}

bool fits_small(const mp::cpp_int& x) { return mp::abs(x) < kSmallLimit; }

__int128 to_i128(const mp::cpp_int& x) {
  mp::cpp_int a = mp::abs(x);
  std::uint64_t lo = static_cast<std::uint64_t>(a & mp::cpp_int(~std::uint64_t{0}));
  std::uint64_t hi = static_cast<std::uint64_t>(a >> 64);
  __int128 r = (static_cast<__int128>(hi) << 64) | lo;
  return x < 0 ? -r : r;
}

std::string i128_str(__int128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {}

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  normalize_small();
}

Rational::Rational(std::shared_ptr<const Big> big) : big_(std::move(big)) {}

void Rational::normalize_small() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  __int128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_big(const Big& b) {
  const mp::cpp_int& n = mp::numerator(b.v);
  const mp::cpp_int& d = mp::denominator(b.v);
  if (fits_small(n) && fits_small(d)) {
    Rational r;
    r.num_ = to_i128(n);
    r.den_ = to_i128(d);
    return r;
  }
  return Rational(std::make_shared<const Big>(b));
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big{mp::cpp_rational(to_cpp_int(num_), to_cpp_int(den_))};
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  mp::cpp_int n, d = 1;
  try {
    n = mp::cpp_int(text.substr(0, slash));
    if (slash != std::string::npos) d = mp::cpp_int(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  return from_big(Big{mp::cpp_rational(n, d)});
}

Rational Rational::operator-() const {
  if (big_) return from_big(Big{-big_->v});
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    __int128 a, b, d;
    if (!__builtin_mul_overflow(num_, o.den_, &a) && !__builtin_mul_overflow(o.num_, den_, &b) &&
        !__builtin_add_overflow(a, b, &a) && !__builtin_mul_overflow(den_, o.den_, &d) &&
        small_ok(a) && small_ok(d)) {
      num_ = a;
      den_ = d;
      normalize_small();
      return *this;
    }
  }
  *this = from_big(Big{to_big().v + o.to_big().v});
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    __int128 g1 = gcd128(num_, o.den_), g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 n, d;
    if (!__builtin_mul_overflow(num_ / g1, o.num_ / g2, &n) &&
        !__builtin_mul_overflow(den_ / g2, o.den_ / g1, &d) &&
        small_ok(n) && small_ok(d)) {
      num_ = n;
      den_ = d;
      normalize_small();
      return *this;
    }
  }
  *this = from_big(Big{to_big().v * o.to_big().v});
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.normalize_small();
    return *this *= inv;
  }
  *this = from_big(Big{to_big().v / o.to_big().v});
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.to_big().v == b.to_big().v;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int Rational::sign() const {
  if (big_) return big_->v.sign();
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

bool Rational::is_integer() const {
  if (big_) return mp::denominator(big_->v) == 1;
  return den_ == 1;
}

long long Rational::to_integer() const {
  if (!is_integer()) throw std::overflow_error("Rational: not an integer: " + str());
  if (big_ || num_ > std::numeric_limits<long long>::max() || num_ < std::numeric_limits<long long>::min())
    throw std::overflow_error("Rational: integer out of range");
  return static_cast<long long>(num_);
}

long long Rational::floor() const {
  if (big_) throw std::overflow_error("Rational: floor out of range");
  __int128 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  if (q > std::numeric_limits<long long>::max() || q < std::numeric_limits<long long>::min())
    throw std::overflow_error("Rational: floor out of range");
  return static_cast<long long>(q);
}

double Rational::to_double() const {
  if (big_) return big_->v.convert_to<double>();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::numerator_str() const {
  if (big_) return mp::numerator(big_->v).str();
  return i128_str(num_);
}

std::string Rational::denominator_str() const {
  if (big_) return mp::denominator(big_->v).str();
  return i128_str(den_);
}

std::string Rational::str() const {
  std::string d = denominator_str();
  if (d == "1") return numerator_str();
  return numerator_str() + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long pow_mod(long long a, long long e, long long m) {
  if (m == 1) return 0;
  __int128 base = mod_ll(a, m), acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<long long>(acc);
}

}  // namespace obstr
