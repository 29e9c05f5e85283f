#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidity {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number.
///
/// All distance values in the toolkit live in this type: triangle-equality
/// tests are decidable with no tolerance, and parsing a finite decimal string
/// round-trips exactly. Values whose reduced numerator/denominator fit in
/// 62 bits are stored inline; anything larger spills into an arbitrary
/// precision representation transparently.
class Scalar {
public:
  Scalar() noexcept : num_(0), den_(1) {}
  Scalar(int v) noexcept : num_(v), den_(1) {}
  Scalar(long v) noexcept : num_(v), den_(1) {}
  Scalar(long long v) noexcept : num_(v), den_(1) {}

  /// num/den, den != 0. Result is normalized (den > 0, gcd reduced).
  static Scalar fraction(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    __int128 n = num, d = den;
    if (d < 0) { n = -n; d = -d; }
    return from_i128(n, d);
  }

  static Scalar fraction(BigInt num, BigInt den) {
    if (den.is_zero()) throw std::domain_error("Scalar: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return from_big(std::move(num), std::move(den));
  }

  /// Accepts "123", "-4/5", "0.35", "-12.", ".5".
  static Scalar parse(std::string_view text);

  /// den == 1 prints as a plain integer, otherwise "num/den".
  std::string str() const {
    if (!big_) {
      if (den_ == 1) return std::to_string(num_);
      return std::to_string(num_) + "/" + std::to_string(den_);
    }
    if (big_->den == 1) return big_->num.str();
    return big_->num.str() + "/" + big_->den.str();
  }

  BigInt numerator() const { return big_ ? big_->num : BigInt(num_); }
  BigInt denominator() const { return big_ ? big_->den : BigInt(den_); }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->den == 1 : den_ == 1; }
  int sign() const {
    if (big_) return big_->num < 0 ? -1 : (big_->num.is_zero() ? 0 : 1);
    return num_ < 0 ? -1 : (num_ == 0 ? 0 : 1);
  }

  double to_double() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_)
      return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    BigInt an = a.numerator(), ad = a.denominator();
    BigInt bn = b.numerator(), bd = b.denominator();
    return from_big(an * bd + bn * ad, ad * bd);
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_)
      return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    BigInt an = a.numerator(), ad = a.denominator();
    BigInt bn = b.numerator(), bd = b.denominator();
    return from_big(an * bd - bn * ad, ad * bd);
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_)
      return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    return from_big(a.numerator() * b.numerator(),
                    a.denominator() * b.denominator());
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (!a.big_ && !b.big_) {
      i128 n = i128(a.num_) * b.den_;
      i128 d = i128(a.den_) * b.num_;
      if (d < 0) { n = -n; d = -d; }
      return from_i128(n, d);
    }
    BigInt n = a.numerator() * b.denominator();
    BigInt d = a.denominator() * b.numerator();
    if (d < 0) { n = -n; d = -d; }
    return from_big(std::move(n), std::move(d));
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (!r.big_) {
      r.num_ = -r.num_;
    } else {
      r = from_big(-big_->num, big_->den);
    }
    return r;
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Three-way comparison: negative, zero or positive.
  static int compare(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      i128 lhs = i128(a.num_) * b.den_;
      i128 rhs = i128(b.num_) * a.den_;
      return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    }
    BigInt lhs = a.numerator() * b.denominator();
    BigInt rhs = b.numerator() * a.denominator();
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
  }

private:
  using i128 = __int128;
  using u128 = unsigned __int128;

  struct BigRep {
    BigInt num, den;
  };

  // Demotion bound: keeping |num|, den strictly below 2^62 leaves headroom so
  // cross products and their sums never overflow a signed 128-bit integer.
  static constexpr std::int64_t kSmallBound = std::int64_t(1) << 62;

  std::int64_t num_, den_;
  std::shared_ptr<const BigRep> big_;

  static u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

  static BigInt big_from_u128(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    BigInt lo = static_cast<std::uint64_t>(v);
    return (hi << 64) | lo;
  }

  // d > 0 required.
  static Scalar from_i128(i128 n, i128 d) {
    Scalar r;
    if (n == 0) return r;
    u128 un = uabs(n), ud = u128(d);
    u128 g = gcd_u128(un, ud);
    un /= g;
    ud /= g;
    if (un < u128(kSmallBound) && ud < u128(kSmallBound)) {
      r.num_ = n < 0 ? -std::int64_t(un) : std::int64_t(un);
      r.den_ = std::int64_t(ud);
      return r;
    }
    BigInt bn = big_from_u128(un);
    if (n < 0) bn = -bn;
    r.big_ = std::make_shared<BigRep>(BigRep{std::move(bn), big_from_u128(ud)});
    r.num_ = 0;
    r.den_ = 1;
    return r;
  }

  // den > 0 required.
  static Scalar from_big(BigInt num, BigInt den) {
    Scalar r;
    if (num.is_zero()) return r;
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    num /= g;
    den /= g;
    if (num > -kSmallBound && num < kSmallBound && den < kSmallBound) {
      r.num_ = num.convert_to<std::int64_t>();
      r.den_ = den.convert_to<std::int64_t>();
      return r;
    }
    r.big_ = std::make_shared<BigRep>(BigRep{std::move(num), std::move(den)});
    r.num_ = 0;
    r.den_ = 1;
    return r;
  }

  friend Scalar abs(const Scalar& s);
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// base^exp by repeated squaring (exp >= 0).
inline Scalar pow(const Scalar& base, std::uint64_t exp) {
  Scalar result(1), acc = base;
  while (exp != 0) {
    if (exp & 1) result *= acc;
    exp >>= 1;
    if (exp != 0) acc *= acc;
  }
  return result;
}

inline Scalar Scalar::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Scalar::parse: empty string");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::string int_part, frac_part, den_part;
  bool saw_dot = false, saw_slash = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (is_digit(c)) {
      (saw_slash ? den_part : (saw_dot ? frac_part : int_part)).push_back(c);
    } else if (c == '.' && !saw_dot && !saw_slash) {
      saw_dot = true;
    } else if (c == '/' && !saw_slash && !saw_dot) {
      saw_slash = true;
    } else {
      throw std::invalid_argument("Scalar::parse: bad character in \"" +
                                  std::string(text) + "\"");
    }
  }
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("Scalar::parse: no digits in \"" +
                                std::string(text) + "\"");
  if (saw_slash && den_part.empty())
    throw std::invalid_argument("Scalar::parse: missing denominator in \"" +
                                std::string(text) + "\"");

  BigInt num(int_part.empty() ? "0" : int_part);
  BigInt den(1);
  if (saw_dot && !frac_part.empty()) {
    for (char c : frac_part) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else if (saw_slash) {
    den = BigInt(den_part);
    if (den.is_zero())
      throw std::invalid_argument("Scalar::parse: zero denominator");
  }
  if (negative) num = -num;
  return from_big(std::move(num), std::move(den));
}

inline double Scalar::to_double() const {
  if (!big_) return double(num_) / double(den_);
  // Shift both parts into double range before dividing; only used for
  // statistics and CSV output, never for exact decisions.
  BigInt n = big_->num < 0 ? BigInt(-big_->num) : big_->num;
  BigInt d = big_->den;
  std::size_t bn = boost::multiprecision::msb(n);
  std::size_t bd = boost::multiprecision::msb(d);
  std::size_t top = bn > bd ? bn : bd;
  if (top > 960) {
    std::size_t shift = top - 960;
    n >>= shift;
    d >>= shift;
    if (d.is_zero()) return big_->num < 0 ? -HUGE_VAL : HUGE_VAL;
  }
  double r = n.convert_to<double>() / d.convert_to<double>();
  return big_->num < 0 ? -r : r;
}

}  // namespace rigidity
