#include "ght/rational.hpp"

#include <bit>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ght {

namespace {

// Binary gcd; 128-bit division is a library call and dominates otherwise.
std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  constexpr auto lim = static_cast<__int128>(std::numeric_limits<std::uint64_t>::max());
  if (a <= lim && b <= lim) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (d != 1 && fits64(n) && fits64(d)) {
    auto n64 = static_cast<std::int64_t>(n);
    auto d64 = static_cast<std::int64_t>(d);
    const auto g = static_cast<std::int64_t>(gcd64(n64 < 0 ? 0 - static_cast<std::uint64_t>(n64) : n64, d64));
    if (g > 1) {
      n64 /= g;
      d64 /= g;
    }
    Rational r;
    r.num_ = n64;
    r.den_ = n64 == 0 ? 1 : d64;
    return r;
  }
  if (d != 1) {
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  if (n == 0) d = 1;
  if (!fits64(n) || !fits64(d)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) {
    Rational r;
    if (__builtin_add_overflow(a.num_, b.num_, &r.num_)) throw std::overflow_error("rational overflow");
    return r;
  }
  if (a.den_ == b.den_) {
    return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
  }
  {
    // gcd on the (small) denominators only; the result needs at most one
    // further gcd against d1.
    const auto d1 = static_cast<std::int64_t>(gcd64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_)));
    std::int64_t x = 0, y = 0, t = 0;
    if (!__builtin_mul_overflow(a.num_, b.den_ / d1, &x) && !__builtin_mul_overflow(b.num_, a.den_ / d1, &y) &&
        !__builtin_add_overflow(x, y, &t)) {
      const std::uint64_t ut = t < 0 ? 0 - static_cast<std::uint64_t>(t) : static_cast<std::uint64_t>(t);
      const auto d2 = d1 == 1 ? std::int64_t{1} : static_cast<std::int64_t>(gcd64(ut, static_cast<std::uint64_t>(d1)));
      std::int64_t den = 0;
      if (!__builtin_mul_overflow(a.den_ / d1, b.den_ / d2, &den)) {
        Rational r;
        r.num_ = t / d2;
        r.den_ = r.num_ == 0 ? 1 : den;
        return r;
      }
    }
  }
  const __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  const __int128 d = static_cast<__int128>(a.den_) * b.den_;
  return Rational::from_wide(n, d);
}

Rational operator-(const Rational& a) {
  if (a.num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational overflow");
  Rational r = a;
  r.num_ = -a.num_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) {
    Rational r;
    if (__builtin_mul_overflow(a.num_, b.num_, &r.num_)) throw std::overflow_error("rational overflow");
    return r;
  }
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational Rational::inverse() const {
  if (num_ == 0) throw std::domain_error("inverse of zero rational");
  return from_wide(den_, num_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto n = parse_int(text.substr(0, slash), text);
  const auto d = parse_int(text.substr(slash + 1), text);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return {n, d};
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num();
  if (r.den() != 1) os << '/' << r.den();
  return os;
}

}  // namespace ght
