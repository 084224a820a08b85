#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace ght {

/// Exact rational with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Intermediate
/// products are formed in 128 bits; a result that does not fit back into
/// 64 bits throws std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  [[nodiscard]] Rational inverse() const;
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q" form; integers are written "p/1".
  [[nodiscard]] std::string str() const;
  /// Accepts "p/q" or a bare integer "p"; throws std::invalid_argument.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ght

template <>
struct std::hash<ght::Rational> {
  std::size_t operator()(const ght::Rational& r) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(r.num());
    const auto h2 = std::hash<std::int64_t>{}(r.den());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
