#pragma once

// Coefficient rings for GBH matrices.
//
// A Ring is a cheap-to-copy handle on an immutable context. Elements are
// plain values carrying no back-pointer to their ring; all arithmetic goes
// through the context so that cyclotomic reduction and field moduli live in
// one place. Every operation is pure and safe to call concurrently.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ght/rational.hpp"

namespace ght {

/// Domain errors raised by ring, matrix and construction code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind { cyclotomic, rationals, prime_field, extension_field, complex_float };

struct RingSpec {
  RingKind kind = RingKind::rationals;
  /// Root-of-unity order for the cyclotomic backend.
  std::uint32_t w = 1;
  /// Characteristic of the field backends.
  std::int64_t p = 0;
  /// c0 + c1*y + c2*y^2 with c2 = 1, for the extension field.
  std::array<std::int64_t, 3> ext_poly{1, 1, 1};
  /// Absolute comparison tolerance; complex backend only.
  std::optional<double> tol;

  static RingSpec cyclotomic(std::uint32_t w) { return {RingKind::cyclotomic, w, 0, {1, 1, 1}, std::nullopt}; }
  static RingSpec rationals() { return {}; }
  static RingSpec prime_field(std::int64_t p) { return {RingKind::prime_field, 1, p, {1, 1, 1}, std::nullopt}; }
  static RingSpec extension_field(std::int64_t p, std::array<std::int64_t, 3> poly = {1, 1, 1}) {
    return {RingKind::extension_field, 1, p, poly, std::nullopt};
  }
  static RingSpec complex_float(double tol = 1e-9) { return {RingKind::complex_float, 1, 0, {1, 1, 1}, tol}; }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

  /// Compact text form: rationals, cyclotomic:W, prime:P, gf:P:C0,C1, complex[:TOL].
  [[nodiscard]] std::string str() const;
  static RingSpec parse(const std::string& text);
};

/// Coefficients of a + b*y in GF(p) or GF(p^2); b = 0 for the prime field.
struct FieldValue {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  friend bool operator==(const FieldValue&, const FieldValue&) = default;
};

/// Residue modulo the cyclotomic polynomial, low degree first, length deg(Phi_w).
using CycloCoeffs = std::vector<Rational>;

struct Element {
  std::variant<Rational, CycloCoeffs, FieldValue, std::complex<double>> value;

  /// Structural equality. On exact backends this is ring equality.
  friend bool operator==(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Coefficients of the w-th cyclotomic polynomial, low degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t w);

class Ring {
 public:
  /// Throws Error for w = 0, non-prime p, or a reducible extension polynomial.
  explicit Ring(const RingSpec& spec);

  [[nodiscard]] const RingSpec& spec() const;
  [[nodiscard]] RingKind kind() const { return spec().kind; }
  [[nodiscard]] bool is_exact() const { return kind() != RingKind::complex_float; }
  /// 0 for characteristic-zero backends.
  [[nodiscard]] std::int64_t characteristic() const;
  /// Payload length of a cyclotomic element (deg Phi_w); 1 otherwise.
  [[nodiscard]] std::size_t degree() const;
  /// Exponent of the finite root-of-unity group when known (lcm(2, w) for
  /// cyclotomic, 2 for rationals, q - 1 for fields), 2 for complex.
  [[nodiscard]] std::uint64_t unit_root_exponent() const;
  [[nodiscard]] const std::vector<std::int64_t>& modulus() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.impl_ == b.impl_ || a.spec() == b.spec(); }

  [[nodiscard]] Element zero() const;
  [[nodiscard]] Element one() const;
  [[nodiscard]] Element from_int(std::int64_t n) const;
  /// Embeds p/q; throws when q is not invertible in the ring.
  [[nodiscard]] Element from_rational(const Rational& r) const;
  /// Residue class of x (cyclotomic) or y (extension field).
  [[nodiscard]] Element generator() const;
  [[nodiscard]] Element from_complex(std::complex<double> z) const;

  [[nodiscard]] Element add(const Element& a, const Element& b) const;
  [[nodiscard]] Element sub(const Element& a, const Element& b) const;
  [[nodiscard]] Element neg(const Element& a) const;
  [[nodiscard]] Element mul(const Element& a, const Element& b) const;
  /// acc += b
  void add_to(Element& acc, const Element& b) const;
  /// acc += a * b
  void mul_add(Element& acc, const Element& a, const Element& b) const;
  [[nodiscard]] Element inv(const Element& a) const;
  [[nodiscard]] Element pow(const Element& a, std::int64_t k) const;
  [[nodiscard]] bool eq(const Element& a, const Element& b) const;
  [[nodiscard]] bool is_zero(const Element& a) const;
  [[nodiscard]] bool is_one(const Element& a) const { return eq(a, one()); }
  [[nodiscard]] bool is_unit(const Element& a) const;
  [[nodiscard]] Element int_embed(std::int64_t n) const { return from_int(n); }
  /// Inverse of n*1; throws when the characteristic divides n.
  [[nodiscard]] Element int_inverse(std::int64_t n) const;

  /// Deterministic element of exact multiplicative order w.
  ///
  /// Cyclotomic and complex backends return the element that maps to
  /// exp(-2*pi*i/w) under zeta_w -> exp(-2*pi*i/w); fields return the first
  /// element of order w in index order c0 + c1*p.
  [[nodiscard]] Element root_of_unity(std::uint64_t w) const;
  [[nodiscard]] bool has_root_of_unity(std::uint64_t w) const;
  /// Least k in 1..bound with a^k = 1, if any.
  [[nodiscard]] std::optional<std::uint64_t> multiplicative_order(const Element& a, std::uint64_t bound) const;

  /// Complex evaluation zeta_w -> exp(-2*pi*i/w). Throws for field backends.
  [[nodiscard]] std::complex<double> to_complex(const Element& a) const;
  /// True when a is a rational number (payload in the prime subring's fraction field).
  [[nodiscard]] std::optional<Rational> as_rational(const Element& a) const;
  /// True when the element lies in the payload alternative used by this ring.
  [[nodiscard]] bool contains(const Element& a) const;

  /// Human-readable form, e.g. "1/2 + 3*x^2" or "2+1i".
  [[nodiscard]] std::string format(const Element& a) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ght
