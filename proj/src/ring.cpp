#include "ght/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace ght {

namespace {

using IntPoly = std::vector<std::int64_t>;

// Quotient of a by monic b; the division is expected to be exact.
IntPoly divide_exact_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const std::int64_t c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  for (std::size_t k = 0; k < db; ++k) {
    if (a[k] != 0) throw Error("cyclotomic division left a remainder");
  }
  return q;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t w) {
  if (w == 0) throw Error("cyclotomic order must be positive");
  IntPoly num(w + 1, 0);
  num[0] = -1;
  num[w] = 1;
  for (std::uint32_t d = 1; d < w; ++d) {
    if (w % d == 0) num = divide_exact_monic(std::move(num), cyclotomic_polynomial(d));
  }
  return num;
}

// ---------------------------------------------------------------------------

struct Ring::Impl {
  RingSpec spec;
  IntPoly phi;                        // cyclotomic modulus, monic
  std::size_t deg = 1;                // payload length
  std::uint64_t mu = 2;               // root-of-unity group exponent
  std::vector<Element> gen_powers;    // canonical generator of the root group, powers 0..mu-1
  std::vector<std::complex<double>> zeta_powers;
  std::int64_t q = 0;                 // field size

  // -- cyclotomic helpers --
  CycloCoeffs reduce(std::vector<Rational> c) const {
    for (std::size_t k = c.size(); k-- > deg;) {
      const Rational lead = c[k];
      if (lead.is_zero()) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (phi[j] != 0) c[k - deg + j] -= lead * Rational(phi[j]);
      }
      c[k] = Rational{};
    }
    c.resize(deg);
    return c;
  }

  CycloCoeffs cyclo_mul(const CycloCoeffs& a, const CycloCoeffs& b) const {
    std::vector<Rational> prod(2 * deg - 1);
    for (std::size_t i = 0; i < deg; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (!b[j].is_zero()) prod[i + j] += a[i] * b[j];
      }
    }
    return reduce(std::move(prod));
  }

  CycloCoeffs cyclo_inv(const CycloCoeffs& a) const {
    // Fast path: a = c * g^j for a root of unity g^j.
    for (std::uint64_t j = 0; j < mu; ++j) {
      const auto& t = std::get<CycloCoeffs>(gen_powers[j].value);
      std::size_t k0 = 0;
      while (k0 < deg && t[k0].is_zero()) ++k0;
      if (k0 == deg || a[k0].is_zero()) continue;
      const Rational c = a[k0] / t[k0];
      bool match = true;
      for (std::size_t k = 0; k < deg && match; ++k) match = (a[k] == c * t[k]);
      if (!match) continue;
      CycloCoeffs out = std::get<CycloCoeffs>(gen_powers[(mu - j) % mu].value);
      const Rational ci = c.inverse();
      for (auto& x : out) x *= ci;
      return out;
    }
    // a^{-1} = (product of the other Galois conjugates) / N(a). Working with
    // conjugates keeps coefficients near the size of the norm, whereas a
    // Euclidean remainder sequence over Q grows far past it.
    const auto w = spec.w;
    std::vector<CycloCoeffs> xpow(w, CycloCoeffs(deg));
    {
      std::vector<Rational> mono(deg);
      mono[0] = Rational(1);
      for (std::uint32_t m = 0; m < w; ++m) {
        xpow[m] = mono;
        std::vector<Rational> next(deg + 1);
        for (std::size_t k = 0; k < deg; ++k) next[k + 1] = mono[k];
        mono = reduce(std::move(next));
      }
    }
    auto conjugate = [&](std::uint32_t k) {
      CycloCoeffs out(deg);
      for (std::size_t j = 0; j < deg; ++j) {
        if (a[j].is_zero()) continue;
        const auto& t = xpow[(j * k) % w];
        for (std::size_t i = 0; i < deg; ++i) {
          if (!t[i].is_zero()) out[i] += a[j] * t[i];
        }
      }
      return out;
    };
    CycloCoeffs rest(deg);
    rest[0] = Rational(1);
    for (std::uint32_t k = 2; k < w; ++k) {
      if (std::gcd(k, w) == 1) rest = cyclo_mul(rest, conjugate(k));
    }
    const CycloCoeffs norm = cyclo_mul(a, rest);
    for (std::size_t k = 1; k < deg; ++k) {
      if (!norm[k].is_zero()) throw Error("cyclotomic norm is not rational");
    }
    if (norm[0].is_zero()) throw Error("inverse of zero");
    const Rational ci = norm[0].inverse();
    for (auto& x : rest) x *= ci;
    return rest;
  }

  // -- field helpers --
  FieldValue fmul(const FieldValue& a, const FieldValue& b) const {
    const std::int64_t p = spec.p;
    if (spec.kind == RingKind::prime_field) return {mulmod(a.c0, b.c0, p), 0};
    const std::int64_t c0 = spec.ext_poly[0];
    const std::int64_t c1 = spec.ext_poly[1];
    const std::int64_t t0 = mulmod(a.c0, b.c0, p);
    const std::int64_t t1 = (mulmod(a.c0, b.c1, p) + mulmod(a.c1, b.c0, p)) % p;
    const std::int64_t t2 = mulmod(a.c1, b.c1, p);
    // y^2 = -c1*y - c0
    return {mod_p(t0 - mulmod(t2, mod_p(c0, p), p), p), mod_p(t1 - mulmod(t2, mod_p(c1, p), p), p)};
  }

  FieldValue fpow(FieldValue a, std::uint64_t k) const {
    FieldValue r{1, 0};
    while (k != 0) {
      if (k & 1U) r = fmul(r, a);
      a = fmul(a, a);
      k >>= 1U;
    }
    return r;
  }
};

namespace {

void check_spec(const RingSpec& s) {
  switch (s.kind) {
    case RingKind::cyclotomic:
      if (s.w == 0) throw Error("cyclotomic backend requires w >= 1");
      break;
    case RingKind::prime_field:
    case RingKind::extension_field:
      if (!is_prime(s.p)) throw Error("field characteristic " + std::to_string(s.p) + " is not prime");
      if (s.p > (std::int64_t{1} << 31)) throw Error("field characteristic too large");
      if (s.kind == RingKind::extension_field) {
        if (mod_p(s.ext_poly[2], s.p) != 1) throw Error("extension polynomial must be monic");
        for (std::int64_t y = 0; y < s.p; ++y) {
          const std::int64_t v = mod_p(mod_p(s.ext_poly[0], s.p) + mulmod(mod_p(s.ext_poly[1], s.p), y, s.p) +
                                           mulmod(y, y, s.p),
                                       s.p);
          if (v == 0) throw Error("extension polynomial is reducible mod " + std::to_string(s.p));
        }
      }
      break;
    case RingKind::complex_float:
      if (!s.tol || *s.tol < 0.0) throw Error("complex backend requires a non-negative tolerance");
      break;
    case RingKind::rationals:
      break;
  }
  if (s.kind != RingKind::complex_float && s.tol) throw Error("exact backends take no tolerance");
}

}  // namespace

Ring::Ring(const RingSpec& spec) {
  check_spec(spec);
  auto impl = std::make_shared<Impl>();
  impl->spec = spec;
  switch (spec.kind) {
    case RingKind::cyclotomic: {
      impl->phi = cyclotomic_polynomial(spec.w);
      impl->deg = impl->phi.size() - 1;
      impl->mu = std::lcm<std::uint64_t>(2, spec.w);
      const double base = -2.0 * std::numbers::pi / spec.w;
      for (std::size_t k = 0; k < impl->deg; ++k) impl->zeta_powers.push_back(std::polar(1.0, base * k));
      break;
    }
    case RingKind::rationals:
      impl->mu = 2;
      break;
    case RingKind::prime_field:
      impl->q = spec.p;
      impl->mu = spec.p - 1;
      break;
    case RingKind::extension_field:
      impl->q = spec.p * spec.p;
      impl->mu = impl->q - 1;
      break;
    case RingKind::complex_float:
      impl->mu = 2;
      break;
  }
  impl_ = impl;

  // Canonical generator table of the root-of-unity group for char-0 exact rings.
  if (spec.kind == RingKind::cyclotomic || spec.kind == RingKind::rationals) {
    Element g;
    if (spec.kind == RingKind::rationals) {
      g = from_int(-1);
    } else if (spec.w % 2 == 0) {
      g = generator();
    } else {
      // zeta_{2w} = -x^{(w+1)/2} when w is odd
      g = neg(pow(generator(), (spec.w + 1) / 2));
    }
    std::vector<Element> powers;
    powers.reserve(impl->mu);
    Element cur = one();
    for (std::uint64_t j = 0; j < impl->mu; ++j) {
      powers.push_back(cur);
      cur = mul(cur, g);
    }
    if (!is_one(cur)) throw Error("internal: root-of-unity generator has wrong order");
    impl->gen_powers = std::move(powers);
  }
}

const RingSpec& Ring::spec() const { return impl_->spec; }

std::int64_t Ring::characteristic() const {
  return (kind() == RingKind::prime_field || kind() == RingKind::extension_field) ? spec().p : 0;
}

std::size_t Ring::degree() const { return impl_->deg; }
std::uint64_t Ring::unit_root_exponent() const { return impl_->mu; }
const std::vector<std::int64_t>& Ring::modulus() const { return impl_->phi; }

Element Ring::zero() const { return from_int(0); }
Element Ring::one() const { return from_int(1); }

Element Ring::from_int(std::int64_t n) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      CycloCoeffs c(impl_->deg);
      c[0] = Rational(n);
      return {std::move(c)};
    }
    case RingKind::rationals:
      return {Rational(n)};
    case RingKind::prime_field:
    case RingKind::extension_field:
      return {FieldValue{mod_p(n, spec().p), 0}};
    case RingKind::complex_float:
      return {std::complex<double>(static_cast<double>(n), 0.0)};
  }
  throw Error("unknown ring kind");
}

Element Ring::from_rational(const Rational& r) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      CycloCoeffs c(impl_->deg);
      c[0] = r;
      return {std::move(c)};
    }
    case RingKind::rationals:
      return {r};
    case RingKind::prime_field:
    case RingKind::extension_field:
      return mul(from_int(r.num()), int_inverse(r.den()));
    case RingKind::complex_float:
      return {std::complex<double>(r.to_double(), 0.0)};
  }
  throw Error("unknown ring kind");
}

Element Ring::generator() const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      std::vector<Rational> c(std::max<std::size_t>(2, impl_->deg));
      c[1] = Rational(1);
      return {impl_->reduce(std::move(c))};
    }
    case RingKind::extension_field:
      return {FieldValue{0, 1}};
    default:
      throw Error("ring " + spec().str() + " has no adjoined generator");
  }
}

Element Ring::from_complex(std::complex<double> z) const {
  if (kind() != RingKind::complex_float) throw Error("from_complex requires the complex backend");
  return {z};
}

Element Ring::add(const Element& a, const Element& b) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      const auto& x = std::get<CycloCoeffs>(a.value);
      const auto& y = std::get<CycloCoeffs>(b.value);
      CycloCoeffs out(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + y[k];
      return {std::move(out)};
    }
    case RingKind::rationals:
      return {std::get<Rational>(a.value) + std::get<Rational>(b.value)};
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const auto& x = std::get<FieldValue>(a.value);
      const auto& y = std::get<FieldValue>(b.value);
      const std::int64_t p = spec().p;
      return {FieldValue{(x.c0 + y.c0) % p, (x.c1 + y.c1) % p}};
    }
    case RingKind::complex_float:
      return {std::get<std::complex<double>>(a.value) + std::get<std::complex<double>>(b.value)};
  }
  throw Error("unknown ring kind");
}

Element Ring::neg(const Element& a) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      CycloCoeffs out = std::get<CycloCoeffs>(a.value);
      for (auto& x : out) x = -x;
      return {std::move(out)};
    }
    case RingKind::rationals:
      return {-std::get<Rational>(a.value)};
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const auto& x = std::get<FieldValue>(a.value);
      const std::int64_t p = spec().p;
      return {FieldValue{(p - x.c0) % p, (p - x.c1) % p}};
    }
    case RingKind::complex_float:
      return {-std::get<std::complex<double>>(a.value)};
  }
  throw Error("unknown ring kind");
}

Element Ring::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Ring::mul(const Element& a, const Element& b) const {
  switch (kind()) {
    case RingKind::cyclotomic:
      return {impl_->cyclo_mul(std::get<CycloCoeffs>(a.value), std::get<CycloCoeffs>(b.value))};
    case RingKind::rationals:
      return {std::get<Rational>(a.value) * std::get<Rational>(b.value)};
    case RingKind::prime_field:
    case RingKind::extension_field:
      return {impl_->fmul(std::get<FieldValue>(a.value), std::get<FieldValue>(b.value))};
    case RingKind::complex_float:
      return {std::get<std::complex<double>>(a.value) * std::get<std::complex<double>>(b.value)};
  }
  throw Error("unknown ring kind");
}

void Ring::add_to(Element& acc, const Element& b) const {
  switch (kind()) {
    case RingKind::rationals:
      std::get<Rational>(acc.value) += std::get<Rational>(b.value);
      return;
    case RingKind::complex_float:
      std::get<std::complex<double>>(acc.value) += std::get<std::complex<double>>(b.value);
      return;
    case RingKind::cyclotomic: {
      auto& out = std::get<CycloCoeffs>(acc.value);
      const auto& y = std::get<CycloCoeffs>(b.value);
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (!y[k].is_zero()) out[k] += y[k];
      }
      return;
    }
    default:
      acc = add(acc, b);
  }
}

void Ring::mul_add(Element& acc, const Element& a, const Element& b) const {
  switch (kind()) {
    case RingKind::rationals:
      std::get<Rational>(acc.value) += std::get<Rational>(a.value) * std::get<Rational>(b.value);
      return;
    case RingKind::complex_float:
      std::get<std::complex<double>>(acc.value) +=
          std::get<std::complex<double>>(a.value) * std::get<std::complex<double>>(b.value);
      return;
    case RingKind::cyclotomic: {
      auto& out = std::get<CycloCoeffs>(acc.value);
      const auto prod = impl_->cyclo_mul(std::get<CycloCoeffs>(a.value), std::get<CycloCoeffs>(b.value));
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (!prod[k].is_zero()) out[k] += prod[k];
      }
      return;
    }
    default:
      acc = add(acc, mul(a, b));
  }
}

Element Ring::inv(const Element& a) const {
  if (!is_unit(a)) throw Error("inverse of non-unit " + format(a));
  switch (kind()) {
    case RingKind::cyclotomic:
      return {impl_->cyclo_inv(std::get<CycloCoeffs>(a.value))};
    case RingKind::rationals:
      return {std::get<Rational>(a.value).inverse()};
    case RingKind::prime_field:
    case RingKind::extension_field:
      return {impl_->fpow(std::get<FieldValue>(a.value), static_cast<std::uint64_t>(impl_->q - 2))};
    case RingKind::complex_float:
      return {1.0 / std::get<std::complex<double>>(a.value)};
  }
  throw Error("unknown ring kind");
}

Element Ring::pow(const Element& a, std::int64_t k) const {
  Element base = k < 0 ? inv(a) : a;
  auto e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Element r = one();
  while (e != 0) {
    if (e & 1U) r = mul(r, base);
    e >>= 1U;
    if (e != 0) base = mul(base, base);
  }
  return r;
}

bool Ring::eq(const Element& a, const Element& b) const {
  if (kind() == RingKind::complex_float) {
    return std::abs(std::get<std::complex<double>>(a.value) - std::get<std::complex<double>>(b.value)) <= *spec().tol;
  }
  return a == b;
}

bool Ring::is_zero(const Element& a) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      const auto& c = std::get<CycloCoeffs>(a.value);
      return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); });
    }
    case RingKind::rationals:
      return std::get<Rational>(a.value).is_zero();
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const auto& f = std::get<FieldValue>(a.value);
      return f.c0 == 0 && f.c1 == 0;
    }
    case RingKind::complex_float:
      return std::abs(std::get<std::complex<double>>(a.value)) <= *spec().tol;
  }
  throw Error("unknown ring kind");
}

// Every backend is a field, so the units are exactly the nonzero elements.
bool Ring::is_unit(const Element& a) const { return contains(a) && !is_zero(a); }

Element Ring::int_inverse(std::int64_t n) const {
  const std::int64_t c = characteristic();
  if (n == 0 || (c != 0 && n % c == 0)) {
    throw Error("integer " + std::to_string(n) + " is not invertible in " + spec().str());
  }
  if (kind() == RingKind::cyclotomic || kind() == RingKind::rationals) return from_rational(Rational(1, n));
  return inv(from_int(n));
}

bool Ring::has_root_of_unity(std::uint64_t w) const {
  if (w == 0) return false;
  if (kind() == RingKind::complex_float) return true;
  return impl_->mu % w == 0;
}

Element Ring::root_of_unity(std::uint64_t w) const {
  if (!has_root_of_unity(w)) {
    throw Error("ring " + spec().str() + " has no element of multiplicative order " + std::to_string(w));
  }
  switch (kind()) {
    case RingKind::cyclotomic:
    case RingKind::rationals:
      return impl_->gen_powers[(impl_->mu / w) % impl_->mu];
    case RingKind::complex_float:
      return {std::polar(1.0, -2.0 * std::numbers::pi / static_cast<double>(w))};
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const auto factors = prime_factors(w);
      const std::int64_t p = spec().p;
      const std::int64_t limit = kind() == RingKind::prime_field ? p : p * p;
      for (std::int64_t idx = 1; idx < limit; ++idx) {
        const FieldValue cand{idx % p, idx / p};
        if (!(impl_->fpow(cand, w) == FieldValue{1, 0})) continue;
        const bool exact =
            std::none_of(factors.begin(), factors.end(), [&](std::uint64_t f) { return impl_->fpow(cand, w / f) == FieldValue{1, 0}; });
        if (exact) return {cand};
      }
      break;
    }
  }
  throw Error("internal: no root of unity found");
}

std::optional<std::uint64_t> Ring::multiplicative_order(const Element& a, std::uint64_t bound) const {
  if (!is_unit(a)) return std::nullopt;
  Element cur = a;
  try {
    for (std::uint64_t k = 1; k <= bound; ++k) {
      if (is_one(cur)) return k;
      cur = mul(cur, a);
    }
  } catch (const std::overflow_error&) {
    // Powers of a root of unity have bounded coefficients, so growth past
    // int64 means infinite order.
  }
  return std::nullopt;
}

std::complex<double> Ring::to_complex(const Element& a) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      const auto& c = std::get<CycloCoeffs>(a.value);
      std::complex<double> z{0.0, 0.0};
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k].is_zero()) z += c[k].to_double() * impl_->zeta_powers[k];
      }
      return z;
    }
    case RingKind::rationals:
      return {std::get<Rational>(a.value).to_double(), 0.0};
    case RingKind::complex_float:
      return std::get<std::complex<double>>(a.value);
    default:
      throw Error("field elements have no complex evaluation");
  }
}

std::optional<Rational> Ring::as_rational(const Element& a) const {
  switch (kind()) {
    case RingKind::rationals:
      return std::get<Rational>(a.value);
    case RingKind::cyclotomic: {
      const auto& c = std::get<CycloCoeffs>(a.value);
      for (std::size_t k = 1; k < c.size(); ++k) {
        if (!c[k].is_zero()) return std::nullopt;
      }
      return c[0];
    }
    default:
      return std::nullopt;
  }
}

bool Ring::contains(const Element& a) const {
  switch (kind()) {
    case RingKind::cyclotomic: {
      const auto* c = std::get_if<CycloCoeffs>(&a.value);
      return c != nullptr && c->size() == impl_->deg;
    }
    case RingKind::rationals:
      return std::holds_alternative<Rational>(a.value);
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const auto* f = std::get_if<FieldValue>(&a.value);
      if (f == nullptr) return false;
      const std::int64_t p = spec().p;
      const bool c1_ok = kind() == RingKind::extension_field ? (f->c1 >= 0 && f->c1 < p) : f->c1 == 0;
      return f->c0 >= 0 && f->c0 < p && c1_ok;
    }
    case RingKind::complex_float:
      return std::holds_alternative<std::complex<double>>(a.value);
  }
  return false;
}

std::string Ring::format(const Element& a) const {
  std::ostringstream os;
  switch (kind()) {
    case RingKind::cyclotomic: {
      const auto& c = std::get<CycloCoeffs>(a.value);
      bool first = true;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
          os << c[k];
        } else {
          if (!(c[k] == Rational(1))) os << c[k] << '*';
          os << "x";
          if (k > 1) os << '^' << k;
        }
      }
      if (first) os << '0';
      break;
    }
    case RingKind::rationals:
      os << std::get<Rational>(a.value);
      break;
    case RingKind::prime_field:
      os << std::get<FieldValue>(a.value).c0;
      break;
    case RingKind::extension_field: {
      const auto& f = std::get<FieldValue>(a.value);
      os << f.c0 << '+' << f.c1 << 'y';
      break;
    }
    case RingKind::complex_float: {
      const auto z = std::get<std::complex<double>>(a.value);
      os << '(' << z.real() << ',' << z.imag() << ')';
      break;
    }
  }
  return os.str();
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  auto mix = [](std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
  std::size_t h = e.value.index();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          h = mix(h, std::hash<Rational>{}(v));
        } else if constexpr (std::is_same_v<T, CycloCoeffs>) {
          for (const auto& r : v) h = mix(h, std::hash<Rational>{}(r));
        } else if constexpr (std::is_same_v<T, FieldValue>) {
          h = mix(mix(h, std::hash<std::int64_t>{}(v.c0)), std::hash<std::int64_t>{}(v.c1));
        } else {
          // +0.0 and -0.0 compare equal, so they must hash equal.
          h = mix(mix(h, std::hash<double>{}(v.real() + 0.0)), std::hash<double>{}(v.imag() + 0.0));
        }
      },
      e.value);
  return h;
}

// ---------------------------------------------------------------------------

std::string RingSpec::str() const {
  switch (kind) {
    case RingKind::cyclotomic:
      return "cyclotomic:" + std::to_string(w);
    case RingKind::rationals:
      return "rationals";
    case RingKind::prime_field:
      return "prime:" + std::to_string(p);
    case RingKind::extension_field:
      return "gf:" + std::to_string(p) + ":" + std::to_string(ext_poly[0]) + "," + std::to_string(ext_poly[1]);
    case RingKind::complex_float: {
      std::ostringstream os;
      os << "complex:" << tol.value_or(1e-9);
      return os.str();
    }
  }
  return "?";
}

RingSpec RingSpec::parse(const std::string& text) {
  auto fail = [&](const std::string& why) { return Error("bad ring spec '" + text + "': " + why); };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw fail("empty");
  auto to_int = [&](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used != s.size()) throw fail("trailing characters in '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw fail("expected an integer, got '" + s + "'");
    }
  };
  const std::string& head = parts[0];
  if ((head == "rationals" || head == "Q") && parts.size() == 1) return rationals();
  if (head == "cyclotomic" && parts.size() == 2) {
    const auto w = to_int(parts[1]);
    if (w <= 0) throw fail("w must be positive");
    return cyclotomic(static_cast<std::uint32_t>(w));
  }
  if (head == "prime" && parts.size() == 2) return prime_field(to_int(parts[1]));
  if (head == "gf" && (parts.size() == 2 || parts.size() == 3)) {
    std::array<std::int64_t, 3> poly{1, 1, 1};
    if (parts.size() == 3) {
      const auto comma = parts[2].find(',');
      if (comma == std::string::npos) throw fail("expected C0,C1");
      poly[0] = to_int(parts[2].substr(0, comma));
      poly[1] = to_int(parts[2].substr(comma + 1));
    }
    return extension_field(to_int(parts[1]), poly);
  }
  if (head == "complex" && parts.size() <= 2) {
    double tol = 1e-9;
    if (parts.size() == 2) {
      try {
        tol = std::stod(parts[1]);
      } catch (const std::logic_error&) {
        throw fail("bad tolerance");
      }
    }
    return complex_float(tol);
  }
  throw fail("unknown backend");
}

}  // namespace ght
