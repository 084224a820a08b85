#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "ght/catalog.hpp"
#include "ght/gbh.hpp"
#include "ght/jacket.hpp"
#include "ght/matrix.hpp"
#include "ght/ring.hpp"
#include "ght/transform.hpp"

namespace testing {

inline ght::Ring Q() { return ght::Ring(ght::RingSpec::rationals()); }
inline ght::Ring cyc(std::uint32_t w) { return ght::Ring(ght::RingSpec::cyclotomic(w)); }
inline ght::Ring gf25() { return ght::Ring(ght::RingSpec::extension_field(5)); }
inline ght::Ring cplx() { return ght::Ring(ght::RingSpec::complex_float()); }

// Literal matrix from small integers.
inline ght::GMatrix ints(const ght::Ring& r, std::size_t v, const std::vector<int>& e) {
  std::vector<ght::Element> out;
  for (int x : e) out.push_back(r.from_int(x));
  return {r, v, out};
}

// Literal matrix whose entries are base^e; the list holds exponents.
inline ght::GMatrix powers(const ght::Ring& r, std::size_t v, const ght::Element& base, const std::vector<int>& e) {
  std::vector<ght::Element> out;
  for (int x : e) out.push_back(r.pow(base, x));
  return {r, v, out};
}

// Entries as (sign, power of base): sign * base^pow, packed as sign*(pow+1).
inline ght::GMatrix signed_powers(const ght::Ring& r, std::size_t v, const ght::Element& base,
                                  const std::vector<int>& packed) {
  std::vector<ght::Element> out;
  for (int x : packed) {
    const ght::Element p = r.pow(base, std::abs(x) - 1);
    out.push_back(x < 0 ? r.neg(p) : p);
  }
  return {r, v, out};
}

inline std::complex<double> expi(double theta) { return std::polar(1.0, theta); }

}  // namespace testing
