#pragma once

// Named matrices: Walsh-Hadamard, complex BIFORE, the primary jacket
// matrices K1..K4 and K6, the three-factor jacket family, and the
// quadriphase perfect-sequence machinery behind K4.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ght/matrix.hpp"

namespace ght {

/// The element mapping to +i under zeta_w -> exp(-2*pi*i/w): root_of_unity(4)^3.
Element imaginary_unit(const Ring& ring);

/// S_t = S_1 (x) ... (x) S_1, t >= 1; tree of t S_1 leaves.
GMatrix walsh(unsigned t, const Ring& ring);
/// Complex BIFORE matrix C_t, t >= 1, by the block recursion.
GMatrix cbt(unsigned t, const Ring& ring);

GMatrix k1(const Ring& ring);
/// r must be a unit other than +-1.
GMatrix k2(const Ring& ring, const Element& r);
/// The same 4 x 4 pattern for any unit r; r = 1 gives S_2.
GMatrix k2_pattern(const Ring& ring, const Element& r);
/// alpha must have order exactly 6.
GMatrix k3(const Ring& ring, const Element& alpha);
GMatrix k4(const Ring& ring);
/// The 12 x 12 width-1 jacket matrix K6(beta, r), beta the canonical cube root.
GMatrix k6(const Ring& ring, const Element& r);

enum class FamilyTag { wht, dft_equivalent, cwht, complex_rjt, extended_complex_rjt, unnamed };
std::string to_string(FamilyTag tag);

struct FamilyLabel {
  unsigned ell = 0;
  bool eps = false;
  bool delta = false;
  std::size_t n = 0;
  FamilyTag tag = FamilyTag::unnamed;
};

struct FamilyMember {
  GMatrix matrix;
  FamilyLabel label;
};

/// (K1^{(x) ell}) (x) K2(r)^eps (x) RJT_n(alpha)^delta.
///
/// alpha defaults to root_of_unity(2n); r is ignored when eps = 0. The empty
/// product (ell = eps = delta = 0) is rejected.
FamilyMember family(unsigned ell, bool eps, bool delta, std::size_t n, const std::optional<Element>& r,
                    const Ring& ring, const std::optional<Element>& alpha = std::nullopt);
FamilyTag classify_family(const FamilyLabel& shape, const std::optional<Element>& r, const std::optional<Element>& alpha,
                          const Ring& ring);

/// Phases s_j in {0,1,2,3}, exponents of i.
struct QuadriphaseSequence {
  std::vector<std::uint8_t> phases;
  [[nodiscard]] std::size_t length() const { return phases.size(); }
  [[nodiscard]] std::string str() const;  // digit string, e.g. "00130213"
  static QuadriphaseSequence parse(const std::string& digits);
  friend bool operator==(const QuadriphaseSequence&, const QuadriphaseSequence&) = default;
};

/// R(tau) = sum_j i^{s_j - s_{j+tau mod L}}
Element autocorrelation(const Ring& ring, const QuadriphaseSequence& s, std::size_t tau);
bool is_perfect(const Ring& ring, const QuadriphaseSequence& s);
/// Entry (j, k) = i^{s_{(j+k) mod L}}.
GMatrix back_circulant(const Ring& ring, const QuadriphaseSequence& s);

/// All perfect sequences of length L with s_0 = 0, lexicographic order. L <= 10.
std::vector<QuadriphaseSequence> search_perfect_quadriphase(std::size_t length, const Ring& ring);

/// All 2 x 2 jacket GBH matrices with entries among the w-th roots of unity of ring.
std::vector<GMatrix> enumerate_2x2_jackets(std::uint64_t w, const Ring& ring);

/// Natural ring for a catalog token (see from_token).
RingSpec natural_ring(const std::string& token);

/// Builds a matrix from a token: walsh:t, cbt:t, dft:n, b3, k1, k2:r, k3, k4,
/// k6:r, family:l,e,d,n,r, rjt:n, jcbt:t, backcirc:digits. r is a rational or "i".
GMatrix from_token(const std::string& token, const std::optional<RingSpec>& ring_override = std::nullopt);

}  // namespace ght
