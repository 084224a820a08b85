#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ght/matrix.hpp"

namespace ght {

struct GbhFailure {
  std::string product;  // "MM*" or "M*M"
  std::size_t row = 0;
  std::size_t col = 0;
};

struct GbhReport {
  bool is_gbh = false;
  std::size_t v = 0;
  /// lcm of the entry orders; empty when some order exceeds the search bound.
  std::optional<std::uint64_t> w;
  /// char R does not divide v.
  bool char_check = false;
  /// First few deviating positions (capped by GbhOptions::max_failures).
  std::vector<GbhFailure> failures;
  std::size_t failure_count = 0;
  bool pm1_fast_path = false;
};

struct GbhOptions {
  /// Upper bound for entry-order search; default 2 * v * unit_root_exponent.
  std::optional<std::uint64_t> order_bound;
  std::size_t max_failures = 32;
};

/// Checks M M^* = M^* M = v I. Both products are always formed. An all +-1
/// matrix takes the bit-packed Gram path.
GbhReport verify_gbh(const GMatrix& m, const GbhOptions& opts = {});

struct LineSums {
  std::vector<Element> rows;          // row sums of M
  std::vector<Element> inverse_cols;  // column sums of [m_ij^{-1}]
};
LineSums row_sums(const GMatrix& m);

/// [omega^{jk}] for 0 <= j, k < v, omega = root_of_unity(ring, v).
GMatrix dft_matrix(std::size_t v, const Ring& ring);

/// [[1,1,1],[1,b,b^2],[1,b^2,b]] with b the ring's canonical cube root of unity.
GMatrix b3(const Ring& ring);

}  // namespace ght
