#pragma once

// Jacket-matrix structure: recognition, width, the three jacketising
// permutations and permutation-equivalence search.

#include <cstdint>
#include <optional>

#include "ght/matrix.hpp"

namespace ght {

enum class PrimaryCertificate { primary_by_width, unknown };

struct JacketReport {
  bool is_jacket_form = false;
  std::size_t width = 1;
  /// All-(+-1) rows and columns, the first one included.
  std::size_t pm1_rows = 0;
  std::size_t pm1_cols = 0;
  PrimaryCertificate certificate = PrimaryCertificate::unknown;
  /// Applying these with permute() puts the +-1 rows/columns on the border.
  Permutation row_witness;
  Permutation col_witness;
};

/// First row and column all 1, last row and column all +-1. Throws for odd order.
bool is_jacket_form(const GMatrix& m);

/// width = min(pm1_rows / 2, pm1_cols / 2, v / 2), at least 1.
///
/// Needs a normalised matrix with at least two +-1 rows and columns; the
/// +-1 counts are permutation invariant, so no search is required.
JacketReport jacket_width(const GMatrix& m);

/// primary_by_width for width-1 jacket matrices; unknown otherwise, since a
/// larger width says nothing about decomposability.
PrimaryCertificate is_primary_by_width(const GMatrix& m);

/// Exhaustive width oracle over all row and column arrangements. Order <= 8.
std::size_t brute_width(const GMatrix& m);

struct Jacketized {
  GMatrix matrix;
  Permutation rows;
  Permutation cols;
};

/// C_t with row 2 rotated to the bottom and column 2^{t-1}+1 to the right. t >= 2.
Jacketized jacketize_cbt(unsigned t, const Ring& ring);

/// F_{2n} under (j1, j0) -> (j1, (1 - j1) j0 + (n - 1 - j0) j1) on rows and columns.
Jacketized jacketize_dft(std::size_t n, const Ring& ring);

/// The mixed-radix index map used by jacketize_dft: keeps 0..n-1, reverses n..2n-1.
Permutation rjt_permutation(std::size_t n);

/// [alpha^{p(j) p(k)}] for p = rjt_permutation(n); alpha must have order exactly 2n.
GMatrix complex_rjt(std::size_t n, const Element& alpha, const Ring& ring);

/// (B (x) K)^dagger: row and column 2n (1-based) of B (x) K rotated to the end.
GMatrix dagger(const GMatrix& b, const GMatrix& k);
/// Row/column permutation applied by dagger for |B| = m, |K| = 2n.
Permutation dagger_permutation(std::size_t m, std::size_t two_n);

enum class EquivStatus { found, none, budget_exceeded };

struct EquivResult {
  EquivStatus status = EquivStatus::none;
  /// permute(a, rows, cols) == b when status is found.
  Permutation rows;
  Permutation cols;
  std::uint64_t nodes = 0;
};

/// Backtracking search for row/column bijections taking a to b.
///
/// Target rows are filled in order; candidate source rows must match the
/// target's sorted entry multiset, and after each assignment the column
/// classes (columns keyed by their entries in the assigned rows) must have
/// equal sizes on both sides. Branching is lexicographic, so the witness is
/// deterministic.
EquivResult perm_equivalent(const GMatrix& a, const GMatrix& b, std::uint64_t node_budget = 10'000'000);

}  // namespace ght
