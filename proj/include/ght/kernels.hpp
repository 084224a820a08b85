#pragma once

// Hot loops of the library. Each kernel in ght::kernels has a serial
// twin in ght::reference that does the same arithmetic in the obvious way;
// tests hold the two equal and bench/ times them against each other.
//
// The kernels are OpenMP-parallel over independent output rows. Ring
// operations are pure, so no synchronisation is needed beyond the loop.

#include <cstdint>
#include <span>
#include <vector>

#include "ght/matrix.hpp"

namespace ght {

/// Scalar operation counters for transform evaluation.
struct OpCount {
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;

  OpCount& operator+=(const OpCount& o) {
    mults += o.mults;
    adds += o.adds;
    return *this;
  }
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

namespace kernels {

/// A * B. Palette products are tabulated once, so the inner loop only adds.
DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b);
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);

/// y = M x with one multiply-accumulate per entry.
std::vector<Element> mat_vec(const GMatrix& m, std::span<const Element> x);

/// Integer Gram matrix of a +-1 matrix: rows (M M^T) or columns (M^T M).
/// Rows are packed into 64-bit sign masks and compared with popcount.
std::vector<std::int64_t> pm1_gram(const GMatrix& m, bool columns);

}  // namespace kernels

namespace reference {

DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b);
std::vector<Element> mat_vec(const GMatrix& m, std::span<const Element> x);
std::vector<std::int64_t> pm1_gram(const GMatrix& m, bool columns);

}  // namespace reference

/// Worker threads the kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace ght
