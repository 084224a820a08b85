#pragma once

// Dense square matrices over a Ring.
//
// GMatrix holds unit entries only and stores them palette-compressed: each
// distinct entry value is kept once and the v*v grid holds 32-bit indices
// into that palette. Transform matrices draw from a handful of roots of
// unity, so walsh(12) costs 64 MiB of indices instead of 16M ring elements.
// DenseMatrix is the unrestricted counterpart used for products such as
// M * M^*.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ght/ring.hpp"

namespace ght {

/// Bijection on 0..v-1; image[k] is where k is sent.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Error if the image is not a bijection.
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t v);
  /// 0-based cycle: cycle[0] -> cycle[1] -> ... -> cycle[0].
  static Permutation from_cycle(std::size_t v, std::span<const std::size_t> cycle);
  /// Sends `pos` to the last slot and shifts pos+1..v-1 down by one.
  static Permutation rotate_to_end(std::size_t v, std::size_t pos);

  [[nodiscard]] std::size_t size() const { return image_.size(); }
  [[nodiscard]] std::size_t operator()(std::size_t k) const { return image_[k]; }
  [[nodiscard]] const std::vector<std::size_t>& image() const { return image_; }
  [[nodiscard]] Permutation inverse() const;
  /// (this * other)(k) = this(other(k))
  [[nodiscard]] Permutation compose(const Permutation& other) const;
  [[nodiscard]] bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

class GMatrix;

/// How a matrix was assembled from smaller ones. Recorded at construction,
/// never inferred.
struct FactorTree {
  struct Leaf {
    std::shared_ptr<const GMatrix> matrix;
  };
  struct Tensor {
    std::shared_ptr<const FactorTree> left;
    std::shared_ptr<const FactorTree> right;
  };
  struct Permuted {
    std::shared_ptr<const FactorTree> child;
    Permutation rows;
    Permutation cols;
  };
  std::variant<Leaf, Tensor, Permuted> node;

  [[nodiscard]] std::size_t order() const;
  [[nodiscard]] std::size_t leaf_count() const;
  /// Orders of the leaves, left to right.
  [[nodiscard]] std::vector<std::size_t> leaf_orders() const;
  /// Rebuilds the full matrix from the leaves.
  [[nodiscard]] GMatrix expand() const;
};

using FactorTreePtr = std::shared_ptr<const FactorTree>;

/// Row-major v x v matrix of arbitrary ring elements.
class DenseMatrix {
 public:
  DenseMatrix(Ring ring, std::size_t order);
  DenseMatrix(Ring ring, std::size_t order, std::vector<Element> entries);

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] std::size_t order() const { return order_; }
  [[nodiscard]] const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
  [[nodiscard]] const std::vector<Element>& entries() const { return entries_; }

  /// c * I
  static DenseMatrix scalar_identity(const Ring& ring, std::size_t order, const Element& c);
  [[nodiscard]] bool equal(const DenseMatrix& other) const;

 private:
  Ring ring_;
  std::size_t order_;
  std::vector<Element> entries_;
};

class GMatrix {
 public:
  /// Throws Error if any entry is not a unit of `ring` or the count is not order^2.
  GMatrix(Ring ring, std::size_t order, std::span<const Element> entries);
  /// Palette form; indices refer to `palette` and every palette entry must be a unit.
  GMatrix(Ring ring, std::size_t order, std::vector<Element> palette, std::vector<std::uint32_t> index);

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] std::size_t order() const { return order_; }
  [[nodiscard]] const Element& operator()(std::size_t i, std::size_t j) const {
    return data_->palette[data_->index[i * order_ + j]];
  }
  [[nodiscard]] std::uint32_t index_at(std::size_t i, std::size_t j) const { return data_->index[i * order_ + j]; }
  [[nodiscard]] const std::vector<Element>& palette() const { return data_->palette; }
  [[nodiscard]] const std::vector<std::uint32_t>& indices() const { return data_->index; }
  /// 1 where the palette entry is +1 or -1.
  [[nodiscard]] const std::vector<std::uint8_t>& palette_pm1() const { return data_->palette_pm1; }
  [[nodiscard]] std::vector<Element> entries() const;
  [[nodiscard]] DenseMatrix to_dense() const;

  [[nodiscard]] const FactorTreePtr& tree() const { return tree_; }
  /// Leaf(this) when no tree was recorded.
  [[nodiscard]] FactorTreePtr tree_or_leaf() const;
  /// Throws Error if the tree's expansion differs from the stored entries.
  [[nodiscard]] GMatrix with_tree(FactorTreePtr tree) const;
  [[nodiscard]] GMatrix without_tree() const;

  /// True when every entry is 1 or -1 in the ring.
  [[nodiscard]] bool is_plus_minus_one() const;
  [[nodiscard]] bool is_pm1(const Element& e) const;
  [[nodiscard]] bool row_is_pm1(std::size_t i) const;
  [[nodiscard]] bool col_is_pm1(std::size_t j) const;
  [[nodiscard]] bool is_normalised() const;

 private:
  struct Storage {
    std::vector<Element> palette;
    std::vector<std::uint32_t> index;
    std::vector<std::uint8_t> palette_pm1;
  };

  void init(std::vector<Element> palette, std::vector<std::uint32_t> index);
  // For constructions whose tree matches by construction.
  GMatrix with_tree_unchecked(FactorTreePtr tree) &&;

  friend GMatrix tensor(const GMatrix& a, const GMatrix& b);
  friend GMatrix star(const GMatrix& m);
  friend GMatrix permute(const GMatrix& m, const Permutation& rows, const Permutation& cols);

  Ring ring_;
  std::size_t order_ = 0;
  std::shared_ptr<const Storage> data_;
  FactorTreePtr tree_;
};

/// Interning helper: collects distinct elements and hands out palette indices.
class PaletteBuilder {
 public:
  explicit PaletteBuilder(Ring ring) : ring_(std::move(ring)) {}
  std::uint32_t intern(const Element& e);
  [[nodiscard]] std::vector<Element> take() { return std::move(palette_); }
  [[nodiscard]] std::size_t size() const { return palette_.size(); }

 private:
  Ring ring_;
  std::vector<Element> palette_;
  std::unordered_map<Element, std::uint32_t, ElementHash> lookup_;
};

// ---- operations ------------------------------------------------------------

/// (M^*)_{ij} = (M_{ji})^{-1}
GMatrix star(const GMatrix& m);
/// Kronecker product: entry (a*|B| + b, c*|B| + d) = A_{ac} * B_{bd}. Records both factors.
GMatrix tensor(const GMatrix& a, const GMatrix& b);
/// Result (i, j) = M(rows^{-1}(i), cols^{-1}(j)); row k of M lands at rows(k).
GMatrix permute(const GMatrix& m, const Permutation& rows, const Permutation& cols);

struct Normalisation {
  GMatrix matrix;
  std::vector<Element> row_scalars;  // M_{ij} = row_scalars[i] * N_{ij} * col_scalars[j]
  std::vector<Element> col_scalars;
};
Normalisation normalize(const GMatrix& m);

DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b);
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);
/// c * M; c must be a unit.
GMatrix scalar_mul(const Element& c, const GMatrix& m);
/// Entrywise ring equality (tolerance-based on the complex backend).
bool equal(const GMatrix& a, const GMatrix& b);
/// Entrywise inverses [m_ij^{-1}] without transposition.
GMatrix entrywise_inverse(const GMatrix& m);
GMatrix transpose(const GMatrix& m);

}  // namespace ght
