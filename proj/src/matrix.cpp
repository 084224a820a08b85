#include "ght/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ght/kernels.hpp"

namespace ght {

namespace {

void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error("ring mismatch: " + a.spec().str() + " vs " + b.spec().str());
}

// Stars a tree node by node: (A (x) B)^* = A^* (x) B^*, and the star of a
// row/column permutation swaps the two permutations.
FactorTreePtr star_tree(const FactorTreePtr& t) {
  if (!t) return nullptr;
  return std::visit(
      [](const auto& node) -> FactorTreePtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FactorTree::Leaf>) {
          return std::make_shared<FactorTree>(
              FactorTree{FactorTree::Leaf{std::make_shared<const GMatrix>(star(*node.matrix))}});
        } else if constexpr (std::is_same_v<T, FactorTree::Tensor>) {
          return std::make_shared<FactorTree>(FactorTree{FactorTree::Tensor{star_tree(node.left), star_tree(node.right)}});
        } else {
          return std::make_shared<FactorTree>(FactorTree{FactorTree::Permuted{star_tree(node.child), node.cols, node.rows}});
        }
      },
      t->node);
}

}  // namespace

// ---- Permutation -----------------------------------------------------------

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (const auto k : image_) {
    if (k >= image_.size() || seen[k]) throw Error("permutation image is not a bijection");
    seen[k] = 1;
  }
}

Permutation Permutation::identity(std::size_t v) {
  std::vector<std::size_t> img(v);
  std::iota(img.begin(), img.end(), std::size_t{0});
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycle(std::size_t v, std::span<const std::size_t> cycle) {
  std::vector<std::size_t> img(v);
  std::iota(img.begin(), img.end(), std::size_t{0});
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (cycle[k] >= v) throw Error("cycle entry out of range");
    img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(img));
}

Permutation Permutation::rotate_to_end(std::size_t v, std::size_t pos) {
  if (pos >= v) throw Error("rotation position out of range");
  std::vector<std::size_t> img(v);
  for (std::size_t k = 0; k < v; ++k) {
    if (k < pos) {
      img[k] = k;
    } else if (k == pos) {
      img[k] = v - 1;
    } else {
      img[k] = k - 1;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) inv[image_[k]] = k;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw Error("permutation size mismatch");
  std::vector<std::size_t> img(size());
  for (std::size_t k = 0; k < size(); ++k) img[k] = image_[other.image_[k]];
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < image_.size(); ++k) {
    if (image_[k] != k) return false;
  }
  return true;
}

// ---- FactorTree ------------------------------------------------------------

std::size_t FactorTree::order() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return n.matrix->order();
        } else if constexpr (std::is_same_v<T, Tensor>) {
          return n.left->order() * n.right->order();
        } else {
          return n.child->order();
        }
      },
      node);
}

std::size_t FactorTree::leaf_count() const { return leaf_orders().size(); }

std::vector<std::size_t> FactorTree::leaf_orders() const {
  std::vector<std::size_t> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          out.push_back(n.matrix->order());
        } else if constexpr (std::is_same_v<T, Tensor>) {
          out = n.left->leaf_orders();
          const auto r = n.right->leaf_orders();
          out.insert(out.end(), r.begin(), r.end());
        } else {
          out = n.child->leaf_orders();
        }
      },
      node);
  return out;
}

GMatrix FactorTree::expand() const {
  return std::visit(
      [](const auto& n) -> GMatrix {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return n.matrix->without_tree();
        } else if constexpr (std::is_same_v<T, Tensor>) {
          return tensor(n.left->expand(), n.right->expand()).without_tree();
        } else {
          return permute(n.child->expand(), n.rows, n.cols).without_tree();
        }
      },
      node);
}

// ---- DenseMatrix -----------------------------------------------------------

DenseMatrix::DenseMatrix(Ring ring, std::size_t order)
    : ring_(std::move(ring)), order_(order), entries_(order * order, ring_.zero()) {}

DenseMatrix::DenseMatrix(Ring ring, std::size_t order, std::vector<Element> entries)
    : ring_(std::move(ring)), order_(order), entries_(std::move(entries)) {
  if (entries_.size() != order_ * order_) throw Error("dense matrix needs order^2 entries");
  for (const auto& e : entries_) {
    if (!ring_.contains(e)) throw Error("dense matrix entry does not belong to " + ring_.spec().str());
  }
}

DenseMatrix DenseMatrix::scalar_identity(const Ring& ring, std::size_t order, const Element& c) {
  DenseMatrix m(ring, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = c;
  return m;
}

bool DenseMatrix::equal(const DenseMatrix& other) const {
  if (order_ != other.order_ || !(ring_ == other.ring_)) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!ring_.eq(entries_[k], other.entries_[k])) return false;
  }
  return true;
}

// ---- GMatrix ---------------------------------------------------------------

std::uint32_t PaletteBuilder::intern(const Element& e) {
  const auto it = lookup_.find(e);
  if (it != lookup_.end()) return it->second;
  const auto idx = static_cast<std::uint32_t>(palette_.size());
  palette_.push_back(e);
  lookup_.emplace(e, idx);
  return idx;
}

GMatrix::GMatrix(Ring ring, std::size_t order, std::span<const Element> entries)
    : ring_(std::move(ring)), order_(order) {
  if (order_ == 0) throw Error("matrix order must be positive");
  if (entries.size() != order_ * order_) {
    throw Error("expected " + std::to_string(order_ * order_) + " entries, got " + std::to_string(entries.size()));
  }
  PaletteBuilder pb(ring_);
  std::vector<std::uint32_t> index(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!ring_.contains(entries[k])) {
      throw Error("entry (" + std::to_string(k / order_) + "," + std::to_string(k % order_) +
                  ") does not belong to " + ring_.spec().str());
    }
    index[k] = pb.intern(entries[k]);
  }
  init(pb.take(), std::move(index));
}

GMatrix::GMatrix(Ring ring, std::size_t order, std::vector<Element> palette, std::vector<std::uint32_t> index)
    : ring_(std::move(ring)), order_(order) {
  if (order_ == 0) throw Error("matrix order must be positive");
  if (index.size() != order_ * order_) throw Error("palette matrix needs order^2 indices");
  for (const auto i : index) {
    if (i >= palette.size()) throw Error("palette index out of range");
  }
  for (const auto& e : palette) {
    if (!ring_.contains(e)) throw Error("palette entry does not belong to " + ring_.spec().str());
  }
  init(std::move(palette), std::move(index));
}

void GMatrix::init(std::vector<Element> palette, std::vector<std::uint32_t> index) {
  auto st = std::make_shared<Storage>();
  st->palette_pm1.resize(palette.size());
  const Element one = ring_.one();
  const Element minus_one = ring_.neg(one);
  for (std::size_t k = 0; k < palette.size(); ++k) {
    if (!ring_.is_unit(palette[k])) {
      throw Error("matrix entry " + ring_.format(palette[k]) + " is not a unit of " + ring_.spec().str());
    }
    st->palette_pm1[k] = (ring_.eq(palette[k], one) || ring_.eq(palette[k], minus_one)) ? 1 : 0;
  }
  st->palette = std::move(palette);
  st->index = std::move(index);
  data_ = std::move(st);
}

std::vector<Element> GMatrix::entries() const {
  std::vector<Element> out;
  out.reserve(data_->index.size());
  for (const auto i : data_->index) out.push_back(data_->palette[i]);
  return out;
}

DenseMatrix GMatrix::to_dense() const { return {ring_, order_, entries()}; }

FactorTreePtr GMatrix::tree_or_leaf() const {
  if (tree_) return tree_;
  return std::make_shared<FactorTree>(FactorTree{FactorTree::Leaf{std::make_shared<const GMatrix>(without_tree())}});
}

GMatrix GMatrix::with_tree(FactorTreePtr tree) const {
  if (!tree) return without_tree();
  if (tree->order() != order_) throw Error("factor tree order does not match matrix order");
  if (!equal(tree->expand(), *this)) throw Error("factor tree expansion differs from matrix entries");
  GMatrix out = *this;
  out.tree_ = std::move(tree);
  return out;
}

GMatrix GMatrix::with_tree_unchecked(FactorTreePtr tree) && {
  tree_ = std::move(tree);
  return std::move(*this);
}

GMatrix GMatrix::without_tree() const {
  GMatrix out = *this;
  out.tree_.reset();
  return out;
}

bool GMatrix::is_pm1(const Element& e) const {
  const Element one = ring_.one();
  return ring_.eq(e, one) || ring_.eq(e, ring_.neg(one));
}

bool GMatrix::is_plus_minus_one() const {
  // Palette entries may be unused (after permutation they never are, but
  // palette-form construction allows it), so check the indices in use.
  const auto& flags = data_->palette_pm1;
  if (std::all_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; })) return true;
  return std::all_of(data_->index.begin(), data_->index.end(), [&](std::uint32_t i) { return flags[i] != 0; });
}

bool GMatrix::row_is_pm1(std::size_t i) const {
  for (std::size_t j = 0; j < order_; ++j) {
    if (!data_->palette_pm1[index_at(i, j)]) return false;
  }
  return true;
}

bool GMatrix::col_is_pm1(std::size_t j) const {
  for (std::size_t i = 0; i < order_; ++i) {
    if (!data_->palette_pm1[index_at(i, j)]) return false;
  }
  return true;
}

bool GMatrix::is_normalised() const {
  for (std::size_t k = 0; k < order_; ++k) {
    if (!ring_.is_one((*this)(0, k)) || !ring_.is_one((*this)(k, 0))) return false;
  }
  return true;
}

// ---- operations ------------------------------------------------------------

GMatrix entrywise_inverse(const GMatrix& m) {
  std::vector<Element> pal;
  pal.reserve(m.palette().size());
  for (const auto& e : m.palette()) pal.push_back(m.ring().inv(e));
  return {m.ring(), m.order(), std::move(pal), m.indices()};
}

GMatrix transpose(const GMatrix& m) {
  const std::size_t v = m.order();
  std::vector<std::uint32_t> idx(v * v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) idx[j * v + i] = m.index_at(i, j);
  }
  return {m.ring(), v, m.palette(), std::move(idx)};
}

GMatrix star(const GMatrix& m) {
  GMatrix out = transpose(entrywise_inverse(m));
  if (m.tree()) {
    // The starred tree expands to exactly the starred entries.
    return std::move(out).with_tree_unchecked(star_tree(m.tree()));
  }
  return out;
}

GMatrix tensor(const GMatrix& a, const GMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  const Ring& ring = a.ring();
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  const std::size_t pb_size = b.palette().size();

  PaletteBuilder pb(ring);
  std::vector<std::uint32_t> table(a.palette().size() * pb_size);
  for (std::size_t x = 0; x < a.palette().size(); ++x) {
    for (std::size_t y = 0; y < pb_size; ++y) table[x * pb_size + y] = pb.intern(ring.mul(a.palette()[x], b.palette()[y]));
  }

  const std::size_t v = na * nb;
  std::vector<std::uint32_t> idx(v * v);
  const auto& ai = a.indices();
  const auto& bi = b.indices();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ia = 0; ia < static_cast<std::ptrdiff_t>(na); ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const std::size_t row = static_cast<std::size_t>(ia) * nb + ib;
      std::uint32_t* out = idx.data() + row * v;
      for (std::size_t ja = 0; ja < na; ++ja) {
        const std::size_t base = ai[static_cast<std::size_t>(ia) * na + ja] * pb_size;
        const std::uint32_t* brow = bi.data() + ib * nb;
        for (std::size_t jb = 0; jb < nb; ++jb) out[ja * nb + jb] = table[base + brow[jb]];
      }
    }
  }

  GMatrix out(ring, v, pb.take(), std::move(idx));
  auto tree = std::make_shared<FactorTree>(FactorTree{FactorTree::Tensor{a.tree_or_leaf(), b.tree_or_leaf()}});
  // Construction guarantees the tree matches; skip the O(v^2) re-expansion.
  return std::move(out).with_tree_unchecked(std::move(tree));
}

GMatrix permute(const GMatrix& m, const Permutation& rows, const Permutation& cols) {
  const std::size_t v = m.order();
  if (rows.size() != v || cols.size() != v) throw Error("permutation order does not match matrix order");
  const Permutation rinv = rows.inverse();
  const Permutation cinv = cols.inverse();
  std::vector<std::uint32_t> idx(v * v);
  for (std::size_t i = 0; i < v; ++i) {
    const std::size_t src = rinv(i);
    for (std::size_t j = 0; j < v; ++j) idx[i * v + j] = m.index_at(src, cinv(j));
  }
  GMatrix out(m.ring(), v, m.palette(), std::move(idx));
  if (m.tree()) {
    auto tree = std::make_shared<FactorTree>(FactorTree{FactorTree::Permuted{m.tree(), rows, cols}});
    return std::move(out).with_tree_unchecked(std::move(tree));
  }
  return out;
}

Normalisation normalize(const GMatrix& m) {
  const Ring& ring = m.ring();
  const std::size_t v = m.order();
  std::vector<Element> row_scalars(v);
  std::vector<Element> row_inv(v);
  for (std::size_t i = 0; i < v; ++i) {
    row_scalars[i] = m(i, 0);
    row_inv[i] = ring.inv(m(i, 0));
  }
  std::vector<Element> col_scalars(v);
  std::vector<Element> col_inv(v);
  for (std::size_t j = 0; j < v; ++j) {
    col_scalars[j] = ring.mul(row_inv[0], m(0, j));
    col_inv[j] = ring.inv(col_scalars[j]);
  }
  PaletteBuilder pb(ring);
  std::vector<std::uint32_t> idx(v * v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) idx[i * v + j] = pb.intern(ring.mul(ring.mul(row_inv[i], m(i, j)), col_inv[j]));
  }
  return {GMatrix(ring, v, pb.take(), std::move(idx)), std::move(row_scalars), std::move(col_scalars)};
}

DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.order() != b.order()) throw Error("matrix order mismatch");
  return kernels::mat_mul(a, b);
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.order() != b.order()) throw Error("matrix order mismatch");
  return kernels::mat_mul(a, b);
}

GMatrix scalar_mul(const Element& c, const GMatrix& m) {
  if (!m.ring().is_unit(c)) throw Error("scalar is not a unit");
  PaletteBuilder pb(m.ring());
  std::vector<std::uint32_t> remap(m.palette().size());
  for (std::size_t k = 0; k < m.palette().size(); ++k) remap[k] = pb.intern(m.ring().mul(c, m.palette()[k]));
  std::vector<std::uint32_t> idx(m.indices().size());
  std::transform(m.indices().begin(), m.indices().end(), idx.begin(), [&](std::uint32_t i) { return remap[i]; });
  return {m.ring(), m.order(), pb.take(), std::move(idx)};
}

bool equal(const GMatrix& a, const GMatrix& b) {
  if (a.order() != b.order() || !(a.ring() == b.ring())) return false;
  const Ring& ring = a.ring();
  const auto& ai = a.indices();
  const auto& bi = b.indices();
  const std::size_t pa = a.palette().size();
  const std::size_t pbs = b.palette().size();
  // Compare each palette pair once; matrices share few distinct entries.
  if (pa * pbs <= (std::size_t{1} << 22)) {
    std::vector<std::int8_t> verdict(pa * pbs, -1);
    for (std::size_t k = 0; k < ai.size(); ++k) {
      auto& v = verdict[ai[k] * pbs + bi[k]];
      if (v < 0) v = ring.eq(a.palette()[ai[k]], b.palette()[bi[k]]) ? 1 : 0;
      if (v == 0) return false;
    }
    return true;
  }
  for (std::size_t k = 0; k < ai.size(); ++k) {
    if (!ring.eq(a.palette()[ai[k]], b.palette()[bi[k]])) return false;
  }
  return true;
}

}  // namespace ght
