#include "ght/kernels.hpp"

#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ght {

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Sign masks of a +-1 matrix, one row (or column) per mask vector; bit set means -1.
std::vector<std::uint64_t> sign_masks(const GMatrix& m, bool columns, std::size_t words) {
  const std::size_t v = m.order();
  const Element minus_one = m.ring().neg(m.ring().one());
  std::vector<std::uint8_t> negative(m.palette().size());
  for (std::size_t k = 0; k < negative.size(); ++k) negative[k] = m.ring().eq(m.palette()[k], minus_one) ? 1 : 0;
  std::vector<std::uint64_t> masks(v * words, 0);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      const std::size_t line = columns ? j : i;
      const std::size_t bit = columns ? i : j;
      if (negative[m.index_at(i, j)]) masks[line * words + bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
  return masks;
}

}  // namespace

namespace kernels {

DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b) {
  const Ring& ring = a.ring();
  const std::size_t v = a.order();
  const std::size_t pa = a.palette().size();
  const std::size_t pb = b.palette().size();
  if (pa * pb > (std::size_t{1} << 20)) return kernels::mat_mul(a.to_dense(), b.to_dense());

  std::vector<Element> table;
  table.reserve(pa * pb);
  for (std::size_t x = 0; x < pa; ++x) {
    for (std::size_t y = 0; y < pb; ++y) table.push_back(ring.mul(a.palette()[x], b.palette()[y]));
  }

  std::vector<Element> out(v * v, ring.zero());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(v); ++si) {
    const auto i = static_cast<std::size_t>(si);
    Element* row = out.data() + i * v;
    for (std::size_t k = 0; k < v; ++k) {
      const std::size_t base = a.index_at(i, k) * pb;
      for (std::size_t j = 0; j < v; ++j) ring.add_to(row[j], table[base + b.index_at(k, j)]);
    }
  }
  return {ring, v, std::move(out)};
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  const Ring& ring = a.ring();
  const std::size_t v = a.order();
  std::vector<Element> out(v * v, ring.zero());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(v); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t k = 0; k < v; ++k) {
      const Element& aik = a(i, k);
      for (std::size_t j = 0; j < v; ++j) ring.mul_add(out[i * v + j], aik, b(k, j));
    }
  }
  return {ring, v, std::move(out)};
}

std::vector<Element> mat_vec(const GMatrix& m, std::span<const Element> x) {
  const Ring& ring = m.ring();
  const std::size_t v = m.order();
  std::vector<Element> y(v, ring.zero());
  const std::size_t pal = m.palette().size();
  if (pal * 4 <= v) {
    // Few distinct entries: form every palette[p] * x[j] once, then only add.
    std::vector<Element> prod(pal * v);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t sj = 0; sj < static_cast<std::ptrdiff_t>(v); ++sj) {
      const auto j = static_cast<std::size_t>(sj);
      for (std::size_t p = 0; p < pal; ++p) prod[p * v + j] = ring.mul(m.palette()[p], x[j]);
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(v); ++si) {
      const auto i = static_cast<std::size_t>(si);
      const std::uint32_t* row = m.indices().data() + i * v;
      Element acc = ring.zero();
      for (std::size_t j = 0; j < v; ++j) ring.add_to(acc, prod[row[j] * v + j]);
      y[i] = std::move(acc);
    }
    return y;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(v); ++si) {
    const auto i = static_cast<std::size_t>(si);
    Element acc = ring.zero();
    for (std::size_t j = 0; j < v; ++j) ring.mul_add(acc, m(i, j), x[j]);
    y[i] = std::move(acc);
  }
  return y;
}

std::vector<std::int64_t> pm1_gram(const GMatrix& m, bool columns) {
  const std::size_t v = m.order();
  const std::size_t words = (v + 63) / 64;
  const auto masks = sign_masks(m, columns, words);
  std::vector<std::int64_t> g(v * v);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(v); ++si) {
    const auto i = static_cast<std::size_t>(si);
    const std::uint64_t* ri = masks.data() + i * words;
    for (std::size_t j = 0; j < v; ++j) {
      const std::uint64_t* rj = masks.data() + j * words;
      std::int64_t differ = 0;
      for (std::size_t w = 0; w < words; ++w) differ += std::popcount(ri[w] ^ rj[w]);
      g[i * v + j] = static_cast<std::int64_t>(v) - 2 * differ;
    }
  }
  return g;
}

}  // namespace kernels

namespace reference {

DenseMatrix mat_mul(const GMatrix& a, const GMatrix& b) {
  const Ring& ring = a.ring();
  const std::size_t v = a.order();
  std::vector<Element> out;
  out.reserve(v * v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      Element acc = ring.zero();
      for (std::size_t k = 0; k < v; ++k) acc = ring.add(acc, ring.mul(a(i, k), b(k, j)));
      out.push_back(std::move(acc));
    }
  }
  return {ring, v, std::move(out)};
}

std::vector<Element> mat_vec(const GMatrix& m, std::span<const Element> x) {
  const Ring& ring = m.ring();
  std::vector<Element> y;
  y.reserve(m.order());
  for (std::size_t i = 0; i < m.order(); ++i) {
    Element acc = ring.zero();
    for (std::size_t j = 0; j < m.order(); ++j) acc = ring.add(acc, ring.mul(m(i, j), x[j]));
    y.push_back(std::move(acc));
  }
  return y;
}

std::vector<std::int64_t> pm1_gram(const GMatrix& m, bool columns) {
  const std::size_t v = m.order();
  const Element one = m.ring().one();
  auto sign = [&](std::size_t i, std::size_t j) -> std::int64_t { return m.ring().eq(m(i, j), one) ? 1 : -1; };
  std::vector<std::int64_t> g(v * v, 0);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < v; ++k) s += columns ? sign(k, i) * sign(k, j) : sign(i, k) * sign(j, k);
      g[i * v + j] = s;
    }
  }
  return g;
}

}  // namespace reference

}  // namespace ght
