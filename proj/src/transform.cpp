#include "ght/transform.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace ght {

namespace {

void check_signal(const GMatrix& b, const Signal& x) {
  if (!(b.ring() == x.ring)) throw Error("ring mismatch: " + b.ring().spec().str() + " vs " + x.ring.spec().str());
  if (b.order() != x.length()) {
    throw Error("signal length " + std::to_string(x.length()) + " does not match order " + std::to_string(b.order()));
  }
}

// Counted naive apply of a leaf.
void leaf_apply(const GMatrix& m, std::span<const Element> x, std::span<Element> y, OpCount& ops) {
  const Ring& ring = m.ring();
  const std::size_t v = m.order();
  for (std::size_t i = 0; i < v; ++i) {
    Element acc = ring.mul(m(i, 0), x[0]);
    for (std::size_t j = 1; j < v; ++j) ring.mul_add(acc, m(i, j), x[j]);
    y[i] = std::move(acc);
  }
  ops.mults += v * v;
  ops.adds += v * (v - 1);
}

void apply(const FactorTree& t, std::span<const Element> x, std::span<Element> y, OpCount& ops, bool top);

void tensor_apply(const FactorTree::Tensor& n, std::span<const Element> x, std::span<Element> y, OpCount& ops,
                  [[maybe_unused]] bool top) {
  const std::size_t a = n.left->order();
  const std::size_t b = n.right->order();
  std::vector<Element> z(a * b);
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;
  // Stage 1: right factor on each contiguous block of length b.
#pragma omp parallel for schedule(static) reduction(+ : mults, adds) if (top)
  for (std::ptrdiff_t sp = 0; sp < static_cast<std::ptrdiff_t>(a); ++sp) {
    const auto p = static_cast<std::size_t>(sp);
    OpCount local;
    apply(*n.right, x.subspan(p * b, b), std::span<Element>(z).subspan(p * b, b), local, false);
    mults += local.mults;
    adds += local.adds;
  }
  // Stage 2: left factor on each stride-b slice.
#pragma omp parallel for schedule(static) reduction(+ : mults, adds) if (top)
  for (std::ptrdiff_t sk = 0; sk < static_cast<std::ptrdiff_t>(b); ++sk) {
    const auto k = static_cast<std::size_t>(sk);
    std::vector<Element> in(a), out(a);
    for (std::size_t p = 0; p < a; ++p) in[p] = z[p * b + k];
    OpCount local;
    apply(*n.left, in, out, local, false);
    for (std::size_t i = 0; i < a; ++i) y[i * b + k] = std::move(out[i]);
    mults += local.mults;
    adds += local.adds;
  }
  ops += OpCount{mults, adds};
}

void apply(const FactorTree& t, std::span<const Element> x, std::span<Element> y, OpCount& ops, bool top) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FactorTree::Leaf>) {
          leaf_apply(*n.matrix, x, y, ops);
        } else if constexpr (std::is_same_v<T, FactorTree::Tensor>) {
          tensor_apply(n, x, y, ops, top);
        } else {
          const std::size_t v = x.size();
          std::vector<Element> z(v), u(v);
          for (std::size_t k = 0; k < v; ++k) z[k] = x[n.cols(k)];
          apply(*n.child, z, u, ops, top);
          for (std::size_t k = 0; k < v; ++k) y[n.rows(k)] = std::move(u[k]);
        }
      },
      t.node);
}

const Ring& tree_ring(const FactorTree& t) {
  const FactorTree* cur = &t;
  while (true) {
    if (const auto* leaf = std::get_if<FactorTree::Leaf>(&cur->node)) return leaf->matrix->ring();
    if (const auto* ten = std::get_if<FactorTree::Tensor>(&cur->node)) {
      cur = ten->left.get();
    } else {
      cur = std::get<FactorTree::Permuted>(cur->node).child.get();
    }
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Signal apply_ght(const GMatrix& b, const Signal& x) {
  check_signal(b, x);
  return {b.ring(), kernels::mat_vec(b, x.elements)};
}

Signal apply_ight(const GMatrix& b, const Signal& xhat) {
  check_signal(b, xhat);
  const Ring& ring = b.ring();
  const Element scale = ring.int_inverse(static_cast<std::int64_t>(b.order()));
  auto y = kernels::mat_vec(star(b), xhat.elements);
  for (auto& e : y) e = ring.mul(scale, e);
  return {ring, std::move(y)};
}

std::pair<Signal, OpCount> fast_apply(const FactorTree& tree, const Signal& x) {
  if (tree.order() != x.length()) {
    throw Error("signal length " + std::to_string(x.length()) + " does not match tree order " +
                std::to_string(tree.order()));
  }
  if (!(tree_ring(tree) == x.ring)) throw Error("ring mismatch between factor tree and signal");
  std::vector<Element> y(x.length());
  OpCount ops;
  apply(tree, x.elements, y, ops, true);
  return {Signal{x.ring, std::move(y)}, ops};
}

std::pair<Signal, OpCount> fast_apply(const GMatrix& b, const Signal& x) {
  check_signal(b, x);
  return fast_apply(*b.tree_or_leaf(), x);
}

OpCount naive_op_count(std::size_t v) { return {v * v, v * (v - 1)}; }

OpCount fast_op_count(const FactorTree& tree) {
  return std::visit(
      [](const auto& n) -> OpCount {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FactorTree::Leaf>) {
          return naive_op_count(n.matrix->order());
        } else if constexpr (std::is_same_v<T, FactorTree::Tensor>) {
          const OpCount l = fast_op_count(*n.left);
          const OpCount r = fast_op_count(*n.right);
          const std::uint64_t a = n.left->order();
          const std::uint64_t b = n.right->order();
          return {a * r.mults + b * l.mults, a * r.adds + b * l.adds};
        } else {
          return fast_op_count(*n.child);
        }
      },
      tree.node);
}

bool equal(const Signal& a, const Signal& b) {
  if (!(a.ring == b.ring) || a.length() != b.length()) return false;
  for (std::size_t k = 0; k < a.length(); ++k) {
    if (!a.ring.eq(a.elements[k], b.elements[k])) return false;
  }
  return true;
}

Signal random_signal(const Ring& ring, std::size_t v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-9, 9);
  std::uniform_int_distribution<std::int64_t> den(1, 5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Signal s{ring, {}};
  s.elements.reserve(v);
  for (std::size_t k = 0; k < v; ++k) {
    switch (ring.kind()) {
      case RingKind::rationals:
        s.elements.push_back(ring.from_rational(Rational(num(rng), den(rng))));
        break;
      case RingKind::cyclotomic: {
        CycloCoeffs c;
        for (std::size_t d = 0; d < ring.degree(); ++d) c.emplace_back(num(rng), den(rng));
        s.elements.push_back(Element{std::move(c)});
        break;
      }
      case RingKind::prime_field:
      case RingKind::extension_field: {
        std::uniform_int_distribution<std::int64_t> res(0, ring.characteristic() - 1);
        const std::int64_t c1 = ring.kind() == RingKind::extension_field ? res(rng) : 0;
        s.elements.push_back(Element{FieldValue{res(rng), c1}});
        break;
      }
      case RingKind::complex_float:
        s.elements.push_back(ring.from_complex({gauss(rng), gauss(rng)}));
        break;
    }
  }
  return s;
}

std::vector<BenchRow> bench(const std::vector<GMatrix>& matrices, unsigned repetitions, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(seed);
  std::vector<BenchRow> rows;
  for (const auto& m : matrices) {
    BenchRow row;
    row.order = m.order();
    row.naive_ops = naive_op_count(m.order());
    row.fast_ops = fast_op_count(*m.tree_or_leaf());
    if (repetitions > 0) {
      std::vector<double> tn, tf;
      for (unsigned r = 0; r < repetitions; ++r) {
        const Signal x = random_signal(m.ring(), m.order(), rng);
        auto t0 = clock::now();
        const Signal y = apply_ght(m, x);
        auto t1 = clock::now();
        auto [yf, ops] = fast_apply(m, x);
        auto t2 = clock::now();
        if (!equal(y, yf)) throw Error("fast apply disagrees with the naive transform");
        row.fast_ops = ops;
        tn.push_back(std::chrono::duration<double>(t1 - t0).count());
        tf.push_back(std::chrono::duration<double>(t2 - t1).count());
      }
      row.naive_seconds = median(tn);
      row.fast_seconds = median(tf);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "order,naive_seconds,fast_seconds,naive_mults,naive_adds,fast_mults,fast_adds\n";
  auto opt = [&](const std::optional<double>& d) {
    if (d) os << *d;
  };
  for (const auto& r : rows) {
    os << r.order << ',';
    opt(r.naive_seconds);
    os << ',';
    opt(r.fast_seconds);
    os << ',' << r.naive_ops.mults << ',' << r.naive_ops.adds << ',' << r.fast_ops.mults << ',' << r.fast_ops.adds
       << '\n';
  }
}

}  // namespace ght
