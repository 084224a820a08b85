#include "ght/gbh.hpp"

#include <numeric>

#include "ght/kernels.hpp"

namespace ght {

namespace {

void record(GbhReport& rep, const GbhOptions& opts, const char* product, std::size_t i, std::size_t j) {
  ++rep.failure_count;
  if (rep.failures.size() < opts.max_failures) rep.failures.push_back({product, i, j});
}

void compare_scaled_identity(GbhReport& rep, const GbhOptions& opts, const DenseMatrix& p, const char* name) {
  const Ring& ring = p.ring();
  const Element vee = ring.from_int(static_cast<std::int64_t>(p.order()));
  const Element zero = ring.zero();
  for (std::size_t i = 0; i < p.order(); ++i) {
    for (std::size_t j = 0; j < p.order(); ++j) {
      if (!ring.eq(p(i, j), i == j ? vee : zero)) record(rep, opts, name, i, j);
    }
  }
}

void compare_gram(GbhReport& rep, const GbhOptions& opts, const Ring& ring, std::size_t v,
                  const std::vector<std::int64_t>& g, const char* name) {
  const auto vi = static_cast<std::int64_t>(v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      const std::int64_t want = i == j ? vi : 0;
      const std::int64_t got = g[i * v + j];
      // Compare inside the ring so positive characteristic is honoured.
      if (got != want && !ring.eq(ring.from_int(got), ring.from_int(want))) record(rep, opts, name, i, j);
    }
  }
}

}  // namespace

GbhReport verify_gbh(const GMatrix& m, const GbhOptions& opts) {
  if (m.order() < 2) throw Error("GBH verification needs order >= 2");
  const Ring& ring = m.ring();
  GbhReport rep;
  rep.v = m.order();
  const std::int64_t c = ring.characteristic();
  rep.char_check = c == 0 || static_cast<std::int64_t>(rep.v) % c != 0;

  if (m.is_plus_minus_one()) {
    // +-1 entries are self-inverse, so M^* = M^T.
    rep.pm1_fast_path = true;
    compare_gram(rep, opts, ring, rep.v, kernels::pm1_gram(m, false), "MM*");
    compare_gram(rep, opts, ring, rep.v, kernels::pm1_gram(m, true), "M*M");
  } else {
    const GMatrix ms = star(m);
    compare_scaled_identity(rep, opts, mat_mul(m, ms), "MM*");
    compare_scaled_identity(rep, opts, mat_mul(ms, m), "M*M");
  }

  const std::uint64_t bound = opts.order_bound.value_or(2 * rep.v * ring.unit_root_exponent());
  std::vector<char> used(m.palette().size(), 0);
  for (const auto i : m.indices()) used[i] = 1;
  std::uint64_t w = 1;
  bool known = true;
  for (std::size_t k = 0; k < used.size() && known; ++k) {
    if (!used[k]) continue;
    const auto ord = ring.multiplicative_order(m.palette()[k], bound);
    if (ord) {
      w = std::lcm(w, *ord);
    } else {
      known = false;
    }
  }
  if (known) rep.w = w;
  rep.is_gbh = rep.failure_count == 0 && rep.char_check;
  return rep;
}

LineSums row_sums(const GMatrix& m) {
  const Ring& ring = m.ring();
  const std::size_t v = m.order();
  const GMatrix inv = entrywise_inverse(m);
  LineSums out;
  out.rows.assign(v, ring.zero());
  out.inverse_cols.assign(v, ring.zero());
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      ring.add_to(out.rows[i], m(i, j));
      ring.add_to(out.inverse_cols[j], inv(i, j));
    }
  }
  return out;
}

GMatrix dft_matrix(std::size_t v, const Ring& ring) {
  if (v == 0) throw Error("DFT order must be positive");
  const Element omega = ring.root_of_unity(v);
  std::vector<Element> powers;
  powers.reserve(v);
  Element cur = ring.one();
  for (std::size_t k = 0; k < v; ++k) {
    powers.push_back(cur);
    cur = ring.mul(cur, omega);
  }
  std::vector<std::uint32_t> idx(v * v);
  for (std::size_t j = 0; j < v; ++j) {
    for (std::size_t k = 0; k < v; ++k) idx[j * v + k] = static_cast<std::uint32_t>((j * k) % v);
  }
  return {ring, v, std::move(powers), std::move(idx)};
}

GMatrix b3(const Ring& ring) {
  const Element beta = ring.root_of_unity(3);
  const Element beta2 = ring.mul(beta, beta);
  const Element one = ring.one();
  const std::vector<Element> e{one, one, one, one, beta, beta2, one, beta2, beta};
  return {ring, 3, e};
}

}  // namespace ght
