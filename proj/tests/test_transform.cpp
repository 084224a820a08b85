#include <doctest.h>

#include <sstream>

#include "support.hpp"

using namespace ght;
using namespace testing;

namespace {

Signal sig(const Ring& r, const std::vector<int>& xs) {
  Signal s{r, {}};
  for (int x : xs) s.elements.push_back(r.from_int(x));
  return s;
}

Signal impulse(const Ring& r, std::size_t v, std::size_t at) {
  Signal s{r, std::vector<Element>(v, r.zero())};
  s.elements[at] = r.one();
  return s;
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("two-point Walsh transform") {
    const Ring q = Q();
    CHECK(equal(apply_ght(walsh(1, q), sig(q, {1, 1})), sig(q, {2, 0})));
    CHECK(equal(apply_ght(walsh(1, q), sig(q, {3, -1})), sig(q, {2, 4})));
    CHECK(equal(apply_ight(walsh(1, q), sig(q, {2, 0})), sig(q, {1, 1})));
  }

  TEST_CASE("an impulse picks out a column") {
    const Ring r = cyc(12);
    const GMatrix m = k6(r, imaginary_unit(r));
    for (std::size_t k = 0; k < 12; ++k) {
      const Signal y = apply_ght(m, impulse(r, 12, k));
      for (std::size_t i = 0; i < 12; ++i) CHECK(r.eq(y.elements[i], m(i, k)));
    }
  }

  TEST_CASE("three-point DFT by hand") {
    const Ring r = cyc(3);
    const Element b = r.root_of_unity(3);
    const Signal x{r, {r.one(), r.from_int(2), r.from_int(3)}};
    const Signal y = apply_ght(dft_matrix(3, r), x);
    // 1 + 2b + 3b^2 = -2 - b and 1 + 2b^2 + 3b = -1 + b, using b^2 = -1 - b.
    CHECK(r.eq(y.elements[0], r.from_int(6)));
    CHECK(r.eq(y.elements[1], r.add(r.from_int(-2), r.neg(b))));
    CHECK(r.eq(y.elements[2], r.add(r.from_int(-1), b)));
    CHECK(y.elements == reference::mat_vec(dft_matrix(3, r), x.elements));
  }

  TEST_CASE("inverse transform round trips") {
    std::mt19937_64 rng(5);
    const Ring q = Q();
    const GMatrix w4 = walsh(4, q);
    for (int k = 0; k < 100; ++k) {
      const Signal x = random_signal(q, 16, rng);
      CHECK(equal(apply_ight(w4, apply_ght(w4, x)), x));
    }
    const Ring r3 = cyc(3);
    const GMatrix m6 = k6(r3, r3.from_int(2));
    for (int k = 0; k < 20; ++k) {
      const Signal x = random_signal(r3, 12, rng);
      CHECK(equal(apply_ight(m6, apply_ght(m6, x)), x));
    }
    const Ring f = gf25();
    const GMatrix m3 = k3(f, f.root_of_unity(6));
    for (int k = 0; k < 20; ++k) {
      const Signal x = random_signal(f, 6, rng);
      CHECK(equal(apply_ight(m3, apply_ght(m3, x)), x));
    }
    const Ring c = cplx();
    const GMatrix fc = dft_matrix(8, c);
    for (int k = 0; k < 20; ++k) {
      const Signal x = random_signal(c, 8, rng);
      CHECK(equal(apply_ight(fc, apply_ght(fc, x)), x));
    }
  }

  TEST_CASE("inverse needs v invertible") {
    const Ring f = gf25();
    const GMatrix w = walsh(1, f);
    CHECK(equal(apply_ight(w, apply_ght(w, sig(f, {1, 3}))), sig(f, {1, 3})));
    const Ring f11(RingSpec::prime_field(11));
    const GMatrix big = tensor(dft_matrix(5, f11), walsh(1, f11));
    std::mt19937_64 rng(1);
    const Signal x = random_signal(f11, 10, rng);
    CHECK(equal(apply_ight(big, apply_ght(big, x)), x));
    const Ring f2(RingSpec::prime_field(2));
    CHECK_THROWS_AS((void)apply_ight(walsh(2, f2), sig(f2, {1, 0, 0, 0})), Error);
  }

  TEST_CASE("length and ring mismatches throw") {
    const Ring q = Q();
    CHECK_THROWS_AS((void)apply_ght(walsh(2, q), sig(q, {1, 2, 3})), Error);
    CHECK_THROWS_AS((void)apply_ght(walsh(1, q), sig(cyc(4), {1, 2})), Error);
    CHECK_THROWS_AS((void)fast_apply(walsh(2, q), sig(q, {1})), Error);
  }

  TEST_CASE("fast apply on a leaf is the naive product") {
    const Ring q = Q();
    const GMatrix m = k2(q, q.from_int(3));
    std::mt19937_64 rng(3);
    const Signal x = random_signal(q, 4, rng);
    const auto [y, ops] = fast_apply(m, x);
    CHECK(equal(y, apply_ght(m, x)));
    CHECK(ops == naive_op_count(4));
    CHECK(ops.mults == 16);
    CHECK(ops.adds == 12);
  }

  TEST_CASE("fast apply operation counts for Walsh matrices") {
    const Ring q = Q();
    std::mt19937_64 rng(9);
    for (unsigned t = 1; t <= 8; ++t) {
      CAPTURE(t);
      const GMatrix m = walsh(t, q);
      const std::uint64_t v = 1ULL << t;
      const Signal x = random_signal(q, v, rng);
      const auto [y, ops] = fast_apply(m, x);
      CHECK(equal(y, apply_ght(m, x)));
      CHECK(ops.mults == 2 * t * v);
      CHECK(ops.adds == t * v);
      CHECK(ops == fast_op_count(*m.tree()));
    }
  }

  TEST_CASE("fast apply agrees with the naive product on mixed trees") {
    const Ring r = cyc(12);
    std::mt19937_64 rng(17);
    const std::vector<GMatrix> ms{family(1, true, true, 3, r.from_int(2), r).matrix,
                                  family(0, true, true, 2, imaginary_unit(r), r).matrix,
                                  tensor(k6(r, r.from_int(3)), walsh(1, r)),
                                  tensor(walsh(1, r), tensor(b3(r), k1(r))),
                                  dagger(b3(r), k2(r, r.from_int(2)))};
    for (const auto& m : ms) {
      for (int k = 0; k < 10; ++k) {
        const Signal x = random_signal(r, m.order(), rng);
        const auto [y, ops] = fast_apply(m, x);
        CHECK(equal(y, apply_ght(m, x)));
        if (m.tree()) CHECK(ops == fast_op_count(*m.tree()));
      }
    }
    const GMatrix f = family(0, true, true, 4, r.from_int(5), cyc(8)).matrix;
    for (int k = 0; k < 50; ++k) {
      const Signal x = random_signal(f.ring(), f.order(), rng);
      CHECK(equal(fast_apply(f, x).first, apply_ght(f, x)));
    }
  }

  TEST_CASE("permuted trees") {
    const Ring q = Q();
    const GMatrix base = tensor(walsh(2, q), k2(q, q.from_int(2)));
    std::vector<std::size_t> rows(16);
    std::vector<std::size_t> cols(16);
    for (std::size_t k = 0; k < 16; ++k) {
      rows[k] = (5 * k + 3) % 16;
      cols[k] = (7 * k + 1) % 16;
    }
    const GMatrix p = permute(base, Permutation(rows), Permutation(cols));
    REQUIRE(p.tree());
    CHECK(std::holds_alternative<FactorTree::Permuted>(p.tree()->node));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
      const Signal x = random_signal(q, 16, rng);
      CHECK(equal(fast_apply(p, x).first, apply_ght(p, x)));
    }
    CHECK(fast_op_count(*p.tree()) == fast_op_count(*base.tree()));
  }

  TEST_CASE("fast transforms are linear") {
    const Ring r = cyc(4);
    const GMatrix m = cbt(4, r);
    const GMatrix w = walsh(4, r);
    std::mt19937_64 rng(4);
    const Signal x = random_signal(r, 16, rng);
    const Signal y = random_signal(r, 16, rng);
    const Element c = r.add(r.from_int(2), imaginary_unit(r));
    Signal combo{r, {}};
    for (std::size_t k = 0; k < 16; ++k) combo.elements.push_back(r.add(r.mul(c, x.elements[k]), y.elements[k]));
    for (const GMatrix* b : {&m, &w}) {
      const Signal fx = fast_apply(*b, x).first;
      const Signal fy = fast_apply(*b, y).first;
      const Signal fc = fast_apply(*b, combo).first;
      for (std::size_t k = 0; k < 16; ++k) {
        CHECK(r.eq(fc.elements[k], r.add(r.mul(c, fx.elements[k]), fy.elements[k])));
      }
    }
  }

  TEST_CASE("bench operation ratios") {
    const Ring q = Q();
    std::vector<GMatrix> ms;
    for (unsigned t = 4; t <= 10; ++t) ms.push_back(walsh(t, q));
    ms.push_back(k2(q, q.from_int(2)));
    const auto rows = bench(ms, 0);
    REQUIRE(rows.size() == ms.size());
    for (unsigned t = 4; t <= 10; ++t) {
      const auto& row = rows[t - 4];
      CHECK(row.order == (1u << t));
      CHECK_FALSE(row.naive_seconds);
      CHECK_FALSE(row.fast_seconds);
      CHECK(row.fast_ops.mults * (1ULL << t) == row.naive_ops.mults * 2 * t);
    }
    CHECK(rows.back().fast_ops == rows.back().naive_ops);

    std::ostringstream os;
    write_bench_csv(os, rows);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "order,naive_seconds,fast_seconds,naive_mults,naive_adds,fast_mults,fast_adds");
    std::getline(in, line);
    CHECK(line == "16,,,256,240,128,64");

    const auto timed = bench({walsh(3, q)}, 2);
    REQUIRE(timed.size() == 1);
    CHECK(timed[0].naive_seconds);
    CHECK(timed[0].fast_seconds);
  }
}
