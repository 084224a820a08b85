#include <doctest.h>

#include "support.hpp"

using namespace ght;
using namespace testing;

namespace {

// Every catalog matrix of order <= 8 that is normalised with +-1 border lines.
std::vector<GMatrix> small_jackets() {
  const Ring q = Q();
  const Ring r4 = cyc(4);
  const Ring r6 = cyc(6);
  const Ring r3 = cyc(3);
  return {walsh(1, q),
          walsh(2, q),
          walsh(3, q),
          k2(q, q.from_int(2)),
          k2(q, q.from_rational(Rational(1, 3))),
          k2(r4, imaginary_unit(r4)),
          k3(r6, r6.root_of_unity(6)),
          k4(r4),
          jacketize_cbt(2, r4).matrix,
          jacketize_cbt(3, r4).matrix,
          jacketize_dft(2, r4).matrix,
          jacketize_dft(4, cyc(8)).matrix,
          dagger(b3(r3), k1(r3)),
          dagger(walsh(1, q), k1(q)),
          dagger(walsh(1, q), k2(q, q.from_int(3))),
          family(1, true, false, 0, q.from_int(2), q).matrix,
          family(0, false, true, 4, std::nullopt, cyc(8)).matrix};
}

// Rows 2..m and the last m rows (1-based) are +-1 after applying the witness.
void check_witness(const GMatrix& m, const JacketReport& rep) {
  const GMatrix p = permute(m, rep.row_witness, rep.col_witness);
  CHECK(p.is_normalised());
  const std::size_t v = m.order();
  for (std::size_t k = 1; k < rep.width; ++k) {
    CHECK(p.row_is_pm1(k));
    CHECK(p.col_is_pm1(k));
  }
  for (std::size_t k = v - rep.width; k < v; ++k) {
    CHECK(p.row_is_pm1(k));
    CHECK(p.col_is_pm1(k));
  }
}

}  // namespace

TEST_SUITE("jacket") {
  TEST_CASE("jacket form recognition") {
    const Ring q = Q();
    CHECK(is_jacket_form(k2(q, q.from_int(5))));
    CHECK(is_jacket_form(walsh(2, q)));
    const Ring r4 = cyc(4);
    const GMatrix f4 = dft_matrix(4, r4);
    CHECK_FALSE(is_jacket_form(f4));
    // Row 1 of F_4 ends in omega^3 = i.
    CHECK(r4.eq(f4(1, 3), imaginary_unit(r4)));
    CHECK_THROWS_AS((void)is_jacket_form(b3(cyc(3))), Error);
  }

  TEST_CASE("Walsh width is 2^{t-1}") {
    for (unsigned t = 1; t <= 6; ++t) {
      const GMatrix w = walsh(t, Q());
      const auto rep = jacket_width(w);
      CHECK(rep.width == (std::size_t{1} << (t - 1)));
      CHECK(rep.pm1_rows == w.order());
      CHECK(rep.is_jacket_form);
      check_witness(w, rep);
    }
  }

  TEST_CASE("width-1 primary matrices") {
    const Ring r3 = cyc(3);
    const auto k6r = jacket_width(k6(r3, r3.from_int(2)));
    CHECK(k6r.width == 1);
    CHECK(k6r.certificate == PrimaryCertificate::primary_by_width);

    const Ring r4 = cyc(4);
    const GMatrix k = k4(r4);
    const auto k4r = jacket_width(k);
    CHECK(k4r.width == 1);
    CHECK(k4r.pm1_rows == 2);
    CHECK(k4r.pm1_cols == 2);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(k.row_is_pm1(i) == (i == 0 || i == 7));
      CHECK(k.col_is_pm1(i) == (i == 0 || i == 7));
    }

    const Ring r6 = cyc(6);
    CHECK(is_primary_by_width(k3(r6, r6.root_of_unity(6))) == PrimaryCertificate::primary_by_width);
    CHECK(is_primary_by_width(k2_pattern(Q(), Q().one())) == PrimaryCertificate::unknown);
    CHECK(is_primary_by_width(k2(Q(), Q().from_int(2))) == PrimaryCertificate::primary_by_width);
  }

  TEST_CASE("jacket_width rejects non-jacketizable input") {
    const Ring r3 = cyc(3);
    const Element b = r3.root_of_unity(3);
    // Normalised, but the first row is the only +-1 row.
    const GMatrix lone = powers(r3, 4, b, {0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1});
    CHECK_THROWS_AS((void)jacket_width(lone), Error);
    CHECK_THROWS_AS((void)is_primary_by_width(lone), Error);
    CHECK_THROWS_AS((void)jacket_width(ints(Q(), 2, {1, -1, 1, 1})), Error);
    // F_4 and C_2 are not in jacket form but have two +-1 lines each way.
    CHECK(jacket_width(dft_matrix(4, cyc(4))).width == 1);
    CHECK(jacket_width(cbt(2, cyc(4))).width == 1);
  }

  TEST_CASE("width report invariants and witnesses") {
    for (const auto& m : small_jackets()) {
      const auto rep = jacket_width(m);
      if (rep.width >= 2) {
        CHECK(rep.pm1_rows >= 2 * rep.width);
        CHECK(rep.pm1_cols >= 2 * rep.width);
      }
      CHECK(rep.width <= m.order() / 2);
      CHECK((rep.certificate == PrimaryCertificate::primary_by_width) == (rep.is_jacket_form && rep.width == 1));
      check_witness(m, rep);
    }
  }

  TEST_CASE("brute force width oracle") {
    CHECK(brute_width(walsh(2, Q())) == 2);
    CHECK(brute_width(k2(Q(), Q().from_int(2))) == 1);
    for (const auto& m : small_jackets()) CHECK(brute_width(m) == jacket_width(m).width);
    // Not arranged as a jacket matrix, but permutation equivalent to one.
    const GMatrix w = walsh(3, Q());
    const Permutation p(std::vector<std::size_t>{0, 5, 2, 7, 4, 1, 6, 3});
    const GMatrix shuffled = permute(w, p, p);
    CHECK(brute_width(shuffled) == 4);
    CHECK(jacket_width(shuffled).width == 4);
    CHECK_THROWS_AS((void)brute_width(walsh(4, Q())), Error);
  }

  TEST_CASE("CBT jacketization") {
    const Ring r4 = cyc(4);
    const auto j2 = jacketize_cbt(2, r4);
    // Row 2 to the bottom and column 3 to the right, done by hand.
    const GMatrix c2 = cbt(2, r4);
    std::vector<Element> want;
    const std::size_t rows[] = {0, 2, 3, 1};
    const std::size_t cols[] = {0, 1, 3, 2};
    for (auto i : rows) {
      for (auto j : cols) want.push_back(c2(i, j));
    }
    CHECK(equal(j2.matrix, GMatrix(r4, 4, want)));
    CHECK(is_jacket_form(j2.matrix));

    const auto j3 = jacketize_cbt(3, r4);
    const auto rep = verify_gbh(j3.matrix);
    CHECK(rep.is_gbh);
    CHECK(rep.v == 8);
    CHECK(rep.w == 4u);
    CHECK(is_jacket_form(j3.matrix));
    CHECK_THROWS_AS((void)jacketize_cbt(1, r4), Error);
  }

  TEST_CASE("DFT jacketization") {
    const auto j1 = jacketize_dft(1, Q());
    CHECK(j1.rows.is_identity());
    CHECK(equal(j1.matrix, walsh(1, Q())));

    const Ring r4 = cyc(4);
    CHECK(equal(jacketize_dft(2, r4).matrix, k2(r4, imaginary_unit(r4))));
    const Ring r6 = cyc(6);
    CHECK(equal(jacketize_dft(3, r6).matrix, k3(r6, r6.root_of_unity(6))));
    CHECK(rjt_permutation(3).image() == std::vector<std::size_t>{0, 1, 2, 5, 4, 3});
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto j = jacketize_dft(n, cyc(static_cast<std::uint32_t>(2 * n)));
      CHECK(is_jacket_form(j.matrix));
      CHECK(verify_gbh(j.matrix).is_gbh);
    }
    CHECK_THROWS_AS((void)jacketize_dft(2, Q()), Error);
  }

  TEST_CASE("complex RJT needs an exact order") {
    const Ring r6 = cyc(6);
    CHECK_THROWS_AS((void)complex_rjt(3, r6.root_of_unity(3), r6), Error);
    CHECK_NOTHROW((void)complex_rjt(3, r6.pow(r6.root_of_unity(6), 5), r6));
  }

  TEST_CASE("dagger construction") {
    const Ring q = Q();
    const GMatrix d = dagger(walsh(1, q), k1(q));
    CHECK(d.order() == 4);
    CHECK(is_jacket_form(d));
    CHECK(verify_gbh(d).is_gbh);

    const Ring r12 = cyc(12);
    const std::vector<GMatrix> bs{walsh(1, r12), b3(r12), dft_matrix(4, r12), dft_matrix(3, r12),
                                  normalize(k4(r12)).matrix};
    const std::vector<GMatrix> ks{k1(r12), k2(r12, r12.from_int(2)), k2(r12, imaginary_unit(r12)), k4(r12),
                                  k3(r12, r12.root_of_unity(6))};
    for (const auto& b : bs) {
      for (const auto& k : ks) {
        const GMatrix m = dagger(b, k);
        CHECK(is_jacket_form(m));
        CHECK(verify_gbh(m).is_gbh);
      }
    }
    CHECK_THROWS_AS((void)dagger(ints(r12, 2, {1, -1, 1, 1}), k1(r12)), Error);
    CHECK_THROWS_AS((void)dagger(b3(r12), dft_matrix(4, r12)), Error);
    CHECK_THROWS_AS((void)dagger(b3(cyc(3)), k1(q)), Error);
    CHECK(dagger_permutation(3, 2).image() == std::vector<std::size_t>{0, 5, 1, 2, 3, 4});
  }

  TEST_CASE("star duality keeps the width") {
    for (const auto& m : small_jackets()) {
      const GMatrix s = star(m);
      CHECK(is_jacket_form(s) == is_jacket_form(m));
      CHECK(jacket_width(s).width == jacket_width(m).width);
    }
  }

  TEST_CASE("tensor width lower bound") {
    const Ring r = cyc(12);
    const std::vector<GMatrix> pool{walsh(1, r), walsh(2, r), walsh(3, r), k2(r, r.from_int(2)),
                                    k3(r, r.root_of_unity(6)), k4(r)};
    for (const auto& a : pool) {
      for (const auto& b : pool) {
        const std::size_t ma = jacket_width(a).width;
        const std::size_t mb = jacket_width(b).width;
        CHECK(jacket_width(tensor(a, b)).width >= 2 * ma * mb);
      }
    }
  }

  TEST_CASE("non-initial +-1 rows and columns sum to zero") {
    for (const auto& m : small_jackets()) {
      const Ring& r = m.ring();
      for (std::size_t i = 1; i < m.order(); ++i) {
        Element rs = r.zero();
        Element cs = r.zero();
        for (std::size_t j = 0; j < m.order(); ++j) {
          r.add_to(rs, m(i, j));
          r.add_to(cs, m(j, i));
        }
        if (m.row_is_pm1(i)) CHECK(r.is_zero(rs));
        if (m.col_is_pm1(i)) CHECK(r.is_zero(cs));
      }
    }
  }

  TEST_CASE("scaled jacket matrices are unitary over C") {
    const Ring c = cplx();
    for (const GMatrix& k : {k4(c), k3(c, c.root_of_unity(6)), k6(c, imaginary_unit(c)), walsh(3, c),
                             jacketize_dft(5, c).matrix}) {
      const std::size_t v = k.order();
      const double s = 1.0 / static_cast<double>(v);
      for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) {
          std::complex<double> acc = 0;
          for (std::size_t t = 0; t < v; ++t) acc += c.to_complex(k(i, t)) * std::conj(c.to_complex(k(j, t)));
          CHECK(std::abs(acc * s - (i == j ? 1.0 : 0.0)) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("permutation equivalence") {
    const Ring r4 = cyc(4);
    const GMatrix m = k4(r4);
    const auto self = perm_equivalent(m, m);
    REQUIRE(self.status == EquivStatus::found);
    CHECK(self.rows.is_identity());
    CHECK(self.cols.is_identity());

    const auto j = jacketize_cbt(2, r4);
    const auto e = perm_equivalent(cbt(2, r4), j.matrix);
    REQUIRE(e.status == EquivStatus::found);
    CHECK(equal(permute(cbt(2, r4), e.rows, e.cols), j.matrix));
    CHECK(equal(permute(cbt(2, r4), j.rows, j.cols), j.matrix));
    CHECK(e.rows == j.rows);
    CHECK(e.cols == j.cols);

    const Ring q = Q();
    const auto s = perm_equivalent(walsh(2, q), k2_pattern(q, q.one()));
    REQUIRE(s.status == EquivStatus::found);
    CHECK(s.rows.is_identity());
    CHECK(s.cols.is_identity());

    CHECK(perm_equivalent(walsh(2, q), k2(q, q.from_int(2))).status == EquivStatus::none);
    CHECK_THROWS_AS((void)perm_equivalent(walsh(2, q), walsh(3, q)), Error);
  }

  TEST_CASE("equivalence finds scrambled copies") {
    std::mt19937_64 rng(9);
    const Ring r12 = cyc(12);
    for (const GMatrix& m : {k6(r12, r12.from_int(2)), walsh(4, r12), k4(r12), tensor(k4(r12), walsh(1, r12))}) {
      std::vector<std::size_t> a(m.order()), b(m.order());
      std::iota(a.begin(), a.end(), std::size_t{0});
      std::iota(b.begin(), b.end(), std::size_t{0});
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      const GMatrix target = permute(m, Permutation(a), Permutation(b));
      const auto e = perm_equivalent(m, target);
      REQUIRE(e.status == EquivStatus::found);
      CHECK(equal(permute(m, e.rows, e.cols), target));
    }
  }

  TEST_CASE("budget exhaustion is reported distinctly") {
    const Ring q = Q();
    const GMatrix w = walsh(4, q);
    const Permutation p(std::vector<std::size_t>{15, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
    const auto e = perm_equivalent(w, permute(w, p, Permutation::identity(16)), 3);
    CHECK(e.status == EquivStatus::budget_exceeded);
    CHECK(e.nodes > 3);
  }

  TEST_CASE("equivalence over the complex backend") {
    const Ring c = cplx();
    const GMatrix m = k4(c);
    const Permutation p = Permutation::rotate_to_end(8, 2);
    const auto e = perm_equivalent(m, permute(m, p, p));
    REQUIRE(e.status == EquivStatus::found);
    CHECK(equal(permute(m, e.rows, e.cols), permute(m, p, p)));
  }
}
