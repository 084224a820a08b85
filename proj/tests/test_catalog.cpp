#include <doctest.h>

#include <bitset>

#include "support.hpp"

using namespace ght;
using namespace testing;

namespace {

// Periodic autocorrelation over Z[i] with plain integers.
bool perfect_by_counting(const std::vector<int>& s) {
  const std::size_t n = s.size();
  for (std::size_t tau = 1; tau < n; ++tau) {
    int re = 0;
    int im = 0;
    for (std::size_t j = 0; j < n; ++j) {
      switch (((s[j] - s[(j + tau) % n]) % 4 + 4) % 4) {
        case 0: ++re; break;
        case 1: ++im; break;
        case 2: --re; break;
        case 3: --im; break;
      }
    }
    if (re != 0 || im != 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("walsh") {
    const Ring q = Q();
    CHECK(equal(walsh(1, q), ints(q, 2, {1, 1, 1, -1})));
    CHECK(equal(walsh(3, q), tensor(walsh(2, q), walsh(1, q))));
    const GMatrix w5 = walsh(5, q);
    REQUIRE(w5.tree());
    CHECK(w5.tree()->leaf_orders() == std::vector<std::size_t>(5, 2));
    CHECK(walsh(1, q).tree()->leaf_count() == 1);
    const auto rep = verify_gbh(w5);
    CHECK(rep.is_gbh);
    CHECK(rep.w == 2u);
    CHECK(rep.v == 32);
    CHECK_THROWS_AS((void)walsh(0, q), Error);
  }

  TEST_CASE("cbt") {
    const Ring r = cyc(4);
    const Element i = imaginary_unit(r);
    CHECK(std::abs(r.to_complex(i) - std::complex<double>(0, 1)) < 1e-12);
    const GMatrix c1 = cbt(1, r);
    CHECK(equal(c1, GMatrix(r, 2, std::vector<Element>{r.one(), r.neg(i), r.one(), i})));
    const GMatrix c2 = cbt(2, r);
    const GMatrix s1 = walsh(1, r);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        CHECK(r.eq(c2(a, b), s1(a, b)));
        CHECK(r.eq(c2(a, b + 2), s1(a, b)));
        CHECK(r.eq(c2(a + 2, b), c1(a, b)));
        CHECK(r.eq(c2(a + 2, b + 2), r.neg(c1(a, b))));
      }
    }
    // The recursion at m = 4: bottom half is C_1 (x) S_2 and its negative.
    const GMatrix c4 = cbt(4, r);
    const GMatrix c3 = cbt(3, r);
    const GMatrix low = tensor(c1, walsh(2, r));
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        CHECK(r.eq(c4(a, b), c3(a, b)));
        CHECK(r.eq(c4(a, b + 8), c3(a, b)));
        CHECK(r.eq(c4(a + 8, b), low(a, b)));
        CHECK(r.eq(c4(a + 8, b + 8), r.neg(low(a, b))));
      }
    }
    const auto rep = verify_gbh(c4);
    CHECK(rep.is_gbh);
    CHECK(rep.w == 4u);
    CHECK(rep.v == 16);
    CHECK_THROWS_AS((void)cbt(2, Q()), Error);
  }

  TEST_CASE("primary jacket matrices") {
    const Ring q = Q();
    CHECK(equal(k2_pattern(q, q.one()), walsh(2, q)));
    CHECK_THROWS_AS((void)k2(q, q.one()), Error);
    CHECK_THROWS_AS((void)k2(q, q.from_int(-1)), Error);
    CHECK_THROWS_AS((void)k2(q, q.zero()), Error);
    const GMatrix k = k2(q, q.from_int(2));
    CHECK(equal(k, ints(q, 4, {1, 1, 1, 1, 1, -2, 2, -1, 1, 2, -2, -1, 1, -1, -1, 1})));

    const Ring r6 = cyc(6);
    const Element a = r6.root_of_unity(6);
    const GMatrix m3 = k3(r6, a);
    const int row3[] = {0, 2, 4, 4, 2, 0};
    for (std::size_t j = 0; j < 6; ++j) CHECK(r6.eq(m3(2, j), r6.pow(a, row3[j])));
    CHECK_THROWS_AS((void)k3(r6, r6.root_of_unity(3)), Error);

    const Ring r4 = cyc(4);
    const GMatrix m4 = k4(r4);
    const int row8[] = {1, -1, 1, -1, -1, 1, -1, 1};
    for (std::size_t j = 0; j < 8; ++j) CHECK(r4.eq(m4(7, j), r4.from_int(row8[j])));
    CHECK_THROWS_AS((void)k4(Q()), Error);

    const Ring r3 = cyc(3);
    CHECK_THROWS_AS((void)k6(r3, r3.one()), Error);
    CHECK_THROWS_AS((void)k6(q, q.from_int(2)), Error);
  }

  TEST_CASE("every constructor verifies over its natural ring") {
    const std::vector<std::string> tokens{"walsh:1", "walsh:4",  "cbt:1",   "cbt:5",    "jcbt:3",   "dft:2",
                                          "dft:7",   "dft:12",   "rjt:3",   "rjt:5",    "b3",       "k1",
                                          "k2:2",    "k2:-1/2",  "k2:i",    "k2:b",     "k3",       "k4",
                                          "k6:2",    "k6:i",     "k6:b",    "family:2,0,0,1", "family:1,1,1,3,2",
                                          "family:0,1,1,2,i", "backcirc:00012021"};
    for (const auto& t : tokens) {
      CAPTURE(t);
      const GMatrix m = from_token(t);
      CHECK(Ring(natural_ring(t)) == m.ring());
      CHECK(verify_gbh(m).is_gbh);
    }
    CHECK_THROWS_AS((void)from_token("k9"), Error);
    CHECK_THROWS_AS((void)from_token("walsh:x"), Error);
    CHECK_THROWS_AS((void)from_token("walsh"), Error);
    CHECK_THROWS_AS((void)from_token("k2:1"), Error);
    CHECK_THROWS_AS((void)from_token("dft:3", RingSpec::rationals()), Error);
  }

  TEST_CASE("K6 equals the dagger of B3 and K2(r)") {
    const Ring r3 = cyc(3);
    const Element b = r3.root_of_unity(3);
    for (const Element& r : {r3.from_int(2), r3.from_int(3), r3.from_rational(Rational(-2, 5)), b,
                             r3.add(r3.one(), b), r3.neg(r3.mul(b, b))}) {
      CHECK(equal(k6(r3, r), dagger(b3(r3), k2(r3, r))));
    }
    const Ring f = gf25();
    CHECK(equal(k6(f, f.from_int(2)), dagger(b3(f), k2(f, f.from_int(2)))));
    const Ring c = cplx();
    CHECK(equal(k6(c, c.from_int(3)), dagger(b3(c), k2(c, c.from_int(3)))));
  }

  TEST_CASE("K3 over GF(25) is an extended complex RJT") {
    const Ring f = gf25();
    const GMatrix m = k3(f, f.root_of_unity(6));
    CHECK(verify_gbh(m).is_gbh);
    CHECK(is_jacket_form(m));
    const auto fam = family(0, false, true, 3, std::nullopt, f);
    CHECK(fam.label.tag == FamilyTag::extended_complex_rjt);
    CHECK(equal(fam.matrix, m));
  }

  TEST_CASE("family construction and classification") {
    const Ring q = Q();
    const auto wht = family(2, false, false, 0, std::nullopt, q);
    CHECK(wht.label.tag == FamilyTag::wht);
    CHECK(equal(wht.matrix, walsh(2, q)));

    const auto dft = family(0, false, true, 3, std::nullopt, cplx());
    CHECK(dft.label.tag == FamilyTag::dft_equivalent);
    CHECK(equal(dft.matrix, jacketize_dft(3, cplx()).matrix));
    CHECK(family(0, false, true, 3, std::nullopt, cyc(6)).label.tag == FamilyTag::dft_equivalent);

    const auto cw = family(1, true, false, 0, q.from_int(2), q);
    CHECK(cw.label.tag == FamilyTag::cwht);
    CHECK(equal(cw.matrix, tensor(k1(q), k2(q, q.from_int(2)))));
    REQUIRE(cw.matrix.tree());
    CHECK(cw.matrix.tree()->leaf_orders() == std::vector<std::size_t>{2, 4});

    const Ring r4 = cyc(4);
    CHECK(family(0, true, false, 0, imaginary_unit(r4), r4).label.tag == FamilyTag::complex_rjt);
    CHECK(family(0, true, false, 0, r4.neg(imaginary_unit(r4)), r4).label.tag == FamilyTag::complex_rjt);
    CHECK(family(1, false, true, 2, std::nullopt, r4).label.tag == FamilyTag::complex_rjt);
    CHECK(family(2, false, true, 3, std::nullopt, cyc(6)).label.tag == FamilyTag::extended_complex_rjt);
    CHECK(family(1, true, true, 2, r4.from_int(2), r4).label.tag == FamilyTag::unnamed);
    CHECK(family(0, true, false, 0, gf25().from_int(2), gf25()).label.tag == FamilyTag::unnamed);

    CHECK_THROWS_AS((void)family(0, false, false, 1, std::nullopt, q), Error);
    CHECK_THROWS_AS((void)family(0, true, false, 0, q.one(), q), Error);
    CHECK_THROWS_AS((void)family(0, false, true, 3, std::nullopt, q), Error);

    const auto big = family(2, true, true, 3, cyc(12).from_int(2), cyc(12));
    REQUIRE(big.matrix.tree());
    CHECK(big.matrix.tree()->leaf_orders() == std::vector<std::size_t>{2, 2, 4, 6});
    CHECK(verify_gbh(big.matrix).is_gbh);
    CHECK(is_jacket_form(big.matrix));
  }

  TEST_CASE("autocorrelation") {
    const Ring r = cyc(4);
    const auto flat = QuadriphaseSequence::parse("0000000");
    CHECK(r.eq(autocorrelation(r, flat, 3), r.from_int(7)));
    CHECK_FALSE(is_perfect(r, flat));
    for (const char* s : {"0123", "00012021", "3102"}) {
      const auto q = QuadriphaseSequence::parse(s);
      CHECK(r.eq(autocorrelation(r, q, 0), r.from_int(static_cast<std::int64_t>(q.length()))));
    }
    CHECK_THROWS_AS(QuadriphaseSequence::parse("0124"), Error);
  }

  TEST_CASE("length-8 perfect sequences") {
    const Ring r = cyc(4);
    const auto found = search_perfect_quadriphase(8, r);
    REQUIRE_FALSE(found.empty());
    std::size_t brute = 0;
    for (int code = 0; code < (1 << 14); ++code) {
      std::vector<int> s(8, 0);
      for (int k = 7; k >= 1; --k) s[static_cast<std::size_t>(k)] = (code >> (2 * (7 - k))) & 3;
      if (perfect_by_counting(s)) ++brute;
    }
    CHECK(found.size() == brute);
    CHECK(found.size() * 100 < 16384);
    CHECK(std::is_sorted(found.begin(), found.end(),
                         [](const auto& a, const auto& b) { return a.phases < b.phases; }));
    for (const auto& s : found) {
      CHECK(s.phases[0] == 0);
      for (std::size_t tau = 1; tau < 8; ++tau) CHECK(r.is_zero(autocorrelation(r, s, tau)));
      const auto rep = verify_gbh(back_circulant(r, s));
      CHECK(rep.is_gbh);
      CHECK(rep.w == 4u);
    }
    CHECK_THROWS_AS((void)search_perfect_quadriphase(11, r), Error);
  }

  TEST_CASE("K4 is equivalent to a normalised back-circulant") {
    const Ring r = cyc(4);
    const GMatrix k = k4(r);
    std::size_t hits = 0;
    for (const auto& s : search_perfect_quadriphase(8, r)) {
      const GMatrix n = normalize(back_circulant(r, s)).matrix;
      const auto e = perm_equivalent(n, k);
      if (e.status == EquivStatus::found) {
        ++hits;
        CHECK(equal(permute(n, e.rows, e.cols), k));
      }
    }
    CHECK(hits > 0);
  }

  TEST_CASE("back-circulants are symmetric; perfect iff GBH at length 4") {
    const Ring r = cyc(4);
    for (int code = 0; code < 256; ++code) {
      QuadriphaseSequence s;
      for (int k = 0; k < 4; ++k) s.phases.push_back(static_cast<std::uint8_t>((code >> (2 * k)) & 3));
      const GMatrix m = back_circulant(r, s);
      CHECK(equal(m, transpose(m)));
      CHECK(is_perfect(r, s) == verify_gbh(m).is_gbh);
    }
    for (int code = 0; code < (1 << 10); ++code) {
      QuadriphaseSequence s;
      for (int k = 0; k < 6; ++k) s.phases.push_back(static_cast<std::uint8_t>(k == 0 ? 0 : (code >> (2 * (k - 1))) & 3));
      CHECK(is_perfect(r, s) == verify_gbh(back_circulant(r, s)).is_gbh);
    }
  }

  TEST_CASE("the only 2x2 jacket matrix is S_1") {
    for (const std::uint64_t w : {2u, 4u, 6u, 8u, 12u}) {
      const Ring r = cyc(static_cast<std::uint32_t>(w));
      const auto found = enumerate_2x2_jackets(w, r);
      REQUIRE(found.size() == 1);
      CHECK(equal(found[0], walsh(1, r)));
    }
  }

  TEST_CASE("tokens pick their natural ring") {
    CHECK(natural_ring("walsh:3") == RingSpec::rationals());
    CHECK(natural_ring("k2:i") == RingSpec::cyclotomic(4));
    CHECK(natural_ring("k6:2") == RingSpec::cyclotomic(3));
    CHECK(natural_ring("k6:i") == RingSpec::cyclotomic(12));
    CHECK(natural_ring("family:1,0,1,3") == RingSpec::cyclotomic(6));
    CHECK(natural_ring("dft:2") == RingSpec::rationals());
    CHECK(from_token("k6:2", RingSpec::extension_field(5)).ring().kind() == RingKind::extension_field);
  }
}
