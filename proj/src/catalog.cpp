#include "ght/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ght/gbh.hpp"
#include "ght/jacket.hpp"

namespace ght {

namespace {

GMatrix from_rows(const Ring& ring, std::size_t v, const std::vector<Element>& e) { return {ring, v, e}; }

// Matrix of base^exps[k], exponents taken mod period.
GMatrix power_table(const Ring& ring, std::size_t v, const Element& base, std::size_t period,
                    std::span<const int> exps) {
  std::vector<Element> powers;
  Element cur = ring.one();
  for (std::size_t k = 0; k < period; ++k) {
    powers.push_back(cur);
    cur = ring.mul(cur, base);
  }
  std::vector<std::uint32_t> idx(exps.size());
  for (std::size_t k = 0; k < exps.size(); ++k) {
    idx[k] = static_cast<std::uint32_t>(((exps[k] % static_cast<int>(period)) + static_cast<int>(period)) % period);
  }
  return {ring, v, std::move(powers), std::move(idx)};
}

// [[a, b], [c, d]] from four blocks of equal order.
GMatrix blocks(const GMatrix& a, const GMatrix& b, const GMatrix& c, const GMatrix& d) {
  const std::size_t h = a.order();
  const std::size_t v = 2 * h;
  PaletteBuilder pb(a.ring());
  std::vector<std::uint32_t> idx(v * v);
  const std::array<const GMatrix*, 4> q{&a, &b, &c, &d};
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      const GMatrix& m = *q[(i / h) * 2 + j / h];
      idx[i * v + j] = pb.intern(m(i % h, j % h));
    }
  }
  return {a.ring(), v, pb.take(), std::move(idx)};
}

GMatrix negated(const GMatrix& m) { return scalar_mul(m.ring().neg(m.ring().one()), m); }

void require_nontrivial_unit(const Ring& ring, const Element& r, const char* what) {
  if (!ring.contains(r) || !ring.is_unit(r)) throw Error(std::string(what) + ": r must be a unit");
  const Element one = ring.one();
  if (ring.eq(r, one) || ring.eq(r, ring.neg(one))) throw Error(std::string(what) + ": r must differ from +-1");
}

void require_order(const Ring& ring, const Element& a, std::uint64_t order, const char* what) {
  const auto ord = ring.multiplicative_order(a, order);
  if (!ord || *ord != order) {
    throw Error(std::string(what) + ": parameter must have multiplicative order exactly " + std::to_string(order));
  }
}

GMatrix with_leaf(const GMatrix& m) { return m.with_tree(m.tree_or_leaf()); }

// Powers of alpha; 3 stands for alpha^3 = -1.
constexpr std::array<int, 36> kK3{0, 0, 0, 0, 0, 0,  //
                                  0, 1, 2, 5, 4, 3,  //
                                  0, 2, 4, 4, 2, 0,  //
                                  0, 5, 4, 1, 2, 3,  //
                                  0, 4, 2, 2, 4, 0,  //
                                  0, 3, 0, 3, 0, 3};

// Powers of i.
constexpr std::array<int, 64> kK4{0, 0, 0, 0, 0, 0, 0, 0,  //
                                  0, 1, 3, 0, 2, 1, 3, 2,  //
                                  0, 3, 2, 1, 1, 2, 3, 0,  //
                                  0, 0, 1, 1, 3, 3, 2, 2,  //
                                  0, 2, 1, 3, 1, 3, 0, 2,  //
                                  0, 1, 2, 3, 3, 2, 1, 0,  //
                                  0, 3, 3, 2, 0, 1, 1, 2,  //
                                  0, 2, 0, 2, 2, 0, 2, 0};

// Entries as [-][r][b|b2]; "1" is the empty product.
const char* const kK6[12][12] = {
    {"1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1"},
    {"1", "-r", "r", "1", "-r", "r", "-1", "1", "-r", "r", "-1", "-1"},
    {"1", "r", "-r", "1", "r", "-r", "-1", "1", "r", "-r", "-1", "-1"},
    {"1", "1", "1", "b", "b", "b", "b", "b2", "b2", "b2", "b2", "1"},
    {"1", "-r", "r", "b", "-rb", "rb", "-b", "b2", "-rb2", "rb2", "-b2", "-1"},
    {"1", "r", "-r", "b", "rb", "-rb", "-b", "b2", "rb2", "-rb2", "-b2", "-1"},
    {"1", "-1", "-1", "b", "-b", "-b", "b", "b2", "-b2", "-b2", "b2", "1"},
    {"1", "1", "1", "b2", "b2", "b2", "b2", "b", "b", "b", "b", "1"},
    {"1", "-r", "r", "b2", "-rb2", "rb2", "-b2", "b", "-rb", "rb", "-b", "-1"},
    {"1", "r", "-r", "b2", "rb2", "-rb2", "-b2", "b", "rb", "-rb", "-b", "-1"},
    {"1", "-1", "-1", "b2", "-b2", "-b2", "b2", "b", "-b", "-b", "b", "1"},
    {"1", "-1", "-1", "1", "-1", "-1", "1", "1", "-1", "-1", "1", "1"},
};

Element k6_entry(const Ring& ring, std::string_view tok, const Element& r, const Element& beta) {
  Element e = ring.one();
  bool neg = false;
  if (!tok.empty() && tok.front() == '-') {
    neg = true;
    tok.remove_prefix(1);
  }
  if (!tok.empty() && tok.front() == 'r') {
    e = r;
    tok.remove_prefix(1);
  }
  if (tok == "b") {
    e = ring.mul(e, beta);
  } else if (tok == "b2") {
    e = ring.mul(e, ring.mul(beta, beta));
  }
  return neg ? ring.neg(e) : e;
}

bool complex_type(const Ring& ring) {
  return ring.kind() == RingKind::cyclotomic || ring.kind() == RingKind::complex_float;
}

bool is_real(const Ring& ring, const Element& r) {
  if (ring.characteristic() != 0) return false;
  if (ring.kind() == RingKind::complex_float) return std::abs(ring.to_complex(r).imag()) <= *ring.spec().tol;
  return ring.as_rational(r).has_value();
}

bool squares_to_minus_one(const Ring& ring, const Element& a) {
  return ring.eq(ring.mul(a, a), ring.neg(ring.one()));
}

}  // namespace

Element imaginary_unit(const Ring& ring) { return ring.pow(ring.root_of_unity(4), 3); }

GMatrix walsh(unsigned t, const Ring& ring) {
  if (t < 1) throw Error("walsh needs t >= 1");
  const Element one = ring.one();
  const GMatrix s1 = with_leaf(from_rows(ring, 2, {one, one, one, ring.neg(one)}));
  GMatrix m = s1;
  for (unsigned k = 2; k <= t; ++k) m = tensor(m, s1.without_tree());
  return m;
}

GMatrix cbt(unsigned t, const Ring& ring) {
  if (t < 1) throw Error("cbt needs t >= 1");
  if (!ring.has_root_of_unity(4)) throw Error("cbt needs an element of order 4 in " + ring.spec().str());
  const Element i = imaginary_unit(ring);
  const Element one = ring.one();
  const GMatrix c1 = from_rows(ring, 2, {one, ring.neg(i), one, i});
  if (t == 1) return c1;
  const GMatrix s1 = walsh(1, ring).without_tree();
  GMatrix c = blocks(s1, s1, c1, negated(c1));
  for (unsigned m = 3; m <= t; ++m) {
    const GMatrix low = tensor(c1, walsh(m - 2, ring)).without_tree();
    c = blocks(c, c, low, negated(low));
  }
  return c;
}

GMatrix k1(const Ring& ring) { return walsh(1, ring).without_tree(); }

GMatrix k2(const Ring& ring, const Element& r) {
  require_nontrivial_unit(ring, r, "K2");
  return k2_pattern(ring, r);
}

GMatrix k2_pattern(const Ring& ring, const Element& r) {
  if (!ring.contains(r) || !ring.is_unit(r)) throw Error("K2: r must be a unit");
  const Element one = ring.one();
  const Element m1 = ring.neg(one);
  const Element mr = ring.neg(r);
  return from_rows(ring, 4, {one, one, one, one, one, mr, r, m1, one, r, mr, m1, one, m1, m1, one});
}

GMatrix k3(const Ring& ring, const Element& alpha) {
  require_order(ring, alpha, 6, "K3");
  return power_table(ring, 6, alpha, 6, kK3);
}

GMatrix k4(const Ring& ring) {
  if (!ring.has_root_of_unity(4)) throw Error("K4 needs an element of order 4 in " + ring.spec().str());
  return power_table(ring, 8, imaginary_unit(ring), 4, kK4);
}

GMatrix k6(const Ring& ring, const Element& r) {
  require_nontrivial_unit(ring, r, "K6");
  if (!ring.has_root_of_unity(3)) throw Error("K6 needs an element of order 3 in " + ring.spec().str());
  const Element beta = ring.root_of_unity(3);
  std::vector<Element> e;
  e.reserve(144);
  for (const auto& row : kK6) {
    for (const char* tok : row) e.push_back(k6_entry(ring, tok, r, beta));
  }
  return from_rows(ring, 12, e);
}

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::wht: return "WHT";
    case FamilyTag::dft_equivalent: return "DFT-equivalent";
    case FamilyTag::cwht: return "CWHT";
    case FamilyTag::complex_rjt: return "complex-RJT";
    case FamilyTag::extended_complex_rjt: return "extended-complex-RJT";
    case FamilyTag::unnamed: return "unnamed";
  }
  return "unnamed";
}

FamilyTag classify_family(const FamilyLabel& s, const std::optional<Element>& r, const std::optional<Element>& alpha,
                          const Ring& ring) {
  if (s.ell >= 1 && !s.eps && !s.delta) return FamilyTag::wht;
  if (s.ell == 0 && !s.eps && s.delta && complex_type(ring)) return FamilyTag::dft_equivalent;
  if (s.eps && !s.delta && r && is_real(ring, *r)) return FamilyTag::cwht;
  if (!s.eps && s.delta && s.n == 2 && complex_type(ring) && alpha && squares_to_minus_one(ring, *alpha)) {
    return FamilyTag::complex_rjt;
  }
  if (s.eps && !s.delta && complex_type(ring) && r && squares_to_minus_one(ring, *r)) return FamilyTag::complex_rjt;
  if (!s.eps && s.delta) return FamilyTag::extended_complex_rjt;
  return FamilyTag::unnamed;
}

FamilyMember family(unsigned ell, bool eps, bool delta, std::size_t n, const std::optional<Element>& r,
                    const Ring& ring, const std::optional<Element>& alpha) {
  if (ell == 0 && !eps && !delta) throw Error("family: the empty product is not a jacket matrix");
  std::vector<GMatrix> factors;
  for (unsigned k = 0; k < ell; ++k) factors.push_back(k1(ring));
  std::optional<Element> a;
  if (eps) {
    if (!r) throw Error("family: eps = 1 needs r");
    factors.push_back(k2(ring, *r));
  }
  if (delta) {
    if (n == 0) throw Error("family: n must be positive");
    a = alpha ? *alpha : ring.root_of_unity(2 * n);
    factors.push_back(complex_rjt(n, *a, ring));
  }
  GMatrix m = with_leaf(factors.front());
  for (std::size_t k = 1; k < factors.size(); ++k) m = tensor(m, factors[k]);
  FamilyLabel label{ell, eps, delta, delta ? n : 0, FamilyTag::unnamed};
  label.tag = classify_family(label, eps ? r : std::nullopt, a, ring);
  return {std::move(m), label};
}

// ---- quadriphase sequences ---------------------------------------------------

std::string QuadriphaseSequence::str() const {
  std::string s;
  for (const auto p : phases) s.push_back(static_cast<char>('0' + p));
  return s;
}

QuadriphaseSequence QuadriphaseSequence::parse(const std::string& digits) {
  QuadriphaseSequence s;
  for (const char c : digits) {
    if (c < '0' || c > '3') throw Error("quadriphase digits must be 0..3, got '" + std::string(1, c) + "'");
    s.phases.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (s.phases.empty()) throw Error("empty quadriphase sequence");
  return s;
}

Element autocorrelation(const Ring& ring, const QuadriphaseSequence& s, std::size_t tau) {
  const std::size_t len = s.length();
  if (len == 0) throw Error("empty quadriphase sequence");
  std::array<std::int64_t, 4> count{};
  for (std::size_t j = 0; j < len; ++j) ++count[(4 + s.phases[j] - s.phases[(j + tau) % len]) % 4];
  const Element i = imaginary_unit(ring);
  Element out = ring.from_int(count[0] - count[2]);
  ring.mul_add(out, ring.from_int(count[1] - count[3]), i);
  return out;
}

bool is_perfect(const Ring& ring, const QuadriphaseSequence& s) {
  for (std::size_t tau = 1; tau < s.length(); ++tau) {
    if (!ring.is_zero(autocorrelation(ring, s, tau))) return false;
  }
  return true;
}

GMatrix back_circulant(const Ring& ring, const QuadriphaseSequence& s) {
  const std::size_t len = s.length();
  if (len == 0) throw Error("empty quadriphase sequence");
  std::vector<int> exps(len * len);
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t k = 0; k < len; ++k) exps[j * len + k] = s.phases[(j + k) % len];
  }
  return power_table(ring, len, imaginary_unit(ring), 4, exps);
}

std::vector<QuadriphaseSequence> search_perfect_quadriphase(std::size_t length, const Ring& ring) {
  if (length == 0 || length > 10) throw Error("quadriphase search supports lengths 1..10");
  if (!ring.has_root_of_unity(4)) throw Error("quadriphase search needs an element of order 4");
  const std::int64_t total = std::int64_t{1} << (2 * (length - 1));
  auto decode = [length](std::int64_t code) {
    QuadriphaseSequence s;
    s.phases.assign(length, 0);
    for (std::size_t k = length - 1; k >= 1; --k) {
      s.phases[k] = static_cast<std::uint8_t>(code & 3);
      code >>= 2;
    }
    return s;
  };
  std::vector<char> hit(static_cast<std::size_t>(total), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t code = 0; code < total; ++code) hit[static_cast<std::size_t>(code)] = is_perfect(ring, decode(code));
  std::vector<QuadriphaseSequence> out;
  for (std::int64_t code = 0; code < total; ++code) {
    if (hit[static_cast<std::size_t>(code)]) out.push_back(decode(code));
  }
  return out;
}

std::vector<GMatrix> enumerate_2x2_jackets(std::uint64_t w, const Ring& ring) {
  if (w == 0) throw Error("root-of-unity group order must be positive");
  const Element g = ring.root_of_unity(w);
  std::vector<Element> roots;
  Element cur = ring.one();
  for (std::uint64_t k = 0; k < w; ++k) {
    roots.push_back(cur);
    cur = ring.mul(cur, g);
  }
  std::vector<GMatrix> out;
  for (std::uint64_t a = 0; a < w; ++a) {
    for (std::uint64_t b = 0; b < w; ++b) {
      for (std::uint64_t c = 0; c < w; ++c) {
        for (std::uint64_t d = 0; d < w; ++d) {
          const GMatrix m(ring, 2, std::vector<Element>{roots[a], roots[b], roots[c], roots[d]});
          if (m.is_normalised() && is_jacket_form(m) && verify_gbh(m).is_gbh) out.push_back(m);
        }
      }
    }
  }
  return out;
}

// ---- tokens ------------------------------------------------------------------

namespace {

struct Token {
  std::string name;
  std::vector<std::string> args;
};

Token split_token(const std::string& text) {
  Token t;
  const auto colon = text.find(':');
  t.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string part;
    while (std::getline(ss, part, ',')) t.args.push_back(part);
  }
  return t;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s.front() == '-') throw Error("bad " + what + " '" + s + "'");
  return v;
}

// Root-of-unity order a parameter r needs: 4 for i, 3 for b / b2, else 1.
std::uint64_t r_demand(const std::string& r) {
  std::string_view t = r;
  if (!t.empty() && t.front() == '-') t.remove_prefix(1);
  if (t == "i") return 4;
  if (t == "b" || t == "b2") return 3;
  return 1;
}

Element parse_r(const Ring& ring, const std::string& r) {
  std::string_view t = r;
  bool neg = false;
  if (!t.empty() && t.front() == '-') {
    neg = true;
    t.remove_prefix(1);
  }
  Element e;
  if (t == "i") {
    e = imaginary_unit(ring);
  } else if (t == "b") {
    e = ring.root_of_unity(3);
  } else if (t == "b2") {
    e = ring.pow(ring.root_of_unity(3), 2);
  } else {
    return ring.from_rational(Rational::parse(r));
  }
  return neg ? ring.neg(e) : e;
}

RingSpec ring_for(std::uint64_t w) {
  return w <= 2 ? RingSpec::rationals() : RingSpec::cyclotomic(static_cast<std::uint32_t>(w));
}

void expect_args(const Token& t, std::size_t lo, std::size_t hi) {
  if (t.args.size() < lo || t.args.size() > hi) throw Error("wrong number of arguments for token '" + t.name + "'");
}

}  // namespace

RingSpec natural_ring(const std::string& token) {
  const Token t = split_token(token);
  const auto& n = t.name;
  if (n == "walsh" || n == "k1") return RingSpec::rationals();
  if (n == "cbt" || n == "jcbt" || n == "k4" || n == "backcirc") return RingSpec::cyclotomic(4);
  if (n == "b3") return RingSpec::cyclotomic(3);
  if (n == "k3") return RingSpec::cyclotomic(6);
  if (n == "dft") {
    expect_args(t, 1, 1);
    return ring_for(parse_uint(t.args[0], "order"));
  }
  if (n == "rjt") {
    expect_args(t, 1, 1);
    return ring_for(2 * parse_uint(t.args[0], "order"));
  }
  if (n == "k2") return ring_for(t.args.empty() ? 1 : r_demand(t.args[0]));
  if (n == "k6") return ring_for(std::lcm<std::uint64_t>(3, t.args.empty() ? 1 : r_demand(t.args[0])));
  if (n == "family") {
    expect_args(t, 4, 5);
    const bool eps = parse_uint(t.args[1], "eps") != 0;
    const bool delta = parse_uint(t.args[2], "delta") != 0;
    std::uint64_t w = 1;
    if (delta) w = std::lcm(w, 2 * parse_uint(t.args[3], "n"));
    if (eps && t.args.size() == 5) w = std::lcm(w, r_demand(t.args[4]));
    return ring_for(w);
  }
  throw Error("unknown catalog token '" + token + "'");
}

GMatrix from_token(const std::string& token, const std::optional<RingSpec>& ring_override) {
  const Token t = split_token(token);
  const Ring ring(ring_override ? *ring_override : natural_ring(token));
  const auto& n = t.name;
  auto uint_arg = [&](std::size_t k, const char* what) {
    expect_args(t, k + 1, k + 1);
    return parse_uint(t.args[k], what);
  };
  if (n == "walsh") return walsh(static_cast<unsigned>(uint_arg(0, "t")), ring);
  if (n == "cbt") return cbt(static_cast<unsigned>(uint_arg(0, "t")), ring);
  if (n == "jcbt") return jacketize_cbt(static_cast<unsigned>(uint_arg(0, "t")), ring).matrix;
  if (n == "dft") return dft_matrix(uint_arg(0, "order"), ring);
  if (n == "rjt") return jacketize_dft(uint_arg(0, "order"), ring).matrix;
  if (n == "b3") return b3(ring);
  if (n == "k1") return k1(ring);
  if (n == "k2") return k2(ring, parse_r(ring, t.args.empty() ? "2" : t.args[0]));
  if (n == "k3") return k3(ring, ring.root_of_unity(6));
  if (n == "k4") return k4(ring);
  if (n == "k6") return k6(ring, parse_r(ring, t.args.empty() ? "2" : t.args[0]));
  if (n == "backcirc") {
    expect_args(t, 1, 1);
    return back_circulant(ring, QuadriphaseSequence::parse(t.args[0]));
  }
  if (n == "family") {
    expect_args(t, 4, 5);
    const auto ell = static_cast<unsigned>(parse_uint(t.args[0], "ell"));
    const bool eps = parse_uint(t.args[1], "eps") != 0;
    const bool delta = parse_uint(t.args[2], "delta") != 0;
    const std::size_t order = parse_uint(t.args[3], "n");
    std::optional<Element> r;
    if (eps) r = parse_r(ring, t.args.size() == 5 ? t.args[4] : "2");
    return family(ell, eps, delta, order, r, ring).matrix;
  }
  throw Error("unknown catalog token '" + token + "'");
}

}  // namespace ght
