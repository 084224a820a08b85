#include "ght/io.hpp"

#include <fstream>
#include <sstream>

namespace ght {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t k) { return base + "/" + std::to_string(k); }

const Json& field(const Json& j, const char* key, const std::string& ptr) {
  if (!j.is_object()) throw FormatError(ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(ptr, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t positive(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) throw FormatError(ptr, "expected a positive integer");
  return j.get<std::size_t>();
}

Rational rational_from(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw FormatError(ptr, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(ptr, e.what());
  }
}

Ring ring_from(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw FormatError(ptr, "expected a ring spec string");
  try {
    return Ring(RingSpec::parse(j.get<std::string>()));
  } catch (const std::exception& e) {
    throw FormatError(ptr, e.what());
  }
}

void expect_format(const Json& j, const char* name) {
  const Json& f = field(j, "format", "");
  if (!f.is_string() || f.get<std::string>() != name) throw FormatError("/format", std::string("expected \"") + name + "\"");
}

Json grid(const GMatrix& m) {
  std::vector<Json> pal;
  pal.reserve(m.palette().size());
  for (const auto& e : m.palette()) pal.push_back(encode_element(m.ring(), e));
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.order(); ++j) row.push_back(pal[m.index_at(i, j)]);
    rows.push_back(std::move(row));
  }
  return rows;
}

GMatrix grid_from(const Ring& ring, std::size_t v, const Json& rows, const std::string& ptr) {
  if (!rows.is_array() || rows.size() != v) throw FormatError(ptr, "expected " + std::to_string(v) + " rows");
  PaletteBuilder pb(ring);
  std::vector<std::uint32_t> idx;
  idx.reserve(v * v);
  for (std::size_t i = 0; i < v; ++i) {
    const Json& row = rows[i];
    const std::string rp = at(ptr, i);
    if (!row.is_array() || row.size() != v) throw FormatError(rp, "expected " + std::to_string(v) + " entries");
    for (std::size_t k = 0; k < v; ++k) {
      const Element e = decode_element(ring, row[k], at(rp, k));
      if (!ring.is_unit(e)) throw FormatError(at(rp, k), "entry is not a unit");
      idx.push_back(pb.intern(e));
    }
  }
  return {ring, v, pb.take(), std::move(idx)};
}

FactorTreePtr tree_from(const Ring& ring, const Json& j, const std::string& ptr) {
  if (!j.is_object() || j.size() != 1) throw FormatError(ptr, "expected one of leaf/tensor/permuted");
  if (const auto it = j.find("leaf"); it != j.end()) {
    const std::string lp = at(ptr, "leaf");
    const std::size_t v = positive(field(*it, "order", lp), at(lp, "order"));
    auto m = std::make_shared<const GMatrix>(grid_from(ring, v, field(*it, "entries", lp), at(lp, "entries")));
    return std::make_shared<FactorTree>(FactorTree{FactorTree::Leaf{std::move(m)}});
  }
  if (const auto it = j.find("tensor"); it != j.end()) {
    const std::string tp = at(ptr, "tensor");
    if (!it->is_array() || it->size() != 2) throw FormatError(tp, "expected [left, right]");
    return std::make_shared<FactorTree>(
        FactorTree{FactorTree::Tensor{tree_from(ring, (*it)[0], at(tp, 0)), tree_from(ring, (*it)[1], at(tp, 1))}});
  }
  if (const auto it = j.find("permuted"); it != j.end()) {
    const std::string pp = at(ptr, "permuted");
    auto child = tree_from(ring, field(*it, "child", pp), at(pp, "child"));
    Permutation rows = permutation_from_json(field(*it, "rows", pp), at(pp, "rows"));
    Permutation cols = permutation_from_json(field(*it, "cols", pp), at(pp, "cols"));
    if (rows.size() != child->order() || cols.size() != child->order()) {
      throw FormatError(pp, "permutation size does not match the child order");
    }
    return std::make_shared<FactorTree>(FactorTree{FactorTree::Permuted{std::move(child), rows, cols}});
  }
  throw FormatError(ptr, "expected one of leaf/tensor/permuted");
}

}  // namespace

Json encode_element(const Ring& ring, const Element& e) {
  switch (ring.kind()) {
    case RingKind::rationals:
      return std::get<Rational>(e.value).str();
    case RingKind::cyclotomic: {
      Json a = Json::array();
      for (const auto& c : std::get<CycloCoeffs>(e.value)) a.push_back(c.str());
      return a;
    }
    case RingKind::prime_field:
      return Json::array({std::get<FieldValue>(e.value).c0});
    case RingKind::extension_field: {
      const auto& f = std::get<FieldValue>(e.value);
      return Json::array({f.c0, f.c1});
    }
    case RingKind::complex_float: {
      const auto z = std::get<std::complex<double>>(e.value);
      return Json::array({z.real(), z.imag()});
    }
  }
  throw Error("internal: unknown ring kind");
}

Element decode_element(const Ring& ring, const Json& j, const std::string& ptr) {
  switch (ring.kind()) {
    case RingKind::rationals:
      return ring.from_rational(rational_from(j, ptr));
    case RingKind::cyclotomic: {
      if (!j.is_array() || j.size() != ring.degree()) {
        throw FormatError(ptr, "expected " + std::to_string(ring.degree()) + " rational coefficients");
      }
      CycloCoeffs c;
      for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rational_from(j[k], at(ptr, k)));
      return Element{std::move(c)};
    }
    case RingKind::prime_field:
    case RingKind::extension_field: {
      const std::size_t len = ring.kind() == RingKind::prime_field ? 1 : 2;
      if (!j.is_array() || j.size() != len) throw FormatError(ptr, "expected " + std::to_string(len) + " residues");
      std::int64_t c[2] = {0, 0};
      for (std::size_t k = 0; k < len; ++k) {
        if (!j[k].is_number_integer()) throw FormatError(at(ptr, k), "expected an integer residue");
        c[k] = j[k].get<std::int64_t>();
        if (c[k] < 0 || c[k] >= ring.characteristic()) throw FormatError(at(ptr, k), "residue out of range");
      }
      return Element{FieldValue{c[0], c[1]}};
    }
    case RingKind::complex_float: {
      if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError(ptr, "expected [re, im]");
      }
      return ring.from_complex({j[0].get<double>(), j[1].get<double>()});
    }
  }
  throw Error("internal: unknown ring kind");
}

Json to_json(const Permutation& p) { return Json(p.image()); }

Json to_json(const FactorTree& t) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        Json j;
        if constexpr (std::is_same_v<T, FactorTree::Leaf>) {
          j["leaf"] = Json{{"order", n.matrix->order()}, {"entries", grid(*n.matrix)}};
        } else if constexpr (std::is_same_v<T, FactorTree::Tensor>) {
          j["tensor"] = Json::array({to_json(*n.left), to_json(*n.right)});
        } else {
          j["permuted"] = Json{{"rows", to_json(n.rows)}, {"cols", to_json(n.cols)}, {"child", to_json(*n.child)}};
        }
        return j;
      },
      t.node);
}

Json to_json(const GMatrix& m, bool with_tree) {
  Json j;
  j["format"] = "ght-matrix";
  j["ring"] = m.ring().spec().str();
  j["order"] = m.order();
  j["entries"] = grid(m);
  if (with_tree && m.tree()) j["tree"] = to_json(*m.tree());
  return j;
}

Json to_json(const Signal& s) {
  Json j;
  j["format"] = "ght-signal";
  j["ring"] = s.ring.spec().str();
  j["length"] = s.length();
  Json e = Json::array();
  for (const auto& x : s.elements) e.push_back(encode_element(s.ring, x));
  j["elements"] = std::move(e);
  return j;
}

GMatrix matrix_from_json(const Json& j) {
  expect_format(j, "ght-matrix");
  const Ring ring = ring_from(field(j, "ring", ""), "/ring");
  const std::size_t v = positive(field(j, "order", ""), "/order");
  GMatrix m = grid_from(ring, v, field(j, "entries", ""), "/entries");
  if (const auto it = j.find("tree"); it != j.end()) {
    auto tree = tree_from(ring, *it, "/tree");
    try {
      m = m.with_tree(std::move(tree));
    } catch (const Error& e) {
      throw FormatError("/tree", e.what());
    }
  }
  return m;
}

Signal signal_from_json(const Json& j) {
  expect_format(j, "ght-signal");
  const Ring ring = ring_from(field(j, "ring", ""), "/ring");
  const std::size_t v = positive(field(j, "length", ""), "/length");
  const Json& e = field(j, "elements", "");
  if (!e.is_array() || e.size() != v) throw FormatError("/elements", "expected " + std::to_string(v) + " elements");
  Signal s{ring, {}};
  for (std::size_t k = 0; k < v; ++k) s.elements.push_back(decode_element(ring, e[k], at("/elements", k)));
  return s;
}

Permutation permutation_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw FormatError(ptr, "expected an image list");
  std::vector<std::size_t> img;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_integer() || j[k].get<std::int64_t>() < 0) throw FormatError(at(ptr, k), "expected a non-negative integer");
    img.push_back(j[k].get<std::size_t>());
  }
  try {
    return Permutation(std::move(img));
  } catch (const Error& e) {
    throw FormatError(ptr, e.what());
  }
}

std::string to_string(PrimaryCertificate c) {
  return c == PrimaryCertificate::primary_by_width ? "primary-by-width" : "unknown";
}

std::string to_string(EquivStatus s) {
  switch (s) {
    case EquivStatus::found: return "found";
    case EquivStatus::none: return "none";
    case EquivStatus::budget_exceeded: return "budget-exceeded";
  }
  return "none";
}

Json to_json(const GbhReport& r) {
  Json j;
  j["report"] = "gbh";
  j["is_gbh"] = r.is_gbh;
  j["v"] = r.v;
  if (r.w) {
    j["w"] = *r.w;
  } else {
    j["w"] = "unknown";
  }
  j["char_check"] = r.char_check;
  j["pm1_fast_path"] = r.pm1_fast_path;
  j["failure_count"] = r.failure_count;
  Json f = Json::array();
  for (const auto& x : r.failures) f.push_back(Json{{"product", x.product}, {"row", x.row}, {"col", x.col}});
  j["failures"] = std::move(f);
  return j;
}

Json to_json(const JacketReport& r) {
  Json j;
  j["report"] = "jacket";
  j["jacketizable"] = true;
  j["is_jacket_form"] = r.is_jacket_form;
  j["width"] = r.width;
  j["pm1_rows"] = r.pm1_rows;
  j["pm1_cols"] = r.pm1_cols;
  j["certificate"] = to_string(r.certificate);
  j["row_witness"] = to_json(r.row_witness);
  j["col_witness"] = to_json(r.col_witness);
  return j;
}

Json to_json(const EquivResult& r) {
  Json j;
  j["report"] = "equivalence";
  j["status"] = to_string(r.status);
  j["nodes"] = r.nodes;
  if (r.status == EquivStatus::found) {
    j["rows"] = to_json(r.rows);
    j["cols"] = to_json(r.cols);
  }
  return j;
}

Json to_json(const QuadriphaseSequence& s) { return Json(std::vector<int>(s.phases.begin(), s.phases.end())); }

Json to_json(const FamilyLabel& l) {
  return Json{{"ell", l.ell}, {"eps", l.eps ? 1 : 0}, {"delta", l.delta ? 1 : 0}, {"n", l.n}, {"tag", to_string(l.tag)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("", "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << pretty(j) << '\n';
}

namespace {

bool inline_array(const Json& j) {
  for (const auto& x : j) {
    if (x.is_object()) return false;
    if (x.is_array()) {
      for (const auto& y : x) {
        if (y.is_structured()) return false;
      }
    }
  }
  return true;
}

void pretty_into(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, val] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      pretty_into(out, val, depth + 1);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && !j.empty() && !inline_array(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      pretty_into(out, j[k], depth + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty(const Json& j) {
  std::string out;
  pretty_into(out, j, 0);
  return out;
}

}  // namespace ght
