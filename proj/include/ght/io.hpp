#pragma once

// JSON file formats for matrices, signals and reports. Keys are written in
// a fixed order so output diffs cleanly.
//
//   matrix: {"format": "ght-matrix", "ring": "cyclotomic:4", "order": v,
//            "entries": [[e, ...], ...], "tree": {...}?}
//   signal: {"format": "ght-signal", "ring": ..., "length": v, "elements": [e, ...]}
//   tree:   {"leaf": {"order": v, "entries": ...}} | {"tensor": [l, r]}
//           | {"permuted": {"rows": [...], "cols": [...], "child": t}}
//
// Elements: rationals "p/q"; cyclotomic ["p/q", ...] low degree first;
// field residues [c0] or [c0, c1]; complex [re, im].

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ght/catalog.hpp"
#include "ght/gbh.hpp"
#include "ght/jacket.hpp"
#include "ght/transform.hpp"

namespace ght {

using Json = nlohmann::ordered_json;

/// Malformed input; `pointer` is the JSON pointer of the offending value.
class FormatError : public Error {
 public:
  FormatError(std::string pointer, const std::string& what)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}
  [[nodiscard]] const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

Json encode_element(const Ring& ring, const Element& e);
Element decode_element(const Ring& ring, const Json& j, const std::string& pointer = "");

Json to_json(const GMatrix& m, bool with_tree = true);
Json to_json(const FactorTree& t);
Json to_json(const Signal& s);
Json to_json(const Permutation& p);
Json to_json(const GbhReport& r);
Json to_json(const JacketReport& r);
Json to_json(const EquivResult& r);
Json to_json(const QuadriphaseSequence& s);
Json to_json(const FamilyLabel& l);

/// Checks every field; a recorded tree must expand to the entries.
GMatrix matrix_from_json(const Json& j);
Signal signal_from_json(const Json& j);
Permutation permutation_from_json(const Json& j, const std::string& pointer = "");

/// Parses text; syntax errors become FormatError with a byte offset.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
/// One key per line; arrays holding no objects or nested arrays of arrays stay on one line.
std::string pretty(const Json& j);

std::string to_string(PrimaryCertificate c);
std::string to_string(EquivStatus s);

}  // namespace ght
