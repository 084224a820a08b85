// ght: command-line front end.
//
// Exit status: 0 success / verified, 1 checked-false (not GBH, not
// equivalent, not jacketizable), 2 usage or input error, search budget
// exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ght/catalog.hpp"
#include "ght/gbh.hpp"
#include "ght/io.hpp"
#include "ght/jacket.hpp"
#include "ght/transform.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

std::optional<ght::RingSpec> ring_override(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return ght::RingSpec::parse(text);
}

// A matrix argument is a file when one exists at that path, else a catalog token.
ght::GMatrix load_matrix(const std::string& arg, const std::string& ring) {
  if (std::filesystem::exists(arg)) return ght::matrix_from_json(ght::read_json_file(arg));
  return ght::from_token(arg, ring_override(ring));
}

void emit(const ght::Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << ght::pretty(j) << '\n';
  } else {
    ght::write_json_file(out, j);
  }
}

ght::Json matrix_list(const std::vector<ght::GMatrix>& ms) {
  ght::Json a = ght::Json::array();
  for (const auto& m : ms) a.push_back(ght::to_json(m, false)["entries"]);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised Hadamard transforms over exact rings"};
  app.require_subcommand(1);
  int status = kOk;

  std::string token, out, ring;
  bool no_tree = false;
  auto* gen = app.add_subcommand("gen", "Write a catalog matrix to a matrix file");
  gen->add_option("token", token, "walsh:t cbt:t jcbt:t dft:n rjt:n b3 k1 k2:r k3 k4 k6:r family:l,e,d,n[,r] backcirc:digits")
      ->required();
  gen->add_option("-o,--out", out, "Output file (default stdout)");
  gen->add_option("--ring", ring, "Ring override, e.g. cyclotomic:12, gf:5, complex");
  gen->add_flag("--no-tree", no_tree, "Omit the factor tree");
  gen->callback([&] { emit(ght::to_json(ght::from_token(token, ring_override(ring)), !no_tree), out); });

  std::string mat;
  std::size_t max_failures = 32;
  auto* verify = app.add_subcommand("verify", "Check M M* = M* M = v I");
  verify->add_option("matrix", mat, "Matrix file or catalog token")->required();
  verify->add_option("--ring", ring, "Ring override for tokens");
  verify->add_option("--max-failures", max_failures, "Failure positions to list");
  verify->callback([&] {
    ght::GbhOptions opts;
    opts.max_failures = max_failures;
    const auto rep = ght::verify_gbh(load_matrix(mat, ring), opts);
    emit(ght::to_json(rep), "");
    status = rep.is_gbh ? kOk : kFalse;
  });

  auto* width = app.add_subcommand("width", "Jacket width and primality certificate");
  width->add_option("matrix", mat, "Matrix file or catalog token")->required();
  width->add_option("--ring", ring, "Ring override for tokens");
  width->callback([&] {
    const ght::GMatrix m = load_matrix(mat, ring);
    try {
      emit(ght::to_json(ght::jacket_width(m)), "");
    } catch (const ght::Error& e) {
      emit(ght::Json{{"report", "jacket"}, {"jacketizable", false}, {"reason", e.what()}}, "");
      status = kFalse;
    }
  });

  std::string mat_b;
  bool normalise = false;
  std::uint64_t budget = 10'000'000;
  auto* equiv = app.add_subcommand("equiv", "Search row/column permutations taking A to B");
  equiv->add_option("a", mat, "Matrix file or catalog token")->required();
  equiv->add_option("b", mat_b, "Matrix file or catalog token")->required();
  equiv->add_option("--ring", ring, "Ring override for tokens");
  equiv->add_flag("--normalize", normalise, "Normalise both matrices first");
  equiv->add_option("--budget", budget, "Search node cap");
  equiv->callback([&] {
    ght::GMatrix a = load_matrix(mat, ring);
    ght::GMatrix b = load_matrix(mat_b, ring);
    if (normalise) {
      a = ght::normalize(a).matrix;
      b = ght::normalize(b).matrix;
    }
    const auto res = ght::perm_equivalent(a, b, budget);
    emit(ght::to_json(res), "");
    status = res.status == ght::EquivStatus::found ? kOk : res.status == ght::EquivStatus::none ? kFalse : kError;
  });

  std::string sig;
  bool naive = false;
  auto* apply = app.add_subcommand("apply", "x^ = B x");
  apply->add_option("matrix", mat, "Matrix file or catalog token")->required();
  apply->add_option("signal", sig, "Signal file")->required();
  apply->add_option("-o,--out", out, "Output signal file (default stdout)");
  apply->add_option("--ring", ring, "Ring override for tokens");
  apply->add_flag("--naive", naive, "Ignore the factor tree");
  apply->callback([&] {
    const ght::GMatrix b = load_matrix(mat, ring);
    const ght::Signal x = ght::signal_from_json(ght::read_json_file(sig));
    emit(ght::to_json(naive ? ght::apply_ght(b, x) : ght::fast_apply(b, x).first), out);
  });

  auto* invert = app.add_subcommand("invert", "x = v^-1 B* x^");
  invert->add_option("matrix", mat, "Matrix file or catalog token")->required();
  invert->add_option("signal", sig, "Signal file")->required();
  invert->add_option("-o,--out", out, "Output signal file (default stdout)");
  invert->add_option("--ring", ring, "Ring override for tokens");
  invert->callback([&] {
    const ght::GMatrix b = load_matrix(mat, ring);
    emit(ght::to_json(ght::apply_ight(b, ght::signal_from_json(ght::read_json_file(sig)))), out);
  });

  std::size_t length = 8;
  auto* seq = app.add_subcommand("seqsearch", "Perfect quadriphase sequences with s_0 = 0");
  seq->add_option("--length", length, "Sequence length (1..10)");
  seq->callback([&] {
    const ght::Ring q4(ght::RingSpec::cyclotomic(4));
    const auto found = ght::search_perfect_quadriphase(length, q4);
    ght::Json list = ght::Json::array();
    for (const auto& s : found) list.push_back(ght::to_json(s));
    emit(ght::Json{{"report", "quadriphase"},
                   {"length", length},
                   {"candidates", std::uint64_t{1} << (2 * (length - 1))},
                   {"count", found.size()},
                   {"sequences", std::move(list)}},
         "");
  });

  std::vector<std::string> tokens;
  unsigned reps = 5;
  auto* bench = app.add_subcommand("bench", "Naive vs factored transform timings and op counts (CSV)");
  bench->add_option("tokens", tokens, "Catalog tokens (default walsh:4 .. walsh:12)");
  bench->add_option("--reps", reps, "Repetitions per matrix; 0 prints op counts only");
  bench->add_option("-o,--out", out, "CSV file (default stdout)");
  bench->callback([&] {
    if (tokens.empty()) {
      for (int t = 4; t <= 12; ++t) tokens.push_back("walsh:" + std::to_string(t));
    }
    std::vector<ght::GMatrix> ms;
    for (const auto& t : tokens) ms.push_back(ght::from_token(t));
    const auto rows = ght::bench(ms, reps);
    if (out.empty() || out == "-") {
      ght::write_bench_csv(std::cout, rows);
    } else {
      std::ofstream f(out);
      if (!f) throw ght::Error("cannot write " + out);
      ght::write_bench_csv(f, rows);
    }
  });

  std::uint64_t w = 4;
  auto* e2 = app.add_subcommand("enumerate2x2", "All 2x2 jacket matrices over the w-th roots of unity");
  e2->add_option("--w", w, "Root-of-unity group order");
  e2->callback([&] {
    const ght::Ring r(ght::RingSpec::cyclotomic(static_cast<std::uint32_t>(w)));
    const auto found = ght::enumerate_2x2_jackets(w, r);
    emit(ght::Json{{"report", "enumerate2x2"},
                   {"ring", r.spec().str()},
                   {"candidates", w * w * w * w},
                   {"count", found.size()},
                   {"matrices", matrix_list(found)}},
         "");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return status;
}
