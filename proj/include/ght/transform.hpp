#pragma once

// The transform pair x^ = B x, x = v^{-1} B^* x^, and evaluation through a
// recorded factor tree.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "ght/kernels.hpp"
#include "ght/matrix.hpp"

namespace ght {

struct Signal {
  Ring ring;
  std::vector<Element> elements;

  [[nodiscard]] std::size_t length() const { return elements.size(); }
};

/// x^ = B x. Throws on length or ring mismatch.
Signal apply_ght(const GMatrix& b, const Signal& x);
/// x = v^{-1} B^* x^; throws when v is not invertible in the ring.
Signal apply_ight(const GMatrix& b, const Signal& xhat);

/// Evaluates the tree stage by stage. A tensor node A (x) B first applies B
/// to each contiguous block, then A to each strided slice; leaves are
/// applied naively and their operations counted.
std::pair<Signal, OpCount> fast_apply(const FactorTree& tree, const Signal& x);
/// Uses the matrix's tree, or a naive apply when it has none.
std::pair<Signal, OpCount> fast_apply(const GMatrix& b, const Signal& x);

/// v^2 multiplications, v(v-1) additions.
OpCount naive_op_count(std::size_t v);
/// Closed form of what fast_apply will count for this tree.
OpCount fast_op_count(const FactorTree& tree);

bool equal(const Signal& a, const Signal& b);

/// Random elements with small rational (or residue, or float) coefficients.
Signal random_signal(const Ring& ring, std::size_t v, std::mt19937_64& rng);

struct BenchRow {
  std::size_t order = 0;
  std::optional<double> naive_seconds;  // medians; empty for ops-only runs
  std::optional<double> fast_seconds;
  OpCount naive_ops;
  OpCount fast_ops;
};

/// One row per matrix. repetitions = 0 skips timing.
std::vector<BenchRow> bench(const std::vector<GMatrix>& matrices, unsigned repetitions, std::uint64_t seed = 1);
/// Columns: order,naive_seconds,fast_seconds,naive_mults,naive_adds,fast_mults,fast_adds
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace ght
