#include "ght/jacket.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "ght/catalog.hpp"
#include "ght/gbh.hpp"

namespace ght {

namespace {

void require_even(const GMatrix& m) {
  if (m.order() % 2 != 0) throw Error("jacket form needs even order, got " + std::to_string(m.order()));
}

bool row_all_ones(const GMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.order(); ++j) {
    if (!m.ring().is_one(m(i, j))) return false;
  }
  return true;
}

bool col_all_ones(const GMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.order(); ++i) {
    if (!m.ring().is_one(m(i, j))) return false;
  }
  return true;
}

// Line 0 stays put; the m-1 smallest other +-1 lines go to 1..m-1 and the m
// largest to v-m..v-1; the rest keep their relative order in the middle.
Permutation border_witness(const std::vector<char>& pm1, std::size_t m) {
  const std::size_t v = pm1.size();
  std::vector<std::size_t> border;
  for (std::size_t k = 1; k < v; ++k) {
    if (pm1[k]) border.push_back(k);
  }
  std::vector<std::size_t> image(v, v);
  image[0] = 0;
  for (std::size_t k = 0; k + 1 < m; ++k) image[border[k]] = k + 1;
  for (std::size_t k = 0; k < m; ++k) image[border[border.size() - m + k]] = v - m + k;
  std::size_t next = m;
  for (std::size_t k = 1; k < v; ++k) {
    if (image[k] == v) image[k] = next++;
  }
  return Permutation(std::move(image));
}

// Exhaustive: is there an ordering of lines whose first line is all ones and
// whose positions 1..m-1, v-m..v-1 hold +-1 lines?
bool arrangement_exists(const std::vector<char>& ones, const std::vector<char>& pm1, std::size_t m) {
  const std::size_t v = pm1.size();
  std::vector<std::size_t> order(v);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    if (!ones[order[0]]) continue;
    bool ok = true;
    for (std::size_t pos = 1; pos < v && ok; ++pos) {
      const bool border = pos < m || pos >= v - m;
      if (border && !pm1[order[pos]]) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

GMatrix power_matrix(const Ring& ring, std::size_t v, const Element& base, std::size_t period,
                     const std::vector<std::size_t>& exps) {
  std::vector<Element> powers;
  powers.reserve(period);
  Element cur = ring.one();
  for (std::size_t k = 0; k < period; ++k) {
    powers.push_back(cur);
    cur = ring.mul(cur, base);
  }
  std::vector<std::uint32_t> idx(exps.begin(), exps.end());
  return {ring, v, std::move(powers), std::move(idx)};
}

}  // namespace

bool is_jacket_form(const GMatrix& m) {
  require_even(m);
  const std::size_t v = m.order();
  return m.is_normalised() && m.row_is_pm1(v - 1) && m.col_is_pm1(v - 1);
}

JacketReport jacket_width(const GMatrix& m) {
  require_even(m);
  const std::size_t v = m.order();
  if (!m.is_normalised()) throw Error("not jacketizable: matrix is not normalised");
  std::vector<char> rows(v), cols(v);
  JacketReport rep;
  for (std::size_t k = 0; k < v; ++k) {
    rows[k] = m.row_is_pm1(k) ? 1 : 0;
    cols[k] = m.col_is_pm1(k) ? 1 : 0;
    rep.pm1_rows += rows[k];
    rep.pm1_cols += cols[k];
  }
  if (rep.pm1_rows < 2 || rep.pm1_cols < 2) {
    throw Error("not jacketizable: needs two +-1 rows and columns, found " + std::to_string(rep.pm1_rows) + " and " +
                std::to_string(rep.pm1_cols));
  }
  rep.width = std::max<std::size_t>(1, std::min({rep.pm1_rows / 2, rep.pm1_cols / 2, v / 2}));
  rep.is_jacket_form = is_jacket_form(m);
  rep.certificate =
      rep.is_jacket_form && rep.width == 1 ? PrimaryCertificate::primary_by_width : PrimaryCertificate::unknown;
  rep.row_witness = border_witness(rows, rep.width);
  rep.col_witness = border_witness(cols, rep.width);
  return rep;
}

PrimaryCertificate is_primary_by_width(const GMatrix& m) {
  if (!is_jacket_form(m)) throw Error("primality certificate needs a matrix in jacket form");
  return jacket_width(m).certificate;
}

std::size_t brute_width(const GMatrix& m) {
  const std::size_t v = m.order();
  if (v > 8) throw Error("brute_width is limited to order <= 8");
  require_even(m);
  std::vector<char> r1(v), rp(v), c1(v), cp(v);
  for (std::size_t k = 0; k < v; ++k) {
    r1[k] = row_all_ones(m, k);
    rp[k] = m.row_is_pm1(k);
    c1[k] = col_all_ones(m, k);
    cp[k] = m.col_is_pm1(k);
  }
  for (std::size_t w = v / 2; w >= 2; --w) {
    if (arrangement_exists(r1, rp, w) && arrangement_exists(c1, cp, w)) return w;
  }
  return 1;
}

Jacketized jacketize_cbt(unsigned t, const Ring& ring) {
  if (t < 2) throw Error("CBT jacketization needs t >= 2");
  const GMatrix c = cbt(t, ring);
  const std::size_t v = c.order();
  Permutation rows = Permutation::rotate_to_end(v, 1);
  Permutation cols = Permutation::rotate_to_end(v, v / 2);
  GMatrix out = permute(c, rows, cols);
  return {std::move(out), std::move(rows), std::move(cols)};
}

Permutation rjt_permutation(std::size_t n) {
  if (n == 0) throw Error("RJT order parameter must be positive");
  std::vector<std::size_t> img(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const std::size_t j1 = j / n;
    const std::size_t j0 = j % n;
    img[j] = j1 * n + (j1 == 0 ? j0 : n - 1 - j0);
  }
  return Permutation(std::move(img));
}

Jacketized jacketize_dft(std::size_t n, const Ring& ring) {
  const GMatrix f = dft_matrix(2 * n, ring);
  // The index map p sends new position j to old index p(j).
  Permutation p = rjt_permutation(n);
  Permutation inv = p.inverse();
  GMatrix out = permute(f, inv, inv);
  return {std::move(out), inv, inv};
}

GMatrix complex_rjt(std::size_t n, const Element& alpha, const Ring& ring) {
  const std::size_t v = 2 * n;
  const auto ord = ring.multiplicative_order(alpha, v);
  if (!ord || *ord != v) throw Error("RJT parameter must have multiplicative order exactly " + std::to_string(v));
  const Permutation p = rjt_permutation(n);
  std::vector<std::size_t> exps(v * v);
  for (std::size_t j = 0; j < v; ++j) {
    for (std::size_t k = 0; k < v; ++k) exps[j * v + k] = (p(j) * p(k)) % v;
  }
  return power_matrix(ring, v, alpha, v, exps);
}

Permutation dagger_permutation(std::size_t m, std::size_t two_n) {
  if (m == 0 || two_n == 0) throw Error("dagger needs positive orders");
  return Permutation::rotate_to_end(m * two_n, two_n - 1);
}

GMatrix dagger(const GMatrix& b, const GMatrix& k) {
  if (!(b.ring() == k.ring())) throw Error("ring mismatch: " + b.ring().spec().str() + " vs " + k.ring().spec().str());
  if (!b.is_normalised()) throw Error("dagger needs a normalised left factor");
  if (!is_jacket_form(k)) throw Error("dagger needs a jacket matrix as right factor");
  const Permutation p = dagger_permutation(b.order(), k.order());
  return permute(tensor(b, k), p, p);
}

// ---- permutation equivalence ----------------------------------------------

namespace {

class EquivSearch {
 public:
  EquivSearch(const GMatrix& a, const GMatrix& b, std::uint64_t budget) : v_(a.order()), budget_(budget) {
    assign_ids(a, b);
    std::map<std::vector<int>, int> classes;
    row_class_a_.resize(v_);
    row_class_b_.resize(v_);
    for (std::size_t i = 0; i < v_; ++i) {
      row_class_a_[i] = classes.try_emplace(sorted_row(ida_, i), static_cast<int>(classes.size())).first->second;
    }
    for (std::size_t i = 0; i < v_; ++i) {
      const auto it = classes.find(sorted_row(idb_, i));
      row_class_b_[i] = it == classes.end() ? -1 : it->second;
    }
    col_a_.assign(v_ + 1, std::vector<int>(v_, 0));
    col_b_.assign(v_ + 1, std::vector<int>(v_, 0));
    used_.assign(v_, 0);
    source_.assign(v_, 0);
    slot_.assign(v_ * static_cast<std::size_t>(entry_count_), -1);
    count_a_.assign(v_, 0);
    count_b_.assign(v_, 0);
  }

  EquivResult run() {
    EquivResult res;
    const bool rows_ok = std::is_permutation(row_class_a_.begin(), row_class_a_.end(), row_class_b_.begin());
    if (rows_ok && descend(0)) {
      res.status = EquivStatus::found;
      std::vector<std::size_t> sigma(v_);
      for (std::size_t t = 0; t < v_; ++t) sigma[source_[t]] = t;
      res.rows = Permutation(std::move(sigma));
      res.cols = match_columns();
    } else {
      res.status = exceeded_ ? EquivStatus::budget_exceeded : EquivStatus::none;
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  void assign_ids(const GMatrix& a, const GMatrix& b) {
    const Ring& ring = a.ring();
    std::vector<Element> reps;
    std::unordered_map<Element, int, ElementHash> exact;
    auto id_of = [&](const Element& e) {
      if (ring.is_exact()) {
        return exact.try_emplace(e, static_cast<int>(exact.size())).first->second;
      }
      for (std::size_t k = 0; k < reps.size(); ++k) {
        if (ring.eq(reps[k], e)) return static_cast<int>(k);
      }
      reps.push_back(e);
      return static_cast<int>(reps.size() - 1);
    };
    std::vector<int> pal_a, pal_b;
    for (const auto& e : a.palette()) pal_a.push_back(id_of(e));
    for (const auto& e : b.palette()) pal_b.push_back(id_of(e));
    entry_count_ = static_cast<int>(ring.is_exact() ? exact.size() : reps.size());
    ida_.resize(v_ * v_);
    idb_.resize(v_ * v_);
    for (std::size_t k = 0; k < v_ * v_; ++k) {
      ida_[k] = pal_a[a.indices()[k]];
      idb_[k] = pal_b[b.indices()[k]];
    }
  }

  std::vector<int> sorted_row(const std::vector<int>& ids, std::size_t i) const {
    std::vector<int> r(ids.begin() + static_cast<std::ptrdiff_t>(i * v_),
                       ids.begin() + static_cast<std::ptrdiff_t>((i + 1) * v_));
    std::sort(r.begin(), r.end());
    return r;
  }

  // Splits the column classes by the entries of source row s (in A) and
  // target row t (in B); fails when any class sizes differ.
  bool refine(std::size_t t, std::size_t s) {
    const auto& ca = col_a_[t];
    const auto& cb = col_b_[t];
    auto& na = col_a_[t + 1];
    auto& nb = col_b_[t + 1];
    touched_.clear();
    int next = 0;
    bool ok = true;
    for (std::size_t j = 0; j < v_; ++j) {
      const std::size_t key = static_cast<std::size_t>(cb[j]) * entry_count_ + idb_[t * v_ + j];
      if (slot_[key] < 0) {
        slot_[key] = next;
        count_a_[next] = 0;
        count_b_[next] = 0;
        ++next;
        touched_.push_back(key);
      }
      nb[j] = slot_[key];
      ++count_b_[nb[j]];
    }
    for (std::size_t j = 0; j < v_ && ok; ++j) {
      const std::size_t key = static_cast<std::size_t>(ca[j]) * entry_count_ + ida_[s * v_ + j];
      if (slot_[key] < 0) {
        ok = false;
        break;
      }
      na[j] = slot_[key];
      ++count_a_[na[j]];
    }
    for (int c = 0; c < next && ok; ++c) ok = count_a_[c] == count_b_[c];
    for (const auto key : touched_) slot_[key] = -1;
    return ok;
  }

  bool descend(std::size_t t) {
    if (t == v_) return true;
    for (std::size_t s = 0; s < v_; ++s) {
      if (used_[s] || row_class_a_[s] != row_class_b_[t]) continue;
      if (++nodes_ > budget_) {
        exceeded_ = true;
        return false;
      }
      if (!refine(t, s)) continue;
      used_[s] = 1;
      source_[t] = s;
      if (descend(t + 1)) return true;
      used_[s] = 0;
      if (exceeded_) return false;
    }
    return false;
  }

  // Final classes hold columns identical on every row; pair them in order.
  Permutation match_columns() const {
    const auto& ca = col_a_[v_];
    const auto& cb = col_b_[v_];
    std::vector<std::vector<std::size_t>> in_b(v_);
    for (std::size_t j = 0; j < v_; ++j) in_b[cb[j]].push_back(j);
    std::vector<std::size_t> taken(v_, 0);
    std::vector<std::size_t> tau(v_);
    for (std::size_t j = 0; j < v_; ++j) tau[j] = in_b[ca[j]][taken[ca[j]]++];
    return Permutation(std::move(tau));
  }

  std::size_t v_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  int entry_count_ = 0;
  std::vector<int> ida_, idb_;
  std::vector<int> row_class_a_, row_class_b_;
  std::vector<std::vector<int>> col_a_, col_b_;
  std::vector<char> used_;
  std::vector<std::size_t> source_;
  std::vector<int> slot_;
  std::vector<std::size_t> touched_;
  std::vector<int> count_a_, count_b_;
};

}  // namespace

EquivResult perm_equivalent(const GMatrix& a, const GMatrix& b, std::uint64_t node_budget) {
  if (a.order() != b.order()) throw Error("order mismatch in equivalence search");
  if (!(a.ring() == b.ring())) throw Error("ring mismatch: " + a.ring().spec().str() + " vs " + b.ring().spec().str());
  return EquivSearch(a, b, node_budget).run();
}

}  // namespace ght
