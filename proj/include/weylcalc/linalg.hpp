#ifndef WEYLCALC_LINALG_HPP
#define WEYLCALC_LINALG_HPP

// Exact sparse linear algebra over the rationals.
//
// Rows are sorted coordinate lists. A row is densified into a scratch buffer
// only while it is being eliminated. Pivots are always the smallest nonzero
// column, so reduced echelon forms depend only on the row space.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcalc/rational.hpp"

namespace weylcalc::linalg {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Entry {
  std::size_t index;
  Rational value;

  friend bool operator==(const Entry& a, const Entry& b) {
    return a.index == b.index && a.value == b.value;
  }
};

/// Sorted by index, no duplicate indices, no zero values.
using SparseVector = std::vector<Entry>;

inline void canonicalize(SparseVector& v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().index == e.index) {
      out.back().value += e.value;
    } else {
      if (!out.empty() && is_zero(out.back().value)) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && is_zero(out.back().value)) out.pop_back();
  v = std::move(out);
}

inline Rational coefficient(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const Entry& e, std::size_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return Rational(0);
}

/// y += a * x
inline void add_scaled(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (is_zero(a) || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->index < ix->index)) {
      out.push_back(std::move(*iy++));
    } else if (iy == y.end() || ix->index < iy->index) {
      out.push_back({ix->index, a * ix->value});
      ++ix;
    } else {
      Rational s = iy->value + a * ix->value;
      if (!is_zero(s)) out.push_back({iy->index, std::move(s)});
      ++iy;
      ++ix;
    }
  }
  y = std::move(out);
}

inline SparseVector scaled(const SparseVector& x, const Rational& a) {
  SparseVector out;
  if (is_zero(a)) return out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back({e.index, a * e.value});
  return out;
}

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Duplicate coordinates are summed and zeros dropped.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    for (const auto& t : entries_) {
      if (t.row >= rows_ || t.col >= cols_) {
        throw std::out_of_range("matrix entry (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ") outside " + std::to_string(rows_) +
                                "x" + std::to_string(cols_));
      }
    }
    std::stable_sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> merged;
    merged.reserve(entries_.size());
    for (auto& t : entries_) {
      if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
        merged.back().value += t.value;
      } else {
        if (!merged.empty() && is_zero(merged.back().value)) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && is_zero(merged.back().value)) merged.pop_back();
    entries_ = std::move(merged);
  }

  static SparseMatrix from_rows(const std::vector<SparseVector>& rows, std::size_t cols) {
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r]) t.push_back({r, e.index, e.value});
    }
    return SparseMatrix(rows.size(), cols, std::move(t));
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, Rational(1)});
    return SparseMatrix(n, n, std::move(t));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  std::vector<SparseVector> row_vectors() const {
    std::vector<SparseVector> out(rows_);
    for (const auto& t : entries_) out[t.row].push_back({t.col, t.value});
    return out;
  }

  Rational at(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                               [](const Triplet& t, const std::pair<std::size_t, std::size_t>& k) {
                                 return t.row != k.first ? t.row < k.first : t.col < k.second;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return Rational(0);
  }

  /// Matrix-vector product m * x, x indexed by column.
  SparseVector multiply(const SparseVector& x) const {
    SparseVector out;
    for (const auto& t : entries_) {
      Rational xc = coefficient(x, t.col);
      if (!is_zero(xc)) out.push_back({t.row, t.value * xc});
    }
    canonicalize(out);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      const auto& x = a.entries_[i];
      const auto& y = b.entries_[i];
      if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

/// Incremental Gaussian elimination. Rows are reduced against the current
/// basis on insertion; reduced_rows() finishes the back substitution.
/// Rows with small integer entries are eliminated in machine integers first;
/// any overflow or fraction falls back to exact rationals.
/// Not safe for concurrent use (the scratch buffers are shared).
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Returns true when the row was independent of the current basis.
  bool add(const SparseVector& row) {
    if (full()) return false;
    SparseVector r = reduce_impl(row, npos);
    if (r.empty()) return false;
    if (r.front().value != 1) {
      Rational inv = 1 / r.front().value;
      for (auto& e : r) e.value *= inv;
    }
    pivot_row_[r.front().index] = rows_.size();
    pivots_.push_back(r.front().index);
    irows_.push_back(small_copy(r));
    rows_.push_back(std::move(r));
    return true;
  }

  /// Remainder of `row` after elimination against the basis (zero iff in span).
  SparseVector reduce(const SparseVector& row) const { return reduce_impl(row, npos); }

  bool contains(const SparseVector& row) const { return reduce(row).empty(); }

  /// Pivot columns in insertion order.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

  /// Reduced row echelon basis, sorted by pivot column.
  std::vector<SparseVector> reduced_rows() {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] > pivots_[b]; });
    for (std::size_t r : order) {
      rows_[r] = reduce_impl(rows_[r], pivots_[r]);
      irows_[r] = small_copy(rows_[r]);
    }
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) out.push_back(rows_[*it]);
    return out;
  }

 private:
  struct SmallEntry {
    std::size_t index;
    std::int64_t value;
  };
  using SmallRow = std::optional<std::vector<SmallEntry>>;

  static constexpr std::int64_t kSmall = std::int64_t{1} << 31;

  static SmallRow small_copy(const SparseVector& r) {
    std::vector<SmallEntry> out;
    out.reserve(r.size());
    for (const auto& e : r) {
      if (e.value.get_den() != 1 || !e.value.get_num().fits_slong_p()) return std::nullopt;
      long v = e.value.get_num().get_si();
      if (v >= kSmall || v <= -kSmall) return std::nullopt;
      out.push_back({e.index, v});
    }
    return out;
  }

  SparseVector reduce_impl(const SparseVector& row, std::size_t keep) const {
    for (const auto& e : row) {
      if (e.index >= cols_) throw std::out_of_range("row index beyond column count");
    }
    if (auto small = small_copy(row)) {
      if (auto out = reduce_small(*small, keep)) return std::move(*out);
    }
    return reduce_exact(row, keep);
  }

  // nullopt when a pivot row is not small or an intermediate value overflows
  std::optional<SparseVector> reduce_small(const std::vector<SmallEntry>& row, std::size_t keep) const {
    if (iscratch_.size() != cols_) {
      iscratch_.assign(cols_, 0);
      iqueued_.assign(cols_, 0);
    }
    std::vector<std::size_t> seen;
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
    auto touch = [&](std::size_t c) {
      if (!iqueued_[c]) {
        iqueued_[c] = 1;
        heap.push(c);
        seen.push_back(c);
      }
    };
    auto cleanup = [&] {
      for (std::size_t c : seen) {
        iscratch_[c] = 0;
        iqueued_[c] = 0;
      }
    };
    for (const auto& e : row) {
      iscratch_[e.index] += e.value;
      touch(e.index);
    }
    SparseVector out;
    while (!heap.empty()) {
      std::size_t c = heap.top();
      heap.pop();
      iqueued_[c] = 0;
      std::int64_t f = iscratch_[c];
      if (f == 0) continue;
      iscratch_[c] = 0;
      std::size_t r = pivot_row_[c];
      if (r == npos || c == keep) {
        out.push_back({c, Rational(static_cast<long>(f))});
        continue;
      }
      if (!irows_[r]) {
        cleanup();
        return std::nullopt;
      }
      const auto& prow = *irows_[r];
      for (std::size_t k = 1; k < prow.size(); ++k) {
        const auto& e = prow[k];
        std::int64_t p;
        if (__builtin_mul_overflow(f, e.value, &p) || __builtin_sub_overflow(iscratch_[e.index], p, &iscratch_[e.index])) {
          cleanup();
          return std::nullopt;
        }
        touch(e.index);
      }
    }
    cleanup();
    return out;
  }

  SparseVector reduce_exact(const SparseVector& row, std::size_t keep) const {
    if (scratch_.size() != cols_) {
      scratch_.assign(cols_, Rational(0));
      touched_.assign(cols_, 0);
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
    for (const auto& e : row) {
      scratch_[e.index] += e.value;
      if (!touched_[e.index]) {
        touched_[e.index] = 1;
        heap.push(e.index);
      }
    }
    SparseVector out;
    while (!heap.empty()) {
      std::size_t c = heap.top();
      heap.pop();
      touched_[c] = 0;
      if (is_zero(scratch_[c])) continue;
      std::size_t r = pivot_row_[c];
      if (r != npos && c != keep) {
        Rational f = scratch_[c];
        scratch_[c] = 0;
        const auto& prow = rows_[r];
        for (std::size_t k = 1; k < prow.size(); ++k) {
          const auto& e = prow[k];
          scratch_[e.index] -= f * e.value;
          if (!touched_[e.index]) {
            touched_[e.index] = 1;
            heap.push(e.index);
          }
        }
      } else {
        out.push_back({c, scratch_[c]});
        scratch_[c] = 0;
      }
    }
    return out;
  }

  std::size_t cols_;
  std::vector<SparseVector> rows_;
  std::vector<SmallRow> irows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
  mutable std::vector<Rational> scratch_;
  mutable std::vector<char> touched_;
  mutable std::vector<std::int64_t> iscratch_;
  mutable std::vector<char> iqueued_;
};

/// Thrown by IntegerEchelonBuilder when a value leaves the machine-integer range.
class NotSmall : public std::runtime_error {
 public:
  NotSmall() : std::runtime_error("elimination left the machine-integer range") {}
};

/// Fraction-free elimination over machine integers that keeps every basis row
/// fully reduced, so reducing a new row touches only the pivot columns it
/// contains. Rows are stored primitive with a positive leading entry. When an
/// intermediate value does not fit, add() throws NotSmall and the caller redoes
/// the work with exact rationals. Suited to the very sparse reduced forms of
/// relation spans.
class IntegerEchelonBuilder {
 public:
  explicit IntegerEchelonBuilder(std::size_t cols)
      : cols_(cols), pivot_row_(cols, npos), col_rows_(cols), col_live_(cols, 0), scratch_(cols, 0), touched_(cols, 0) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  bool add(const SparseVector& row) {
    if (full()) return false;
    Row r = reduce_small(to_small(row));
    if (r.empty()) return false;
    const std::size_t p = r.front().index;
    const auto id = static_cast<std::uint32_t>(rows_.size());
    auto& users = col_rows_[p];
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    for (std::uint32_t i : users) eliminate(i, p, r);
    std::vector<std::uint32_t>().swap(col_rows_[p]);
    pivot_row_[p] = rows_.size();
    pivots_.push_back(p);
    rows_.push_back(std::move(r));
    for (std::size_t k = 1; k < rows_.back().size(); ++k) note(rows_.back()[k].index, id);
    return true;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

  /// Reduced row echelon basis, sorted by pivot column.
  std::vector<SparseVector> reduced_rows() const {
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c) {
      if (pivot_row_[c] == npos) continue;
      const Row& r = rows_[pivot_row_[c]];
      const Rational lead(static_cast<long>(r.front().value));
      SparseVector v;
      v.reserve(r.size());
      for (const auto& e : r) v.push_back({e.index, Rational(static_cast<long>(e.value)) / lead});
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  struct SmallEntry {
    std::size_t index;
    std::int64_t value;
  };
  using Row = std::vector<SmallEntry>;

  static constexpr std::int64_t kLimit = std::int64_t{1} << 40;

  static std::int64_t checked(std::int64_t v) {
    if (v >= kLimit || v <= -kLimit) throw NotSmall();
    return v;
  }

  // a * x - b * y
  static std::int64_t cross(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
    std::int64_t p, q, out;
    if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) || __builtin_sub_overflow(p, q, &out)) {
      throw NotSmall();
    }
    return checked(out);
  }

  static void make_primitive(Row& r) {
    if (r.empty()) return;
    std::int64_t g = 0;
    for (const auto& e : r) g = std::gcd(g, e.value);
    if (r.front().value < 0) g = -g;
    if (g == 1) return;
    for (auto& e : r) e.value /= g;
  }

  Row to_small(const SparseVector& row) const {
    // clear denominators first
    mpz_class den = 1;
    for (const auto& e : row) {
      if (e.index >= cols_) throw std::out_of_range("row index beyond column count");
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.value.get_den_mpz_t());
    }
    Row out;
    out.reserve(row.size());
    for (const auto& e : row) {
      mpz_class v = e.value.get_num() * (den / e.value.get_den());
      if (!v.fits_slong_p()) throw NotSmall();
      out.push_back({e.index, checked(v.get_si())});
    }
    return out;
  }

  Row reduce_small(const Row& row) {
    std::vector<std::size_t> seen;
    auto clear = [&] {
      for (std::size_t c : seen) {
        scratch_[c] = 0;
        touched_[c] = 0;
      }
    };
    auto touch = [&](std::size_t c) {
      if (!touched_[c]) {
        touched_[c] = 1;
        seen.push_back(c);
      }
    };
    try {
      for (const auto& e : row) {
        touch(e.index);
        scratch_[e.index] = checked(scratch_[e.index] + e.value);
      }
      // basis rows carry no other pivot column, so one pass over the input suffices
      for (const auto& e : row) {
        std::size_t r = pivot_row_[e.index];
        std::int64_t f = scratch_[e.index];
        if (r == npos || f == 0) continue;
        const auto& prow = rows_[r];
        const std::int64_t lead = prow.front().value;
        const std::int64_t g = std::gcd(lead, f);
        const std::int64_t a = lead / g, b = f / g;
        if (a != 1) {
          for (std::size_t c : seen) scratch_[c] = cross(a, scratch_[c], 0, 0);
        }
        scratch_[e.index] = 0;
        for (std::size_t k = 1; k < prow.size(); ++k) {
          std::size_t c = prow[k].index;
          touch(c);
          scratch_[c] = cross(1, scratch_[c], b, prow[k].value);
        }
      }
    } catch (...) {
      clear();
      throw;
    }
    std::sort(seen.begin(), seen.end());
    Row out;
    for (std::size_t c : seen) {
      if (scratch_[c] != 0) out.push_back({c, scratch_[c]});
    }
    clear();
    make_primitive(out);
    return out;
  }

  // rows_[i] := lead * rows_[i] - rows_[i][p] * r (after cancelling the gcd),
  // recording columns that enter rows_[i]
  void eliminate(std::uint32_t i, std::size_t p, const Row& r) {
    auto& x = rows_[i];
    auto it = std::lower_bound(x.begin(), x.end(), p, [](const SmallEntry& e, std::size_t c) { return e.index < c; });
    if (it == x.end() || it->index != p) return;
    const std::int64_t g = std::gcd(r.front().value, it->value);
    const std::int64_t a = r.front().value / g, b = it->value / g;
    Row out;
    out.reserve(x.size() + r.size());
    std::vector<std::size_t> entered;
    auto u = x.begin();
    auto v = r.begin();
    while (u != x.end() || v != r.end()) {
      if (v == r.end() || (u != x.end() && u->index < v->index)) {
        out.push_back({u->index, cross(a, u->value, 0, 0)});
        ++u;
      } else if (u == x.end() || v->index < u->index) {
        out.push_back({v->index, cross(0, 0, b, v->value)});
        entered.push_back(v->index);
        ++v;
      } else {
        std::int64_t w = cross(a, u->value, b, v->value);
        if (w != 0) out.push_back({u->index, w});
        ++u;
        ++v;
      }
    }
    make_primitive(out);
    x = std::move(out);
    for (std::size_t c : entered) note(c, i);
  }

  static bool has_column(const Row& r, std::size_t c) {
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const SmallEntry& e, std::size_t k) { return e.index < k; });
    return it != r.end() && it->index == c;
  }

  // Records that row i has column c. Lists are compacted when they grow fourfold, so
  // stale and repeated ids stay within a constant factor of the live ones.
  void note(std::size_t c, std::uint32_t i) {
    auto& users = col_rows_[c];
    users.push_back(i);
    if (users.size() < 64 || users.size() < 4 * col_live_[c]) return;
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    users.erase(std::remove_if(users.begin(), users.end(), [&](std::uint32_t k) { return !has_column(rows_[k], c); }),
                users.end());
    col_live_[c] = users.size();
  }

  std::size_t cols_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<std::uint32_t>> col_rows_;  // may hold stale or repeated ids
  std::vector<std::size_t> col_live_;                 // list sizes after the last compaction
  std::vector<std::int64_t> scratch_;
  std::vector<char> touched_;
};

struct RrefResult {
  SparseMatrix echelon;              // same shape as the input; zero rows last
  std::vector<std::size_t> pivots;   // strictly increasing
};

inline RrefResult rref(const SparseMatrix& m) {
  EchelonBuilder b(m.cols());
  for (const auto& row : m.row_vectors()) {
    if (b.full()) break;
    b.add(row);
  }
  auto rows = b.reduced_rows();
  std::vector<std::size_t> pivots;
  pivots.reserve(rows.size());
  for (const auto& r : rows) pivots.push_back(r.front().index);
  rows.resize(m.rows());
  return {SparseMatrix::from_rows(rows, m.cols()), std::move(pivots)};
}

inline std::size_t rank(const SparseMatrix& m) {
  EchelonBuilder b(m.cols());
  for (const auto& row : m.row_vectors()) {
    if (b.full()) break;
    b.add(row);
  }
  return b.rank();
}

/// Basis of {x : m x = 0}, one vector per non-pivot column.
inline std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  auto [echelon, pivots] = rref(m);
  auto rows = echelon.row_vectors();
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<SparseVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVector v{{f, Rational(1)}};
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Rational c = coefficient(rows[i], f);
      if (!is_zero(c)) v.push_back({pivots[i], -c});
    }
    canonicalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the square system a x = b exactly; throws when a is singular.
inline std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) throw std::domain_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace weylcalc::linalg

#endif  // WEYLCALC_LINALG_HPP
