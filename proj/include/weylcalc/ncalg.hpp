#ifndef WEYLCALC_NCALG_HPP
#define WEYLCALC_NCALG_HPP

// Graded quotients of the free algebra by homogeneous relations.
//
// Degree d is built from degree d-1. Let S_{d-1} be the standard monomials of
// degree d-1 (lex order). The candidates of degree d are the words s a with
// s in S_{d-1} and a a generator; they span T_d / I_{d-1} T_1. The remaining
// part of I_d is spanned by u r with u in S_{d-k} and r a relation of degree k,
// written in candidate coordinates. Reducing those rows with the smallest
// column as pivot leaves the standard monomials S_d as the free candidates and
// gives NF(s a) for every candidate, which is all that multiplication needs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcalc/braided.hpp"
#include "weylcalc/cache.hpp"
#include "weylcalc/errors.hpp"
#include "weylcalc/linalg.hpp"
#include "weylcalc/ncpoly.hpp"

namespace weylcalc {

enum class AlgebraKind { quad, quar, woronowicz, anticommutative, presented };

inline std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::quad: return "quad";
    case AlgebraKind::quar: return "quar";
    case AlgebraKind::woronowicz: return "woronowicz";
    case AlgebraKind::anticommutative: return "anticomm";
    case AlgebraKind::presented: return "presented";
  }
  return "?";
}

/// An element of one graded component, in the basis of standard monomials.
struct QuotientElement {
  std::size_t degree = 0;
  linalg::SparseVector coords;

  bool is_zero() const { return coords.empty(); }
  friend bool operator==(const QuotientElement&, const QuotientElement&) = default;
};

/// Reduced echelon basis of a degree-d ideal component in word-index coordinates.
struct EchelonBasis {
  std::size_t cols = 0;
  std::vector<linalg::SparseVector> rows;
  std::vector<std::size_t> pivots;
};

class AlgebraHandle {
 public:
  /// Quotient of the free algebra on `labels` by the ideal generated by `relations`.
  AlgebraHandle(std::vector<std::string> labels, std::vector<NCPoly> relations, AlgebraKind kind,
                std::string kind_name, Limits limits = {})
      : labels_(std::move(labels)),
        relations_(std::move(relations)),
        kind_(kind),
        kind_name_(std::move(kind_name)),
        limits_(limits) {
    if (kind_ == AlgebraKind::woronowicz) throw std::invalid_argument("use the rack constructor for woronowicz");
    if (labels_.empty()) throw std::invalid_argument("algebra needs at least one generator");
    for (const auto& r : relations_) {
      if (r.is_zero()) continue;
      auto d = r.degree();
      if (!d) throw std::invalid_argument("relations must be homogeneous");
      if (*d < 2) throw std::invalid_argument("relations must have degree at least 2");
      for (const auto& [w, c] : r.terms()) {
        for (Gen x : w) {
          if (x >= labels_.size()) throw std::invalid_argument("relation uses an unknown generator");
        }
      }
      by_degree_[*d].push_back(r);
    }
  }

  /// Woronowicz exterior algebra: quotient by the kernels of the antisymmetrizers.
  AlgebraHandle(std::vector<std::string> labels, Rack rack, Limits limits = {})
      : labels_(std::move(labels)),
        kind_(AlgebraKind::woronowicz),
        kind_name_("woronowicz"),
        limits_(limits),
        rack_(std::move(rack)) {
    if (rack_->size() != labels_.size()) throw std::invalid_argument("rack size does not match labels");
  }

  AlgebraHandle(const AlgebraHandle&) = delete;
  AlgebraHandle& operator=(const AlgebraHandle&) = delete;

  AlgebraKind kind() const { return kind_; }
  const std::string& kind_name() const { return kind_name_; }
  bool ideal_presented() const { return kind_ != AlgebraKind::woronowicz; }
  std::size_t generator_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<NCPoly>& relations() const { return relations_; }
  const Limits& limits() const { return limits_; }
  const std::optional<Rack>& rack() const { return rack_; }

  /// Persist and reuse degree data under `dir`, keyed by (type, rank, kind_name, degree).
  void bind_cache(std::filesystem::path dir, std::string type, int rank) {
    std::lock_guard lock(mu_);
    cache_dir_ = std::move(dir);
    cache_type_ = std::move(type);
    cache_rank_ = rank;
  }

  struct CacheCounters {
    std::size_t hits = 0;
    std::size_t writes = 0;
  };
  CacheCounters cache_counters() const {
    std::lock_guard lock(mu_);
    return counters_;
  }

  std::size_t dimension(std::size_t d) const {
    if (!ideal_presented()) return woronowicz_dimension(d);
    return level(d).standard.size();
  }

  std::vector<Word> standard_monomials(std::size_t d) const {
    require_ideal("standard_monomials");
    return level(d).standard;
  }

  QuotientElement one() const {
    require_ideal("one");
    return {0, {{0, Rational(1)}}};
  }

  QuotientElement generator(Gen a) const {
    require_ideal("generator");
    return multiply_letter(one(), a);
  }

  /// x e_a in degree x.degree + 1.
  QuotientElement multiply_letter(const QuotientElement& x, Gen a) const {
    require_ideal("multiply_letter");
    if (a >= generator_count()) throw std::out_of_range("generator index out of range");
    const Level& next = level(x.degree + 1);
    return {x.degree + 1, times_letter(next, x.coords, a)};
  }

  /// x y for a homogeneous y given in the free algebra.
  QuotientElement multiply(const QuotientElement& x, const NCPoly& y) const {
    require_ideal("multiply");
    if (y.is_zero()) {
      return {x.degree, {}};
    }
    auto dy = y.degree();
    if (!dy) throw std::invalid_argument("multiply needs a homogeneous right factor");
    std::vector<const Level*> chain = levels_upto(x.degree + *dy);
    linalg::SparseVector out;
    // prefix-sharing walk over the (lex sorted) words of y
    std::vector<linalg::SparseVector> stack{x.coords};
    Word prev;
    for (const auto& [w, c] : y.terms()) {
      std::size_t common = 0;
      while (common < prev.size() && common < w.size() && prev[common] == w[common]) ++common;
      stack.resize(common + 1);
      for (std::size_t i = common; i < w.size(); ++i) {
        stack.push_back(times_letter(*chain[x.degree + i + 1], stack.back(), w[i]));
      }
      linalg::add_scaled(out, c, stack.back());
      prev = w;
    }
    return {x.degree + *dy, std::move(out)};
  }

  QuotientElement multiply(const QuotientElement& x, const QuotientElement& y) const {
    return multiply(x, to_poly(y));
  }

  /// Image of a homogeneous polynomial in the quotient (zero polynomials map to degree 0).
  QuotientElement reduce(const NCPoly& x) const {
    require_ideal("reduce");
    if (x.is_zero()) return {0, {}};
    if (!x.degree()) throw std::invalid_argument("reduce needs a homogeneous polynomial; use normal_form");
    return multiply(one(), x);
  }

  NCPoly to_poly(const QuotientElement& x) const {
    require_ideal("to_poly");
    const Level& lv = level(x.degree);
    NCPoly out;
    for (const auto& e : x.coords) out.add_term(lv.standard.at(e.index), e.value);
    return out;
  }

  /// Componentwise normal form: supported on standard monomials only.
  NCPoly normal_form(const NCPoly& x) const {
    require_ideal("normal_form");
    NCPoly out;
    for (std::size_t d : x.degrees()) out += to_poly(reduce(x.component(d)));
    return out;
  }

  /// True iff x is zero in the algebra (every kind, including woronowicz).
  bool vanishes(const NCPoly& x) const {
    if (ideal_presented()) return normal_form(x).is_zero();
    for (std::size_t d : x.degrees()) {
      check_antisymmetrizer_cap(d);
      if (!antisymmetrize(*rack_, x.component(d)).is_zero()) return false;
    }
    return true;
  }

  /// Rows w - NF(w) for the non-standard words w of degree d, sorted by pivot.
  EchelonBasis ideal_degree_basis(std::size_t d) const {
    require_ideal("ideal_degree_basis");
    const std::size_t g = generator_count();
    auto n = checked_power(g, d);
    if (!n || *n > limits_.monomial_cap) {
      throw CapExceeded("ideal basis in degree " + std::to_string(d), n ? *n : UINT64_MAX, limits_.monomial_cap);
    }
    const Level& lv = level(d);
    std::map<Word, std::size_t> standard_index;
    for (std::size_t i = 0; i < lv.standard.size(); ++i) standard_index.emplace(lv.standard[i], i);
    EchelonBasis out;
    out.cols = *n;
    for (std::uint64_t idx = 0; idx < *n; ++idx) {
      Word w = word_at(idx, g, d);
      if (standard_index.count(w)) continue;
      QuotientElement nf = reduce(NCPoly::monomial(w));
      linalg::SparseVector row{{idx, Rational(1)}};
      for (const auto& e : nf.coords) row.push_back({word_index(lv.standard[e.index], g), -e.value});
      linalg::canonicalize(row);
      out.pivots.push_back(idx);
      out.rows.push_back(std::move(row));
    }
    return out;
  }

 private:
  struct Level {
    std::vector<Word> standard;
    // mul[s * g + a] = NF(standard_{d-1}[s] a) in this level's coordinates
    std::vector<linalg::SparseVector> mul;
    // reduced rows over the candidates whose pivots are the non-standard candidates
    std::vector<linalg::SparseVector> boundary;
  };

  void require_ideal(const char* what) const {
    if (!ideal_presented()) {
      throw std::logic_error(std::string(what) + " is not available for the woronowicz algebra");
    }
  }

  linalg::SparseVector times_letter(const Level& next, const linalg::SparseVector& x, Gen a) const {
    const std::size_t g = generator_count();
    linalg::SparseVector out;
    for (const auto& e : x) linalg::add_scaled(out, e.value, next.mul.at(e.index * g + a));
    return out;
  }

  const Level& level(std::size_t d) const { return *levels_upto(d)[d]; }

  std::vector<const Level*> levels_upto(std::size_t d) const {
    std::lock_guard lock(mu_);
    while (levels_.size() <= d) build_next();
    std::vector<const Level*> out;
    out.reserve(d + 1);
    for (std::size_t i = 0; i <= d; ++i) out.push_back(levels_[i].get());
    return out;
  }

  // Caller holds mu_.
  void build_next() const {
    const std::size_t d = levels_.size();
    const std::size_t g = generator_count();
    auto lv = std::make_unique<Level>();
    if (d == 0) {
      lv->standard.push_back(Word{});
      levels_.push_back(std::move(lv));
      return;
    }
    const Level& prev = *levels_[d - 1];
    const std::uint64_t candidates = static_cast<std::uint64_t>(prev.standard.size()) * g;
    if (candidates > limits_.monomial_cap) {
      throw CapExceeded("degree " + std::to_string(d) + " of " + kind_name_, candidates, limits_.monomial_cap);
    }
    if (auto rows = load(d)) {
      if (assemble(*lv, prev, std::move(*rows))) {
        levels_.push_back(std::move(lv));
        ++counters_.hits;
        return;
      }
      lv = std::make_unique<Level>();
    }
    auto eliminate = [&](auto& eb) {
      for (const auto& [k, rels] : by_degree_) {
        if (k > d) break;
        const Level& base = *levels_[d - k];
        for (std::size_t u = 0; u < base.standard.size() && !eb.full(); ++u) {
          // NF(u p) for the prefixes p of the relation words, memoized per u
          std::map<Word, linalg::SparseVector> memo{{Word{}, {{u, Rational(1)}}}};
          auto prefix_image = [&](const Word& w) -> const linalg::SparseVector& {
            Word p(w.begin(), w.end() - 1);
            std::size_t have = p.size();
            while (!memo.count(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(have)))) --have;
            for (std::size_t i = have; i < p.size(); ++i) {
              const auto& cur = memo.at(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i)));
              auto nxt = times_letter(*levels_[d - k + i + 1], cur, p[i]);
              memo.emplace(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i + 1)), std::move(nxt));
            }
            return memo.at(p);
          };
          for (const auto& r : rels) {
            linalg::SparseVector row;
            for (const auto& [w, c] : r.terms()) {
              const auto& img = prefix_image(w);
              for (const auto& e : img) row.push_back({e.index * g + w.back(), c * e.value});
            }
            linalg::canonicalize(row);
            eb.add(row);
          }
        }
      }
      return eb.reduced_rows();
    };
    std::vector<linalg::SparseVector> rows;
    try {
      linalg::IntegerEchelonBuilder eb(candidates);
      rows = eliminate(eb);
    } catch (const linalg::NotSmall&) {
      linalg::EchelonBuilder eb(candidates);
      rows = eliminate(eb);
    }
    assemble(*lv, prev, std::move(rows));
    levels_.push_back(std::move(lv));
    store(d);
  }

  // Fills standard monomials and the multiplication table from reduced rows in
  // candidate coordinates. Returns false when the rows are not a valid reduced basis.
  bool assemble(Level& lv, const Level& prev, std::vector<linalg::SparseVector> rows) const {
    const std::size_t g = generator_count();
    const std::size_t n = prev.standard.size() * g;
    std::vector<std::size_t> pivot_row(n, linalg::npos);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (r.empty() || r.front().value != 1 || r.front().index >= n) return false;
      if (i > 0 && r.front().index <= rows[i - 1].front().index) return false;
      pivot_row[r.front().index] = i;
    }
    std::vector<std::size_t> slot(n, linalg::npos);
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot_row[c] != linalg::npos) continue;
      slot[c] = lv.standard.size();
      Word w = prev.standard[c / g];
      w.push_back(static_cast<Gen>(c % g));
      lv.standard.push_back(std::move(w));
    }
    lv.mul.assign(n, {});
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot_row[c] == linalg::npos) {
        lv.mul[c] = {{slot[c], Rational(1)}};
        continue;
      }
      const auto& r = rows[pivot_row[c]];
      linalg::SparseVector v;
      for (std::size_t k = 1; k < r.size(); ++k) {
        if (r[k].index >= n || slot[r[k].index] == linalg::npos) return false;
        v.push_back({slot[r[k].index], -r[k].value});
      }
      linalg::canonicalize(v);
      lv.mul[c] = std::move(v);
    }
    lv.boundary = std::move(rows);
    return true;
  }

  cache::Key cache_key(std::size_t d) const { return {cache_type_, cache_rank_, kind_name_, d}; }

  // Caller holds mu_. Rows come back in candidate coordinates.
  std::optional<std::vector<linalg::SparseVector>> load(std::size_t d) const {
    if (cache_dir_.empty()) return std::nullopt;
    const std::size_t g = generator_count();
    if (!checked_power(g, d)) return std::nullopt;
    auto e = cache::read(cache_dir_, cache_key(d));
    if (!e || e->generators != g) return std::nullopt;
    const Level& prev = *levels_[d - 1];
    std::map<Word, std::size_t> prev_index;
    for (std::size_t i = 0; i < prev.standard.size(); ++i) prev_index.emplace(prev.standard[i], i);
    std::vector<linalg::SparseVector> rows;
    for (const auto& row : e->rows) {
      linalg::SparseVector r;
      for (const auto& x : row) {
        Word w = word_at(x.index, g, d);
        Gen last = w.back();
        w.pop_back();
        auto it = prev_index.find(w);
        if (it == prev_index.end()) return std::nullopt;
        r.push_back({it->second * g + last, x.value});
      }
      linalg::canonicalize(r);
      rows.push_back(std::move(r));
    }
    return rows;
  }

  // Caller holds mu_. Cache failures never abort a computation.
  void store(std::size_t d) const {
    if (cache_dir_.empty()) return;
    const std::size_t g = generator_count();
    if (!checked_power(g, d)) return;
    cache::Entry e{cache_key(d), g, {}};
    if (d > 0) {
      const Level& prev = *levels_[d - 1];
      for (const auto& r : levels_[d]->boundary) {
        linalg::SparseVector out;
        for (const auto& x : r) {
          Word w = prev.standard[x.index / g];
          w.push_back(static_cast<Gen>(x.index % g));
          out.push_back({word_index(w, g), x.value});
        }
        linalg::canonicalize(out);
        e.rows.push_back(std::move(out));
      }
    }
    try {
      cache::write_atomic(cache_dir_, e);
      ++counters_.writes;
    } catch (const cache::CacheError&) {
    }
  }

  void check_antisymmetrizer_cap(std::size_t d) const {
    auto n = checked_power(generator_count(), d);
    std::uint64_t work = n ? *n * factorial(d) : UINT64_MAX;
    if (!n || work > limits_.monomial_cap) {
      throw CapExceeded("antisymmetrizer in degree " + std::to_string(d), work, limits_.monomial_cap);
    }
  }

  std::size_t woronowicz_dimension(std::size_t d) const {
    {
      std::lock_guard lock(mu_);
      auto it = woronowicz_dims_.find(d);
      if (it != woronowicz_dims_.end()) return it->second;
    }
    std::size_t r = antisymmetrizer_rank(*rack_, d, limits_);
    std::lock_guard lock(mu_);
    woronowicz_dims_.emplace(d, r);
    return r;
  }

  std::vector<std::string> labels_;
  std::vector<NCPoly> relations_;
  std::map<std::size_t, std::vector<NCPoly>> by_degree_;
  AlgebraKind kind_;
  std::string kind_name_;
  Limits limits_;
  std::optional<Rack> rack_;

  std::filesystem::path cache_dir_;
  std::string cache_type_;
  int cache_rank_ = 0;

  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
  mutable std::map<std::size_t, std::size_t> woronowicz_dims_;
  mutable CacheCounters counters_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraHandle>;

inline EchelonBasis ideal_degree_basis(const AlgebraHandle& h, std::size_t d) { return h.ideal_degree_basis(d); }

inline NCPoly normal_form(const AlgebraHandle& h, const NCPoly& x) { return h.normal_form(x); }

inline std::vector<std::size_t> hilbert_dims(const AlgebraHandle& h, std::size_t d_max) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= d_max; ++d) out.push_back(h.dimension(d));
  return out;
}

/// Dimensions of the subalgebra generated by degree-1 elements.
inline std::vector<std::size_t> subalgebra_dims(const AlgebraHandle& h, const std::vector<NCPoly>& gens,
                                                std::size_t d_max) {
  for (const auto& x : gens) {
    if (!x.is_zero() && x.degree() != std::optional<std::size_t>(1)) {
      throw std::invalid_argument("subalgebra generators must have degree 1");
    }
  }
  std::vector<QuotientElement> images;
  for (const auto& x : gens) images.push_back(h.reduce(x));
  std::vector<std::size_t> out{1};
  std::vector<QuotientElement> basis{h.one()};
  for (std::size_t d = 1; d <= d_max; ++d) {
    std::uint64_t work = static_cast<std::uint64_t>(basis.size()) * gens.size();
    if (work > h.limits().monomial_cap) {
      throw CapExceeded("subalgebra products in degree " + std::to_string(d), work, h.limits().monomial_cap);
    }
    linalg::EchelonBuilder eb(h.dimension(d));
    for (const auto& b : basis) {
      for (const auto& x : gens) {
        if (eb.full()) break;
        eb.add(h.multiply(b, x).coords);
      }
    }
    std::vector<QuotientElement> next;
    for (auto& r : eb.reduced_rows()) next.push_back({d, std::move(r)});
    out.push_back(next.size());
    basis = std::move(next);
  }
  return out;
}

/// The relations of h together with e_a e_b + e_b e_a for all a <= b.
inline std::vector<NCPoly> anticommutative_relations(const AlgebraHandle& h) {
  if (!h.ideal_presented()) throw std::invalid_argument("anticommutative quotient needs an ideal-presented algebra");
  std::vector<NCPoly> rels = h.relations();
  const std::size_t g = h.generator_count();
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = a; b < g; ++b) {
      NCPoly r = NCPoly::monomial({static_cast<Gen>(a), static_cast<Gen>(b)});
      r += NCPoly::monomial({static_cast<Gen>(b), static_cast<Gen>(a)});
      rels.push_back(std::move(r));
    }
  }
  return rels;
}

inline AlgebraPtr anticommutative_quotient(const AlgebraHandle& h) {
  return std::make_shared<const AlgebraHandle>(h.labels(), anticommutative_relations(h), AlgebraKind::anticommutative,
                                               "anticomm-" + h.kind_name(), h.limits());
}

}  // namespace weylcalc

#endif  // WEYLCALC_NCALG_HPP
