#ifndef WEYLCALC_CALCULUS_HPP
#define WEYLCALC_CALCULUS_HPP

// The braided calculus on the reflections of a Weyl group: braiding, the
// exterior algebras it defines, the differential and first cohomology.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcalc/braided.hpp"
#include "weylcalc/errors.hpp"
#include "weylcalc/linalg.hpp"
#include "weylcalc/ncalg.hpp"
#include "weylcalc/ncpoly.hpp"
#include "weylcalc/weyl.hpp"

namespace weylcalc {

inline Rack rack_of(const RootSystem& rs) {
  const std::size_t g = rs.generator_count();
  std::vector<Gen> table(g * g);
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) table[a * g + b] = static_cast<Gen>(rs.conjugate(a, b));
  }
  return Rack(g, std::move(table));
}

/// Psi(e_a (x) e_b) = e_{aba^-1} (x) e_a
inline std::pair<std::size_t, std::size_t> braiding(const RootSystem& rs, std::size_t a, std::size_t b) {
  return {rs.conjugate(a, b), a};
}

/// A homogeneous tensor of degree `degree`; coordinates are keyed by words.
struct TensorVector {
  std::size_t degree = 0;
  NCPoly coords;

  static TensorVector from(const NCPoly& x) {
    if (x.is_zero()) return {};
    auto d = x.degree();
    if (!d) throw std::invalid_argument("tensor vectors are homogeneous");
    return {*d, x};
  }
  friend bool operator==(const TensorVector& a, const TensorVector& b) {
    return a.coords == b.coords && (a.coords.is_zero() || a.degree == b.degree);
  }
};

/// Psi acting on tensor positions (i, i+1), 1-based.
inline TensorVector psi_i(const Rack& rack, const TensorVector& v, std::size_t i) {
  if (i < 1 || i + 1 > v.degree) {
    throw std::out_of_range("psi_" + std::to_string(i) + " needs degree at least " + std::to_string(i + 1));
  }
  TensorVector out{v.degree, {}};
  for (const auto& [w, c] : v.coords.terms()) {
    Word x = w;
    braid_word_at(rack, x, i - 1);
    out.coords.add_term(x, c);
  }
  return out;
}

inline TensorVector antisymmetrize(const Rack& rack, const TensorVector& v) {
  return {v.degree, antisymmetrize(rack, v.coords)};
}

/// Echelonized basis of ker(id - Psi) on the tensor square.
inline std::vector<NCPoly> quad_relations(const RootSystem& rs) {
  const std::size_t g = rs.generator_count();
  std::vector<linalg::Triplet> t;
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      std::size_t col = a * g + b;
      auto [c, d] = braiding(rs, a, b);
      t.push_back({col, col, Rational(1)});
      t.push_back({c * g + d, col, Rational(-1)});
    }
  }
  linalg::SparseMatrix m(g * g, g * g, std::move(t));
  auto kernel = linalg::kernel_basis(m);
  auto rr = linalg::rref(linalg::SparseMatrix::from_rows(kernel, g * g));
  std::vector<NCPoly> out;
  for (const auto& row : rr.echelon.row_vectors()) {
    if (row.empty()) continue;
    NCPoly p;
    for (const auto& e : row) p.add_term(word_at(e.index, g, 2), e.value);
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline NCPoly word_poly(std::initializer_list<std::size_t> letters) {
  Word w;
  for (auto x : letters) w.push_back(static_cast<Gen>(x));
  return NCPoly::monomial(std::move(w));
}

inline NCPoly anticommutator(std::size_t a, std::size_t b) { return word_poly({a, b}) + word_poly({b, a}); }

inline void require_type(const RootSystem& rs, RootType t, const char* what) {
  if (rs.type() != t) throw UnsupportedRootSystem(std::string(what) + " needs type " + to_string(t));
}

}  // namespace detail

/// The quadratic relations of B_n as listed in the standard presentation:
/// squares, anticommutators of commuting reflections, the cyclic families
/// and the four-term mixed relation.
inline std::vector<NCPoly> listed_quadratic_relations_B(const RootSystem& rs) {
  detail::require_type(rs, RootType::B, "listed_quadratic_relations_B");
  using detail::anticommutator;
  using detail::word_poly;
  const int n = rs.letters();
  auto t = [&](int i, int j) { return rs.transposition(i, j); };
  auto bar = [&](int i, int j) { return rs.barred(i, j); };
  auto s = [&](int i) { return rs.sign_change(i); };
  std::vector<NCPoly> out;
  for (std::size_t a = 0; a < rs.generator_count(); ++a) out.push_back(word_poly({a, a}));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          if (i == j || k == l || i == k || i == l || j == k || j == l) continue;
          out.push_back(anticommutator(t(i, j), t(k, l)));
          out.push_back(anticommutator(t(i, j), bar(k, l)));
          out.push_back(anticommutator(bar(i, j), bar(k, l)));
        }
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      out.push_back(anticommutator(s(i), s(j)));
      out.push_back(anticommutator(t(i, j), bar(i, j)));
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        out.push_back(anticommutator(t(i, j), s(k)));
        out.push_back(anticommutator(bar(i, j), s(k)));
        out.push_back(word_poly({t(i, j), t(j, k)}) + word_poly({t(j, k), t(k, i)}) + word_poly({t(k, i), t(i, j)}));
        out.push_back(word_poly({bar(i, k), t(i, j)}) + word_poly({t(j, i), bar(j, k)}) +
                      word_poly({bar(k, j), bar(i, k)}));
      }
      out.push_back(word_poly({t(i, j), s(i)}) + word_poly({s(j), t(i, j)}) + word_poly({s(i), bar(i, j)}) +
                    word_poly({bar(i, j), s(j)}));
    }
  }
  return out;
}

/// For each pair i < j the two quartic elements that vanish in the Woronowicz algebra of B_n.
inline std::vector<NCPoly> quartic_relations_B(const RootSystem& rs) {
  detail::require_type(rs, RootType::B, "quartic_relations_B");
  using detail::word_poly;
  std::vector<NCPoly> out;
  const int n = rs.letters();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::size_t t = rs.transposition(i, j);
      std::size_t b = rs.barred(i, j);
      std::size_t s = rs.sign_change(i);
      out.push_back(word_poly({b, s, t, s}) + word_poly({s, t, s, b}) + word_poly({t, s, b, s}) +
                    word_poly({s, b, s, t}));
      out.push_back(word_poly({t, s, t, s}) + word_poly({s, t, s, t}));
    }
  }
  return out;
}

inline std::vector<std::size_t> woronowicz_dims(const RootSystem& rs, std::size_t d_max, const Limits& limits = {}) {
  Rack rack = rack_of(rs);
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= d_max; ++d) out.push_back(antisymmetrizer_rank(rack, d, limits));
  return out;
}

enum class ThetaClass { all, long_roots, short_roots };

/// Sum of e_a over all reflections, or over one length class.
inline NCPoly canonical_theta(const RootSystem& rs, ThetaClass cls = ThetaClass::all) {
  if (cls != ThetaClass::all && rs.simply_laced()) {
    throw std::invalid_argument("long/short classes exist only for non-simply-laced types");
  }
  NCPoly out;
  for (const auto& r : rs.reflections()) {
    bool take = cls == ThetaClass::all || (cls == ThetaClass::long_roots && r.root_class == RootClass::long_root) ||
                (cls == ThetaClass::short_roots && r.root_class == RootClass::short_root);
    if (take) out += NCPoly::generator(static_cast<Gen>(r.index));
  }
  return out;
}

inline AlgebraPtr make_quad(const RootSystem& rs, const Limits& limits = {}) {
  return std::make_shared<const AlgebraHandle>(rs.labels(), quad_relations(rs), AlgebraKind::quad, "quad", limits);
}

inline AlgebraPtr make_quar(const RootSystem& rs, const Limits& limits = {}) {
  auto rels = quad_relations(rs);
  for (auto& r : quartic_relations_B(rs)) rels.push_back(std::move(r));
  return std::make_shared<const AlgebraHandle>(rs.labels(), std::move(rels), AlgebraKind::quar, "quar", limits);
}

inline AlgebraPtr make_woronowicz(const RootSystem& rs, const Limits& limits = {}) {
  return std::make_shared<const AlgebraHandle>(rs.labels(), rack_of(rs), limits);
}

/// Sum of all generators of the algebra.
inline NCPoly theta_of(const AlgebraHandle& h) {
  NCPoly out;
  for (std::size_t a = 0; a < h.generator_count(); ++a) out += NCPoly::generator(static_cast<Gen>(a));
  return out;
}

/// d x = theta x - (-1)^k x theta for homogeneous x of degree k, in normal form.
inline NCPoly differential(const AlgebraHandle& h, const NCPoly& x) {
  if (x.is_zero()) return x;
  auto k = x.degree();
  if (!k) throw std::invalid_argument("differential needs a homogeneous element");
  NCPoly theta = theta_of(h);
  NCPoly y = theta * x;
  if (*k % 2 == 0) {
    y -= x * theta;
  } else {
    y += x * theta;
  }
  return h.normal_form(y);
}

/// F(eta) = d eta + eta eta, in normal form.
inline NCPoly curvature(const AlgebraHandle& h, const NCPoly& eta) {
  if (!eta.is_zero() && eta.degree() != std::optional<std::size_t>(1)) {
    throw std::invalid_argument("a connection form has degree 1");
  }
  return h.normal_form(differential(h, eta) + eta * eta);
}

struct H1Result {
  std::size_t dimension = 0;
  std::vector<NCPoly> basis;  // reduced echelon form in generator coordinates
};

/// Closed 1-forms of the quadratic algebra.
inline H1Result h1(const AlgebraHandle& h) {
  const std::size_t g = h.generator_count();
  std::vector<linalg::Triplet> t;
  for (std::size_t a = 0; a < g; ++a) {
    NCPoly da = differential(h, NCPoly::generator(static_cast<Gen>(a)));
    QuotientElement q = h.reduce(da);
    for (const auto& e : q.coords) t.push_back({e.index, a, e.value});
  }
  linalg::SparseMatrix m(h.dimension(2), g, std::move(t));
  auto kernel = linalg::kernel_basis(m);
  H1Result out;
  if (kernel.empty()) return out;
  auto rr = linalg::rref(linalg::SparseMatrix::from_rows(kernel, g));
  for (const auto& row : rr.echelon.row_vectors()) {
    if (row.empty()) continue;
    NCPoly p;
    for (const auto& e : row) p.add_term(Word{static_cast<Gen>(e.index)}, e.value);
    out.basis.push_back(std::move(p));
  }
  out.dimension = out.basis.size();
  return out;
}

inline H1Result h1(const RootSystem& rs, const Limits& limits = {}) { return h1(*make_quad(rs, limits)); }

/// d^2 x = theta^2 x - x theta^2; theta^2 is central iff this vanishes on all generators.
struct ThetaSquareReport {
  NCPoly theta_square;  // normal form
  bool central = true;
  std::vector<std::size_t> non_commuting;  // generators a with [theta^2, e_a] != 0
};

inline ThetaSquareReport theta_square_report(const AlgebraHandle& h) {
  NCPoly theta = theta_of(h);
  NCPoly t2 = theta * theta;
  ThetaSquareReport out{h.normal_form(t2), true, {}};
  for (std::size_t a = 0; a < h.generator_count(); ++a) {
    NCPoly e = NCPoly::generator(static_cast<Gen>(a));
    if (!h.normal_form(t2 * e - e * t2).is_zero()) {
      out.central = false;
      out.non_commuting.push_back(a);
    }
  }
  return out;
}

}  // namespace weylcalc

#endif  // WEYLCALC_CALCULUS_HPP
