#ifndef WEYLCALC_CONNECTIONS_HPP
#define WEYLCALC_CONNECTIONS_HPP

// Flat connections built from reflections, the Weyl group action on forms,
// twisted derivations, and the elements whose vanishing the verifier checks.
// Letters are 1-based throughout, as in the (ij) notation.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcalc/calculus.hpp"
#include "weylcalc/ncalg.hpp"
#include "weylcalc/ncpoly.hpp"
#include "weylcalc/weyl.hpp"

namespace weylcalc {

namespace detail {

inline NCPoly gen(std::size_t a) { return NCPoly::generator(static_cast<Gen>(a)); }

inline void require_classical(const RootSystem& rs, const char* what) {
  if (rs.type() == RootType::G2) throw UnsupportedRootSystem(std::string(what) + " is defined for types A, B, D");
}

inline void require_distinct(const std::vector<int>& letters, int n) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] < 1 || letters[i] > n) throw std::out_of_range("letter out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (letters[i] == letters[j]) throw std::invalid_argument("letters must be distinct");
    }
  }
}

/// Number of inversions of a sequence.
inline std::size_t inversions(const std::vector<int>& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) n += s[i] > s[j];
  }
  return n;
}

}  // namespace detail

/// theta_i: sum of (ij) over j != i, plus the barred (ij) for B and D, plus 2 (i) for B.
inline NCPoly theta_i(const RootSystem& rs, int i) {
  detail::require_classical(rs, "theta_i");
  const int n = rs.letters();
  if (i < 1 || i > n) throw std::out_of_range("theta index out of range");
  NCPoly out;
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    out += detail::gen(rs.transposition(i, j));
    if (rs.type() != RootType::A) out += detail::gen(rs.barred(i, j));
  }
  if (rs.type() == RootType::B) out += Rational(2) * detail::gen(rs.sign_change(i));
  return out;
}

inline std::vector<NCPoly> theta_family(const RootSystem& rs) {
  std::vector<NCPoly> out;
  for (int i = 1; i <= rs.letters(); ++i) out.push_back(theta_i(rs, i));
  return out;
}

/// theta_alpha = sum over roots gamma with <nu_alpha, gamma> > 0 of <nu_alpha, gamma^vee> e_{s_gamma}.
inline NCPoly theta_general(const RootSystem& rs, int alpha, WeightConvention conv = WeightConvention::ambient) {
  auto weights = orthogonalize_weights(rs, conv);
  if (alpha < 1 || static_cast<std::size_t>(alpha) > weights.size()) {
    throw std::out_of_range("simple root index out of range");
  }
  const Vec& nu = weights[static_cast<std::size_t>(alpha - 1)].nu;
  NCPoly out;
  for (const auto& gamma : rs.roots()) {
    if (sgn(pairing(nu, gamma)) <= 0) continue;
    out.add_term(Word{static_cast<Gen>(rs.reflection_of(gamma))}, pairing(nu, coroot(gamma)));
  }
  return out;
}

/// Algebra map e_{s_gamma} -> det(w) e_{s_{w gamma}}.
inline NCPoly weyl_action(const RootSystem& rs, const GroupElement& w, const NCPoly& x) {
  const std::size_t g = rs.generator_count();
  std::vector<Gen> image(g);
  for (std::size_t a = 0; a < g; ++a) image[a] = static_cast<Gen>(rs.act_on_reflection(w, a));
  const int det = rs.determinant(w);
  NCPoly out;
  for (const auto& [word, c] : x.terms()) {
    Word y(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) y[i] = image[word[i]];
    out.add_term(y, (det < 0 && word.size() % 2 == 1) ? Rational(-c) : c);
  }
  return out;
}

/// D_gamma(x) = e_{s_gamma} x - (-1)^{deg x} s_gamma(x) e_{s_gamma} in the free algebra.
inline NCPoly twisted_derivation(const RootSystem& rs, std::size_t gamma, const NCPoly& x) {
  if (x.is_zero()) return x;
  auto k = x.degree();
  if (!k) throw std::invalid_argument("twisted derivation needs a homogeneous element");
  NCPoly e = detail::gen(gamma);
  NCPoly sx = weyl_action(rs, rs.reflection_element(gamma), x);
  NCPoly out = e * x;
  if (*k % 2 == 0) {
    out -= sx * e;
  } else {
    out += sx * e;
  }
  return out;
}

inline NCPoly twisted_derivation(const RootSystem& rs, const AlgebraHandle& h, std::size_t gamma, const NCPoly& x) {
  return h.normal_form(twisted_derivation(rs, gamma, x));
}

// Elements of the quadratic algebra of type A. Each vanishes there.

/// sum_{i=2}^k (-1)^{k(i-1)} (a1 ai)(a1 a_{i+1})...(a1 ak)(a1 a2)...(a1 ai)
inline NCPoly cyclic_element(const RootSystem& rs, const std::vector<int>& a) {
  detail::require_distinct(a, rs.letters());
  const std::size_t k = a.size();
  if (k < 2) throw std::invalid_argument("cyclic relation needs at least two letters");
  auto t = [&](std::size_t i) { return detail::gen(rs.transposition(a[0], a[i - 1])); };
  NCPoly out;
  for (std::size_t i = 2; i <= k; ++i) {
    NCPoly term = NCPoly::one();
    for (std::size_t j = i; j <= k; ++j) term = term * t(j);
    for (std::size_t j = 2; j <= i; ++j) term = term * t(j);
    if ((k * (i - 1)) % 2 == 1) term *= Rational(-1);
    out += term;
  }
  return out;
}

/// The four-term identity built from a1 .. a_{k+1}.
inline NCPoly chain_element(const RootSystem& rs, const std::vector<int>& a) {
  detail::require_distinct(a, rs.letters());
  if (a.size() < 3) throw std::invalid_argument("chain relation needs at least three letters");
  const std::size_t k = a.size() - 1;
  auto t = [&](int x, int y) { return detail::gen(rs.transposition(x, y)); };
  auto prod = [&](std::size_t from, std::size_t to) {
    NCPoly p = NCPoly::one();
    for (std::size_t j = from; j <= to; ++j) p = p * t(a[0], a[j - 1]);
    return p;
  };
  const Rational sign = (k + 1) % 2 == 0 ? Rational(1) : Rational(-1);
  const int a1 = a[0], a2 = a[1], ak1 = a[k];
  NCPoly out = prod(2, k) * t(a1, a2) * t(a1, ak1);
  out += sign * (t(a1, ak1) * prod(2, k) * t(a1, a2));
  out += prod(2, k + 1) * t(a2, ak1);
  out += sign * (t(a2, ak1) * t(a1, ak1) * prod(3, k) * t(a1, a2));
  return out;
}

/// sum_{k=1}^m (-1)^{(m-1)(k-1)} prod_{j>k} (a_k a_j) prod_{j<k} (a_j a_k)
inline NCPoly telescoping_element(const RootSystem& rs, const std::vector<int>& a) {
  detail::require_distinct(a, rs.letters());
  const std::size_t m = a.size();
  NCPoly out;
  for (std::size_t k = 1; k <= m; ++k) {
    NCPoly term = NCPoly::one();
    for (std::size_t j = k + 1; j <= m; ++j) term = term * detail::gen(rs.transposition(a[k - 1], a[j - 1]));
    for (std::size_t j = 1; j < k; ++j) term = term * detail::gen(rs.transposition(a[j - 1], a[k - 1]));
    if (((m - 1) * (k - 1)) % 2 == 1) term *= Rational(-1);
    out += term;
  }
  return out;
}

/// prod_{j != k} theta_j minus the signed sum over permutations sigma of prod_{j != k} (sigma(j), k).
inline NCPoly hat_expansion_element(const RootSystem& rs, int k) {
  detail::require_type(rs, RootType::A, "hat_expansion_element");
  const int n = rs.letters();
  if (k < 1 || k > n) throw std::out_of_range("index out of range");
  NCPoly lhs = NCPoly::one();
  std::vector<int> rest;
  for (int j = 1; j <= n; ++j) {
    if (j == k) continue;
    lhs = lhs * theta_i(rs, j);
    rest.push_back(j);
  }
  NCPoly rhs;
  std::vector<int> sigma = rest;
  do {
    Word w;
    for (int x : sigma) w.push_back(static_cast<Gen>(rs.transposition(x, k)));
    rhs.add_term(w, detail::inversions(sigma) % 2 == 0 ? Rational(1) : Rational(-1));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return lhs - rhs;
}

inline NCPoly power_sum_element(const std::vector<NCPoly>& thetas, std::size_t m) {
  NCPoly out;
  for (const auto& t : thetas) out += power(t, 2 * m);
  return out;
}

inline NCPoly top_product_element(const std::vector<NCPoly>& thetas) { return product(thetas); }

/// e_k(theta_1^2, ..., theta_n^2), factors in increasing index order.
inline NCPoly elementary_element(const std::vector<NCPoly>& thetas, std::size_t k) {
  const std::size_t n = thetas.size();
  if (k > n) throw std::out_of_range("elementary symmetric index out of range");
  std::vector<NCPoly> squares;
  for (const auto& t : thetas) squares.push_back(t * t);
  NCPoly out;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
  do {
    NCPoly term = NCPoly::one();
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) term = term * squares[i];
    }
    out += term;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// sum_i (-1)^{i+1} theta_1 ... (theta_i omitted) ... theta_n
inline NCPoly hat_sum_element(const std::vector<NCPoly>& thetas) {
  NCPoly out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    NCPoly term = NCPoly::one();
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      if (j != i) term = term * thetas[j];
    }
    if (i % 2 == 1) term *= Rational(-1);
    out += term;
  }
  return out;
}

/// e_{n-1}(theta^2) - (hat sum)^2
inline NCPoly square_remark_element(const std::vector<NCPoly>& thetas) {
  if (thetas.empty()) throw std::invalid_argument("empty theta family");
  NCPoly h = hat_sum_element(thetas);
  return elementary_element(thetas, thetas.size() - 1) - h * h;
}

inline NCPoly anticommutator(const NCPoly& x, const NCPoly& y) { return x * y + y * x; }

/// The degree-2 relations listed for G2, generators a1..a6 at indices 0..5.
inline std::vector<NCPoly> g2_listed_relations() {
  auto e = [](int i) { return detail::gen(static_cast<std::size_t>(i - 1)); };
  std::vector<NCPoly> out;
  for (int i = 1; i <= 6; ++i) out.push_back(e(i) * e(i));
  out.push_back(anticommutator(e(1), e(4)));
  out.push_back(anticommutator(e(2), e(5)));
  out.push_back(anticommutator(e(3), e(6)));
  out.push_back(e(1) * e(3) + e(3) * e(5) + e(5) * e(1));
  out.push_back(e(3) * e(1) + e(5) * e(3) + e(1) * e(5));
  out.push_back(e(2) * e(4) + e(4) * e(6) + e(6) * e(2));
  out.push_back(e(4) * e(2) + e(6) * e(4) + e(2) * e(6));
  NCPoly up, down;
  for (int i = 1; i <= 6; ++i) {
    int j = i % 6 + 1;
    up += e(i) * e(j);
    down += e(j) * e(i);
  }
  out.push_back(up);
  out.push_back(down);
  return out;
}

/// eta_1 = -(2e1 + e2 + e3 + e5 + e6), eta_2 = -(e2 + e3 + 2e4 + e5 + e6)
inline std::vector<NCPoly> g2_etas() {
  auto e = [](int i) { return detail::gen(static_cast<std::size_t>(i - 1)); };
  NCPoly eta1 = -(Rational(2) * e(1) + e(2) + e(3) + e(5) + e(6));
  NCPoly eta2 = -(e(2) + e(3) + Rational(2) * e(4) + e(5) + e(6));
  return {eta1, eta2};
}

/// E_(ij) = (ij) + barred (ij) in type D.
inline NCPoly d_embedding_generator(const RootSystem& d, int i, int j) {
  detail::require_type(d, RootType::D, "d_embedding_generator");
  return detail::gen(d.transposition(i, j)) + detail::gen(d.barred(i, j));
}

/// iota: e_(ij) -> E_(ij), from the algebra of A_{n-1} into that of D_n.
inline NCPoly embed_a_in_d(const RootSystem& a, const RootSystem& d, const NCPoly& x) {
  std::vector<NCPoly> image;
  for (const auto& r : a.reflections()) {
    int i = 0, j = 0;
    for (std::size_t c = 0; c < r.root.size(); ++c) {
      if (r.root[c] == 1) i = static_cast<int>(c) + 1;
      if (r.root[c] == -1) j = static_cast<int>(c) + 1;
    }
    image.push_back(d_embedding_generator(d, i, j));
  }
  NCPoly out;
  for (const auto& [w, c] : x.terms()) {
    NCPoly term(c);
    for (Gen l : w) term = term * image[l];
    out += term;
  }
  return out;
}

/// pi: barred reflections -> 0, (ij) -> (ij), from D_n onto A_{n-1}.
inline NCPoly project_d_to_a(const RootSystem& d, const RootSystem& a, const NCPoly& x) {
  std::vector<std::optional<Gen>> image(d.generator_count());
  for (const auto& r : d.reflections()) {
    int i = 0, j = 0;
    bool barred = true;
    for (std::size_t c = 0; c < r.root.size(); ++c) {
      if (r.root[c] == 0) continue;
      if (r.root[c] < 0) barred = false;
      (i == 0 ? i : j) = static_cast<int>(c) + 1;
    }
    if (!barred) image[r.index] = static_cast<Gen>(a.transposition(i, j));
  }
  NCPoly out;
  for (const auto& [w, c] : x.terms()) {
    Word y;
    bool zero = false;
    for (Gen l : w) {
      if (!image[l]) {
        zero = true;
        break;
      }
      y.push_back(*image[l]);
    }
    if (!zero) out.add_term(y, c);
  }
  return out;
}

/// The three families of relations satisfied by E_(ij): squares, disjoint
/// anticommutators and the three-term cyclic relation.
inline std::vector<NCPoly> d_embedding_relations(const RootSystem& d) {
  const int n = d.letters();
  auto E = [&](int i, int j) { return d_embedding_generator(d, i, j); };
  std::vector<NCPoly> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) out.push_back(E(i, j) * E(i, j));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          if (k == i || k == j || l == i || l == j) continue;
          if (std::pair(i, j) < std::pair(k, l)) out.push_back(anticommutator(E(i, j), E(k, l)));
        }
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        out.push_back(E(i, j) * E(j, k) + E(j, k) * E(k, i) + E(k, i) * E(i, j));
      }
    }
  }
  return out;
}

/// Applies D_{a_{k-1} a_k} ... D_{a_2 a_3} to (a1 a2)^2 in the free algebra.
inline NCPoly cyclic_by_derivations(const RootSystem& rs, const std::vector<int>& a) {
  detail::require_distinct(a, rs.letters());
  if (a.size() < 2) throw std::invalid_argument("need at least two letters");
  NCPoly e = detail::gen(rs.transposition(a[0], a[1]));
  NCPoly x = e * e;
  for (std::size_t i = 2; i + 1 <= a.size(); ++i) {
    x = twisted_derivation(rs, rs.transposition(a[i - 1], a[i]), x);
  }
  return x;
}

}  // namespace weylcalc

#endif  // WEYLCALC_CONNECTIONS_HPP
