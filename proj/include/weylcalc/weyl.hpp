#ifndef WEYLCALC_WEYL_HPP
#define WEYLCALC_WEYL_HPP

// Root systems of type A_{n-1}, B_n, D_n and G2 with exact coordinates, their
// reflections and Weyl group elements.
//
// Realizations:
//   A_{n-1}: e_i - e_j in R^n
//   B_n:     +-e_i +- e_j, +-e_i in R^n
//   D_n:     +-e_i +- e_j in R^n
//   G2:      in the plane x+y+z = 0 of R^3; short roots e_i - e_j, long
//            roots 2e_i - e_j - e_k.
//
// Reflections are indexed in a fixed order that every matrix and cache
// layout depends on:
//   A: (ij) for i<j lexicographically
//   B: all (ij), then all (ij)~ (the reflection in e_i + e_j), then (1)..(n)
//   D: all (ij), then all (ij)~
//   G2: a1..a6 in angular order starting from the short simple root.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylcalc/errors.hpp"
#include "weylcalc/linalg.hpp"
#include "weylcalc/rational.hpp"

namespace weylcalc {

using Vec = std::vector<Rational>;

enum class RootType { A, B, D, G2 };

inline std::string to_string(RootType t) {
  switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::D: return "D";
    case RootType::G2: return "G2";
  }
  return "?";
}

inline RootType parse_root_type(std::string_view s) {
  if (s == "A" || s == "a") return RootType::A;
  if (s == "B" || s == "b") return RootType::B;
  if (s == "D" || s == "d") return RootType::D;
  if (s == "G2" || s == "g2" || s == "G" || s == "g") return RootType::G2;
  throw UnsupportedRootSystem("unsupported root system type '" + std::string(s) + "'");
}

enum class RootClass { unique, long_root, short_root };

inline std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::unique: return "unique";
    case RootClass::long_root: return "long";
    case RootClass::short_root: return "short";
  }
  return "?";
}

struct Reflection {
  std::size_t index;
  Vec root;  // the positive root defining the reflection
  RootClass root_class;
  std::string label;
};

/// Signed permutation of the ambient coordinates: w(e_j) = sign[j] e_{image[j]}.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(std::vector<std::size_t> image, std::vector<int> sign)
      : image_(std::move(image)), sign_(std::move(sign)) {
    if (image_.size() != sign_.size()) throw std::invalid_argument("signed permutation size mismatch");
  }

  static GroupElement identity(std::size_t dim) {
    std::vector<std::size_t> img(dim);
    std::iota(img.begin(), img.end(), std::size_t{0});
    return GroupElement(std::move(img), std::vector<int>(dim, 1));
  }

  std::size_t dimension() const { return image_.size(); }
  const std::vector<std::size_t>& image() const { return image_; }
  const std::vector<int>& sign() const { return sign_; }

  Vec apply(const Vec& v) const {
    Vec out(v.size(), Rational(0));
    for (std::size_t j = 0; j < v.size(); ++j) {
      out[image_[j]] = sign_[j] > 0 ? Rational(v[j]) : Rational(-v[j]);
    }
    return out;
  }

  /// Composition: (*this * rhs)(v) = this(rhs(v)).
  GroupElement operator*(const GroupElement& rhs) const {
    std::vector<std::size_t> img(dimension());
    std::vector<int> sg(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      img[j] = image_[rhs.image_[j]];
      sg[j] = rhs.sign_[j] * sign_[rhs.image_[j]];
    }
    return GroupElement(std::move(img), std::move(sg));
  }

  GroupElement inverse() const {
    std::vector<std::size_t> img(dimension());
    std::vector<int> sg(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      img[image_[j]] = j;
      sg[image_[j]] = sign_[j];
    }
    return GroupElement(std::move(img), std::move(sg));
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::size_t> image_;
  std::vector<int> sign_;
};

inline Rational pairing(const Vec& x, const Vec& y) {
  Rational s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// gamma^vee = 2 gamma / <gamma, gamma>
inline Vec coroot(const Vec& gamma) {
  Rational f = Rational(2) / pairing(gamma, gamma);
  Vec out(gamma);
  for (auto& x : out) x *= f;
  return out;
}

inline Vec negated(const Vec& v) {
  Vec out(v);
  for (auto& x : out) x = -x;
  return out;
}

class RootSystem {
 public:
  RootType type() const { return type_; }
  int rank() const { return rank_; }
  std::size_t dimension() const { return dim_; }

  std::string name() const {
    return type_ == RootType::G2 ? "G2" : to_string(type_) + std::to_string(rank_);
  }

  bool simply_laced() const { return type_ == RootType::A || type_ == RootType::D; }

  /// Number of index letters used by the (ij) notation: n for A_{n-1}, B_n, D_n.
  int letters() const { return static_cast<int>(dim_); }

  const std::vector<Vec>& positive_roots() const { return positive_; }
  const std::vector<Vec>& roots() const { return roots_; }
  const std::vector<Vec>& simple_roots() const { return simple_; }
  const std::vector<Reflection>& reflections() const { return reflections_; }
  std::size_t generator_count() const { return reflections_.size(); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(reflections_.size());
    for (const auto& r : reflections_) out.push_back(r.label);
    return out;
  }

  bool is_root(const Vec& v) const { return lookup_.count(v) != 0; }

  bool is_positive(const Vec& v) const {
    auto it = lookup_.find(v);
    if (it == lookup_.end()) throw std::invalid_argument("not a root");
    return it->second.second > 0;
  }

  /// Index of the reflection s_gamma (gamma and -gamma give the same one).
  std::size_t reflection_of(const Vec& gamma) const {
    auto it = lookup_.find(gamma);
    if (it == lookup_.end()) throw std::invalid_argument("not a root of " + name());
    return it->second.first;
  }

  /// s_a(v) = v - <v, gamma_a^vee> gamma_a
  Vec reflect(std::size_t a, const Vec& v) const {
    const Vec& g = reflections_.at(a).root;
    Rational f = pairing(v, coroot(g));
    Vec out(v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= f * g[i];
    return out;
  }

  /// Index of s_a s_b s_a^{-1} = s_{s_a(gamma_b)}.
  std::size_t conjugate(std::size_t a, std::size_t b) const { return conj_.at(a * generator_count() + b); }

  const GroupElement& reflection_element(std::size_t a) const { return elements_.at(a); }

  /// Number of positive roots sent to negative roots.
  std::size_t length(const GroupElement& w) const {
    std::size_t l = 0;
    for (const auto& g : positive_) {
      if (!is_positive(w.apply(g))) ++l;
    }
    return l;
  }

  /// det(w) = (-1)^{l(w)}, computed on the root span.
  int determinant(const GroupElement& w) const { return length(w) % 2 == 0 ? 1 : -1; }

  /// Index of w s_a w^{-1} = s_{w(gamma_a)}.
  std::size_t act_on_reflection(const GroupElement& w, std::size_t a) const {
    return reflection_of(w.apply(reflections_.at(a).root));
  }

  /// All group elements, by closure under the simple reflections.
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> gens;
    for (const auto& s : simple_) gens.push_back(elements_.at(reflection_of(s)));
    std::set<GroupElement> seen{GroupElement::identity(dim_)};
    std::vector<GroupElement> frontier{GroupElement::identity(dim_)};
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& w : frontier) {
        for (const auto& s : gens) {
          GroupElement x = s * w;
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  /// (ij) for distinct 1-based letters; order of i, j is irrelevant.
  std::size_t transposition(int i, int j) const {
    require_letters(i, j);
    Vec v(dim_, Rational(0));
    v[i - 1] = 1;
    v[j - 1] = -1;
    return reflection_of(v);
  }

  /// (ij)~, the reflection in e_i + e_j (types B and D).
  std::size_t barred(int i, int j) const {
    if (type_ != RootType::B && type_ != RootType::D) {
      throw UnsupportedRootSystem("barred reflections exist only in types B and D");
    }
    require_letters(i, j);
    Vec v(dim_, Rational(0));
    v[i - 1] = 1;
    v[j - 1] = 1;
    return reflection_of(v);
  }

  /// (i), the reflection in e_i (type B).
  std::size_t sign_change(int i) const {
    if (type_ != RootType::B) throw UnsupportedRootSystem("(i) reflections exist only in type B");
    if (i < 1 || i > letters()) throw std::out_of_range("letter out of range");
    Vec v(dim_, Rational(0));
    v[i - 1] = 1;
    return reflection_of(v);
  }

  friend RootSystem build_root_system(RootType type, int rank);

 private:
  void require_letters(int i, int j) const {
    if (type_ == RootType::G2) throw UnsupportedRootSystem("(ij) notation is not defined for G2");
    if (i < 1 || j < 1 || i > letters() || j > letters() || i == j) {
      throw std::out_of_range("letters must be distinct and in 1.." + std::to_string(letters()));
    }
  }

  void finish() {
    const std::size_t g = positive_.size();
    roots_ = positive_;
    for (const auto& r : positive_) roots_.push_back(negated(r));
    for (std::size_t k = 0; k < g; ++k) {
      lookup_[positive_[k]] = {k, 1};
      lookup_[negated(positive_[k])] = {k, -1};
    }
    Rational max_len(0);
    Rational min_len = pairing(positive_[0], positive_[0]);
    for (const auto& r : positive_) {
      max_len = std::max(max_len, pairing(r, r));
      min_len = std::min(min_len, pairing(r, r));
    }
    for (std::size_t k = 0; k < g; ++k) {
      Reflection r{k, positive_[k], RootClass::unique, labels_[k]};
      if (max_len != min_len) {
        r.root_class = pairing(positive_[k], positive_[k]) == max_len ? RootClass::long_root
                                                                       : RootClass::short_root;
      }
      reflections_.push_back(std::move(r));
    }
    conj_.resize(g * g);
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t b = 0; b < g; ++b) conj_[a * g + b] = reflection_of(reflect(a, positive_[b]));
    }
    for (std::size_t a = 0; a < g; ++a) elements_.push_back(signed_permutation_of(a));
  }

  // The reflection s_a as a signed permutation agreeing with it on every root.
  GroupElement signed_permutation_of(std::size_t a) const {
    std::vector<std::size_t> img(dim_);
    std::vector<int> sg(dim_);
    bool ok = true;
    for (std::size_t j = 0; j < dim_ && ok; ++j) {
      Vec e(dim_, Rational(0));
      e[j] = 1;
      Vec s = reflect(a, e);
      ok = false;
      for (std::size_t k = 0; k < dim_; ++k) {
        Vec unit(dim_, Rational(0));
        unit[k] = 1;
        if (s == unit || s == negated(unit)) {
          img[j] = k;
          sg[j] = s == unit ? 1 : -1;
          ok = true;
        }
      }
    }
    if (ok) return GroupElement(img, sg);
    // Not a signed permutation of the ambient space (G2 long roots): search
    // for one that agrees with s_a on the root span.
    std::vector<std::size_t> perm(dim_);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
        std::vector<int> signs(dim_);
        for (std::size_t j = 0; j < dim_; ++j) signs[j] = (mask >> j) & 1u ? -1 : 1;
        GroupElement w(perm, signs);
        bool agrees = std::all_of(roots_.begin(), roots_.end(),
                                  [&](const Vec& r) { return w.apply(r) == reflect(a, r); });
        if (agrees) return w;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw std::logic_error("no signed permutation realizes reflection " + labels_[a]);
  }

  RootType type_ = RootType::A;
  int rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<Vec> positive_;
  std::vector<std::string> labels_;
  std::vector<Vec> roots_;
  std::vector<Vec> simple_;
  std::vector<Reflection> reflections_;
  std::map<Vec, std::pair<std::size_t, int>> lookup_;
  std::vector<std::size_t> conj_;
  std::vector<GroupElement> elements_;
};

inline RootSystem build_root_system(RootType type, int rank) {
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  auto basis = [](std::size_t dim, std::initializer_list<std::pair<std::size_t, int>> coords) {
    Vec v(dim, Rational(0));
    for (auto [i, c] : coords) v[i] = c;
    return v;
  };
  auto pair_label = [](int i, int j) { return "(" + std::to_string(i) + std::to_string(j) + ")"; };

  switch (type) {
    case RootType::A: {
      if (rank < 1) throw UnsupportedRootSystem("type A needs rank >= 1");
      const std::size_t n = static_cast<std::size_t>(rank) + 1;
      rs.dim_ = n;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          rs.positive_.push_back(basis(n, {{i, 1}, {j, -1}}));
          rs.labels_.push_back(pair_label(static_cast<int>(i + 1), static_cast<int>(j + 1)));
        }
      }
      for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_.push_back(basis(n, {{i, 1}, {i + 1, -1}}));
      break;
    }
    case RootType::B:
    case RootType::D: {
      if (type == RootType::B && rank < 2) throw UnsupportedRootSystem("type B needs rank >= 2");
      if (type == RootType::D && rank < 3) throw UnsupportedRootSystem("type D needs rank >= 3");
      const std::size_t n = static_cast<std::size_t>(rank);
      rs.dim_ = n;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          rs.positive_.push_back(basis(n, {{i, 1}, {j, -1}}));
          rs.labels_.push_back(pair_label(static_cast<int>(i + 1), static_cast<int>(j + 1)));
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          rs.positive_.push_back(basis(n, {{i, 1}, {j, 1}}));
          rs.labels_.push_back(pair_label(static_cast<int>(i + 1), static_cast<int>(j + 1)) + "~");
        }
      }
      if (type == RootType::B) {
        for (std::size_t i = 0; i < n; ++i) {
          rs.positive_.push_back(basis(n, {{i, 1}}));
          rs.labels_.push_back("(" + std::to_string(i + 1) + ")");
        }
      }
      for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_.push_back(basis(n, {{i, 1}, {i + 1, -1}}));
      if (type == RootType::B) {
        rs.simple_.push_back(basis(n, {{n - 1, 1}}));
      } else {
        rs.simple_.push_back(basis(n, {{n - 2, 1}, {n - 1, 1}}));
      }
      break;
    }
    case RootType::G2: {
      if (rank != 2) throw UnsupportedRootSystem("G2 has rank 2");
      rs.dim_ = 3;
      // alpha = (1,-1,0) short, beta = (-2,1,1) long.
      rs.positive_ = {
          basis(3, {{0, 1}, {1, -1}}),            // a1 = alpha
          basis(3, {{0, 1}, {1, -2}, {2, 1}}),    // a2 = 3alpha + beta
          basis(3, {{1, -1}, {2, 1}}),            // a3 = 2alpha + beta
          basis(3, {{0, -1}, {1, -1}, {2, 2}}),   // a4 = 3alpha + 2beta
          basis(3, {{0, -1}, {2, 1}}),            // a5 = alpha + beta
          basis(3, {{0, -2}, {1, 1}, {2, 1}}),    // a6 = beta
      };
      rs.labels_ = {"e1", "e2", "e3", "e4", "e5", "e6"};
      rs.simple_ = {rs.positive_[0], rs.positive_[5]};
      break;
    }
  }
  rs.finish();
  return rs;
}

/// Reflection a b a^{-1}.
inline std::size_t conjugate_reflection(const RootSystem& rs, std::size_t a, std::size_t b) {
  return rs.conjugate(a, b);
}

inline int determinant(const RootSystem& rs, const GroupElement& w) { return rs.determinant(w); }

// Fundamental weights and their Gram-Schmidt orthogonalization.

enum class WeightConvention {
  /// True fundamental weights in the span of the roots: <omega_a, b^vee> = delta_ab.
  fundamental,
  /// omega_k = e_1 + ... + e_k in the ambient coordinates (types A, B, D).
  /// For A these are the GL_n fundamental weights; for B and D they differ
  /// from the fundamental ones at the spin nodes.
  ambient,
};

struct Weight {
  Vec omega;
  Vec nu;  // orthogonalized
};

inline std::vector<Vec> weight_vectors(const RootSystem& rs, WeightConvention conv) {
  const auto& simple = rs.simple_roots();
  const std::size_t r = simple.size();
  std::vector<Vec> omegas;
  if (conv == WeightConvention::ambient) {
    if (rs.type() == RootType::G2) {
      throw UnsupportedRootSystem("ambient weights are defined for types A, B, D only");
    }
    for (std::size_t k = 0; k < r; ++k) {
      Vec w(rs.dimension(), Rational(0));
      for (std::size_t i = 0; i <= k; ++i) w[i] = 1;
      omegas.push_back(std::move(w));
    }
    return omegas;
  }
  // omega_a = sum_k c_k alpha_k with sum_k c_k <alpha_k, alpha_b^vee> = delta_ab.
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r));
  for (std::size_t b = 0; b < r; ++b) {
    Vec cb = coroot(simple[b]);
    for (std::size_t k = 0; k < r; ++k) m[b][k] = pairing(simple[k], cb);
  }
  for (std::size_t a = 0; a < r; ++a) {
    std::vector<Rational> rhs(r, Rational(0));
    rhs[a] = 1;
    auto c = linalg::solve_dense(m, rhs);
    Vec w(rs.dimension(), Rational(0));
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += c[k] * simple[k][i];
    }
    omegas.push_back(std::move(w));
  }
  return omegas;
}

/// Gram-Schmidt in simple-root index order, without normalization.
inline std::vector<Weight> orthogonalize_weights(const RootSystem& rs,
                                                 WeightConvention conv = WeightConvention::fundamental) {
  auto omegas = weight_vectors(rs, conv);
  std::vector<Weight> out;
  for (auto& w : omegas) {
    Vec nu = w;
    for (const auto& prev : out) {
      Rational f = pairing(w, prev.nu) / pairing(prev.nu, prev.nu);
      for (std::size_t i = 0; i < nu.size(); ++i) nu[i] -= f * prev.nu[i];
    }
    out.push_back({std::move(w), std::move(nu)});
  }
  return out;
}

}  // namespace weylcalc

#endif  // WEYLCALC_WEYL_HPP
