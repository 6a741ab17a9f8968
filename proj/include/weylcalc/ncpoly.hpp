#ifndef WEYLCALC_NCPOLY_HPP
#define WEYLCALC_NCPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcalc/rational.hpp"

namespace weylcalc {

using Gen = std::uint16_t;

/// A monomial of the free algebra: a word in generator indices.
using Word = std::vector<Gen>;

/// Degree first, then lexicographic on generator indices.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

/// Finitely supported linear combination of words with rational coefficients.
class NCPoly {
 public:
  using Terms = std::map<Word, Rational, DegLexLess>;

  NCPoly() = default;
  explicit NCPoly(const Rational& c) {
    if (!weylcalc::is_zero(c)) terms_.emplace(Word{}, c);
  }

  static NCPoly one() { return NCPoly(Rational(1)); }
  static NCPoly generator(Gen a) { return monomial(Word{a}); }
  static NCPoly monomial(Word w, const Rational& c = Rational(1)) {
    NCPoly p;
    p.add_term(w, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const Rational& c) {
    if (weylcalc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (weylcalc::is_zero(it->second)) terms_.erase(it);
    }
  }

  Rational coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::set<std::size_t> degrees() const {
    std::set<std::size_t> out;
    for (const auto& [w, c] : terms_) out.insert(w.size());
    return out;
  }

  bool is_homogeneous() const { return degrees().size() <= 1; }

  /// Degree of a nonzero homogeneous polynomial.
  std::optional<std::size_t> degree() const {
    auto d = degrees();
    if (d.size() != 1) return std::nullopt;
    return *d.begin();
  }

  NCPoly component(std::size_t d) const {
    NCPoly out;
    for (const auto& [w, c] : terms_) {
      if (w.size() == d) out.terms_.emplace(w, c);
    }
    return out;
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(const Rational& s) {
    if (weylcalc::is_zero(s)) {
      terms_.clear();
    } else {
      for (auto& [w, c] : terms_) c *= s;
    }
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Rational& s) { return a *= s; }
  friend NCPoly operator*(const Rational& s, NCPoly a) { return a *= s; }
  friend NCPoly operator-(NCPoly a) { return a *= Rational(-1); }

  /// Concatenation product, extended bilinearly.
  friend NCPoly operator*(const NCPoly& x, const NCPoly& y) {
    NCPoly out;
    for (const auto& [u, a] : x.terms_) {
      for (const auto& [v, b] : y.terms_) out.add_term(concat(u, v), a * b);
    }
    return out;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  /// e.g. "(12)(13) - 2 (13)(12)"; labels[i] names generator i.
  std::string to_string(const std::vector<std::string>& labels) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      if (w.empty()) {
        out += weylcalc::to_string(mag);
        continue;
      }
      if (mag != 1) out += weylcalc::to_string(mag) + " ";
      for (Gen g : w) out += g < labels.size() ? labels[g] : "x" + std::to_string(g);
    }
    return out;
  }

 private:
  Terms terms_;
};

inline NCPoly multiply(const NCPoly& x, const NCPoly& y) { return x * y; }

/// g^d, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_power(std::uint64_t g, std::size_t d) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (g != 0 && out > UINT64_MAX / g) return std::nullopt;
    out *= g;
  }
  return out;
}

/// Position of a word among all words of its length in lexicographic order
/// (the base-g number spelled by the word).
inline std::uint64_t word_index(const Word& w, std::size_t g) {
  std::uint64_t idx = 0;
  for (Gen x : w) idx = idx * g + x;
  return idx;
}

inline Word word_at(std::uint64_t index, std::size_t g, std::size_t degree) {
  Word w(degree);
  for (std::size_t k = degree; k-- > 0;) {
    w[k] = static_cast<Gen>(index % g);
    index /= g;
  }
  return w;
}

inline NCPoly power(const NCPoly& x, std::size_t k) {
  NCPoly out = NCPoly::one();
  for (std::size_t i = 0; i < k; ++i) out = out * x;
  return out;
}

/// Product of the factors in order.
inline NCPoly product(const std::vector<NCPoly>& factors) {
  NCPoly out = NCPoly::one();
  for (const auto& f : factors) out = out * f;
  return out;
}

}  // namespace weylcalc

#endif  // WEYLCALC_NCPOLY_HPP
