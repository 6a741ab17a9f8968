#ifndef WEYLCALC_BRAIDED_HPP
#define WEYLCALC_BRAIDED_HPP

// Set-theoretic braiding on generators indexed by a conjugation-closed set:
// Psi(e_a (x) e_b) = e_{a b a^-1} (x) e_a. Each Psi_i permutes the words of a
// given length, so every operator here acts on monomials by relabelling.

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weylcalc/errors.hpp"
#include "weylcalc/linalg.hpp"
#include "weylcalc/ncpoly.hpp"

namespace weylcalc {

/// Conjugation table: act(a, b) = a b a^{-1}.
class Rack {
 public:
  Rack() = default;
  Rack(std::size_t size, std::vector<Gen> table) : size_(size), table_(std::move(table)) {
    if (table_.size() != size_ * size_) throw std::invalid_argument("rack table has wrong size");
    for (Gen x : table_) {
      if (x >= size_) throw std::invalid_argument("rack table entry out of range");
    }
  }

  std::size_t size() const { return size_; }
  Gen act(Gen a, Gen b) const { return table_[a * size_ + b]; }

 private:
  std::size_t size_ = 0;
  std::vector<Gen> table_;
};

/// Applies Psi to the letters at positions (pos, pos + 1).
inline void braid_word_at(const Rack& rack, Word& w, std::size_t pos) {
  if (pos + 1 >= w.size()) throw std::out_of_range("braiding position out of range");
  Gen a = w[pos];
  Gen b = w[pos + 1];
  w[pos] = rack.act(a, b);
  w[pos + 1] = a;
}

struct PermutationWord {
  std::vector<std::size_t> reduced_word;  // 0-based simple transpositions s_i = (i, i+1)
  int sign;
};

/// Every permutation of S_d with one reduced word each. Built by insertion:
/// a word for S_{d-1} followed by the coset representative s_{d-2} ... s_j.
inline std::vector<PermutationWord> permutation_words(std::size_t d) {
  std::vector<PermutationWord> current{{{}, 1}};
  for (std::size_t m = 2; m <= d; ++m) {
    std::vector<PermutationWord> next;
    next.reserve(current.size() * m);
    for (const auto& p : current) {
      for (std::size_t j = m; j-- > 0;) {
        PermutationWord q = p;
        for (std::size_t i = m - 1; i > j; --i) q.reduced_word.push_back(i - 1);
        q.sign = (q.reduced_word.size() % 2 == 0) ? 1 : -1;
        next.push_back(std::move(q));
      }
    }
    current = std::move(next);
  }
  return current;
}

/// Psi(w) = Psi_{i_1} ... Psi_{i_l} applied to a word; the rightmost factor acts first.
inline Word apply_reduced_word(const Rack& rack, Word w, const std::vector<std::size_t>& reduced) {
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) braid_word_at(rack, w, *it);
  return w;
}

inline std::uint64_t factorial(std::size_t d) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= i;
  return f;
}

/// A_d = sum over S_d of sgn(w) Psi(w), applied to a homogeneous polynomial of degree d.
inline NCPoly antisymmetrize(const Rack& rack, const NCPoly& x) {
  if (x.is_zero()) return x;
  auto d = x.degree();
  if (!d) throw std::invalid_argument("antisymmetrize needs a homogeneous polynomial");
  NCPoly out;
  for (const auto& p : permutation_words(*d)) {
    for (const auto& [w, c] : x.terms()) out.add_term(apply_reduced_word(rack, w, p.reduced_word), p.sign * c);
  }
  return out;
}

/// The matrix of A_d in the monomial basis of degree d (column j = A_d(word j)).
inline linalg::SparseMatrix antisymmetrizer_matrix(const Rack& rack, std::size_t d, const Limits& limits) {
  const std::size_t g = rack.size();
  auto n = checked_power(g, d);
  std::uint64_t work = n ? *n * factorial(d) : UINT64_MAX;
  if (!n || work > limits.monomial_cap) {
    throw CapExceeded("antisymmetrizer in degree " + std::to_string(d), work, limits.monomial_cap);
  }
  auto perms = permutation_words(d);
  std::vector<linalg::Triplet> t;
  t.reserve(work);
  for (std::uint64_t col = 0; col < *n; ++col) {
    Word w = word_at(col, g, d);
    for (const auto& p : perms) {
      t.push_back({word_index(apply_reduced_word(rack, w, p.reduced_word), g), col, Rational(p.sign)});
    }
  }
  return linalg::SparseMatrix(*n, *n, std::move(t));
}

/// rank(A_d) = dimension of the degree-d part of the Woronowicz exterior algebra.
inline std::size_t antisymmetrizer_rank(const Rack& rack, std::size_t d, const Limits& limits) {
  if (d == 0) return 1;
  const std::size_t g = rack.size();
  auto n = checked_power(g, d);
  std::uint64_t work = n ? *n * factorial(d) : UINT64_MAX;
  if (!n || work > limits.monomial_cap) {
    throw CapExceeded("antisymmetrizer in degree " + std::to_string(d), work, limits.monomial_cap);
  }
  auto perms = permutation_words(d);
  // rank(A_d) = rank of its transpose: rows are images of basis words.
  linalg::EchelonBuilder b(*n);
  for (std::uint64_t m = 0; m < *n && !b.full(); ++m) {
    Word w = word_at(m, g, d);
    linalg::SparseVector row;
    row.reserve(perms.size());
    for (const auto& p : perms) {
      row.push_back({word_index(apply_reduced_word(rack, w, p.reduced_word), g), Rational(p.sign)});
    }
    linalg::canonicalize(row);
    b.add(row);
  }
  return b.rank();
}

}  // namespace weylcalc

#endif  // WEYLCALC_BRAIDED_HPP
