#include <gtest/gtest.h>

#include <random>
#include <set>

#include "convert.hpp"
#include "oracle.hpp"
#include "weylcalc/calculus.hpp"
#include "weylcalc/connections.hpp"

using namespace weylcalc;

namespace {

NCPoly e(std::size_t a) { return NCPoly::generator(static_cast<Gen>(a)); }

using Dims = std::vector<std::size_t>;

struct Sys {
  RootType t;
  int r;
};

const std::vector<Sys> kSmall{{RootType::A, 2}, {RootType::A, 3}, {RootType::B, 2}, {RootType::B, 3},
                              {RootType::D, 3}, {RootType::G2, 2}};

// span of polynomials of one degree, as a rank over word coordinates
std::size_t span_rank(const std::vector<NCPoly>& ps, std::size_t g, std::size_t d) {
  oracle::DenseSpan s(oracle::ipow(g, d));
  for (const auto& p : ps) s.add(oracle::dense(oracle::from_nc(p), g, d));
  return s.rank();
}

bool same_span(const std::vector<NCPoly>& x, const std::vector<NCPoly>& y, std::size_t g, std::size_t d) {
  std::vector<NCPoly> both = x;
  both.insert(both.end(), y.begin(), y.end());
  std::size_t r = span_rank(both, g, d);
  return r == span_rank(x, g, d) && r == span_rank(y, g, d);
}

// all reduced words of a permutation (one-line notation), by descents
void reduced_words(std::vector<int> p, std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  bool any = false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] > p[i + 1]) {
      any = true;
      std::swap(p[i], p[i + 1]);
      prefix.push_back(i);
      reduced_words(p, prefix, out);
      prefix.pop_back();
      std::swap(p[i], p[i + 1]);
    }
  }
  if (!any) out.emplace_back(prefix.rbegin(), prefix.rend());
}

}  // namespace

TEST(Braiding, Examples) {
  auto a3 = build_root_system(RootType::A, 3);
  const auto t12 = a3.transposition(1, 2), t13 = a3.transposition(1, 3), t23 = a3.transposition(2, 3),
             t34 = a3.transposition(3, 4);
  EXPECT_EQ(braiding(a3, t12, t12), std::make_pair(t12, t12));
  EXPECT_EQ(braiding(a3, t12, t23), std::make_pair(t13, t12));
  EXPECT_EQ(braiding(a3, t12, t34), std::make_pair(t34, t12));
}

TEST(Braiding, MatchesOracle) {
  for (auto [t, r, tag] : std::vector<std::tuple<RootType, int, char>>{
           {RootType::A, 3, 'A'}, {RootType::B, 3, 'B'}, {RootType::D, 4, 'D'}}) {
    auto rs = build_root_system(t, r);
    auto orc = oracle::reflections(tag, r);
    for (std::size_t a = 0; a < orc.size(); ++a) {
      for (std::size_t b = 0; b < orc.size(); ++b) {
        auto w = oracle::braid_at(orc, {static_cast<int>(a), static_cast<int>(b)}, 0);
        EXPECT_EQ(braiding(rs, a, b), std::make_pair(static_cast<std::size_t>(w[0]), static_cast<std::size_t>(w[1])));
      }
    }
  }
}

TEST(PsiI, DegreeTwoAndRange) {
  auto rs = build_root_system(RootType::B, 2);
  Rack rack = rack_of(rs);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      auto v = TensorVector::from(e(a) * e(b));
      auto [c, d] = braiding(rs, a, b);
      EXPECT_EQ(psi_i(rack, v, 1), TensorVector::from(e(c) * e(d)));
    }
  }
  auto v = TensorVector::from(e(0) * e(1));
  EXPECT_THROW(psi_i(rack, v, 0), std::out_of_range);
  EXPECT_THROW(psi_i(rack, v, 2), std::out_of_range);
}

TEST(PsiI, PermutesMonomials) {
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    Rack rack = rack_of(rs);
    const std::size_t g = rs.generator_count();
    for (std::size_t i = 1; i <= 2; ++i) {
      std::set<Word> image;
      for (std::uint64_t c = 0; c < g * g * g; ++c) {
        auto out = psi_i(rack, TensorVector::from(NCPoly::monomial(word_at(c, g, 3))), i);
        ASSERT_EQ(out.coords.terms().size(), 1u);
        image.insert(out.coords.terms().begin()->first);
      }
      EXPECT_EQ(image.size(), g * g * g);
    }
  }
}

TEST(CalculusProperty, BraidRelationExhaustiveDegreeThree) {
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    Rack rack = rack_of(rs);
    const std::size_t g = rs.generator_count();
    for (std::uint64_t c = 0; c < g * g * g; ++c) {
      auto v = TensorVector::from(NCPoly::monomial(word_at(c, g, 3)));
      auto lhs = psi_i(rack, psi_i(rack, psi_i(rack, v, 1), 2), 1);
      auto rhs = psi_i(rack, psi_i(rack, psi_i(rack, v, 2), 1), 2);
      ASSERT_EQ(lhs, rhs) << rs.name() << " word " << c;
    }
  }
}

TEST(CalculusProperty, BraidRelationRandomVectorsA2) {
  auto rs = build_root_system(RootType::A, 2);
  Rack rack = rack_of(rs);
  std::mt19937 rng(21);
  for (int i = 0; i < 30; ++i) {
    auto v = TensorVector::from(oracle::to_nc(oracle::random_poly(rng, 3, 3, 6)));
    if (v.coords.is_zero()) continue;
    EXPECT_EQ(psi_i(rack, psi_i(rack, psi_i(rack, v, 1), 2), 1), psi_i(rack, psi_i(rack, psi_i(rack, v, 2), 1), 2));
  }
}

TEST(CalculusProperty, ReducedWordIndependence) {
  for (auto [t, r] : std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}}) {
    auto rs = build_root_system(t, r);
    Rack rack = rack_of(rs);
    const std::size_t g = rs.generator_count();
    for (std::size_t d : {3u, 4u}) {
      std::vector<int> longest(d);
      for (std::size_t i = 0; i < d; ++i) longest[i] = static_cast<int>(d - 1 - i);
      std::vector<std::vector<std::size_t>> words;
      std::vector<std::size_t> prefix;
      reduced_words(longest, prefix, words);
      ASSERT_EQ(words.size(), d == 3 ? 2u : 16u);
      for (std::uint64_t c = 0; c < *checked_power(g, d); ++c) {
        Word w = word_at(c, g, d);
        Word first = apply_reduced_word(rack, w, words.front());
        for (const auto& rw : words) ASSERT_EQ(apply_reduced_word(rack, w, rw), first) << rs.name();
      }
    }
  }
}

TEST(Antisymmetrize, SmallDegrees) {
  auto rs = build_root_system(RootType::A, 2);
  Rack rack = rack_of(rs);
  auto v1 = TensorVector::from(e(1) - Rational(2) * e(2));
  EXPECT_EQ(antisymmetrize(rack, v1), v1);
  std::mt19937 rng(4);
  for (int i = 0; i < 10; ++i) {
    auto v = TensorVector::from(oracle::to_nc(oracle::random_poly(rng, 3, 2, 4)));
    if (v.coords.is_zero()) continue;
    TensorVector expect{2, v.coords - psi_i(rack, v, 1).coords};
    EXPECT_EQ(antisymmetrize(rack, v), expect);
  }
  for (std::size_t a = 0; a < 3; ++a) EXPECT_TRUE(antisymmetrize(rack, TensorVector::from(e(a) * e(a))).coords.is_zero());
}

TEST(Antisymmetrize, MatchesOracle) {
  auto rs = build_root_system(RootType::B, 2);
  Rack rack = rack_of(rs);
  auto orc = oracle::reflections('B', 2);
  std::mt19937 rng(8);
  for (std::size_t d = 2; d <= 4; ++d) {
    for (int i = 0; i < 10; ++i) {
      auto x = oracle::random_poly(rng, 4, d, 3);
      if (x.empty()) continue;
      EXPECT_EQ(oracle::from_nc(antisymmetrize(rack, oracle::to_nc(x))), oracle::antisymmetrize(orc, x));
    }
  }
}

TEST(Antisymmetrize, PermutationWordsAreReduced) {
  for (std::size_t d = 1; d <= 5; ++d) {
    auto perms = permutation_words(d);
    EXPECT_EQ(perms.size(), factorial(d));
    std::set<std::vector<int>> seen;
    for (const auto& p : perms) {
      std::vector<int> x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<int>(i);
      for (auto it = p.reduced_word.rbegin(); it != p.reduced_word.rend(); ++it) std::swap(x[*it], x[*it + 1]);
      seen.insert(x);
      // a word is reduced iff its length equals the inversion count
      int inv = 0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) inv += x[i] > x[j];
      }
      EXPECT_EQ(static_cast<std::size_t>(inv), p.reduced_word.size());
      EXPECT_EQ(p.sign, inv % 2 ? -1 : 1);
    }
    EXPECT_EQ(seen.size(), perms.size());
  }
}

TEST(QuadRelations, KernelOfA2) {
  // three squares and one sum per 3-cycle of Psi: 5, not 6
  auto rs = build_root_system(RootType::A, 2);
  auto rels = quad_relations(rs);
  auto orc = oracle::reflections('A', 2);
  EXPECT_EQ(rels.size(), oracle::quad_kernel(orc).size());
  EXPECT_EQ(rels.size(), 5u);
  EXPECT_EQ(make_quad(rs)->dimension(2), 4u);
}

TEST(QuadRelations, SquaresInSpanAndFixedByPsi) {
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    auto rels = quad_relations(rs);
    Rack rack = rack_of(rs);
    const std::size_t g = rs.generator_count();
    for (const auto& r : rels) {
      auto v = TensorVector::from(r);
      EXPECT_EQ(psi_i(rack, v, 1), v);
    }
    for (std::size_t a = 0; a < g; ++a) {
      auto with = rels;
      with.push_back(e(a) * e(a));
      EXPECT_EQ(span_rank(with, g, 2), rels.size());
    }
  }
}

TEST(QuadRelations, MatchOracleKernelSpan) {
  for (auto [t, r, tag] : std::vector<std::tuple<RootType, int, char>>{
           {RootType::A, 3, 'A'}, {RootType::B, 2, 'B'}, {RootType::B, 3, 'B'}, {RootType::D, 3, 'D'}}) {
    auto rs = build_root_system(t, r);
    auto orc = oracle::reflections(tag, r);
    std::vector<NCPoly> orb;
    for (const auto& p : oracle::quad_kernel(orc)) orb.push_back(oracle::to_nc(p));
    EXPECT_TRUE(same_span(quad_relations(rs), orb, orc.size(), 2)) << rs.name();
  }
}

TEST(QuadRelations, ListedRelationsOfB) {
  for (int n : {2, 3}) {
    auto rs = build_root_system(RootType::B, n);
    auto listed = listed_quadratic_relations_B(rs);
    Rack rack = rack_of(rs);
    for (const auto& r : listed) {
      auto v = TensorVector::from(r);
      EXPECT_TRUE((v.coords - psi_i(rack, v, 1).coords).is_zero()) << r.to_string(rs.labels());
    }
    EXPECT_TRUE(same_span(quad_relations(rs), listed, rs.generator_count(), 2)) << rs.name();
  }
}


TEST(QuadRelations, AntisymmetrizerKernelInDegreeTwo) {
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    const std::size_t g = rs.generator_count();
    auto m = antisymmetrizer_matrix(rack_of(rs), 2, Limits{});
    auto ker = linalg::kernel_basis(m);
    std::vector<NCPoly> ks;
    for (const auto& v : ker) {
      NCPoly p;
      for (const auto& en : v) p.add_term(word_at(en.index, g, 2), en.value);
      ks.push_back(p);
    }
    EXPECT_TRUE(same_span(ks, quad_relations(rs), g, 2)) << rs.name();
  }
}

TEST(QuarticRelations, B2) {
  auto rs = build_root_system(RootType::B, 2);
  auto quart = quartic_relations_B(rs);
  ASSERT_EQ(quart.size(), 2u);
  auto quad = make_quad(rs);
  Rack rack = rack_of(rs);
  auto orc = oracle::reflections('B', 2);
  for (const auto& q : quart) {
    EXPECT_EQ(q.degree(), std::optional<std::size_t>(4));
    EXPECT_FALSE(quad->vanishes(q)) << q.to_string(rs.labels());
    EXPECT_TRUE(antisymmetrize(rack, q).is_zero());
    EXPECT_TRUE(oracle::antisymmetrize(orc, oracle::from_nc(q)).empty());
  }
  EXPECT_THROW(quartic_relations_B(build_root_system(RootType::A, 2)), std::invalid_argument);
}

TEST(Woronowicz, MatchesOracleRank) {
  for (auto [t, r, tag, dmax] : std::vector<std::tuple<RootType, int, char, std::size_t>>{
           {RootType::A, 2, 'A', 3}, {RootType::B, 2, 'B', 4}}) {
    auto rs = build_root_system(t, r);
    auto orc = oracle::reflections(tag, r);
    auto dims = woronowicz_dims(rs, dmax);
    ASSERT_EQ(dims.size(), dmax + 1);
    EXPECT_EQ(dims[0], 1u);
    for (std::size_t d = 1; d <= dmax; ++d) EXPECT_EQ(dims[d], oracle::antisymmetrizer_rank(orc, d)) << rs.name() << " " << d;
  }
}

TEST(Woronowicz, A2DegreeTwoIsFour) {
  // 9 words minus the 5-dimensional kernel
  EXPECT_EQ(woronowicz_dims(build_root_system(RootType::A, 2), 2), (Dims{1, 3, 4}));
}

TEST(Woronowicz, HandleAgreesWithRank) {
  auto rs = build_root_system(RootType::B, 2);
  auto w = make_woronowicz(rs);
  EXPECT_EQ(hilbert_dims(*w, 4), woronowicz_dims(rs, 4));
}

TEST(CalculusProperty, WoronowiczBoundedByQuad) {
  for (auto [t, r, dmax] : std::vector<std::tuple<RootType, int, std::size_t>>{
           {RootType::A, 2, 4}, {RootType::A, 3, 3}, {RootType::B, 2, 4}, {RootType::D, 3, 3}}) {
    auto rs = build_root_system(t, r);
    auto w = woronowicz_dims(rs, dmax);
    auto q = hilbert_dims(*make_quad(rs), dmax);
    for (std::size_t d = 0; d <= dmax; ++d) EXPECT_LE(w[d], q[d]) << rs.name() << " " << d;
    EXPECT_EQ(w[2], q[2]);
  }
}

TEST(Theta, Canonical) {
  auto g2 = build_root_system(RootType::G2, 2);
  EXPECT_EQ(canonical_theta(g2, ThetaClass::long_roots), e(1) + e(3) + e(5));
  EXPECT_EQ(canonical_theta(g2, ThetaClass::short_roots), e(0) + e(2) + e(4));
  auto b2 = build_root_system(RootType::B, 2);
  EXPECT_EQ(canonical_theta(b2, ThetaClass::short_roots), e(2) + e(3));
  EXPECT_EQ(canonical_theta(b2), e(0) + e(1) + e(2) + e(3));
  EXPECT_THROW(canonical_theta(build_root_system(RootType::A, 2), ThetaClass::long_roots), std::invalid_argument);
}

TEST(Differential, Examples) {
  auto rs = build_root_system(RootType::A, 2);
  auto q = make_quad(rs);
  NCPoly th = theta_of(*q);
  EXPECT_TRUE(differential(*q, NCPoly{}).is_zero());
  EXPECT_TRUE(differential(*q, NCPoly::one()).is_zero());
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(differential(*q, e(a)), q->normal_form(th * e(a) + e(a) * th));
  EXPECT_EQ(differential(*q, th), q->normal_form(Rational(2) * th * th));
  EXPECT_THROW(differential(*q, e(0) + e(0) * e(1)), std::invalid_argument);
}

TEST(Differential, ThetaSquareVanishesInQuad) {
  // Psi-orbits partition the words of length two
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    auto q = make_quad(rs);
    auto rep = theta_square_report(*q);
    EXPECT_TRUE(rep.theta_square.is_zero()) << rs.name();
    EXPECT_TRUE(rep.central);
  }
}

TEST(CalculusProperty, DifferentialSquaresToZeroAndLeibniz) {
  std::mt19937 rng(33);
  for (auto [t, r] : std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}}) {
    auto rs = build_root_system(t, r);
    auto q = make_quad(rs);
    const std::size_t g = rs.generator_count();
    for (int i = 0; i < 20; ++i) {
      std::size_t dx = 1 + rng() % 2, dy = 1 + rng() % 2;
      NCPoly x = oracle::to_nc(oracle::random_poly(rng, g, dx, 3));
      NCPoly y = oracle::to_nc(oracle::random_poly(rng, g, dy, 3));
      EXPECT_TRUE(differential(*q, differential(*q, x)).is_zero());
      NCPoly sign = dx % 2 ? Rational(-1) * x : x;
      EXPECT_EQ(differential(*q, x * y), q->normal_form(differential(*q, x) * y + sign * differential(*q, y)));
    }
  }
}

TEST(Curvature, Examples) {
  auto a2 = build_root_system(RootType::A, 2);
  auto q = make_quad(a2);
  EXPECT_TRUE(curvature(*q, NCPoly{}).is_zero());
  for (int i = 1; i <= 3; ++i) EXPECT_TRUE(curvature(*q, Rational(-1) * theta_i(a2, i)).is_zero()) << i;
  NCPoly eta = e(0) - e(1);
  EXPECT_EQ(curvature(*q, eta), q->normal_form(differential(*q, eta) + eta * eta));
  EXPECT_THROW(curvature(*q, e(0) * e(1)), std::invalid_argument);

  auto g2 = build_root_system(RootType::G2, 2);
  auto qg = make_quad(g2);
  for (const auto& eta_g : g2_etas()) EXPECT_TRUE(curvature(*qg, eta_g).is_zero()) << eta_g.to_string(g2.labels());
}

TEST(H1, Dimensions) {
  for (const auto& s : kSmall) {
    auto rs = build_root_system(s.t, s.r);
    auto res = h1(rs);
    if (rs.simply_laced()) {
      ASSERT_EQ(res.dimension, 1u) << rs.name();
      EXPECT_EQ(res.basis[0], canonical_theta(rs));
    } else {
      ASSERT_EQ(res.dimension, 2u) << rs.name();
      EXPECT_TRUE(same_span(res.basis,
                            {canonical_theta(rs, ThetaClass::long_roots), canonical_theta(rs, ThetaClass::short_roots)},
                            rs.generator_count(), 1))
          << rs.name();
    }
    auto q = make_quad(rs);
    for (const auto& b : res.basis) EXPECT_TRUE(differential(*q, b).is_zero());
  }
}

TEST(H1, B2Basis) {
  auto res = h1(build_root_system(RootType::B, 2));
  ASSERT_EQ(res.basis.size(), 2u);
  EXPECT_EQ(res.basis[0], e(0) + e(1));
  EXPECT_EQ(res.basis[1], e(2) + e(3));
}
