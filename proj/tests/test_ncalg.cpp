#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "convert.hpp"
#include "oracle.hpp"
#include "weylcalc/calculus.hpp"
#include "weylcalc/connections.hpp"
#include "weylcalc/ncalg.hpp"

using namespace weylcalc;

namespace {

NCPoly e(std::size_t a) { return NCPoly::generator(static_cast<Gen>(a)); }

using Dims = std::vector<std::size_t>;

std::vector<oracle::Poly> oracle_quartics_B(const oracle::Reflections& r) {
  std::vector<oracle::Poly> out;
  const int n = r.letters;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      int t = static_cast<int>(r.index_of(oracle::swap_perm(n, i, j)));
      int b = static_cast<int>(r.index_of(oracle::bar_perm(n, i, j)));
      int s = static_cast<int>(r.index_of(oracle::neg_perm(n, i)));
      out.push_back({{{b, s, t, s}, 1}, {{s, t, s, b}, 1}, {{t, s, b, s}, 1}, {{s, b, s, t}, 1}});
      out.push_back({{{t, s, t, s}, 1}, {{s, t, s, t}, 1}});
    }
  }
  return out;
}

}  // namespace

TEST(NCPoly, MultiplyExamples) {
  NCPoly x = e(0) + Rational(2) * e(1);
  EXPECT_EQ(NCPoly::one() * x, x);
  EXPECT_EQ(x * NCPoly::one(), x);
  EXPECT_EQ(e(0) * e(1), NCPoly::monomial({0, 1}));
  NCPoly expect = NCPoly::monomial({0, 0}) - NCPoly::monomial({0, 1}) + NCPoly::monomial({1, 0}) - NCPoly::monomial({1, 1});
  EXPECT_EQ(multiply(e(0) + e(1), e(0) - e(1)), expect);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(power(e(2), 3), NCPoly::monomial({2, 2, 2}));
}

TEST(NCPoly, DegreesAndComponents) {
  NCPoly x = NCPoly::one() + e(0) * e(1) + e(2);
  EXPECT_FALSE(x.degree().has_value());
  EXPECT_EQ(x.degrees(), (std::set<std::size_t>{0, 1, 2}));
  EXPECT_EQ(x.component(2), e(0) * e(1));
  EXPECT_EQ((e(0) * e(1)).degree(), std::optional<std::size_t>(2));
  EXPECT_EQ((Rational(-1, 2) * e(0) + e(1)).to_string({"a", "b"}), "-1/2 a + b");
}

TEST(NCPoly, WordIndexRoundTrip) {
  for (std::uint64_t i = 0; i < 125; ++i) EXPECT_EQ(word_index(word_at(i, 5, 3), 5), i);
  EXPECT_FALSE(checked_power(1u << 20, 4).has_value());
}

TEST(IdealBasis, LowDegreesEmpty) {
  auto h = make_quad(build_root_system(RootType::B, 2));
  EXPECT_TRUE(h->ideal_degree_basis(0).rows.empty());
  EXPECT_TRUE(h->ideal_degree_basis(1).rows.empty());
}

TEST(IdealBasis, B2Degrees2And3) {
  auto h = make_quad(build_root_system(RootType::B, 2));
  auto b2 = h->ideal_degree_basis(2);
  auto b3 = h->ideal_degree_basis(3);
  EXPECT_EQ(b2.rows.size(), 8u);
  EXPECT_EQ(b3.rows.size(), 52u);
  EXPECT_EQ(b3.cols, 64u);
  // reduced echelon: pivots increasing, pivot columns clean in every other row
  for (const auto& basis : {b2, b3}) {
    for (std::size_t i = 0; i < basis.rows.size(); ++i) {
      EXPECT_EQ(basis.rows[i].front().index, basis.pivots[i]);
      EXPECT_EQ(basis.rows[i].front().value, 1);
      if (i) EXPECT_LT(basis.pivots[i - 1], basis.pivots[i]);
      for (std::size_t k = 0; k < basis.rows.size(); ++k) {
        if (k != i) EXPECT_TRUE(is_zero(linalg::coefficient(basis.rows[k], basis.pivots[i])));
      }
    }
  }
}

TEST(IdealBasis, MatchesBruteForceSpan) {
  for (auto [t, r, tag] : std::vector<std::tuple<RootType, int, char>>{{RootType::A, 2, 'A'}, {RootType::B, 2, 'B'}}) {
    auto rs = build_root_system(t, r);
    auto h = make_quad(rs);
    auto orc = oracle::reflections(tag, r);
    auto rels = oracle::quad_kernel(orc);
    const std::size_t g = orc.size();
    for (std::size_t d = 2; d <= 4; ++d) {
      auto span = oracle::ideal_span(rels, g, d);
      auto basis = h->ideal_degree_basis(d);
      EXPECT_EQ(basis.rows.size(), span.rank());
      for (const auto& row : basis.rows) {
        oracle::Row v(span.cols(), oracle::Q(0));
        for (const auto& x : row) v[x.index] = x.value;
        EXPECT_TRUE(span.contains(v));
      }
    }
  }
}

TEST(NormalForm, Examples) {
  auto b2 = build_root_system(RootType::B, 2);
  auto hb = make_quad(b2);
  for (const auto& r : quad_relations(b2)) EXPECT_TRUE(hb->normal_form(r).is_zero());

  auto a2 = build_root_system(RootType::A, 2);
  auto ha = make_quad(a2);
  const auto t12 = a2.transposition(1, 2), t13 = a2.transposition(1, 3);
  NCPoly ex = e(t12) * e(t13) * e(t12) - e(t13) * e(t12) * e(t13);
  EXPECT_TRUE(ha->normal_form(ex).is_zero());
  EXPECT_FALSE(ha->normal_form(e(t12) * e(t13)).is_zero());
  // the oracle agrees that the monomial is outside the ideal
  auto orc = oracle::reflections('A', 2);
  EXPECT_FALSE(oracle::in_ideal(oracle::quad_kernel(orc), 3, oracle::from_nc(e(t12) * e(t13))));
  EXPECT_TRUE(oracle::in_ideal(oracle::quad_kernel(orc), 3, oracle::from_nc(ex)));
}

TEST(NormalForm, ZeroIffInIdealAgainstOracle) {
  auto rs = build_root_system(RootType::B, 2);
  auto h = make_quad(rs);
  auto orc = oracle::reflections('B', 2);
  auto rels = oracle::quad_kernel(orc);
  std::mt19937 rng(3);
  auto span3 = oracle::ideal_span(rels, 4, 3);
  for (int i = 0; i < 60; ++i) {
    oracle::Poly x = oracle::random_poly(rng, 4, 3, 1 + i % 4);
    // half the samples are pushed into the ideal
    if (i % 2 == 0) {
      x = oracle::mul(oracle::gen(i % 4), rels[static_cast<std::size_t>(i) % rels.size()]);
    }
    if (x.empty()) continue;
    bool zero = h->normal_form(oracle::to_nc(x)).is_zero();
    EXPECT_EQ(zero, span3.contains(oracle::dense(x, 4, 3)));
  }
}

TEST(NormalForm, LinearIdempotentAndStandard) {
  auto rs = build_root_system(RootType::A, 3);
  auto h = make_quad(rs);
  std::mt19937 rng(5);
  for (std::size_t d = 2; d <= 4; ++d) {
    auto standard = h->standard_monomials(d);
    std::set<Word> st(standard.begin(), standard.end());
    for (int i = 0; i < 20; ++i) {
      NCPoly x = oracle::to_nc(oracle::random_poly(rng, 6, d, 4));
      NCPoly y = oracle::to_nc(oracle::random_poly(rng, 6, d, 4));
      NCPoly nx = h->normal_form(x);
      EXPECT_EQ(h->normal_form(nx), nx);
      EXPECT_EQ(h->normal_form(x + Rational(3) * y), nx + Rational(3) * h->normal_form(y));
      for (const auto& [w, c] : nx.terms()) EXPECT_TRUE(st.count(w));
    }
  }
}

TEST(NormalForm, InhomogeneousIsComponentwise) {
  auto h = make_quad(build_root_system(RootType::A, 2));
  NCPoly x = NCPoly::one() + e(0) + e(0) * e(0) + e(0) * e(1);
  EXPECT_EQ(h->normal_form(x), NCPoly::one() + e(0) + h->normal_form(e(0) * e(1)));
  EXPECT_THROW(h->reduce(x), std::invalid_argument);
}

TEST(Hilbert, KnownSeriesB2) {
  auto rs = build_root_system(RootType::B, 2);
  EXPECT_EQ(hilbert_dims(*make_quad(rs), 5), (Dims{1, 4, 8, 12, 16, 20}));
  EXPECT_EQ(hilbert_dims(*make_quar(rs), 8), (Dims{1, 4, 8, 12, 14, 12, 8, 4, 1}));
  EXPECT_EQ(hilbert_dims(*anticommutative_quotient(*make_quad(rs)), 4), (Dims{1, 4, 5, 2, 0}));
}

TEST(Hilbert, MatchesBruteForce) {
  struct C {
    RootType t;
    int r;
    char tag;
    std::size_t d;
  };
  for (auto c : std::vector<C>{{RootType::A, 1, 'A', 4},
                               {RootType::A, 2, 'A', 4},
                               {RootType::A, 3, 'A', 3},
                               {RootType::B, 2, 'B', 4},
                               {RootType::D, 3, 'D', 3}}) {
    auto rs = build_root_system(c.t, c.r);
    auto orc = oracle::reflections(c.tag, c.r);
    EXPECT_EQ(hilbert_dims(*make_quad(rs), c.d), oracle::quotient_dims(oracle::quad_kernel(orc), orc.size(), c.d))
        << rs.name();
  }
}

TEST(Hilbert, QuarticMatchesBruteForce) {
  auto rs = build_root_system(RootType::B, 2);
  auto orc = oracle::reflections('B', 2);
  auto rels = oracle::quad_kernel(orc);
  for (auto& q : oracle_quartics_B(orc)) rels.push_back(q);
  EXPECT_EQ(hilbert_dims(*make_quar(rs), 4), oracle::quotient_dims(rels, 4, 4));
}

TEST(Hilbert, FinitenessOfQuarticB2) {
  auto h = make_quar(build_root_system(RootType::B, 2));
  EXPECT_EQ(h->dimension(9), 0u);
  EXPECT_EQ(h->dimension(10), 0u);
}

TEST(NcalgProperty, QuotientPlusIdealIsFree) {
  for (auto [t, r] : std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}, {RootType::D, 3}}) {
    auto rs = build_root_system(t, r);
    auto h = make_quad(rs);
    const std::size_t g = rs.generator_count();
    for (std::size_t d = 0; d <= 4; ++d) {
      EXPECT_EQ(h->dimension(d) + h->ideal_degree_basis(d).rows.size(), *checked_power(g, d));
      EXPECT_EQ(h->standard_monomials(d).size(), h->dimension(d));
    }
  }
}

TEST(NcalgProperty, IdealProperty) {
  auto rs = build_root_system(RootType::B, 2);
  auto h = make_quad(rs);
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    NCPoly x = oracle::to_nc(oracle::random_poly(rng, 4, 1 + i % 3, 5));
    NCPoly y = oracle::to_nc(oracle::random_poly(rng, 4, 1 + (i / 3) % 3, 5));
    EXPECT_EQ(h->normal_form(x * y), h->normal_form(h->normal_form(x) * h->normal_form(y)));
  }
}

TEST(NcalgProperty, PresentationIndependence) {
  auto rs = build_root_system(RootType::B, 2);
  auto h = make_quad(rs);
  auto basis = h->ideal_degree_basis(2);
  std::vector<NCPoly> rels;
  for (const auto& row : basis.rows) {
    NCPoly p;
    for (const auto& x : row) p.add_term(word_at(x.index, 4, 2), x.value);
    rels.push_back(p);
  }
  // same span, different generating set: scaled and mixed
  std::vector<NCPoly> mixed;
  for (std::size_t i = 0; i < rels.size(); ++i) mixed.push_back(Rational(static_cast<long>(i) + 2) * rels[i] + rels[(i + 1) % rels.size()]);
  AlgebraHandle again(rs.labels(), rels, AlgebraKind::presented, "again");
  AlgebraHandle other(rs.labels(), mixed, AlgebraKind::presented, "mixed");
  EXPECT_EQ(hilbert_dims(again, 6), hilbert_dims(*h, 6));
  EXPECT_EQ(hilbert_dims(other, 6), hilbert_dims(*h, 6));
}

TEST(NcalgProperty, MonotoneUnderExtraRelations) {
  auto rs = build_root_system(RootType::B, 2);
  auto quad = hilbert_dims(*make_quad(rs), 8);
  auto quar = hilbert_dims(*make_quar(rs), 8);
  auto anti = hilbert_dims(*anticommutative_quotient(*make_quad(rs)), 8);
  for (std::size_t d = 0; d <= 8; ++d) {
    EXPECT_LE(quar[d], quad[d]);
    EXPECT_LE(anti[d], quad[d]);
  }
}

TEST(NcalgProperty, ConcurrentQueriesSeeOneBasis) {
  auto h = make_quad(build_root_system(RootType::B, 3));
  std::vector<std::size_t> dims(8);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < dims.size(); ++i) pool.emplace_back([&, i] { dims[i] = h->dimension(2 + i % 3); });
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < dims.size(); ++i) EXPECT_EQ(dims[i], h->dimension(2 + i % 3));
  EXPECT_EQ(h->dimension(4), make_quad(build_root_system(RootType::B, 3))->dimension(4));
}

TEST(Subalgebra, AllGeneratorsGiveHilbert) {
  auto rs = build_root_system(RootType::B, 2);
  auto h = make_quad(rs);
  std::vector<NCPoly> gens;
  for (std::size_t a = 0; a < 4; ++a) gens.push_back(e(a));
  EXPECT_EQ(subalgebra_dims(*h, gens, 5), hilbert_dims(*h, 5));
}

TEST(Subalgebra, ThetasOfA1) {
  auto rs = build_root_system(RootType::A, 1);
  auto h = make_quad(rs);
  auto th = theta_family(rs);
  EXPECT_EQ(th[0], th[1]);
  EXPECT_EQ(subalgebra_dims(*h, th, 4), (Dims{1, 1, 0, 0, 0}));
}

TEST(Subalgebra, ThetasOfA2AgainstOracle) {
  auto rs = build_root_system(RootType::A, 2);
  auto h = make_quad(rs);
  auto th = theta_family(rs);
  auto orc = oracle::reflections('A', 2);
  auto rels = oracle::quad_kernel(orc);
  Dims expect{1};
  std::vector<oracle::Poly> level{oracle::Poly{{oracle::Word{}, 1}}};
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<oracle::Poly> next;
    for (const auto& p : level) {
      for (const auto& t : th) next.push_back(oracle::mul(p, oracle::from_nc(t)));
    }
    auto span = oracle::ideal_span(rels, 3, d);
    const std::size_t base = span.rank();
    for (const auto& p : next) {
      if (!p.empty()) span.add(oracle::dense(p, 3, d));
    }
    expect.push_back(span.rank() - base);
    level = std::move(next);
  }
  EXPECT_EQ(subalgebra_dims(*h, th, 4), expect);
  EXPECT_TRUE(h->vanishes(th[0] * th[1] * th[2]));
}

TEST(Subalgebra, RejectsHigherDegreeGenerators) {
  auto h = make_quad(build_root_system(RootType::A, 2));
  EXPECT_THROW(subalgebra_dims(*h, {e(0) * e(1)}, 2), std::invalid_argument);
}

TEST(Anticommutative, RelationsDie) {
  auto rs = build_root_system(RootType::B, 2);
  auto h = anticommutative_quotient(*make_quad(rs));
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_TRUE(h->normal_form(e(a) * e(a)).is_zero());
    for (std::size_t b = 0; b < 4; ++b) EXPECT_TRUE(h->normal_form(e(a) * e(b) + e(b) * e(a)).is_zero());
  }
  EXPECT_EQ(h->kind(), AlgebraKind::anticommutative);
  EXPECT_EQ(h->kind_name(), "anticomm-quad");
}

TEST(Anticommutative, MatchesBruteForce) {
  auto orc = oracle::reflections('B', 2);
  auto rels = oracle::quad_kernel(orc);
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) rels.push_back(oracle::add(oracle::mul(oracle::gen(a), oracle::gen(b)), oracle::mul(oracle::gen(b), oracle::gen(a))));
  }
  auto h = anticommutative_quotient(*make_quad(build_root_system(RootType::B, 2)));
  EXPECT_EQ(hilbert_dims(*h, 4), oracle::quotient_dims(rels, 4, 4));
}

TEST(Caps, IdealBasisAndEngine) {
  auto rs = build_root_system(RootType::B, 3);
  Limits tiny{400};
  auto h = make_quad(rs, tiny);
  EXPECT_EQ(h->dimension(2), 46u);
  EXPECT_THROW(h->dimension(3), CapExceeded);
  EXPECT_THROW(h->ideal_degree_basis(3), CapExceeded);
  try {
    h->ideal_degree_basis(3);
  } catch (const CapExceeded& ex) {
    EXPECT_EQ(ex.cap(), 400u);
    EXPECT_EQ(ex.requested(), 729u);
  }
}

TEST(Caps, SubalgebraProducts) {
  auto rs = build_root_system(RootType::A, 3);
  auto h = make_quad(rs, Limits{40});
  EXPECT_THROW(subalgebra_dims(*h, theta_family(rs), 3), CapExceeded);
}

TEST(AlgebraHandle, RejectsBadPresentations) {
  std::vector<std::string> labels{"x", "y"};
  EXPECT_THROW(AlgebraHandle(labels, {e(0)}, AlgebraKind::presented, "p"), std::invalid_argument);
  EXPECT_THROW(AlgebraHandle(labels, {e(0) * e(1) + e(0)}, AlgebraKind::presented, "p"), std::invalid_argument);
  EXPECT_THROW(AlgebraHandle(labels, {e(0) * e(2)}, AlgebraKind::presented, "p"), std::invalid_argument);
  EXPECT_THROW(AlgebraHandle({}, {}, AlgebraKind::presented, "p"), std::invalid_argument);
  AlgebraHandle free(labels, {}, AlgebraKind::presented, "free");
  EXPECT_EQ(hilbert_dims(free, 4), (Dims{1, 2, 4, 8, 16}));
}

TEST(AlgebraHandle, WoronowiczHasNoNormalForm) {
  auto h = make_woronowicz(build_root_system(RootType::A, 2));
  EXPECT_FALSE(h->ideal_presented());
  EXPECT_THROW(h->normal_form(e(0)), std::logic_error);
  EXPECT_TRUE(h->vanishes(e(0) * e(0)));
  EXPECT_FALSE(h->vanishes(e(0) * e(1)));
}
