#include <gtest/gtest.h>

#include <random>

#include "alexpoly/oracle.hpp"
#include "test_support.hpp"

using namespace alexpoly;
using testing_support::random_expr;
using testing_support::uniform;

namespace {

LinkDiagram link_of(const std::string& text) { return make_link(parse_link(text)); }
LaurentPoly P(const char* s) { return parse_poly(s); }

constexpr const char* kQ = "D([[2],[-2]]*[2]*([1/3]+[1/2]))";

LaurentPoly random_poly(std::mt19937& rng, int vars) {
  LaurentPoly p;
  const int terms = uniform(rng, 0, 3);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> e(static_cast<std::size_t>(vars));
    for (int& x : e) x = uniform(rng, -1, 2);
    p += LaurentPoly(Monomial(e), uniform(rng, -3, 3));
  }
  return p;
}

}  // namespace

TEST(Determinant, Basics) {
  EXPECT_EQ(bareiss_det({{P("1"), P("0")}, {P("0"), P("1")}}), P("1"));
  EXPECT_EQ(bareiss_det({{P("t1"), P("t2")}, {P("t3"), P("t4")}}), P("t1*t4 - t2*t3"));
  EXPECT_EQ(bareiss_det({{P("0"), P("2")}, {P("3"), P("0")}}), P("-6"));
  EXPECT_EQ(bareiss_det({}), P("1"));
  EXPECT_THROW(bareiss_det({{P("1"), P("2")}}), InvalidInput);
}

TEST(Determinant, IntegerMatrixAgainstCofactor) {
  const PolyMatrix m = {{P("3"), P("-1"), P("4"), P("1"), P("-5"), P("9")},
                        {P("2"), P("6"), P("-5"), P("3"), P("5"), P("-8")},
                        {P("9"), P("7"), P("9"), P("-3"), P("2"), P("3")},
                        {P("8"), P("-4"), P("6"), P("2"), P("6"), P("4")},
                        {P("3"), P("3"), P("-8"), P("3"), P("2"), P("7")},
                        {P("9"), P("5"), P("0"), P("2"), P("-8"), P("8")}};
  EXPECT_EQ(bareiss_det(m), cofactor_det(m));
}

TEST(Determinant, RandomLaurentAgainstCofactor) {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    const int n = uniform(rng, 1, 5);
    PolyMatrix m(static_cast<std::size_t>(n), std::vector<LaurentPoly>(static_cast<std::size_t>(n)));
    for (auto& row : m)
      for (auto& x : row) x = random_poly(rng, 2);
    EXPECT_EQ(bareiss_det(m), cofactor_det(m));
  }
}

TEST(Fox, RowClosedForms) {
  // Single-variable rows for a positive and a negative crossing.
  const LinkDiagram pos = link_of("D([1/3])");
  const LinkDiagram neg = link_of("D([1/-3])");
  for (const LinkDiagram* ld : {&pos, &neg}) {
    const CrossingInfo& c = ld->crossings[0];
    std::map<int, LaurentPoly> row;
    for (const auto& [col, v] : fox_row(*ld, 0)) row[col] = v;
    if (c.sign > 0) {
      EXPECT_EQ(row[c.over_arc], P("1 - t"));
      EXPECT_EQ(row[c.in_arc], P("t"));
    } else {
      EXPECT_EQ(row[c.over_arc], P("t^-1*(t - 1)"));
      EXPECT_EQ(row[c.in_arc], P("t^-1"));
    }
    EXPECT_EQ(row[c.out_arc], P("-1"));
  }
  EXPECT_NE(pos.crossings[0].sign, neg.crossings[0].sign);
}

TEST(Fox, WirtingerCounts) {
  const WirtingerPresentation w = wirtinger(link_of("D([1/3])"));
  EXPECT_EQ(w.num_generators, 3);
  EXPECT_EQ(w.relators.size(), 3u);
  const WirtingerPresentation h = wirtinger(link_of("D([1/2])"));
  EXPECT_EQ(h.num_generators, 2);
  EXPECT_EQ(h.relators.size(), 2u);
  // One-crossing unknot: the relator mentions one arc twice.
  const LinkDiagram u = link_of("D([1])");
  EXPECT_EQ(u.num_arcs(), 1);
  EXPECT_EQ(alexander_fox(u), P("1"));
  EXPECT_EQ(alexander_q(u), P("1"));
}

TEST(Fox, RowsAgreeWithFreeCalculus) {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 50; ++iter) {
    const LinkDiagram ld = make_link({random_expr(rng, 10), iter % 2 ? Closure::N : Closure::D, {}});
    const PolyMatrix m = alexander_matrix(ld);
    for (int i = 0; i < ld.num_crossings; ++i) {
      std::vector<LaurentPoly> row(static_cast<std::size_t>(ld.num_arcs()));
      for (const auto& [col, v] : fox_row(ld, i)) row[static_cast<std::size_t>(col)] += v;
      EXPECT_EQ(row, m[static_cast<std::size_t>(i)]);
      // Abelianised relators are trivial: rows sum to zero at t = 1.
      LaurentPoly sum;
      for (const LaurentPoly& x : row) sum += x;
      std::vector<Monomial> ones(static_cast<std::size_t>(ld.num_components) + 1);
      EXPECT_TRUE(substitute(sum, ones).is_zero());
    }
  }
}

TEST(Fox, KnownValues) {
  EXPECT_EQ(alexander_fox(link_of("D([1/3])")), P("t^2 - t + 1"));
  EXPECT_EQ(alexander_fox(link_of("N([3])")), P("t^2 - t + 1"));
  EXPECT_EQ(alexander_fox(link_of("D([1/2])")), P("1"));
  EXPECT_EQ(alexander_fox(link_of(kQ)), P("t^6 - 3*t^5 + 7*t^4 - 9*t^3 + 7*t^2 - 3*t + 1"));
  EXPECT_EQ(alexander_q(link_of(kQ)), P("t^6 - 3*t^5 + 7*t^4 - 9*t^3 + 7*t^2 - 3*t + 1"));
  // Figure-eight knot, two drawings; value frozen from the Q-matrix path.
  EXPECT_EQ(alexander_fox(link_of("N([5/2])")), P("t^2 - 3*t + 1"));
  EXPECT_EQ(alexander_fox(link_of("D([2/5])")), P("t^2 - 3*t + 1"));
  EXPECT_EQ(alexander_fox(link_of("D([3]*[3]*[-2])")), P("t^6 - t^5 + t^3 - t + 1"));
}

TEST(Fox, MinorIndependence) {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 40; ++iter) {
    const LinkDiagram ld = make_link({random_expr(rng, 10), iter % 2 ? Closure::N : Closure::D, {}});
    const LaurentPoly ref = alexander_fox(ld);
    for (int k = 0; k < 10; ++k) {
      const int i0 = uniform(rng, 0, ld.num_crossings - 1);
      const int j0 = uniform(rng, 0, ld.num_arcs() - 1);
      EXPECT_EQ(alexander_fox(ld, i0, j0), ref);
    }
  }
}

TEST(QMatrix, FactorisationAndAgreement) {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    const LinkSpec spec{random_expr(rng, 12), iter % 2 ? Closure::N : Closure::D, {}};
    const LinkDiagram ld = make_link(spec);
    EXPECT_TRUE(check_md_dq(ld)) << to_string(spec);
    const int i = uniform(rng, 0, ld.num_crossings - 1);
    const int j = uniform(rng, 0, ld.num_arcs() - 1);
    EXPECT_EQ(alexander_q(ld, i, j), alexander_fox(ld)) << to_string(spec);
  }
}
