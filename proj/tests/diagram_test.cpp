#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "alexpoly/diagram.hpp"
#include "alexpoly/oracle.hpp"
#include "test_support.hpp"

using namespace alexpoly;
using testing_support::random_expr;

namespace {

LinkDiagram link_of(const std::string& text) { return make_link(parse_link(text)); }

}  // namespace

TEST(Diagram, CrossingAndArcCounts) {
  const TangleDiagram d = build_diagram(parse_tangle("[2]"));
  EXPECT_EQ(d.num_crossings, 2);
  const LinkDiagram q = link_of("D([[2],[-2]]*[2]*([1/3]+[1/2]))");
  EXPECT_EQ(q.num_crossings, 11);
  EXPECT_EQ(q.num_arcs(), 11);
  EXPECT_EQ(q.num_components, 1);
}

TEST(Diagram, ClosureComponents) {
  EXPECT_EQ(link_of("D([1])").num_components, 1);
  EXPECT_EQ(link_of("N([1])").num_components, 1);
  EXPECT_EQ(link_of("D([2])").num_components, 1);
  EXPECT_EQ(link_of("N([2])").num_components, 2);
  EXPECT_EQ(link_of("D([1/2])").num_components, 2);
  EXPECT_EQ(link_of("N([1/2])").num_components, 1);
  EXPECT_EQ(link_of("D([2]*[2]*[2])").num_components, 3);
}

TEST(Diagram, EndLabelsBalance) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const LinkDiagram ld = make_link({random_expr(rng, 9), Closure::D, {}});
    for (int id = 0; id < static_cast<int>(ld.tangle->nodes.size()); ++id) {
      Monomial prod;
      for (const EndLabel& l : end_labels(ld, id)) prod = prod * l.phi();
      EXPECT_TRUE(prod.is_one());
    }
  }
}

TEST(Diagram, SigmaFlipsFrame) {
  const LinkDiagram ld = link_of("D([1/3])");
  const TangleDiagram& td = *ld.tangle;
  const TreeNode& root = td.node(td.root);
  ASSERT_EQ(root.kind, TreeNode::Kind::VComp);
  EXPECT_FALSE(root.sigma_parity);
  const LinkDiagram s = link_of("D(sigma([3]))");
  const TreeNode& sroot = s.tangle->node(s.tangle->root);
  ASSERT_EQ(sroot.kind, TreeNode::Kind::Sigma);
  EXPECT_TRUE(s.tangle->node(sroot.left).sigma_parity);
  EXPECT_EQ(alexander_fox(ld), alexander_fox(s));
}

TEST(Montesinos, Classification) {
  auto cls = [](std::vector<std::pair<long, long>> f) { return montesinos_class(f); };
  EXPECT_EQ(cls({{1, 1}, {1, 1}, {1, 1}}).kind, MontesinosClass::Kind::KnotOdd);
  EXPECT_EQ(cls({{-2, 1}, {3, 1}, {7, 1}}).kind, MontesinosClass::Kind::KnotEven);
  EXPECT_EQ(cls({{1, 1}, {1, 1}, {1, 1}, {1, 1}}).kind, MontesinosClass::Kind::Link2);
  const MontesinosClass c = cls({{2, 1}, {2, 1}, {2, 1}});
  EXPECT_EQ(c.kind, MontesinosClass::Kind::LinkN);
  EXPECT_EQ(c.components, 3);
  EXPECT_EQ(to_string(c), "3-comp (n0=3, n1=0)");
  EXPECT_EQ(classify_rational(1, 2), 2);
  EXPECT_EQ(classify_rational(3, 5), 1);
  EXPECT_EQ(classify_rational(4, 3), 3);
  EXPECT_THROW(classify_rational(2, 4), InvalidInput);
}

TEST(Montesinos, ClassificationMatchesTrace) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::pair<long, long>> f;
    std::vector<ExprPtr> parts;
    const int r = 3 + iter % 3;
    while (static_cast<int>(f.size()) < r) {
      long p = d(rng), q = d(rng);
      if (q < 0) p = -p, q = -q;
      if (p == 0 || q == 0 || std::gcd(p, q) != 1) continue;
      if (crossing_count(parse_tangle("[" + std::to_string(p) + "/" + std::to_string(q) + "]")) > 6)
        continue;
      f.emplace_back(p, q);
      parts.push_back(parse_tangle("[" + std::to_string(p) + "/" + std::to_string(q) + "]"));
    }
    const LinkDiagram ld = make_link({vcomp_all(parts), Closure::D, {}});
    EXPECT_EQ(ld.num_components, montesinos_class(f).components);
    EXPECT_EQ(montesinos_factors(vcomp_all(parts)), f);
  }
}

TEST(Montesinos, PresetOrientation) {
  LinkSpec spec = parse_link("D([-2]*[3]*[7])");
  spec.orientation = OrientationPolicy::montesinos(MontesinosPreset::Even);
  const LinkDiagram ld = make_link(spec);
  const int f0 = factor_nodes(*ld.tangle).front();
  EXPECT_EQ(end_labels(ld, f0)[NE].eps, -1);

  spec.orientation = OrientationPolicy::montesinos(MontesinosPreset::Odd);
  EXPECT_THROW(make_link(spec), InvalidInput);

  LinkSpec three = parse_link("D([2]*[2]*[2])");
  three.orientation = OrientationPolicy::montesinos(MontesinosPreset::NComp);
  const LinkDiagram l3 = make_link(three);
  const std::vector<int> f = factor_nodes(*l3.tangle);
  // Component k leaves through the se end of the (k-1)-th even factor, cyclically.
  EXPECT_EQ(end_labels(l3, f[2])[SE], (EndLabel{1, 1}));
  EXPECT_EQ(end_labels(l3, f[0])[SE], (EndLabel{2, 1}));
  EXPECT_EQ(end_labels(l3, f[1])[SE], (EndLabel{3, 1}));
}

TEST(Orientation, Bits) {
  LinkSpec spec = parse_link("D([2]*[2]*[2])");
  spec.orientation = OrientationPolicy::from_bits({1, -1});
  EXPECT_THROW(make_link(spec), InvalidInput);
  spec.orientation = OrientationPolicy::from_bits({1, -1, 1});
  const LinkDiagram a = make_link(spec);
  spec.orientation = OrientationPolicy::from_bits({-1, 1, -1});
  const LinkDiagram b = make_link(spec);
  // Reversing every component keeps every crossing sign.
  ASSERT_EQ(a.crossings.size(), b.crossings.size());
  for (std::size_t i = 0; i < a.crossings.size(); ++i) EXPECT_EQ(a.crossings[i].sign, b.crossings[i].sign);
}

TEST(Orientation, KnotReversalKeepsSigns) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 60; ++iter) {
    LinkSpec spec{random_expr(rng, 10), iter % 2 ? Closure::N : Closure::D, {}};
    const LinkDiagram a = make_link(spec);
    std::vector<int> flip(static_cast<std::size_t>(a.num_components), -1);
    spec.orientation = OrientationPolicy::from_bits(flip);
    const LinkDiagram b = make_link(spec);
    for (std::size_t i = 0; i < a.crossings.size(); ++i) EXPECT_EQ(a.crossings[i].sign, b.crossings[i].sign);
  }
}

TEST(Pd, SmallExamples) {
  EXPECT_EQ(to_pd(link_of("D([1])")).substr(0, 2), "X[");
  const std::string two = to_pd(link_of("N([2])"));
  EXPECT_NE(two.find("components: 1 1 2 2"), std::string::npos) << two;
  EXPECT_THROW(from_pd("X[1,2,3]\n"), ParseError);
}

TEST(Pd, RoundTripPreservesInvariant) {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 60; ++iter) {
    const LinkSpec spec{random_expr(rng, 9), iter % 2 ? Closure::N : Closure::D, {}};
    const LinkDiagram ld = make_link(spec);
    const LinkDiagram back = from_pd(to_pd(ld));
    EXPECT_EQ(back.num_components, ld.num_components) << to_string(spec);
    EXPECT_EQ(alexander_fox(back), alexander_fox(ld)) << to_string(spec);
  }
}

TEST(Pd, DenominatorFormIsSameLink) {
  std::mt19937 rng(9);
  for (int iter = 0; iter < 40; ++iter) {
    const LinkSpec spec{random_expr(rng, 9), Closure::N, {}};
    const LinkDiagram ld = make_link(spec);
    const LinkDiagram d = denominator_form(ld);
    EXPECT_EQ(d.closure, Closure::D);
    EXPECT_EQ(d.num_components, ld.num_components);
    EXPECT_EQ(alexander_fox(d), alexander_fox(ld)) << to_string(spec);
  }
}
