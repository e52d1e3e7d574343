#include "alexpoly/engine.hpp"

#include <array>
#include <cstdlib>
#include <functional>

#include "alexpoly/errors.hpp"

namespace alexpoly {

namespace {

Monomial phi(const EndLabels& l, Port p) { return l[static_cast<std::size_t>(p)].phi(); }

// (1 - a) / (1 - b)
RationalFn ratio(const Monomial& a, const Monomial& b) { return RationalFn::over_binomial(one_minus(a), b); }

// (a - b) / (1 - b)
RationalFn shifted_ratio(const Monomial& a, const Monomial& b) {
  return RationalFn::over_binomial(LaurentPoly(a) - LaurentPoly(b), b);
}

// Closed form of z_v([k]) in terms of t_ne, t_se.
RationalFn twist_zv(int k, const Monomial& ne, const Monomial& se) {
  const Monomial prod = ne * se;
  if (k % 2 == 0) return LaurentPoly(ne) * (LaurentPoly(se) - LaurentPoly(1L)) * bracket(k / 2, prod);
  return one_minus(se) * bracket((k + 1) / 2, prod) - LaurentPoly(1L);
}

// Labels of S seen from inside sigma(S), given the labels of sigma(S).
EndLabels unreflect(const EndLabels& l) {
  auto flip = [](EndLabel e) { return EndLabel{e.component, -e.eps}; };
  return {flip(l[NW]), flip(l[SW]), flip(l[NE]), flip(l[SE])};
}

using Mat2 = std::array<std::array<RationalFn, 2>, 2>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 stochastic(const RationalFn& x, const RationalFn& y) {
  return {{{RationalFn(1L) - x, x}, {RationalFn(1L) - y, y}}};
}

// F_v <-> F_h: (nw,ne) -> (sw,se) versus (nw,sw) -> (ne,se). Needs b_sw != 0.
std::optional<Mat2> swap_frame(const Mat2& f) {
  const RationalFn& b_sw = f[0][1];
  const RationalFn& b_se = f[1][1];
  if (b_sw.is_zero()) return std::nullopt;
  return stochastic(b_sw.inverse(), b_se / b_sw);
}

// F_v of S1 + S2 from F_v(S1), F_v(S2), eliminating the two middle arcs.
// Applied to F_h it gives F_h of S1 * S2.
std::optional<Mat2> side_by_side(const Mat2& f1, const Mat2& f2) {
  const RationalFn& b1 = f1[0][1];
  const RationalFn& c1 = f1[1][1];
  const RationalFn& b2 = f2[0][1];
  const RationalFn& c2 = f2[1][1];
  const RationalFn den = c1 + b2 - RationalFn(1L);
  if (den.is_zero()) return std::nullopt;
  const RationalFn beta = b2 / den;  // weight of xi_ne in the left middle arc
  return stochastic(b1 * beta, (RationalFn(1L) - c2) * beta + c2);
}

struct Transfer {
  std::optional<Mat2> v, h;

  void fill() {
    if (!v && h) v = swap_frame(*h);
    if (!h && v) h = swap_frame(*v);
  }
};

// Frame slots of a fresh crossing, indexed by Port.
constexpr std::array<int, 4> kFrameSlot{3, 2, 0, 1};

Mat2 leaf_transfer(int sign, const EndLabels& l) {
  // In its own frame a leaf with sign +1 has the NW-SE strand on top.
  auto incoming = [&](Port a, Port b) { return l[a].eps < 0 ? a : b; };
  const Port over_in = sign > 0 ? incoming(NW, SE) : incoming(NE, SW);
  const Port under_in = sign > 0 ? incoming(NE, SW) : incoming(NW, SE);
  const int in_under = kFrameSlot[under_in];
  const int crossing_sign = kFrameSlot[over_in] == (in_under + 3) % 4 ? 1 : -1;
  const VarId c = l[sign > 0 ? NW : NE].component;
  const Monomial a = Monomial::var(c, crossing_sign);
  if (sign > 0) {
    const RationalFn b_sw = l[NE].eps < 0 ? RationalFn(a) : RationalFn(a.inverse());
    return stochastic(b_sw, RationalFn(0L));
  }
  const RationalFn b_se = l[NW].eps < 0 ? RationalFn(one_minus(a)) : RationalFn(one_minus(a.inverse()));
  return stochastic(RationalFn(1L), b_se);
}

}  // namespace

ZPair z_leaf(int k, const EndLabels& labels) {
  return {twist_zv(k, phi(labels, NE), phi(labels, SE)), RationalFn(1L), labels};
}

ZPair z_vertical_twist(int k, const EndLabels& labels) {
  const ZPair inner = z_leaf(k, unreflect(labels));
  return z_sigma(inner, labels);
}

ZPair compose_v(const ZPair& a, const ZPair& b, const EndLabels& result) {
  const Monomial ne = phi(a.labels, NE), se = phi(a.labels, SE), sw = phi(a.labels, SW);
  const RationalFn A = ratio(ne.inverse(), se);
  const RationalFn B = shifted_ratio(sw, se.inverse());
  return {a.zv * b.zv, a.zh * b.zv + A * a.zv * b.zh + B * a.zh * b.zh, result};
}

ZPair compose_h(const ZPair& a, const ZPair& b, const EndLabels& result) {
  const Monomial ne = phi(a.labels, NE), se = phi(a.labels, SE), sw = phi(a.labels, SW);
  const RationalFn C = ratio(sw, se.inverse());
  const RationalFn D = shifted_ratio(ne.inverse(), se);
  return {a.zv * b.zh + C * a.zh * b.zv + D * a.zv * b.zv, a.zh * b.zh, result};
}

ZPair z_sigma(const ZPair& a, const EndLabels& result) { return {a.zh, a.zv, result}; }

ZPair z_rational(const std::vector<int>& cf, const std::vector<EndLabels>& block_labels,
                 const EndLabels& result) {
  if (cf.empty() || cf.size() != block_labels.size())
    throw InvalidInput("continued fraction and block labels differ in length");
  const std::size_t s = cf.size();
  std::vector<Monomial> u(s + 1), v(s + 1);
  u[0] = phi(block_labels[0], SW).inverse();
  for (std::size_t i = 1; i <= s; ++i) {
    u[i] = phi(block_labels[i - 1], NE);
    v[i] = phi(block_labels[i - 1], SE).inverse();
  }
  // eta_{-1} = 0 is never used with a nonzero coefficient; eta_0 = 1.
  RationalFn prev2(1L);
  RationalFn prev1 = twist_zv(cf[0], u[1], v[1].inverse());
  for (std::size_t i = 2; i <= s; ++i) {
    const RationalFn b = twist_zv(cf[i - 1], u[i], v[i].inverse());
    const RationalFn next = prev2 + ratio(u[i - 1].inverse(), v[i - 1].inverse()) * prev1 * b +
                            shifted_ratio(u[i - 2].inverse(), v[i - 1]) * prev2 * b;
    prev2 = std::move(prev1);
    prev1 = next;
  }
  return {prev1, prev2, result};
}

std::vector<std::optional<ZPair>> evaluate_tree(const LinkDiagram& ld, const EngineOptions& opts) {
  if (!ld.tangle) throw InvalidInput("diagram has no tangle structure");
  if (ld.closure != Closure::D) throw InvalidInput("evaluate_tree expects a D closure");
  const TangleDiagram& td = *ld.tangle;
  std::vector<std::optional<ZPair>> z(td.nodes.size());

  std::function<const ZPair&(int)> eval = [&](int id) -> const ZPair& {
    auto& slot = z[static_cast<std::size_t>(id)];
    if (slot) return *slot;
    const TreeNode& n = td.node(id);
    const EndLabels labels = end_labels(ld, id);
    if (opts.rational_fast_path && n.is_rational()) {
      std::vector<EndLabels> bl;
      for (int b : n.blocks) bl.push_back(end_labels(ld, b));
      slot = z_rational(n.cf, bl, labels);
    } else if (opts.twist_closed_form && n.is_twist()) {
      slot = n.vertical ? z_vertical_twist(n.twist, labels) : z_leaf(n.twist, labels);
    } else {
      switch (n.kind) {
        case TreeNode::Kind::Leaf:
          slot = z_leaf(n.sign, labels);
          break;
        case TreeNode::Kind::Sigma:
          slot = z_sigma(eval(n.left), labels);
          break;
        case TreeNode::Kind::VComp: {
          const ZPair& a = eval(n.left);
          slot = compose_v(a, eval(n.right), labels);
          break;
        }
        case TreeNode::Kind::HComp: {
          const ZPair& a = eval(n.left);
          slot = compose_h(a, eval(n.right), labels);
          break;
        }
      }
    }
    return *slot;
  };
  eval(td.root);
  return z;
}

LaurentPoly alexander(const LinkDiagram& ld, const EngineOptions& opts) {
  const LinkDiagram d = denominator_form(ld);
  const auto z = evaluate_tree(d, opts);
  const ZPair& root = *z[static_cast<std::size_t>(d.tangle->root)];
  const LaurentPoly zh = root.zh.to_poly();
  if (zh.is_zero()) return zh;
  if (d.num_components == 1) return canonical_or_zero(zh);
  return canonical_or_zero(divide_exact(zh, one_minus(phi(root.labels, NE))));
}

LaurentPoly alexander(const LinkSpec& spec, const EngineOptions& opts) {
  return alexander(make_link(spec), opts);
}

std::vector<NodeCheck> transfer_check(const LinkDiagram& input) {
  const LinkDiagram ld = denominator_form(input);
  const TangleDiagram& td = *ld.tangle;
  const auto z = evaluate_tree(ld, {false, false});
  std::vector<std::optional<Transfer>> fv(td.nodes.size());
  std::vector<NodeCheck> out;

  std::function<const Transfer&(int)> transfer = [&](int id) -> const Transfer& {
    auto& slot = fv[static_cast<std::size_t>(id)];
    if (slot) return *slot;
    const TreeNode& n = td.node(id);
    Transfer t;
    switch (n.kind) {
      case TreeNode::Kind::Leaf:
        t.v = leaf_transfer(n.sign, end_labels(ld, id));
        break;
      case TreeNode::Kind::Sigma: {
        const Transfer& c = transfer(n.left);
        t.v = c.h;
        t.h = c.v;
        break;
      }
      case TreeNode::Kind::VComp: {
        const Transfer a = transfer(n.left);
        const Transfer& b = transfer(n.right);
        if (a.v && b.v) t.v = mul(*b.v, *a.v);
        if (a.h && b.h) t.h = side_by_side(*a.h, *b.h);
        break;
      }
      case TreeNode::Kind::HComp: {
        const Transfer a = transfer(n.left);
        const Transfer& b = transfer(n.right);
        if (a.h && b.h) t.h = mul(*b.h, *a.h);
        if (a.v && b.v) t.v = side_by_side(*a.v, *b.v);
        break;
      }
    }
    t.fill();
    slot = std::move(t);
    return *slot;
  };

  for (int id = 0; id < static_cast<int>(td.nodes.size()); ++id) {
    NodeCheck c;
    c.node = id;
    const ZPair& zp = *z[static_cast<std::size_t>(id)];
    const Transfer& t = transfer(id);
    if (!t.v) {
      c.materialized = false;
      out.push_back(std::move(c));
      continue;
    }
    c.b_sw = (*t.v)[0][1];
    c.b_se = (*t.v)[1][1];
    c.z_vs_b = zp.zh == -(c.b_sw * zp.zv);
    const Monomial ne = phi(zp.labels, NE), se = phi(zp.labels, SE), sw = phi(zp.labels, SW);
    const RationalFn lhs = RationalFn(one_minus(se.inverse())) * c.b_se +
                           RationalFn(LaurentPoly(sw) - LaurentPoly(1L)) * c.b_sw;
    const RationalFn rhs = RationalFn(LaurentPoly(se.inverse()) * (LaurentPoly(ne.inverse()) - LaurentPoly(1L)));
    c.constraint = lhs == rhs;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace alexpoly
