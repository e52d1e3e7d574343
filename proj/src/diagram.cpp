#include "alexpoly/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace alexpoly {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int partner(int slot) { return (slot & ~3) | ((slot + 2) & 3); }

// Slot relabelling applied by a reflection.
int reflect_slot(int slot) {
  const int s = slot & 3;
  if (s == 1) return slot + 2;
  if (s == 3) return slot - 2;
  return slot;
}

class Builder {
 public:
  TangleDiagram run(const ExprPtr& e) {
    d_.root = build(e);
    mark_parity(d_.root, false);
    return std::move(d_);
  }

 private:
  TreeNode& at(int id) { return d_.nodes[static_cast<std::size_t>(id)]; }

  int push(TreeNode n) {
    d_.nodes.push_back(std::move(n));
    return static_cast<int>(d_.nodes.size()) - 1;
  }

  void connect(int a, int b) {
    d_.link[static_cast<std::size_t>(a)] = b;
    d_.link[static_cast<std::size_t>(b)] = a;
  }

  int new_leaf(int sign) {
    const int c = d_.num_crossings++;
    d_.link.resize(static_cast<std::size_t>(4 * d_.num_crossings), -1);
    d_.over_odd.push_back(sign > 0);
    TreeNode n;
    n.kind = TreeNode::Kind::Leaf;
    n.sign = sign;
    n.ports = {4 * c + 3, 4 * c + 2, 4 * c, 4 * c + 1};
    n.first_crossing = c;
    n.end_crossing = c + 1;
    n.first_node = static_cast<int>(d_.nodes.size());
    return push(std::move(n));
  }

  int combine(TreeNode::Kind kind, int a, int b) {
    const std::array<int, 4> pa = at(a).ports, pb = at(b).ports;
    TreeNode n;
    n.kind = kind;
    n.left = a;
    n.right = b;
    if (kind == TreeNode::Kind::VComp) {
      connect(pa[SW], pb[NW]);
      connect(pa[SE], pb[NE]);
      n.ports = {pa[NW], pa[NE], pb[SW], pb[SE]};
    } else {
      connect(pa[NE], pb[NW]);
      connect(pa[SE], pb[SW]);
      n.ports = {pa[NW], pb[NE], pa[SW], pb[SE]};
    }
    n.first_crossing = at(a).first_crossing;
    n.end_crossing = at(b).end_crossing;
    n.first_node = at(a).first_node;
    return push(std::move(n));
  }

  int reflect(int child) {
    const TreeNode& c = at(child);
    const int lo = 4 * c.first_crossing, hi = 4 * c.end_crossing;
    std::vector<int> relinked(static_cast<std::size_t>(hi - lo), -1);
    for (int s = lo; s < hi; ++s) {
      const int t = d_.link[static_cast<std::size_t>(s)];
      relinked[static_cast<std::size_t>(reflect_slot(s) - lo)] = t < 0 ? -1 : reflect_slot(t);
    }
    std::copy(relinked.begin(), relinked.end(), d_.link.begin() + lo);
    for (int id = c.first_node; id <= child; ++id)
      for (int& p : at(id).ports) p = reflect_slot(p);

    const TreeNode& r = at(child);
    TreeNode n;
    n.kind = TreeNode::Kind::Sigma;
    n.left = child;
    n.ports = {r.ports[NW], r.ports[SW], r.ports[NE], r.ports[SE]};
    n.first_crossing = r.first_crossing;
    n.end_crossing = r.end_crossing;
    n.first_node = r.first_node;
    return push(std::move(n));
  }

  int twist(int k, bool vertical) {
    const int s = k > 0 ? 1 : -1;
    int id = new_leaf(s);
    for (int i = 1; i < std::abs(k); ++i)
      id = combine(vertical ? TreeNode::Kind::VComp : TreeNode::Kind::HComp, id, new_leaf(s));
    at(id).twist = k;
    at(id).vertical = vertical && std::abs(k) > 1;
    return id;
  }

  int build(const ExprPtr& e) {
    return std::visit(
        overloaded{
            [&](const node::Leaf& x) { return new_leaf(x.sign); },
            [&](const node::HTwist& x) { return twist(x.k, false); },
            [&](const node::VTwist& x) { return twist(x.k, true); },
            [&](const node::Rational& x) {
              std::vector<int> blocks{twist(x.cf[0], false)};
              int h = blocks[0];
              for (std::size_t i = 1; i < x.cf.size(); ++i) {
                const int s = reflect(h);
                blocks.push_back(twist(x.cf[i], false));
                h = combine(TreeNode::Kind::HComp, s, blocks.back());
              }
              if (x.cf.size() > 1) {
                at(h).cf = x.cf;
                at(h).blocks = std::move(blocks);
              }
              return h;
            },
            [&](const node::Sigma& x) { return reflect(build(x.child)); },
            [&](const node::VComp& x) {
              const int a = build(x.left);
              return combine(TreeNode::Kind::VComp, a, build(x.right));
            },
            [&](const node::HComp& x) {
              const int a = build(x.left);
              return combine(TreeNode::Kind::HComp, a, build(x.right));
            },
        },
        e->v);
  }

  void mark_parity(int id, bool parity) {
    TreeNode& n = at(id);
    n.sigma_parity = parity;
    const bool below = n.kind == TreeNode::Kind::Sigma ? !parity : parity;
    if (n.left >= 0) mark_parity(n.left, below);
    if (n.right >= 0) mark_parity(at(id).right, below);
  }

  TangleDiagram d_;
};

bool is_over_slot(const std::vector<char>& over_odd, int slot) {
  return ((slot & 1) == 1) == (over_odd[static_cast<std::size_t>(slot >> 2)] != 0);
}

// Orients and numbers every component: numbered by smallest slot, leaving a
// crossing at that slot.
void auto_orient(LinkDiagram& ld) {
  const std::size_t slots = ld.link.size();
  ld.out.assign(slots, 0);
  ld.component.assign(slots, 0);
  ld.num_components = 0;
  for (std::size_t s0 = 0; s0 < slots; ++s0) {
    if (ld.component[s0]) continue;
    const int id = ++ld.num_components;
    int e = static_cast<int>(s0);
    do {
      ld.out[static_cast<std::size_t>(e)] = 1;
      ld.component[static_cast<std::size_t>(e)] = id;
      const int x = ld.link[static_cast<std::size_t>(e)];
      ld.out[static_cast<std::size_t>(x)] = -1;
      ld.component[static_cast<std::size_t>(x)] = id;
      e = partner(x);
    } while (e != static_cast<int>(s0));
  }
}

// Exit slots of component k in traversal order, starting at the first
// under-crossing exit reached from the component's smallest exit slot.
std::vector<int> traversal(const LinkDiagram& ld, int k) {
  int start = -1;
  for (std::size_t s = 0; s < ld.link.size(); ++s)
    if (ld.component[s] == k && ld.out[s] == 1) {
      start = static_cast<int>(s);
      break;
    }
  std::vector<int> exits;
  int e = start;
  do {
    exits.push_back(e);
    e = partner(ld.link[static_cast<std::size_t>(e)]);
  } while (e != start);
  auto first_under = std::find_if(exits.begin(), exits.end(),
                                  [&](int s) { return !is_over_slot(ld.over_odd, s); });
  if (first_under != exits.end()) std::rotate(exits.begin(), first_under, exits.end());
  return exits;
}

void finalize(LinkDiagram& ld) {
  const std::size_t slots = ld.link.size();
  ld.arc.assign(slots, -1);
  ld.arc_component.clear();
  ld.crossings.assign(static_cast<std::size_t>(ld.num_crossings), CrossingInfo{});

  for (int k = 1; k <= ld.num_components; ++k) {
    const std::vector<int> exits = traversal(ld, k);
    int cur = -1;
    for (int e : exits) {
      if (cur < 0 || !is_over_slot(ld.over_odd, e)) {
        cur = static_cast<int>(ld.arc_component.size());
        ld.arc_component.push_back(k);
      }
      ld.arc[static_cast<std::size_t>(e)] = cur;
      ld.arc[static_cast<std::size_t>(ld.link[static_cast<std::size_t>(e)])] = cur;
    }
  }

  for (int c = 0; c < ld.num_crossings; ++c) {
    CrossingInfo& info = ld.crossings[static_cast<std::size_t>(c)];
    const int under_base = ld.over_odd[static_cast<std::size_t>(c)] ? 0 : 1;
    int x = 4 * c + under_base;
    if (ld.out[static_cast<std::size_t>(x)] == 1) x = partner(x);
    info.in_under = x;
    const int over_in_positive = 4 * c + ((x + 3) & 3);
    info.sign = ld.out[static_cast<std::size_t>(over_in_positive)] == -1 ? 1 : -1;
    info.over_arc = ld.arc[static_cast<std::size_t>(4 * c + 1 - under_base)];
    info.in_arc = ld.arc[static_cast<std::size_t>(x)];
    info.out_arc = ld.arc[static_cast<std::size_t>(partner(x))];
  }
}

// Reverses component k.
void reverse_component(LinkDiagram& ld, int k) {
  for (std::size_t s = 0; s < ld.out.size(); ++s)
    if (ld.component[s] == k) ld.out[s] = static_cast<std::int8_t>(-ld.out[s]);
}

std::pair<long, long> node_fraction(const TreeNode& n) {
  if (n.is_rational()) return evaluate_continued_fraction(n.cf);
  if (n.kind == TreeNode::Kind::Leaf) return {n.sign, 1};
  if (n.is_twist()) return n.vertical ? std::make_pair(1L, static_cast<long>(n.twist))
                                      : std::make_pair(static_cast<long>(n.twist), 1L);
  throw InvalidInput("not a rational factor");
}

void apply_preset(LinkDiagram& ld, MontesinosPreset preset) {
  if (!ld.tangle || ld.closure != Closure::D)
    throw InvalidInput("Montesinos presets need an expression of the form D([p1/q1]*...*[pr/qr])");
  const TangleDiagram& td = *ld.tangle;
  const std::vector<int> factors = factor_nodes(td);
  std::vector<std::pair<long, long>> fractions;
  for (int id : factors) {
    const TreeNode& n = td.node(id);
    if (n.kind != TreeNode::Kind::Leaf && !n.is_twist() && !n.is_rational())
      throw InvalidInput("Montesinos presets need rational factors");
    fractions.push_back(node_fraction(n));
  }
  const MontesinosClass mc = montesinos_class(fractions);
  const std::map<MontesinosPreset, MontesinosClass::Kind> expected{
      {MontesinosPreset::Odd, MontesinosClass::Kind::KnotOdd},
      {MontesinosPreset::Even, MontesinosClass::Kind::KnotEven},
      {MontesinosPreset::TwoComp, MontesinosClass::Kind::Link2},
      {MontesinosPreset::NComp, MontesinosClass::Kind::LinkN}};
  if (expected.at(preset) != mc.kind)
    throw InvalidInput("orientation preset does not match the link (" + to_string(mc) + ")");
  if (mc.components != ld.num_components)
    throw InvalidInput("component count disagrees with the Montesinos classification");

  auto port = [&](std::size_t factor, Port p) {
    return static_cast<std::size_t>(td.node(factors[factor]).ports[p]);
  };
  // Assign new numbers and wanted directions: {old component, slot, wanted out}.
  std::vector<std::tuple<int, std::size_t, int>> plan;
  switch (preset) {
    case MontesinosPreset::Odd:
    case MontesinosPreset::Even:
      plan.emplace_back(ld.component[port(0, NE)], port(0, NE), -1);
      break;
    case MontesinosPreset::TwoComp: {
      const int c1 = ld.component[port(0, NE)];
      const std::size_t other = ld.component[port(0, SE)] != c1 ? port(0, SE) : port(0, SW);
      plan.emplace_back(c1, port(0, NE), -1);
      plan.emplace_back(ld.component[other], other, 1);
      break;
    }
    case MontesinosPreset::NComp: {
      std::vector<std::size_t> evens;
      for (std::size_t i = 0; i < fractions.size(); ++i)
        if (classify_rational(fractions[i].first, fractions[i].second) == 3) evens.push_back(i);
      for (std::size_t k = 0; k < evens.size(); ++k) {
        const std::size_t idx = k == 0 ? evens.back() : evens[k - 1];
        plan.emplace_back(ld.component[port(idx, SE)], port(idx, SE), 1);
      }
      break;
    }
  }

  std::vector<int> renumber(static_cast<std::size_t>(ld.num_components + 1), 0);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto [old, slot, want] = plan[k];
    if (renumber[static_cast<std::size_t>(old)])
      throw InvalidInput("orientation preset assigns one component twice");
    renumber[static_cast<std::size_t>(old)] = static_cast<int>(k) + 1;
    if (ld.out[slot] != want) reverse_component(ld, old);
  }
  for (auto& c : ld.component) c = renumber[static_cast<std::size_t>(c)];
}

}  // namespace

TangleDiagram build_diagram(const ExprPtr& e) { return Builder().run(e); }

LinkDiagram close(const TangleDiagram& d, Closure kind) {
  LinkDiagram ld;
  ld.num_crossings = d.num_crossings;
  ld.link = d.link;
  ld.over_odd = d.over_odd;
  const std::array<int, 4>& p = d.node(d.root).ports;
  auto join = [&](int a, int b) {
    ld.link[static_cast<std::size_t>(a)] = b;
    ld.link[static_cast<std::size_t>(b)] = a;
  };
  if (kind == Closure::D) {
    join(p[NW], p[SW]);
    join(p[NE], p[SE]);
  } else {
    join(p[NW], p[NE]);
    join(p[SW], p[SE]);
  }
  ld.tangle = d;
  ld.closure = kind;
  auto_orient(ld);
  finalize(ld);
  return ld;
}

LinkDiagram orient(LinkDiagram ld, const OrientationPolicy& policy) {
  auto_orient(ld);
  switch (policy.kind) {
    case OrientationPolicy::Kind::Auto:
      break;
    case OrientationPolicy::Kind::Bits:
      if (static_cast<int>(policy.bits.size()) != ld.num_components)
        throw InvalidInput("orientation bits given for " + std::to_string(policy.bits.size()) +
                           " components, link has " + std::to_string(ld.num_components));
      for (int k = 1; k <= ld.num_components; ++k) {
        const int b = policy.bits[static_cast<std::size_t>(k - 1)];
        if (b != 1 && b != -1) throw InvalidInput("orientation bits must be +1 or -1");
        if (b == -1) reverse_component(ld, k);
      }
      break;
    case OrientationPolicy::Kind::Preset:
      apply_preset(ld, policy.preset);
      break;
  }
  finalize(ld);
  return ld;
}

LinkDiagram make_link(const LinkSpec& spec) {
  return orient(close(build_diagram(spec.expr), spec.closure), spec.orientation);
}

LinkDiagram denominator_form(const LinkDiagram& ld) {
  if (ld.closure == Closure::D) return ld;
  if (!ld.tangle) throw InvalidInput("diagram has no tangle structure");
  const TangleDiagram& td = *ld.tangle;

  // Rebuild sigma(T) from the tree: same crossings, slots relabelled.
  TangleDiagram sd = td;
  for (std::size_t s = 0; s < sd.link.size(); ++s) {
    const int t = td.link[s];
    sd.link[static_cast<std::size_t>(reflect_slot(static_cast<int>(s)))] =
        t < 0 ? -1 : reflect_slot(t);
  }
  for (TreeNode& n : sd.nodes)
    for (int& p : n.ports) p = reflect_slot(p);
  const TreeNode& r = sd.node(sd.root);
  TreeNode top;
  top.kind = TreeNode::Kind::Sigma;
  top.left = sd.root;
  top.ports = {r.ports[NW], r.ports[SW], r.ports[NE], r.ports[SE]};
  top.first_crossing = r.first_crossing;
  top.end_crossing = r.end_crossing;
  top.first_node = r.first_node;
  for (TreeNode& n : sd.nodes) n.sigma_parity = !n.sigma_parity;
  sd.nodes.push_back(top);
  sd.root = static_cast<int>(sd.nodes.size()) - 1;

  LinkDiagram out;
  out.num_crossings = ld.num_crossings;
  out.over_odd = ld.over_odd;
  out.link.assign(ld.link.size(), -1);
  out.out.assign(ld.link.size(), 0);
  out.component.assign(ld.link.size(), 0);
  for (std::size_t s = 0; s < ld.link.size(); ++s) {
    const auto f = static_cast<std::size_t>(reflect_slot(static_cast<int>(s)));
    out.link[f] = reflect_slot(ld.link[s]);
    out.out[f] = ld.out[s];
    out.component[f] = ld.component[s];
  }
  out.num_components = ld.num_components;
  out.tangle = std::move(sd);
  out.closure = Closure::D;
  finalize(out);
  return out;
}

EndLabels end_labels(const LinkDiagram& ld, int id) {
  if (!ld.tangle) throw InvalidInput("diagram has no tangle structure");
  const TreeNode& n = ld.tangle->node(id);
  EndLabels labels;
  for (int p = 0; p < 4; ++p) {
    const auto slot = static_cast<std::size_t>(n.ports[static_cast<std::size_t>(p)]);
    const int eps = ld.out[slot];
    labels[static_cast<std::size_t>(p)] = {ld.component[slot], n.sigma_parity ? -eps : eps};
  }
  return labels;
}

int classify_rational(long p, long q) {
  if (q == 0) throw InvalidInput("zero denominator");
  const bool po = p % 2 != 0, qo = q % 2 != 0;
  if (!po && !qo) throw InvalidInput("p and q are both even");
  if (po && qo) return 1;
  return po ? 2 : 3;
}

MontesinosClass montesinos_class(const std::vector<std::pair<long, long>>& fractions) {
  MontesinosClass c;
  for (const auto& [p, q] : fractions) {
    if (q == 0 || std::gcd(p, q) != 1) throw InvalidInput("fraction is not in lowest terms");
    const int t = classify_rational(p, q);
    if (t == 1) ++c.n1;
    if (t == 3) ++c.n0;
  }
  if (c.n0 == 0) {
    c.kind = c.n1 % 2 ? MontesinosClass::Kind::KnotOdd : MontesinosClass::Kind::Link2;
    c.components = c.n1 % 2 ? 1 : 2;
  } else if (c.n0 == 1) {
    c.kind = MontesinosClass::Kind::KnotEven;
    c.components = 1;
  } else {
    c.kind = MontesinosClass::Kind::LinkN;
    c.components = c.n0;
  }
  return c;
}

std::string to_string(const MontesinosClass& c) {
  std::string kind;
  switch (c.kind) {
    case MontesinosClass::Kind::KnotOdd: kind = "knot-odd"; break;
    case MontesinosClass::Kind::KnotEven: kind = "knot-even"; break;
    case MontesinosClass::Kind::Link2: kind = "2-comp"; break;
    case MontesinosClass::Kind::LinkN: kind = std::to_string(c.components) + "-comp"; break;
  }
  return kind + " (n0=" + std::to_string(c.n0) + ", n1=" + std::to_string(c.n1) + ")";
}

std::optional<std::vector<std::pair<long, long>>> montesinos_factors(const ExprPtr& e) {
  std::vector<std::pair<long, long>> out;
  bool ok = true;
  auto walk = [&](auto&& self, const ExprPtr& x) -> void {
    std::visit(overloaded{
                   [&](const node::Leaf& y) { out.emplace_back(y.sign, 1); },
                   [&](const node::HTwist& y) { out.emplace_back(y.k, 1); },
                   [&](const node::VTwist& y) { out.emplace_back(1, y.k); },
                   [&](const node::Rational& y) { out.push_back(evaluate_continued_fraction(y.cf)); },
                   [&](const node::VComp& y) {
                     self(self, y.left);
                     self(self, y.right);
                   },
                   [&](const node::Sigma&) { ok = false; },
                   [&](const node::HComp&) { ok = false; },
               },
               x->v);
  };
  walk(walk, e);
  if (!ok) return std::nullopt;
  return out;
}

std::vector<int> factor_nodes(const TangleDiagram& d) {
  std::vector<int> out;
  auto walk = [&](auto&& self, int id) -> void {
    const TreeNode& n = d.node(id);
    if (n.kind == TreeNode::Kind::VComp && !n.is_twist() && !n.is_rational()) {
      self(self, n.left);
      self(self, n.right);
    } else {
      out.push_back(id);
    }
  };
  walk(walk, d.root);
  return out;
}

// ---------------------------------------------------------------------- PD

std::string to_pd(const LinkDiagram& ld) {
  std::vector<int> edge(ld.link.size(), 0);
  std::vector<int> edge_component;
  for (int k = 1; k <= ld.num_components; ++k)
    for (int e : traversal(ld, k)) {
      edge_component.push_back(k);
      const int id = static_cast<int>(edge_component.size());
      edge[static_cast<std::size_t>(e)] = id;
      edge[static_cast<std::size_t>(ld.link[static_cast<std::size_t>(e)])] = id;
    }

  std::ostringstream out;
  for (const CrossingInfo& c : ld.crossings) {
    const int base = c.in_under & ~3;
    out << "X[";
    for (int i = 0; i < 4; ++i) {
      if (i) out << ",";
      out << edge[static_cast<std::size_t>(base + ((c.in_under + i) & 3))];
    }
    out << "]\n";
  }
  out << "components:";
  for (int k : edge_component) out << " " << k;
  out << "\nsigns:";
  for (const CrossingInfo& c : ld.crossings) out << " " << (c.sign > 0 ? "+1" : "-1");
  out << "\n";
  return out.str();
}

LinkDiagram from_pd(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::array<int, 4>> xs;
  std::vector<int> comps, signs;
  bool have_comps = false, have_signs = false;
  const std::regex xre(R"(^\s*X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*$)");
  std::size_t lineno = 0;
  auto list = [&](const std::string& rest) {
    std::vector<int> v;
    std::istringstream ls(rest);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + tok + "' in PD line " + std::to_string(lineno), lineno);
      }
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::smatch m;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (std::regex_match(line, m, xre)) {
      xs.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])});
    } else if (line.compare(first, 11, "components:") == 0) {
      comps = list(line.substr(first + 11));
      have_comps = true;
    } else if (line.compare(first, 6, "signs:") == 0) {
      signs = list(line.substr(first + 6));
      have_signs = true;
    } else {
      throw ParseError("unrecognised PD line " + std::to_string(lineno), lineno);
    }
  }
  if (xs.empty()) throw ParseError("PD code has no crossings", 0);

  LinkDiagram ld;
  ld.num_crossings = static_cast<int>(xs.size());
  const std::size_t slots = 4 * xs.size();
  ld.link.assign(slots, -1);
  ld.over_odd.assign(xs.size(), 1);
  std::map<int, std::vector<int>> where;
  for (std::size_t c = 0; c < xs.size(); ++c)
    for (int i = 0; i < 4; ++i) where[xs[c][static_cast<std::size_t>(i)]].push_back(static_cast<int>(4 * c) + i);
  for (const auto& [label, at] : where) {
    if (at.size() != 2)
      throw ParseError("edge " + std::to_string(label) + " must occur exactly twice", 0);
    ld.link[static_cast<std::size_t>(at[0])] = at[1];
    ld.link[static_cast<std::size_t>(at[1])] = at[0];
  }

  // Under strands are oriented by the PD convention; over strands follow by
  // propagation along the components.
  ld.out.assign(slots, 0);
  if (have_signs && signs.size() != xs.size())
    throw ParseError("signs trailer has the wrong length", 0);
  for (std::size_t c = 0; c < xs.size(); ++c) {
    ld.out[4 * c] = -1;
    ld.out[4 * c + 2] = 1;
    if (have_signs) {
      if (signs[c] != 1 && signs[c] != -1) throw ParseError("signs must be +1 or -1", 0);
      ld.out[4 * c + 3] = static_cast<std::int8_t>(-signs[c]);
      ld.out[4 * c + 1] = static_cast<std::int8_t>(signs[c]);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < slots; ++s) {
      if (!ld.out[s]) continue;
      const auto t = static_cast<std::size_t>(ld.link[s]);
      const auto p = static_cast<std::size_t>(partner(static_cast<int>(s)));
      for (auto [slot, want] : {std::pair{t, -ld.out[s]}, std::pair{p, -ld.out[s]}}) {
        if (ld.out[slot] == 0) {
          ld.out[slot] = static_cast<std::int8_t>(want);
          changed = true;
        } else if (ld.out[slot] != want) {
          throw ParseError("PD code is not consistently oriented", 0);
        }
      }
    }
    if (!changed)
      for (std::size_t s = 0; s < slots; ++s)
        if (!ld.out[s]) {
          ld.out[s] = 1;  // a component passing only over
          changed = true;
          break;
        }
  }

  // Components, numbered by smallest slot unless the trailer says otherwise.
  ld.component.assign(slots, 0);
  for (std::size_t s0 = 0; s0 < slots; ++s0) {
    if (ld.component[s0]) continue;
    const int id = ++ld.num_components;
    std::size_t s = s0;
    do {
      ld.component[s] = id;
      const auto t = static_cast<std::size_t>(ld.link[s]);
      ld.component[t] = id;
      s = static_cast<std::size_t>(partner(static_cast<int>(t)));
    } while (s != s0);
  }
  if (have_comps) {
    const std::size_t edges = where.size();
    if (comps.size() != edges) throw ParseError("components trailer has the wrong length", 0);
    std::vector<int> renumber(static_cast<std::size_t>(ld.num_components + 1), 0);
    std::size_t e = 0;
    for (const auto& [label, at] : where) {
      const int traced = ld.component[static_cast<std::size_t>(at[0])];
      const int given = comps[e++];
      int& r = renumber[static_cast<std::size_t>(traced)];
      if (r && r != given) throw ParseError("components trailer contradicts the PD code", 0);
      r = given;
    }
    std::set<int> used(renumber.begin() + 1, renumber.end());
    if (static_cast<int>(used.size()) != ld.num_components || *used.begin() != 1 ||
        *used.rbegin() != ld.num_components)
      throw ParseError("components trailer must number components 1..m", 0);
    for (auto& c : ld.component) c = renumber[static_cast<std::size_t>(c)];
  }
  finalize(ld);
  if (have_signs) {
    for (std::size_t c = 0; c < xs.size(); ++c)
      if (signs[c] != ld.crossings[c].sign)
        throw ParseError("signs trailer contradicts the edge orientation", 0);
  }
  return ld;
}

}  // namespace alexpoly
