#pragma once

// Bottom-up evaluation of (z_v, z_h) over the composition tree.

#include <optional>
#include <vector>

#include "alexpoly/diagram.hpp"
#include "alexpoly/polyring.hpp"

namespace alexpoly {

struct ZPair {
  RationalFn zv, zh;
  EndLabels labels;
};

struct EngineOptions {
  bool rational_fast_path = true;  // eta recursion on [[k1],...,[ks]]
  bool twist_closed_form = true;   // closed form on [k] and [1/k]
};

/// z-values of a horizontal twist [k] with the given labels.
ZPair z_leaf(int k, const EndLabels& labels);
/// z-values of a vertical twist [1/k]; the labels are those of [1/k].
ZPair z_vertical_twist(int k, const EndLabels& labels);

/// Vertical composition a * b; `a.labels` supply t_ne, t_se, t_sw.
ZPair compose_v(const ZPair& a, const ZPair& b, const EndLabels& result);
/// Horizontal composition a + b; `a.labels` supply t_ne, t_se, t_sw.
ZPair compose_h(const ZPair& a, const ZPair& b, const EndLabels& result);
/// Reflection: swaps z_v and z_h.
ZPair z_sigma(const ZPair& a, const EndLabels& result);

/// [[k1],...,[ks]] from the labels of the blocks [k1], ..., [ks], each in its
/// own frame. Returns {z_v, z_h} = {eta_s, eta_(s-1)}.
ZPair z_rational(const std::vector<int>& cf, const std::vector<EndLabels>& block_labels,
                 const EndLabels& result);

/// z-values of the nodes of the tree of ld (which must be a D closure).
/// Nodes hidden inside a closed-form twist or rational block are left empty.
std::vector<std::optional<ZPair>> evaluate_tree(const LinkDiagram& ld, const EngineOptions& opts = {});

/// Alexander polynomial, canonical. N closures are evaluated on their
/// denominator form. Throws NotDivisible if the final clearing fails.
LaurentPoly alexander(const LinkDiagram& ld, const EngineOptions& opts = {});
LaurentPoly alexander(const LinkSpec& spec, const EngineOptions& opts = {});

/// Transfer-matrix bookkeeping for one node: F_v = [[1-b_sw, b_sw],[1-b_se, b_se]].
struct NodeCheck {
  int node = 0;
  bool materialized = true;      // false when the tangle has no F_v (e.g. [oo]-like)
  RationalFn b_sw, b_se;         // from the children (or the crossing)
  bool z_vs_b = true;            // z_h == -b_sw z_v
  bool constraint = true;        // (1-t_se^-1) b_se + (t_sw-1) b_sw == t_se^-1 (t_ne^-1 - 1)
  bool ok() const { return z_vs_b && constraint; }
};

/// Recomputes F_v for every node by composing transfer matrices from the
/// crossings upwards and checks both identities against the engine values.
/// Nodes without an F_v are reported with materialized = false and ok().
std::vector<NodeCheck> transfer_check(const LinkDiagram& ld);

}  // namespace alexpoly
