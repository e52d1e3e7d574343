#pragma once

// Closed formulas for Montesinos and pretzel links, an evaluation path that
// shares no composition code with the engine.

#include <utility>
#include <vector>

#include "alexpoly/diagram.hpp"
#include "alexpoly/engine.hpp"
#include "alexpoly/polyring.hpp"
#include "alexpoly/tangle.hpp"

namespace alexpoly {

struct MontesinosSpec {
  std::vector<std::pair<long, long>> fractions;  // (p_i, q_i), coprime, q_i != 0
};

struct PretzelSpec {
  std::vector<int> twists;  // p_1..p_r, nonzero
};

/// Elementary symmetric polynomial sigma_k(values).
LaurentPoly sym_poly(int k, const std::vector<LaurentPoly>& values);

/// The fractions of a product of rational tangles. Throws InvalidInput for
/// anything else.
MontesinosSpec montesinos_spec_of(const ExprPtr& e);

/// D([p1/q1]*...*[pr/qr]).
ExprPtr montesinos_expr(const MontesinosSpec& spec);

/// The input rotated cyclically into the position the formulas expect (the
/// last factor even when there are even factors), with the matching preset.
LinkSpec montesinos_link_spec(const MontesinosSpec& spec);

/// The odd-knot formula on given factor values.
LaurentPoly odd_knot_formula(const std::vector<ZPair>& z);

/// Knot cases. Throws InvalidInput for links or r < 3.
LaurentPoly montesinos_knot(const MontesinosSpec& spec);
/// Link cases, components numbered as in montesinos_link_spec.
LaurentPoly montesinos_link(const MontesinosSpec& spec);
/// Dispatch on the classification.
LaurentPoly montesinos(const MontesinosSpec& spec);

MontesinosSpec as_montesinos(const PretzelSpec& spec);

/// Pretzel knots: all odd with r odd, or exactly one even entry.
LaurentPoly pretzel_knot(const PretzelSpec& spec);
/// Pretzel links: all odd with r even, or at least two even entries.
LaurentPoly pretzel_link(const PretzelSpec& spec);
/// The at-least-two-even case exactly as printed in the literature formula,
/// kept for comparison; pretzel_link uses the form derived from the
/// Montesinos link theorem.
LaurentPoly pretzel_link_printed(const PretzelSpec& spec);
LaurentPoly pretzel(const PretzelSpec& spec);

/// (t^n + t^-n + 2) / (t + t^-1 + 2) for n = n1 + n2 odd.
LaurentPoly kinoshita_terasaka_formula(int n1, int n2);
/// ([1/n1]+[1/n2])*[2h]*([1/-n1]+[1/-n2]), to be closed with D. The middle
/// factor is the horizontal twist whose values z_h = 1, z_v = h(1-t) the
/// family formulas assume.
ExprPtr kinoshita_terasaka_expr(int n1, int n2, int h);

/// Three-component member n1 = 2k, n2 = -2k of the same family.
LaurentPoly three_component_formula(int k, int h);

}  // namespace alexpoly
