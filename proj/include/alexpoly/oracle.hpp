#pragma once

// Reference Alexander polynomials from the Wirtinger presentation.

#include <string>
#include <utility>
#include <vector>

#include "alexpoly/diagram.hpp"
#include "alexpoly/polyring.hpp"

namespace alexpoly {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

/// Word in the free group on the arc generators: (arc, +-1) letters.
using FreeWord = std::vector<std::pair<int, int>>;

struct WirtingerPresentation {
  int num_generators = 0;
  std::vector<FreeWord> relators;  // one per crossing
  std::vector<int> nu;             // arc -> component, 1-based

  std::string to_string() const;
};

/// Positive crossing (over j, under k -> l): x_j x_k x_j^-1 x_l^-1.
/// Negative crossing: x_j^-1 x_k x_j x_l^-1.
WirtingerPresentation wirtinger(const LinkDiagram& ld);

/// Phi of the free derivative d(word)/d(x_gen), where Phi(x_j) = t_{nu(j)}.
LaurentPoly fox_derivative(const FreeWord& word, int gen, const std::vector<int>& nu);

/// Closed form of the Fox row of crossing i as (column, value) pairs, with
/// coinciding columns summed.
std::vector<std::pair<int, LaurentPoly>> fox_row(const LinkDiagram& ld, int crossing);

/// Full Alexander matrix, computed by free differentiation of the relators.
PolyMatrix alexander_matrix(const LinkDiagram& ld);

/// Q_{i,over} = 1 - t_over^eps, Q_{i,in} = t_over^eps, Q_{i,out} = -1.
PolyMatrix q_matrix(const LinkDiagram& ld);

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix minor_matrix(const PolyMatrix& m, int row, int col);

/// Fraction-free elimination with exact divisions.
LaurentPoly bareiss_det(PolyMatrix m);
/// Laplace expansion; exponential, for cross-checking small matrices.
LaurentPoly cofactor_det(const PolyMatrix& m);

/// det of the (i0, j0) minor of the Alexander matrix, divided by
/// 1 - t_{nu(j0)} for links. Zero for split diagrams. Canonical.
LaurentPoly alexander_fox(const LinkDiagram& ld, int i0 = 0, int j0 = 0);

/// Same from Q: det of the (i, j) minor, divided by 1 - t_{nu(i')} for links.
LaurentPoly alexander_q(const LinkDiagram& ld, int i = 0, int j = 0);

/// M D == D' Q with D = diag(1 - t_{nu(j)}), D' = diag(1 - t_{nu(i')}).
bool check_md_dq(const LinkDiagram& ld);

}  // namespace alexpoly
