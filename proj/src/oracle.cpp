#include "alexpoly/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace alexpoly {

namespace {

Monomial t_of(const std::vector<int>& nu, int arc, int exp = 1) {
  return Monomial::var(nu[static_cast<std::size_t>(arc)], exp);
}

PolyMatrix zeros(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, std::vector<LaurentPoly>(cols));
}

bool is_link(const LinkDiagram& ld) { return ld.num_components > 1; }

}  // namespace

std::string WirtingerPresentation::to_string() const {
  std::ostringstream out;
  out << "generators: " << num_generators << "\n";
  for (const FreeWord& w : relators) {
    bool first = true;
    for (const auto& [g, e] : w) {
      if (!first) out << " ";
      first = false;
      out << "x" << g + 1;
      if (e != 1) out << "^" << e;
    }
    out << "\n";
  }
  return out.str();
}

WirtingerPresentation wirtinger(const LinkDiagram& ld) {
  WirtingerPresentation w;
  w.num_generators = ld.num_arcs();
  w.nu = ld.arc_component;
  for (const CrossingInfo& c : ld.crossings) {
    const int j = c.over_arc, k = c.in_arc, l = c.out_arc;
    if (c.sign > 0) w.relators.push_back({{j, 1}, {k, 1}, {j, -1}, {l, -1}});
    else w.relators.push_back({{j, -1}, {k, 1}, {j, 1}, {l, -1}});
  }
  return w;
}

LaurentPoly fox_derivative(const FreeWord& word, int gen, const std::vector<int>& nu) {
  LaurentPoly result;
  Monomial prefix;
  for (const auto& [g, e] : word) {
    if (e == 1) {
      if (g == gen) result += LaurentPoly(prefix);
      prefix = prefix * t_of(nu, g);
    } else {
      prefix = prefix * t_of(nu, g, -1);
      if (g == gen) result -= LaurentPoly(prefix);
    }
  }
  return result;
}

std::vector<std::pair<int, LaurentPoly>> fox_row(const LinkDiagram& ld, int crossing) {
  const CrossingInfo& c = ld.crossings[static_cast<std::size_t>(crossing)];
  const std::vector<int>& nu = ld.arc_component;
  const Monomial tj = t_of(nu, c.over_arc), tk = t_of(nu, c.in_arc);
  std::vector<std::pair<int, LaurentPoly>> terms;
  if (c.sign > 0) {
    terms = {{c.over_arc, one_minus(tk)}, {c.in_arc, LaurentPoly(tj)}, {c.out_arc, LaurentPoly(-1L)}};
  } else {
    terms = {{c.over_arc, LaurentPoly(tj.inverse()) * (LaurentPoly(tk) - LaurentPoly(1L))},
             {c.in_arc, LaurentPoly(tj.inverse())},
             {c.out_arc, LaurentPoly(-1L)}};
  }
  std::vector<std::pair<int, LaurentPoly>> row;
  for (auto& [col, v] : terms) {
    auto it = std::find_if(row.begin(), row.end(), [&](const auto& p) { return p.first == col; });
    if (it == row.end()) row.emplace_back(col, std::move(v));
    else it->second += v;
  }
  return row;
}

PolyMatrix alexander_matrix(const LinkDiagram& ld) {
  const WirtingerPresentation w = wirtinger(ld);
  const auto n = static_cast<std::size_t>(w.num_generators);
  PolyMatrix m = zeros(w.relators.size(), n);
  for (std::size_t i = 0; i < w.relators.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = fox_derivative(w.relators[i], static_cast<int>(j), w.nu);
  return m;
}

PolyMatrix q_matrix(const LinkDiagram& ld) {
  const std::vector<int>& nu = ld.arc_component;
  PolyMatrix q = zeros(ld.crossings.size(), static_cast<std::size_t>(ld.num_arcs()));
  for (std::size_t i = 0; i < ld.crossings.size(); ++i) {
    const CrossingInfo& c = ld.crossings[i];
    const Monomial a = t_of(nu, c.over_arc, c.sign);
    q[i][static_cast<std::size_t>(c.over_arc)] += one_minus(a);
    q[i][static_cast<std::size_t>(c.in_arc)] += LaurentPoly(a);
    q[i][static_cast<std::size_t>(c.out_arc)] -= LaurentPoly(1L);
  }
  return q;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  PolyMatrix r = zeros(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

PolyMatrix minor_matrix(const PolyMatrix& m, int row, int col) {
  PolyMatrix r;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (static_cast<int>(i) == row) continue;
    std::vector<LaurentPoly> line;
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (static_cast<int>(j) != col) line.push_back(m[i][j]);
    r.push_back(std::move(line));
  }
  return r;
}

LaurentPoly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1L);
  for (const auto& row : m)
    if (row.size() != n) throw InvalidInput("determinant of a non-square matrix");
  bool negate = false;
  LaurentPoly prev(1L);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return LaurentPoly();
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(v, prev);
      }
      m[i][k] = LaurentPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

LaurentPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1L);
  if (n == 1) return m[0][0];
  LaurentPoly r;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    const LaurentPoly term = m[0][j] * cofactor_det(minor_matrix(m, 0, static_cast<int>(j)));
    if (j % 2) r -= term;
    else r += term;
  }
  return r;
}

LaurentPoly alexander_fox(const LinkDiagram& ld, int i0, int j0) {
  if (ld.has_free_component()) return LaurentPoly();
  const LaurentPoly det = bareiss_det(minor_matrix(alexander_matrix(ld), i0, j0));
  if (det.is_zero()) return det;
  if (!is_link(ld)) return canonical_or_zero(det);
  return canonical_or_zero(divide_exact(det, one_minus(t_of(ld.arc_component, j0))));
}

LaurentPoly alexander_q(const LinkDiagram& ld, int i, int j) {
  if (ld.has_free_component()) return LaurentPoly();
  const LaurentPoly det = bareiss_det(minor_matrix(q_matrix(ld), i, j));
  if (det.is_zero()) return det;
  if (!is_link(ld)) return canonical_or_zero(det);
  const int out_arc = ld.crossings[static_cast<std::size_t>(i)].out_arc;
  return canonical_or_zero(divide_exact(det, one_minus(t_of(ld.arc_component, out_arc))));
}

bool check_md_dq(const LinkDiagram& ld) {
  const PolyMatrix m = alexander_matrix(ld), q = q_matrix(ld);
  const std::size_t n = m.size(), arcs = static_cast<std::size_t>(ld.num_arcs());
  PolyMatrix d = zeros(arcs, arcs), dp = zeros(n, n);
  for (std::size_t j = 0; j < arcs; ++j) d[j][j] = one_minus(t_of(ld.arc_component, static_cast<int>(j)));
  for (std::size_t i = 0; i < n; ++i)
    dp[i][i] = one_minus(t_of(ld.arc_component, ld.crossings[i].out_arc));
  return multiply(m, d) == multiply(dp, q);
}

}  // namespace alexpoly
