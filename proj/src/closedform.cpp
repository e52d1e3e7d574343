#include "alexpoly/closedform.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "alexpoly/engine.hpp"
#include "alexpoly/errors.hpp"

namespace alexpoly {

namespace {

Monomial t(VarId i, int e = 1) { return Monomial::var(i, e); }
LaurentPoly T(VarId i, int e = 1) { return LaurentPoly(t(i, e)); }

// 1 / (1 - m)
RationalFn inv_one_minus(const Monomial& m) { return RationalFn::over_binomial(LaurentPoly(1L), m); }

bool odd(long x) { return x % 2 != 0; }

void require_r(std::size_t r) {
  if (r < 3) throw InvalidInput("Montesinos and pretzel formulas need at least three tangles");
}

// Rotates v left so that the element at `last` ends up at the back.
template <class V>
V rotate_to_back(V v, std::size_t last) {
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(last + 1), v.end());
  return v;
}

std::vector<std::pair<long, long>> normalised(const MontesinosSpec& spec) {
  std::vector<std::pair<long, long>> f = spec.fractions;
  for (auto& [p, q] : f) {
    if (q == 0 || p == 0) throw InvalidInput("fractions must have nonzero p and q");
    if (q < 0) p = -p, q = -q;
  }
  return f;
}

MontesinosSpec rotated(const MontesinosSpec& spec) {
  MontesinosSpec s{normalised(spec)};
  require_r(s.fractions.size());
  std::size_t last_even = s.fractions.size();
  for (std::size_t i = 0; i < s.fractions.size(); ++i)
    if (classify_rational(s.fractions[i].first, s.fractions[i].second) == 3) last_even = i;
  if (last_even < s.fractions.size()) s.fractions = rotate_to_back(s.fractions, last_even);
  return s;
}

std::string fraction_text(long p, long q) {
  return "[" + std::to_string(p) + "/" + std::to_string(q) + "]";
}

struct FactorValues {
  std::vector<std::pair<long, long>> fractions;
  std::vector<ZPair> z;
  MontesinosClass cls;
};

FactorValues factor_values(const MontesinosSpec& spec) {
  const LinkSpec ls = montesinos_link_spec(spec);
  const MontesinosSpec s = rotated(spec);
  const LinkDiagram ld = make_link(ls);
  const auto all = evaluate_tree(ld);
  FactorValues out{s.fractions, {}, montesinos_class(s.fractions)};
  for (int id : factor_nodes(*ld.tangle)) out.z.push_back(*all[static_cast<std::size_t>(id)]);
  if (out.z.size() != s.fractions.size()) throw InvalidInput("expression is not a Montesinos product");
  return out;
}

RationalFn product_zv(const std::vector<ZPair>& z, std::size_t skip) {
  RationalFn r(1L);
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != skip) r = r * z[j].zv;
  return r;
}

// (1 + t_k^e) / (1 + t_k^d) for odd e/d, exactly.
LaurentPoly odd_quotient(VarId k, int e, int d) {
  return divide_exact(LaurentPoly(1L) + T(k, e), LaurentPoly(1L) + T(k, d));
}

std::vector<std::size_t> even_positions(const std::vector<int>& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!odd(p[i])) out.push_back(i);
  return out;
}

std::vector<int> rotated_twists(const PretzelSpec& spec) {
  std::vector<int> p = spec.twists;
  require_r(p.size());
  for (int x : p)
    if (x == 0) throw InvalidInput("pretzel twists must be nonzero");
  const auto evens = even_positions(p);
  if (!evens.empty()) p = rotate_to_back(p, evens.back());
  return p;
}

}  // namespace

LaurentPoly sym_poly(int k, const std::vector<LaurentPoly>& values) {
  if (k < 0 || k > static_cast<int>(values.size())) throw InvalidInput("sym_poly: k out of range");
  // e[j] = sigma_j of the values seen so far.
  std::vector<LaurentPoly> e(static_cast<std::size_t>(k) + 1);
  e[0] = LaurentPoly(1L);
  for (const LaurentPoly& v : values)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * v;
  return e[static_cast<std::size_t>(k)];
}

MontesinosSpec montesinos_spec_of(const ExprPtr& e) {
  auto f = montesinos_factors(e);
  if (!f) throw InvalidInput(to_string(e) + " is not a product of rational tangles");
  require_r(f->size());
  return {std::move(*f)};
}

ExprPtr montesinos_expr(const MontesinosSpec& spec) {
  std::vector<ExprPtr> parts;
  for (const auto& [p, q] : normalised(spec)) parts.push_back(parse_tangle(fraction_text(p, q)));
  return vcomp_all(parts);
}

LinkSpec montesinos_link_spec(const MontesinosSpec& spec) {
  const MontesinosSpec s = rotated(spec);
  MontesinosPreset preset = MontesinosPreset::Odd;
  switch (montesinos_class(s.fractions).kind) {
    case MontesinosClass::Kind::KnotOdd: preset = MontesinosPreset::Odd; break;
    case MontesinosClass::Kind::KnotEven: preset = MontesinosPreset::Even; break;
    case MontesinosClass::Kind::Link2: preset = MontesinosPreset::TwoComp; break;
    case MontesinosClass::Kind::LinkN: preset = MontesinosPreset::NComp; break;
  }
  return {montesinos_expr(s), Closure::D, OrientationPolicy::montesinos(preset)};
}

LaurentPoly odd_knot_formula(const std::vector<ZPair>& z) {
  const LaurentPoly t1 = T(1);
  RationalFn a(1L), b(1L);
  for (const ZPair& x : z) {
    a = a * (RationalFn(t1 + LaurentPoly(1L)) * x.zh + x.zv);
    b = b * x.zv;
  }
  const RationalFn r = (a - b) * RationalFn::fraction(LaurentPoly(1L), t1 + LaurentPoly(1L));
  return canonical_or_zero(r.to_poly());
}

LaurentPoly montesinos_knot(const MontesinosSpec& spec) {
  const FactorValues fv = factor_values(spec);
  const std::vector<ZPair>& z = fv.z;
  if (fv.cls.kind == MontesinosClass::Kind::KnotOdd) return odd_knot_formula(z);
  if (fv.cls.kind != MontesinosClass::Kind::KnotEven)
    throw InvalidInput("montesinos_knot called on a " + to_string(fv.cls) + " link");
  RationalFn sum;
  long qsum = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int eps = odd(qsum) ? -1 : 1;
    sum = sum + z[i].zh * product_zv(z, i) * inv_one_minus(t(1, eps));
    qsum += fv.fractions[i].second;
  }
  return canonical_or_zero((RationalFn(one_minus(t(1))) * sum).to_poly());
}

LaurentPoly montesinos_link(const MontesinosSpec& spec) {
  const FactorValues fv = factor_values(spec);
  const std::vector<ZPair>& z = fv.z;
  if (fv.cls.kind == MontesinosClass::Kind::Link2) {
    const Monomial t12 = t(1) * t(2);
    // (t1 t2 - 1) / (tau - 1) = (1 - t1 t2) / (1 - tau)
    RationalFn a(1L), b(1L);
    long qsum = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Monomial tau = odd(qsum) ? t(2) : t(1);
      a = a * (RationalFn::over_binomial(one_minus(t12), tau) * z[i].zh + z[i].zv);
      b = b * z[i].zv;
      qsum += fv.fractions[i].second;
    }
    const RationalFn r = (a - b) * RationalFn::over_binomial(LaurentPoly(-1L), t12);
    return canonical_or_zero(r.to_poly());
  }
  if (fv.cls.kind != MontesinosClass::Kind::LinkN)
    throw InvalidInput("montesinos_link called on a " + to_string(fv.cls) + " link");
  RationalFn sum;
  VarId k = 1;
  long qsum = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int eps = odd(qsum) ? -1 : 1;
    sum = sum + z[i].zh * product_zv(z, i) * inv_one_minus(t(k, eps));
    qsum += fv.fractions[i].second;
    if (classify_rational(fv.fractions[i].first, fv.fractions[i].second) == 3) {
      ++k;
      qsum = 0;
    }
  }
  return canonical_or_zero(sum.to_poly());
}

LaurentPoly montesinos(const MontesinosSpec& spec) {
  const MontesinosClass c = montesinos_class(normalised(spec));
  if (c.components == 1) return montesinos_knot(spec);
  return montesinos_link(spec);
}

MontesinosSpec as_montesinos(const PretzelSpec& spec) {
  MontesinosSpec m;
  for (int p : spec.twists) m.fractions.emplace_back(p, 1);
  return m;
}

LaurentPoly pretzel_knot(const PretzelSpec& spec) {
  const std::vector<int> p = rotated_twists(spec);
  const std::size_t r = p.size();
  const auto evens = even_positions(p);
  const LaurentPoly t1 = T(1), one(1L);
  if (evens.empty()) {
    if (r % 2 == 0) throw InvalidInput("pretzel with all twists odd and r even is a link");
    std::vector<LaurentPoly> values(p.begin(), p.end());
    LaurentPoly sum;
    for (std::size_t k = 0; 2 * k <= r - 1; ++k)
      sum += sym_poly(static_cast<int>(2 * k), values) * (t1 + one).pow(static_cast<unsigned>(r - 1 - 2 * k)) *
             (t1 - one).pow(static_cast<unsigned>(2 * k));
    const Integer scale = Integer(1) << static_cast<mp_bitcnt_t>(r - 1);
    return canonical_or_zero(divide_exact(sum, LaurentPoly(scale)));
  }
  if (evens.size() > 1) throw InvalidInput("pretzel with two or more even twists is a link");

  // prod F_i with F_i = (1 + t^{p_i}) / (1 + t), and sum_i t^{p_i} prod_{j != i} F_j.
  const int h = p.back() / 2;
  std::vector<LaurentPoly> F;
  for (std::size_t i = 0; i + 1 < r; ++i) F.push_back(odd_quotient(1, p[i], 1));
  LaurentPoly prod(1L), cross;
  for (const LaurentPoly& f : F) prod *= f;
  for (std::size_t i = 0; i < F.size(); ++i) {
    LaurentPoly term = T(1, p[i]);
    for (std::size_t j = 0; j < F.size(); ++j)
      if (j != i) term *= F[j];
    cross += term;
  }
  const LaurentPoly th = T(1, h), tmh = T(1, -h);
  if (r % 2 == 0) {
    // prod * (t^h + (t^h - t^-h) (sum t^p/(1+t^p) - r/2))
    const LaurentPoly x = divide_exact(th - tmh, t1 + one);
    const LaurentPoly half_r(static_cast<long>(r / 2));
    return canonical_or_zero(prod * th + x * cross - (th - tmh) * half_r * prod);
  }
  // prod * (1 + h (t^-1 - t) (sum t^p/(1+t^p) - (r-1)/2))
  const LaurentPoly s = T(1, -1) - t1;
  const LaurentPoly y = divide_exact(s, t1 + one);
  const LaurentPoly hh(static_cast<long>(h)), half(static_cast<long>((r - 1) / 2));
  return canonical_or_zero(prod + hh * y * cross - hh * s * half * prod);
}

LaurentPoly pretzel_link(const PretzelSpec& spec) {
  const std::vector<int> p = rotated_twists(spec);
  const std::size_t r = p.size();
  const auto evens = even_positions(p);
  const LaurentPoly one(1L);
  if (evens.empty()) {
    if (r % 2) throw InvalidInput("pretzel with all twists odd and r odd is a knot");
    const LaurentPoly t1 = T(1), t2 = T(2);
    const Monomial a = t(2) * t(1, -1), b = t(1) * t(2, -1);
    LaurentPoly x(1L), y(1L);
    for (std::size_t k = 0; k < r; k += 2) {
      const int h1 = (p[k] + 1) / 2, h2 = (p[k + 1] + 1) / 2;
      x *= ((t1 - one) * bracket(h1, a) - t1) * ((t2 - one) * bracket(h2, b) - t2);
      y *= ((t2 - one) * bracket(h1, a) + one) * ((t1 - one) * bracket(h2, b) + one);
    }
    return canonical_or_zero(divide_exact(x - y, t1 * t2 - one));
  }
  if (evens.size() < 2) throw InvalidInput("pretzel with exactly one even twist is a knot");

  // The Montesinos link formula with the explicit twist values.
  const std::size_t n = evens.size();
  std::vector<std::size_t> rk{0};
  for (std::size_t e : evens) rk.push_back(e + 1);  // 1-based r_1..r_n
  std::vector<LaurentPoly> zv(r);
  std::vector<int> eps(r);
  std::vector<VarId> nu(r);
  for (std::size_t k = 1; k <= n; ++k) {
    const VarId tk = static_cast<VarId>(k), tnext = static_cast<VarId>(k % n + 1);
    const int kappa = (rk[k] - rk[k - 1]) % 2 ? -1 : 1;
    for (std::size_t i = rk[k - 1] + 1; i <= rk[k]; ++i) {
      const int e = (i - 1 - rk[k - 1]) % 2 ? -1 : 1;
      eps[i - 1] = e;
      nu[i - 1] = tk;
      if (i < rk[k]) {
        zv[i - 1] = -odd_quotient(tk, -p[i - 1] * e, e);
      } else {
        const Monomial base = t(tk, kappa) * t(tnext);
        zv[i - 1] = T(tk, kappa) * (T(tnext) - one) * bracket(p[i - 1] / 2, base);
      }
    }
  }
  RationalFn sum;
  for (std::size_t i = 0; i < r; ++i) {
    LaurentPoly others(1L);
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others *= zv[j];
    sum = sum + RationalFn(others) * inv_one_minus(t(nu[i], eps[i]));
  }
  return canonical_or_zero(sum.to_poly());
}

LaurentPoly pretzel_link_printed(const PretzelSpec& spec) {
  const std::vector<int> p = rotated_twists(spec);
  const auto evens = even_positions(p);
  if (evens.size() < 2) throw InvalidInput("needs at least two even twists");
  const std::size_t n = evens.size();
  const LaurentPoly one(1L);
  std::vector<std::size_t> rk{0};
  for (std::size_t e : evens) rk.push_back(e + 1);
  // Unreduced fractions; one exact division at the end.
  struct Frac {
    LaurentPoly num, den;
    Frac operator+(const Frac& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Frac operator*(const Frac& o) const { return {num * o.num, den * o.den}; }
  };
  Frac prod{one, one}, sum{LaurentPoly(), one};
  for (std::size_t k = 1; k <= n; ++k) {
    const VarId tk = static_cast<VarId>(k), tnext = static_cast<VarId>(k % n + 1);
    const std::size_t len = rk[k] - rk[k - 1];
    const int kappa = len % 2 ? -1 : 1;
    const LaurentPoly g = (T(tnext) - one) * bracket(p[rk[k] - 1] / 2, t(tk, kappa) * t(tnext));
    prod = prod * Frac{g, one};
    Frac inner{one, one_minus(t(tk, kappa)) * g};
    inner = inner + Frac{LaurentPoly(-static_cast<long>(len / 2)), one};
    for (std::size_t i = rk[k - 1] + 1; i <= rk[k]; ++i) {
      const LaurentPoly tp = T(tk, p[i - 1]);
      prod = prod * Frac{tp + one, T(tk) + one};
      inner = inner + Frac{(one + T(tk)) * tp, (one - T(tk)) * (one + tp)};
    }
    sum = sum + inner;
  }
  const Frac r = prod * sum;
  return canonical_or_zero(divide_exact(r.num, r.den));
}

LaurentPoly pretzel(const PretzelSpec& spec) {
  const auto evens = even_positions(spec.twists);
  const bool knot = evens.size() == 1 || (evens.empty() && spec.twists.size() % 2 == 1);
  return knot ? pretzel_knot(spec) : pretzel_link(spec);
}

LaurentPoly kinoshita_terasaka_formula(int n1, int n2) {
  const int n = n1 + n2;
  if (n % 2 == 0) throw InvalidInput("n1 + n2 must be odd");
  const LaurentPoly num = T(1, n) + T(1, -n) + LaurentPoly(2L);
  const LaurentPoly den = T(1) + T(1, -1) + LaurentPoly(2L);
  return canonical_or_zero(divide_exact(num, den));
}

ExprPtr kinoshita_terasaka_expr(int n1, int n2, int h) {
  if (n1 == 0 || n2 == 0 || h == 0) throw InvalidInput("n1, n2 and h must be nonzero");
  return vcomp_all({hcomp(vtwist(n1), vtwist(n2)), htwist(2 * h), hcomp(vtwist(-n1), vtwist(-n2))});
}

LaurentPoly three_component_formula(int k, int h) {
  const LaurentPoly t1 = T(1), t2 = T(2), t3 = T(3), one(1L);
  const LaurentPoly a = bracket(k, t(1) * t(2)), b = bracket(-k, t(1) * t(3));
  const LaurentPoly inner = (one - t2).pow(2) * (t1 - t3) * a + (one - t3).pow(2) * (t1 - t2) * b;
  const LaurentPoly r = LaurentPoly(static_cast<long>(h)) * (t1 * t1 - t1) * a * b * inner + (t1 - t2) * (t1 - t3) * a * b;
  return canonical_or_zero(r);
}

}  // namespace alexpoly
