#pragma once

// Sparse multivariate Laurent polynomials over the integers and their
// fraction field, specialised to the denominators produced by the tangle
// calculus (units times binomials 1 - m).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alexpoly/errors.hpp"

namespace alexpoly {

using Integer = mpz_class;

/// Index of a component variable t_index; indices start at 1.
using VarId = int;

/// A Laurent monomial t_1^{e_1} ... t_m^{e_m}. Trailing zero exponents are
/// never stored, so structural equality is mathematical equality.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  /// t_index^exp
  static Monomial var(VarId index, int exp = 1);

  int exponent(VarId index) const;
  /// Largest variable index with a nonzero exponent (0 for the unit).
  int num_vars() const { return static_cast<int>(exps_.size()); }
  bool is_one() const { return exps_.empty(); }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(int k) const;

  /// Lexicographic on (e_1, e_2, ...), missing entries read as 0.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  void trim();
  std::vector<int> exps_;
};

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
/// Terms are kept in ascending monomial order; zero coefficients are never
/// stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Integer>;

  LaurentPoly() = default;
  LaurentPoly(long constant);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const Integer& constant);
  explicit LaurentPoly(const Monomial& m, const Integer& coeff = 1);

  /// The variable t_index.
  static LaurentPoly var(VarId index, int exp = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// True for +-monomials, the units of the ring.
  bool is_unit() const;
  bool is_constant() const;
  /// Largest variable index occurring in any term.
  int num_vars() const;
  Integer coeff(const Monomial& m) const;

  /// Greatest term in monomial order. Requires !is_zero().
  const TermMap::value_type& leading() const { return *terms_.rbegin(); }

  /// Smallest / largest exponent of a variable over all terms (0 if zero).
  int min_exponent(VarId index) const;
  int max_exponent(VarId index) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Monomial& m);
  LaurentPoly& operator*=(const Integer& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Monomial& m) { return a *= m; }
  friend LaurentPoly operator*(const Monomial& m, LaurentPoly a) { return a *= m; }

  LaurentPoly pow(unsigned k) const;

  bool operator==(const LaurentPoly& other) const = default;

  /// Add c * m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const Integer& c);

 private:
  TermMap terms_;
};

/// [k]_a: 1 + a + ... + a^{k-1} for k > 0, 0 for k = 0,
/// -a^k (1 + a + ... + a^{|k|-1}) for k < 0.
LaurentPoly bracket(int k, const Monomial& a);

/// 1 - m
LaurentPoly one_minus(const Monomial& m);

/// q with q * d == p, or std::nullopt when d does not divide p exactly.
std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& p, const LaurentPoly& d);

/// q with q * d == p. Throws NotDivisible, or DivisionByZero when d == 0.
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d);

/// Unique associate of p: minimum exponent of every variable is 0 and the
/// leading (greatest) term has a positive coefficient. Throws ZeroPolynomial.
LaurentPoly canonicalize(const LaurentPoly& p);
/// canonicalize, except that zero maps to zero.
LaurentPoly canonical_or_zero(const LaurentPoly& p);

/// Equality up to a unit +-t_1^{a_1}...t_m^{a_m}. Zero is only equal to zero.
bool dotequal(const LaurentPoly& p, const LaurentPoly& q);

/// Ring homomorphism t_i -> images[i-1]. Variables beyond images.size() are
/// left alone.
LaurentPoly substitute(const LaurentPoly& p, const std::vector<Monomial>& images);

/// Text form, terms in descending monomial order: `t1^2*t2^-1 - 3*t1 + 7`.
/// With num_vars == 1 the variable is written `t`. num_vars == 0 picks
/// p.num_vars().
std::string to_string(const LaurentPoly& p, int num_vars = 0);

/// Inverse of to_string. Accepts `t` (as t1) and `t<i>`, integer
/// coefficients, `*`, `^` with signed integer exponents.
LaurentPoly parse_poly(std::string_view text);

/// A binomial denominator factor 1 - m, m != 1. Stored normalised so that m
/// is greater than 1 in monomial order; the associated unit is moved into
/// the numerator.
class BinomialFactor {
 public:
  explicit BinomialFactor(Monomial m);
  const Monomial& monomial() const { return m_; }
  LaurentPoly expand() const { return one_minus(m_); }
  auto operator<=>(const BinomialFactor&) const = default;

 private:
  Monomial m_;
};

/// Element of the fraction field of Z[t^{+-1}]:
///   num / (prod (1 - m_i)^{k_i} * prod g_j)
/// Units of the denominator are always absorbed into the numerator. The
/// general factors g_j only arise from inversion of non-binomial values.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  RationalFn(LaurentPoly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  RationalFn(const Monomial& m) : num_(m) {}  // NOLINT(google-explicit-constructor)

  /// num / (1 - m)
  static RationalFn over_binomial(LaurentPoly num, const Monomial& m);
  /// num / den for an arbitrary nonzero den.
  static RationalFn fraction(LaurentPoly num, const LaurentPoly& den);

  const LaurentPoly& num() const { return num_; }
  const std::map<BinomialFactor, int>& den_factors() const { return binomials_; }
  const std::vector<LaurentPoly>& den_general() const { return general_; }
  /// Expanded denominator.
  LaurentPoly den() const;

  bool is_zero() const { return num_.is_zero(); }
  /// True when the denominator has been fully cancelled.
  bool is_polynomial() const { return binomials_.empty() && general_.empty(); }

  /// Exact Laurent polynomial value; throws NotDivisible if there is none.
  LaurentPoly to_poly() const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

  /// Throws DivisionByZero for zero.
  RationalFn inverse() const;

  /// Mathematical equality (cross-multiplication).
  friend bool operator==(const RationalFn& a, const RationalFn& b);

  std::string to_string(int num_vars = 0) const;

 private:
  void reduce();

  LaurentPoly num_;
  std::map<BinomialFactor, int> binomials_;
  std::vector<LaurentPoly> general_;
};

}  // namespace alexpoly
