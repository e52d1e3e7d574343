#pragma once

// Arborescent tangle expressions: AST, text grammar, continued fractions.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "alexpoly/errors.hpp"

namespace alexpoly {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

namespace node {
struct Leaf { int sign; };                  // [1] or [-1]
struct HTwist { int k; };                   // [k], |k| copies of [+-1] joined by +
struct VTwist { int k; };                   // [1/k], |k| copies of [+-1] joined by *
struct Rational { std::vector<int> cf; };   // [[k1],...,[ks]]
struct Sigma { ExprPtr child; };
struct VComp { ExprPtr left, right; };      // left * right, left on top
struct HComp { ExprPtr left, right; };      // left + right, left on the left
}  // namespace node

struct Expr {
  std::variant<node::Leaf, node::HTwist, node::VTwist, node::Rational, node::Sigma, node::VComp,
               node::HComp>
      v;
};

ExprPtr leaf(int sign);
ExprPtr htwist(int k);
ExprPtr vtwist(int k);
ExprPtr rational(std::vector<int> cf);
ExprPtr sigma(ExprPtr child);
ExprPtr vcomp(ExprPtr left, ExprPtr right);
ExprPtr hcomp(ExprPtr left, ExprPtr right);

/// Left-associated a1 * a2 * ... * an.
ExprPtr vcomp_all(const std::vector<ExprPtr>& parts);

bool operator==(const Expr& a, const Expr& b);

enum class Closure { N, D };

enum class MontesinosPreset { Odd, Even, TwoComp, NComp };

struct OrientationPolicy {
  enum class Kind { Auto, Bits, Preset };
  Kind kind = Kind::Auto;
  /// Kind::Bits: +1 keeps the automatic direction of component i, -1 reverses it.
  std::vector<int> bits;
  MontesinosPreset preset = MontesinosPreset::Odd;

  static OrientationPolicy automatic() { return {}; }
  static OrientationPolicy from_bits(std::vector<int> b) { return {Kind::Bits, std::move(b), {}}; }
  static OrientationPolicy montesinos(MontesinosPreset p) { return {Kind::Preset, {}, p}; }
};

struct LinkSpec {
  ExprPtr expr;
  Closure closure = Closure::D;
  OrientationPolicy orientation;
};

/// Parses `D(...)` or `N(...)`. Throws ParseError or InvalidInput.
LinkSpec parse_link(std::string_view text);
/// Parses a bare tangle expression.
ExprPtr parse_tangle(std::string_view text);

std::string to_string(const ExprPtr& e);
std::string to_string(const LinkSpec& spec);

/// Total number of crossings after expansion.
int crossing_count(const ExprPtr& e);

/// [k1,...,ks], all nonzero, with ks + 1/(k_{s-1} + 1/(... + 1/k1)) = p/q.
/// Throws InvalidInput for q == 0, p == 0 or gcd(p, q) != 1.
std::vector<int> continued_fraction(long p, long q);

/// Exact value of the expansion as a reduced fraction {p, q}, q > 0.
std::pair<long, long> evaluate_continued_fraction(const std::vector<int>& cf);

/// Expansion of a rational tangle into twists:
///   H1 = [k1],  Hi = sigma(H_{i-1}) + [ki].
/// Throws InvalidInput for an empty list or a zero entry.
ExprPtr rational_to_expr(const std::vector<int>& cf);

/// sigma(e), cancelling a directly nested sigma.
ExprPtr reflect_sigma(const ExprPtr& e);

/// Pushes every sigma down to the leaves: sigma(a*b) = sigma(a)+sigma(b),
/// sigma(a+b) = sigma(a)*sigma(b), sigma([k]) = [1/k], sigma([+-1]) = [+-1].
/// Sigma over a Rational node is kept.
ExprPtr push_sigma(const ExprPtr& e);

}  // namespace alexpoly
