#include "alexpoly/tangle.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace alexpoly {

namespace {

template <class T>
ExprPtr make(T n) {
  return std::make_shared<const Expr>(Expr{std::move(n)});
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ExprPtr leaf(int sign) {
  if (sign != 1 && sign != -1) throw InvalidInput("leaf sign must be +1 or -1");
  return make(node::Leaf{sign});
}

ExprPtr htwist(int k) {
  if (k == 0) throw InvalidInput("zero twist parameter");
  return make(node::HTwist{k});
}

ExprPtr vtwist(int k) {
  if (k == 0) throw InvalidInput("zero twist parameter");
  return make(node::VTwist{k});
}

ExprPtr rational(std::vector<int> cf) {
  if (cf.empty()) throw InvalidInput("empty continued fraction");
  for (int k : cf)
    if (k == 0) throw InvalidInput("zero twist parameter");
  return make(node::Rational{std::move(cf)});
}

ExprPtr sigma(ExprPtr child) { return make(node::Sigma{std::move(child)}); }
ExprPtr vcomp(ExprPtr left, ExprPtr right) { return make(node::VComp{std::move(left), std::move(right)}); }
ExprPtr hcomp(ExprPtr left, ExprPtr right) { return make(node::HComp{std::move(left), std::move(right)}); }

ExprPtr vcomp_all(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) throw InvalidInput("empty product");
  ExprPtr e = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) e = vcomp(e, parts[i]);
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const node::Leaf& x) { return x.sign == std::get<node::Leaf>(b.v).sign; },
          [&](const node::HTwist& x) { return x.k == std::get<node::HTwist>(b.v).k; },
          [&](const node::VTwist& x) { return x.k == std::get<node::VTwist>(b.v).k; },
          [&](const node::Rational& x) { return x.cf == std::get<node::Rational>(b.v).cf; },
          [&](const node::Sigma& x) { return *x.child == *std::get<node::Sigma>(b.v).child; },
          [&](const node::VComp& x) {
            const auto& y = std::get<node::VComp>(b.v);
            return *x.left == *y.left && *x.right == *y.right;
          },
          [&](const node::HComp& x) {
            const auto& y = std::get<node::HComp>(b.v);
            return *x.left == *y.left && *x.right == *y.right;
          },
      },
      a.v);
}

// ----------------------------------------------------------------- parser

namespace {

class TangleParser {
 public:
  explicit TangleParser(std::string_view s) : s_(s) {}

  LinkSpec link() {
    LinkSpec spec;
    skip();
    if (eat_char('D')) spec.closure = Closure::D;
    else if (eat_char('N')) spec.closure = Closure::N;
    else fail("expected 'D(' or 'N('");
    expect('(');
    spec.expr = tangle();
    expect(')');
    end();
    return spec;
  }

  ExprPtr bare() {
    ExprPtr e = tangle();
    end();
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat_char(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat_char(c)) fail(std::string("expected '") + c + "'");
  }

  void end() {
    if (peek() != '\0') fail("unexpected trailing input");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
      skip();
    }
    const std::size_t digits = pos_;
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > std::numeric_limits<int>::max()) {
        pos_ = start;
        fail("integer out of range");
      }
      ++pos_;
    }
    if (digits == pos_) {
      pos_ = start;
      fail("expected integer");
    }
    return neg ? -v : v;
  }

  int nonzero() {
    const std::size_t at = (skip(), pos_);
    const long v = integer();
    if (v == 0) {
      pos_ = at;
      fail("zero twist parameter");
    }
    return static_cast<int>(v);
  }

  ExprPtr tangle() {
    ExprPtr e = prod();
    while (eat_char('+')) e = hcomp(e, prod());
    return e;
  }

  ExprPtr prod() {
    ExprPtr e = atom();
    while (eat_char('*')) e = vcomp(e, atom());
    return e;
  }

  ExprPtr atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = tangle();
      expect(')');
      return e;
    }
    if (c == 's') {
      if (s_.substr(pos_, 5) != "sigma") fail("expected 'sigma'");
      pos_ += 5;
      expect('(');
      ExprPtr e = tangle();
      expect(')');
      return sigma(e);
    }
    if (c == '[') {
      ++pos_;
      return bracket();
    }
    fail("expected '(', 'sigma' or '['");
  }

  // After the opening '['.
  ExprPtr bracket() {
    if (eat_char('[')) {
      std::vector<int> cf{nonzero()};
      expect(']');
      while (eat_char(',')) {
        expect('[');
        cf.push_back(nonzero());
        expect(']');
      }
      expect(']');
      return rational(std::move(cf));
    }
    skip();
    const std::size_t at = pos_;
    const long p = integer();
    if (!eat_char('/')) {
      if (p == 0) {
        pos_ = at;
        fail("zero twist parameter");
      }
      expect(']');
      return p == 1 || p == -1 ? leaf(static_cast<int>(p)) : htwist(static_cast<int>(p));
    }
    skip();
    const std::size_t qat = pos_;
    const long q = integer();
    expect(']');
    if (q == 0) {
      pos_ = qat;
      fail("zero denominator");
    }
    if (p == 1) return q == 1 || q == -1 ? leaf(static_cast<int>(q)) : vtwist(static_cast<int>(q));
    if (p == 0) {
      pos_ = at;
      fail("zero twist parameter");
    }
    if (std::gcd(p, q) != 1) {
      pos_ = at;
      fail("fraction is not in lowest terms");
    }
    return rational(continued_fraction(p, q));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LinkSpec parse_link(std::string_view text) { return TangleParser(text).link(); }
ExprPtr parse_tangle(std::string_view text) { return TangleParser(text).bare(); }

// ---------------------------------------------------------------- printer

namespace {

// Precedence levels: 0 = sum, 1 = product, 2 = atom.
std::string print(const ExprPtr& e, int level) {
  return std::visit(
      overloaded{
          [](const node::Leaf& x) { return "[" + std::to_string(x.sign) + "]"; },
          [](const node::HTwist& x) { return "[" + std::to_string(x.k) + "]"; },
          [](const node::VTwist& x) { return "[1/" + std::to_string(x.k) + "]"; },
          [](const node::Rational& x) {
            std::string out = "[";
            for (std::size_t i = 0; i < x.cf.size(); ++i) {
              if (i) out += ",";
              out += "[" + std::to_string(x.cf[i]) + "]";
            }
            return out + "]";
          },
          [](const node::Sigma& x) { return "sigma(" + print(x.child, 0) + ")"; },
          [&](const node::VComp& x) {
            std::string out = print(x.left, 1) + "*" + print(x.right, 2);
            return level > 1 ? "(" + out + ")" : out;
          },
          [&](const node::HComp& x) {
            std::string out = print(x.left, 0) + "+" + print(x.right, 1);
            return level > 0 ? "(" + out + ")" : out;
          },
      },
      e->v);
}

}  // namespace

std::string to_string(const ExprPtr& e) { return print(e, 0); }

std::string to_string(const LinkSpec& spec) {
  return std::string(spec.closure == Closure::D ? "D(" : "N(") + to_string(spec.expr) + ")";
}

int crossing_count(const ExprPtr& e) {
  return std::visit(overloaded{
                        [](const node::Leaf&) { return 1; },
                        [](const node::HTwist& x) { return std::abs(x.k); },
                        [](const node::VTwist& x) { return std::abs(x.k); },
                        [](const node::Rational& x) {
                          int n = 0;
                          for (int k : x.cf) n += std::abs(k);
                          return n;
                        },
                        [](const node::Sigma& x) { return crossing_count(x.child); },
                        [](const node::VComp& x) { return crossing_count(x.left) + crossing_count(x.right); },
                        [](const node::HComp& x) { return crossing_count(x.left) + crossing_count(x.right); },
                    },
                    e->v);
}

// ------------------------------------------------------ continued fractions

std::vector<int> continued_fraction(long p, long q) {
  if (q == 0) throw InvalidInput("zero denominator");
  if (p == 0) throw InvalidInput("0/q is not a rational tangle with crossings");
  if (std::gcd(p, q) != 1) throw InvalidInput("fraction is not in lowest terms");

  std::vector<int> quotients;  // k_s first
  while (q != 0) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    long k = p / q;
    if (k == 0) k = p > 0 ? 1 : -1;
    if (k > std::numeric_limits<int>::max() || k < std::numeric_limits<int>::min())
      throw InvalidInput("twist parameter out of range");
    quotients.push_back(static_cast<int>(k));
    const long r = p - k * q;
    p = q;
    q = r;
  }
  return {quotients.rbegin(), quotients.rend()};
}

std::pair<long, long> evaluate_continued_fraction(const std::vector<int>& cf) {
  if (cf.empty()) throw InvalidInput("empty continued fraction");
  long num = cf[0], den = 1;
  for (std::size_t i = 1; i < cf.size(); ++i) {
    // k + 1/(num/den) = (k num + den) / num
    const long n = static_cast<long>(cf[i]) * num + den;
    den = num;
    num = n;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

ExprPtr rational_to_expr(const std::vector<int>& cf) {
  if (cf.empty()) throw InvalidInput("empty continued fraction");
  auto twist = [](int k) { return k == 1 || k == -1 ? leaf(k) : htwist(k); };
  ExprPtr e = twist(cf[0]);
  for (std::size_t i = 1; i < cf.size(); ++i) e = hcomp(sigma(e), twist(cf[i]));
  return e;
}

ExprPtr reflect_sigma(const ExprPtr& e) {
  if (const auto* s = std::get_if<node::Sigma>(&e->v)) return s->child;
  return sigma(e);
}

ExprPtr push_sigma(const ExprPtr& e) {
  return std::visit(
      overloaded{
          [&](const node::Leaf&) { return e; },
          [&](const node::HTwist&) { return e; },
          [&](const node::VTwist&) { return e; },
          [&](const node::Rational&) { return e; },
          [](const node::VComp& x) { return vcomp(push_sigma(x.left), push_sigma(x.right)); },
          [](const node::HComp& x) { return hcomp(push_sigma(x.left), push_sigma(x.right)); },
          [](const node::Sigma& x) -> ExprPtr {
            const ExprPtr c = x.child;
            return std::visit(
                overloaded{
                    [&](const node::Leaf&) { return c; },
                    [](const node::HTwist& y) {
                      return std::abs(y.k) == 1 ? leaf(y.k) : vtwist(y.k);
                    },
                    [](const node::VTwist& y) {
                      return std::abs(y.k) == 1 ? leaf(y.k) : htwist(y.k);
                    },
                    [&](const node::Rational&) { return sigma(c); },
                    [](const node::Sigma& y) { return push_sigma(y.child); },
                    [](const node::VComp& y) {
                      return hcomp(push_sigma(sigma(y.left)), push_sigma(sigma(y.right)));
                    },
                    [](const node::HComp& y) {
                      return vcomp(push_sigma(sigma(y.left)), push_sigma(sigma(y.right)));
                    },
                },
                c->v);
          },
      },
      e->v);
}

}  // namespace alexpoly
