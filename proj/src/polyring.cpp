#include "alexpoly/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace alexpoly {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) { trim(); }

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

Monomial Monomial::var(VarId index, int exp) {
  if (index < 1) throw InvalidInput("variable index must be positive");
  std::vector<int> e(static_cast<std::size_t>(index), 0);
  e.back() = exp;
  return Monomial(std::move(e));
}

int Monomial::exponent(VarId index) const {
  if (index < 1 || index > num_vars()) return 0;
  return exps_[static_cast<std::size_t>(index - 1)];
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<int> e(std::max(exps_.size(), other.exps_.size()), 0);
  for (std::size_t i = 0; i < exps_.size(); ++i) e[i] += exps_[i];
  for (std::size_t i = 0; i < other.exps_.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::operator/(const Monomial& other) const { return *this * other.inverse(); }

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  std::vector<int> e = exps_;
  for (int& x : e) x *= k;
  return Monomial(std::move(e));
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  const std::size_t n = std::max(exps_.size(), other.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int a = i < exps_.size() ? exps_[i] : 0;
    const int b = i < other.exps_.size() ? other.exps_[i] : 0;
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long constant) : LaurentPoly(Integer(constant)) {}

LaurentPoly::LaurentPoly(const Integer& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

LaurentPoly::LaurentPoly(const Monomial& m, const Integer& coeff) {
  if (coeff != 0) terms_.emplace(m, coeff);
}

LaurentPoly LaurentPoly::var(VarId index, int exp) { return LaurentPoly(Monomial::var(index, exp)); }

bool LaurentPoly::is_unit() const {
  return terms_.size() == 1 && abs(terms_.begin()->second) == 1;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int LaurentPoly::num_vars() const {
  int n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.num_vars());
  return n;
}

Integer LaurentPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

int LaurentPoly::min_exponent(VarId index) const {
  if (terms_.empty()) return 0;
  int r = terms_.begin()->first.exponent(index);
  for (const auto& [m, c] : terms_) r = std::min(r, m.exponent(index));
  return r;
}

int LaurentPoly::max_exponent(VarId index) const {
  if (terms_.empty()) return 0;
  int r = terms_.begin()->first.exponent(index);
  for (const auto& [m, c] : terms_) r = std::max(r, m.exponent(index));
  return r;
}

void LaurentPoly::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) { return *this = *this * other; }

LaurentPoly& LaurentPoly::operator*=(const Monomial& m) {
  if (m.is_one()) return *this;
  TermMap shifted;
  for (auto& [k, c] : terms_) shifted.emplace(k * m, std::move(c));
  terms_ = std::move(shifted);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1L);
  LaurentPoly base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

// --------------------------------------------------------------- helpers

LaurentPoly bracket(int k, const Monomial& a) {
  LaurentPoly r;
  if (k > 0) {
    for (int j = 0; j < k; ++j) r.add_term(a.pow(j), 1);
  } else {
    for (int j = k; j < 0; ++j) r.add_term(a.pow(j), -1);
  }
  return r;
}

LaurentPoly one_minus(const Monomial& m) {
  LaurentPoly r(1L);
  r.add_term(m, -1);
  return r;
}

std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw DivisionByZero();
  if (p.is_zero()) return LaurentPoly();

  // Every quotient exponent of t_i lies in [lo_i, hi_i].
  const int n = std::max(p.num_vars(), d.num_vars());
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    lo[i - 1] = p.min_exponent(i) - d.min_exponent(i);
    hi[i - 1] = p.max_exponent(i) - d.max_exponent(i);
    if (lo[i - 1] > hi[i - 1]) return std::nullopt;
  }

  const auto& [dm, dc] = d.leading();
  LaurentPoly q, r = p;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
    const Monomial qm = rm / dm;
    for (int i = 1; i <= n; ++i) {
      const int e = qm.exponent(i);
      if (e < lo[i - 1] || e > hi[i - 1]) return std::nullopt;
    }
    const LaurentPoly term(qm, Integer(rc / dc));
    q += term;
    r -= term * d;
  }
  return q;
}

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  auto q = try_divide_exact(p, d);
  if (!q) throw NotDivisible("divisor " + to_string(d) + " does not divide " + to_string(p));
  return *std::move(q);
}

LaurentPoly canonicalize(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  const int n = p.num_vars();
  std::vector<int> shift(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) shift[i - 1] = -p.min_exponent(i);
  LaurentPoly r = p * Monomial(std::move(shift));
  if (r.leading().second < 0) r = -r;
  return r;
}

LaurentPoly canonical_or_zero(const LaurentPoly& p) { return p.is_zero() ? p : canonicalize(p); }

bool dotequal(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return canonicalize(p) == canonicalize(q);
}

LaurentPoly substitute(const LaurentPoly& p, const std::vector<Monomial>& images) {
  LaurentPoly r;
  for (const auto& [m, c] : p.terms()) {
    Monomial image;
    for (int i = 1; i <= m.num_vars(); ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      const Monomial base =
          i <= static_cast<int>(images.size()) ? images[i - 1] : Monomial::var(i);
      image = image * base.pow(e);
    }
    r.add_term(image, c);
  }
  return r;
}

// ------------------------------------------------------------ formatting

namespace {

std::string monomial_string(const Monomial& m, bool single) {
  std::string out;
  for (int i = 1; i <= m.num_vars(); ++i) {
    const int e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += single ? std::string("t") : "t" + std::to_string(i);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string to_string(const LaurentPoly& p, int num_vars) {
  if (p.is_zero()) return "0";
  if (num_vars == 0) num_vars = p.num_vars();
  const bool single = num_vars <= 1;

  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Integer mag = abs(c);
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial_string(m, single);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    LaurentPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  int signed_int() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    const std::string d = digits();
    if (d.size() > 9) fail("exponent too large");
    const int v = std::stoi(d);
    return neg ? -v : v;
  }

  LaurentPoly expr() {
    LaurentPoly r;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    LaurentPoly t = term();
    r += neg ? -t : t;
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else break;
    }
    return r;
  }

  LaurentPoly term() {
    LaurentPoly r = factor();
    while (eat('*')) r *= factor();
    return r;
  }

  LaurentPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    LaurentPoly base;
    if (eat('(')) {
      base = expr();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) {
        const int e = signed_int();
        if (e < 0) {
          if (!base.is_unit()) fail("negative power of a non-monomial");
          const auto& [m, c] = *base.terms().begin();
          return LaurentPoly(m.pow(e), c);
        }
        return base.pow(static_cast<unsigned>(e));
      }
      return base;
    }
    if (peek_digit()) return LaurentPoly(Integer(digits()));
    if (s_[pos_] == 't') {
      ++pos_;
      int index = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const std::string d = digits();
        if (d.size() > 6) fail("variable index too large");
        index = std::stoi(d);
        if (index < 1) fail("variable index must be positive");
      }
      int e = 1;
      if (eat('^')) e = signed_int();
      return LaurentPoly(Monomial::var(index, e));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

// ------------------------------------------------------------- RationalFn

BinomialFactor::BinomialFactor(Monomial m) : m_(std::move(m)) {
  if (!(m_ > Monomial())) throw InvalidInput("binomial factor must be normalised");
}

RationalFn RationalFn::over_binomial(LaurentPoly num, const Monomial& m) {
  if (m.is_one()) throw DivisionByZero();
  RationalFn r;
  if (m < Monomial()) {
    // 1 - m = -m (1 - m^-1)
    num *= m.inverse();
    r.num_ = -num;
    r.binomials_[BinomialFactor(m.inverse())] = 1;
  } else {
    r.num_ = std::move(num);
    r.binomials_[BinomialFactor(m)] = 1;
  }
  r.reduce();
  return r;
}

RationalFn RationalFn::fraction(LaurentPoly num, const LaurentPoly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (den.is_unit()) {
    const auto& [m, c] = *den.terms().begin();
    num *= m.inverse();
    if (c < 0) num = -num;
    return RationalFn(std::move(num));
  }
  if (den.size() == 2) {
    const auto& [m1, c1] = *den.terms().begin();
    const auto& [m2, c2] = *den.terms().rbegin();
    if (abs(c1) == 1 && c1 == -c2) {
      // den = c1 m1 (1 - m2/m1)
      num *= m1.inverse();
      if (c1 < 0) num = -num;
      return over_binomial(std::move(num), m2 / m1);
    }
  }
  RationalFn r;
  r.num_ = std::move(num);
  r.general_.push_back(den);
  r.reduce();
  return r;
}

LaurentPoly RationalFn::den() const {
  LaurentPoly d(1L);
  for (const auto& [f, k] : binomials_) d *= f.expand().pow(static_cast<unsigned>(k));
  for (const auto& g : general_) d *= g;
  return d;
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    binomials_.clear();
    general_.clear();
    return;
  }
  for (auto it = binomials_.begin(); it != binomials_.end();) {
    const LaurentPoly f = it->first.expand();
    while (it->second > 0) {
      auto q = try_divide_exact(num_, f);
      if (!q) break;
      num_ = *std::move(q);
      --it->second;
    }
    it = it->second == 0 ? binomials_.erase(it) : std::next(it);
  }
  for (auto it = general_.begin(); it != general_.end();) {
    if (auto q = try_divide_exact(num_, *it)) {
      num_ = *std::move(q);
      it = general_.erase(it);
    } else {
      ++it;
    }
  }
}

LaurentPoly RationalFn::to_poly() const {
  RationalFn r = *this;
  r.reduce();
  if (!r.is_polynomial())
    throw NotDivisible("value is not a Laurent polynomial: " + r.to_string());
  return r.num_;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  RationalFn r;
  LaurentPoly fa(1L), fb(1L);  // cofactors completing each denominator
  r.binomials_ = a.binomials_;
  for (const auto& [f, k] : b.binomials_) r.binomials_[f] = std::max(r.binomials_[f], k);
  auto multiplicity = [](const std::map<BinomialFactor, int>& m, const BinomialFactor& f) {
    auto it = m.find(f);
    return it == m.end() ? 0 : it->second;
  };
  for (const auto& [f, k] : r.binomials_) {
    const int ka = multiplicity(a.binomials_, f), kb = multiplicity(b.binomials_, f);
    if (k > ka) fa *= f.expand().pow(static_cast<unsigned>(k - ka));
    if (k > kb) fb *= f.expand().pow(static_cast<unsigned>(k - kb));
  }

  std::vector<LaurentPoly> only_b = b.general_;
  for (const auto& g : a.general_) {
    r.general_.push_back(g);
    auto it = std::find(only_b.begin(), only_b.end(), g);
    if (it != only_b.end()) only_b.erase(it);
    else fb *= g;
  }
  for (const auto& g : only_b) {
    r.general_.push_back(g);
    fa *= g;
  }

  r.num_ = a.num_ * fa + b.num_ * fb;
  r.reduce();
  return r;
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  RationalFn r;
  r.num_ = a.num_ * b.num_;
  if (r.num_.is_zero()) return r;
  r.binomials_ = a.binomials_;
  for (const auto& [f, k] : b.binomials_) r.binomials_[f] += k;
  r.general_ = a.general_;
  r.general_.insert(r.general_.end(), b.general_.begin(), b.general_.end());
  r.reduce();
  return r;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return fraction(den(), num_);
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  return a.num_ * b.den() == b.num_ * a.den();
}

std::string RationalFn::to_string(int num_vars) const {
  if (is_polynomial()) return alexpoly::to_string(num_, num_vars);
  std::ostringstream out;
  out << "(" << alexpoly::to_string(num_, num_vars) << ") / (";
  bool first = true;
  for (const auto& [f, k] : binomials_) {
    if (!first) out << "*";
    first = false;
    out << "(" << alexpoly::to_string(f.expand(), num_vars) << ")";
    if (k != 1) out << "^" << k;
  }
  for (const auto& g : general_) {
    if (!first) out << "*";
    first = false;
    out << "(" << alexpoly::to_string(g, num_vars) << ")";
  }
  out << ")";
  return out.str();
}

}  // namespace alexpoly
