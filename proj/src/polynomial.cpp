#include "jetzcr/polynomial.hpp"

#include "jetzcr/errors.hpp"

#include <algorithm>
#include <utility>

namespace jetzcr {

std::string to_string(const Rational &q) { return q.get_str(); }

VarCode JetCoordinate::code() const
{
  if (dep < 1 || dep > kMaxDependents || a < 0 || b < 0 || a > kMaxOrder ||
      b > kMaxOrder)
    throw Error(ErrorKind::InvalidInput,
                "jet coordinate out of representable range: " + to_string());
  return 2u + (static_cast<VarCode>(dep - 1) << 20) +
         (static_cast<VarCode>(a) << 10) + static_cast<VarCode>(b);
}

JetCoordinate JetCoordinate::from_code(VarCode code)
{
  VarCode c = code - 2u;
  return {static_cast<int>(c >> 20) + 1, static_cast<int>((c >> 10) & 1023u),
          static_cast<int>(c & 1023u)};
}

std::string JetCoordinate::to_string() const
{
  std::string s = "u" + std::to_string(dep);
  if (a != 0 || b != 0)
    s += "[" + std::to_string(a) + "," + std::to_string(b) + "]";
  return s;
}

std::string var_name(VarCode v)
{
  if (v == kVarX)
    return "x";
  if (v == kVarY)
    return "y";
  return JetCoordinate::from_code(v).to_string();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(VarCode v, std::uint32_t exp)
{
  Monomial m;
  if (exp > 0) {
    m.factors_.push_back({v, exp});
    m.degree_ = exp;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarCode v) const
{
  for (const auto &f : factors_) {
    if (f.var == v)
      return f.exp;
    if (f.var > v)
      break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial &other) const
{
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin(), ie = factors_.end();
  auto j = other.factors_.begin(), je = other.factors_.end();
  while (i != ie && j != je) {
    if (i->var < j->var)
      r.factors_.push_back(*i++);
    else if (j->var < i->var)
      r.factors_.push_back(*j++);
    else {
      r.factors_.push_back({i->var, i->exp + j->exp});
      ++i;
      ++j;
    }
  }
  r.factors_.insert(r.factors_.end(), i, ie);
  r.factors_.insert(r.factors_.end(), j, je);
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::without(VarCode v, std::uint32_t count) const
{
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->var == v) {
      it->exp -= count;
      if (it->exp == 0)
        r.factors_.erase(it);
      r.degree_ -= count;
      return r;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial &other) const
{
  if (degree_ > other.degree_)
    return false;
  auto j = other.factors_.begin();
  for (const auto &f : factors_) {
    while (j != other.factors_.end() && j->var < f.var)
      ++j;
    if (j == other.factors_.end() || j->var != f.var || j->exp < f.exp)
      return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial &other) const
{
  Monomial r;
  auto i = factors_.begin();
  for (const auto &f : other.factors_) {
    if (i != factors_.end() && i->var == f.var) {
      if (f.exp > i->exp)
        r.factors_.push_back({f.var, f.exp - i->exp});
      ++i;
    } else {
      r.factors_.push_back(f);
    }
  }
  r.degree_ = other.degree_ - degree_;
  return r;
}

int compare_grlex(const Monomial &lhs, const Monomial &rhs)
{
  if (lhs.degree() != rhs.degree())
    return lhs.degree() < rhs.degree() ? -1 : 1;
  const auto &a = lhs.factors();
  const auto &b = rhs.factors();
  auto i = a.size(), j = b.size();
  while (i > 0 && j > 0) {
    const auto &fa = a[i - 1];
    const auto &fb = b[j - 1];
    if (fa.var != fb.var)
      return fa.var > fb.var ? 1 : -1;
    if (fa.exp != fb.exp)
      return fa.exp > fb.exp ? 1 : -1;
    --i;
    --j;
  }
  return static_cast<int>(i > 0) - static_cast<int>(j > 0);
}

// ---------------------------------------------------------------------------
// Term list helpers

namespace {

bool term_greater(const Term &a, const Term &b)
{
  return compare_grlex(a.mono, b.mono) > 0;
}

std::vector<Term> merge_terms(const std::vector<Term> &a,
                              const std::vector<Term> &b, bool subtract)
{
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_grlex(a[i].mono, b[j].mono);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
      if (subtract)
        r.back().coeff = -r.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0)
        r.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i)
    r.push_back(a[i]);
  for (; j < b.size(); ++j) {
    r.push_back(b[j]);
    if (subtract)
      r.back().coeff = -r.back().coeff;
  }
  return r;
}

std::vector<Term> merge_terms_move(std::vector<Term> &&a, std::vector<Term> &&b)
{
  if (a.empty())
    return std::move(b);
  if (b.empty())
    return std::move(a);
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_grlex(a[i].mono, b[j].mono);
    if (c > 0) {
      r.push_back(std::move(a[i++]));
    } else if (c < 0) {
      r.push_back(std::move(b[j++]));
    } else {
      a[i].coeff += b[j].coeff;
      if (sgn(a[i].coeff) != 0)
        r.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i)
    r.push_back(std::move(a[i]));
  for (; j < b.size(); ++j)
    r.push_back(std::move(b[j]));
  return r;
}

std::vector<Term> times_term(const std::vector<Term> &p, const Term &t)
{
  std::vector<Term> r;
  r.reserve(p.size());
  for (const auto &s : p)
    r.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return r;
}

std::vector<Term> multiply_range(const std::vector<Term> &p,
                                 const std::vector<Term> &q, std::size_t lo,
                                 std::size_t hi)
{
  if (hi - lo == 1)
    return times_term(p, q[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  return merge_terms_move(multiply_range(p, q, lo, mid),
                          multiply_range(p, q, mid, hi));
}

} // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational &c)
{
  if (sgn(c) != 0)
    terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(VarCode v)
{
  Polynomial p;
  p.terms_.push_back({Monomial::variable(v), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(const Monomial &m, const Rational &c)
{
  Polynomial p;
  if (sgn(c) != 0)
    p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto &t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0)
        p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0)
    p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const
{
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Polynomial::is_one() const
{
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_value() const
{
  if (terms_.empty())
    return Rational(0);
  const auto &last = terms_.back();
  return last.mono.is_one() ? last.coeff : Rational(0);
}

std::uint32_t Polynomial::total_degree() const
{
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::set<VarCode> Polynomial::variables() const
{
  std::set<VarCode> vars;
  for (const auto &t : terms_)
    for (const auto &f : t.mono.factors())
      vars.insert(f.var);
  return vars;
}

bool Polynomial::contains(VarCode v) const
{
  for (const auto &t : terms_)
    if (t.mono.exponent(v) > 0)
      return true;
  return false;
}

std::uint32_t Polynomial::degree_in(VarCode v) const
{
  std::uint32_t d = 0;
  for (const auto &t : terms_)
    d = std::max(d, t.mono.exponent(v));
  return d;
}

VarCode Polynomial::greatest_variable() const
{
  VarCode g = 0;
  bool found = false;
  for (const auto &t : terms_) {
    if (!t.mono.is_one()) {
      VarCode v = t.mono.factors().back().var;
      if (!found || v > g)
        g = v;
      found = true;
    }
  }
  return g;
}

Polynomial Polynomial::operator-() const
{
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial &o) const
{
  if (o.is_zero())
    return *this;
  if (is_zero())
    return o;
  Polynomial r;
  r.terms_ = merge_terms(terms_, o.terms_, false);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial &o) const
{
  if (o.is_zero())
    return *this;
  Polynomial r;
  r.terms_ = merge_terms(terms_, o.terms_, true);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial &o) const
{
  if (is_zero() || o.is_zero())
    return {};
  Polynomial r;
  // split along the shorter factor
  if (o.terms_.size() <= terms_.size())
    r.terms_ = multiply_range(terms_, o.terms_, 0, o.terms_.size());
  else
    r.terms_ = multiply_range(o.terms_, terms_, 0, terms_.size());
  return r;
}

Polynomial Polynomial::scaled(const Rational &c) const
{
  if (sgn(c) == 0)
    return {};
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.coeff *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial &m, const Rational &c) const
{
  if (sgn(c) == 0)
    return {};
  Polynomial r;
  r.terms_ = times_term(terms_, Term{m, c});
  return r;
}

Polynomial Polynomial::pow(unsigned n) const
{
  Polynomial result(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u)
      result = result * base;
    n >>= 1;
    if (n > 0)
      base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial &o) const
{
  if (terms_.size() != o.terms_.size())
    return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

Polynomial Polynomial::partial(VarCode v) const
{
  // Dividing every v-containing monomial by v preserves the term order.
  Polynomial r;
  for (const auto &t : terms_) {
    std::uint32_t e = t.mono.exponent(v);
    if (e > 0)
      r.terms_.push_back({t.mono.without(v), t.coeff * e});
  }
  return r;
}

Polynomial Polynomial::total_derivative(Direction d) const
{
  std::vector<Term> out;
  const VarCode own = d == Direction::X ? kVarX : kVarY;
  for (const auto &t : terms_) {
    for (const auto &f : t.mono.factors()) {
      Rational c = t.coeff * f.exp;
      if (f.var == own) {
        out.push_back({t.mono.without(f.var), std::move(c)});
      } else if (JetCoordinate::is_jet(f.var)) {
        VarCode next = JetCoordinate::from_code(f.var).derivative(d).code();
        out.push_back(
            {t.mono.without(f.var) * Monomial::variable(next), std::move(c)});
      }
    }
  }
  return from_terms(std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients_in(VarCode v) const
{
  std::vector<Polynomial> coeffs(degree_in(v) + 1);
  for (const auto &t : terms_) {
    std::uint32_t e = t.mono.exponent(v);
    coeffs[e].terms_.push_back({e > 0 ? t.mono.without(v, e) : t.mono, t.coeff});
  }
  return coeffs;
}

Polynomial Polynomial::substitute(VarCode v, const Polynomial &value) const
{
  if (!contains(v))
    return *this;
  auto coeffs = coefficients_in(v);
  Polynomial r = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;)
    r = r * value + coeffs[i];
  return r;
}

Polynomial Polynomial::substitute(const std::map<VarCode, Polynomial> &values) const
{
  if (values.empty())
    return *this;
  std::map<std::pair<VarCode, std::uint32_t>, Polynomial> powers;
  auto power_of = [&](VarCode v, std::uint32_t e) -> const Polynomial & {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end())
      return it->second;
    const Polynomial &base = values.at(v);
    Polynomial p = e == 1 ? base : base.pow(e);
    return powers.emplace(key, std::move(p)).first->second;
  };

  std::vector<Term> out;
  for (const auto &t : terms_) {
    Monomial kept;
    Polynomial product(t.coeff);
    bool touched = false;
    for (const auto &f : t.mono.factors()) {
      if (values.count(f.var)) {
        product = product * power_of(f.var, f.exp);
        touched = true;
        if (product.is_zero())
          break;
      } else {
        kept = kept * Monomial::variable(f.var, f.exp);
      }
    }
    if (!touched) {
      out.push_back(t);
      continue;
    }
    for (auto &s : product.terms_)
      out.push_back({s.mono * kept, std::move(s.coeff)});
  }
  return from_terms(std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial &divisor) const
{
  if (divisor.is_zero())
    throw Error(ErrorKind::ZeroDenominator, "polynomial division by zero");
  if (is_zero())
    return Polynomial();
  if (divisor.is_constant())
    return scaled(1 / divisor.constant_value());
  const Term &lead = divisor.leading_term();
  std::vector<Term> quotient;
  Polynomial rem = *this;
  while (!rem.is_zero()) {
    const Term &rt = rem.leading_term();
    if (!lead.mono.divides(rt.mono))
      return std::nullopt;
    Term q{lead.mono.quotient_of(rt.mono), rt.coeff / lead.coeff};
    rem = rem - divisor.times_monomial(q.mono, q.coeff);
    quotient.push_back(std::move(q));
  }
  Polynomial r;
  r.terms_ = std::move(quotient); // produced in decreasing order
  return r;
}

Rational Polynomial::content() const
{
  if (terms_.empty())
    return Rational(1);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto &t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  if (sgn(terms_.front().coeff) < 0)
    c = -c;
  return c;
}

Rational Polynomial::evaluate(const std::map<VarCode, Rational> &point) const
{
  Rational sum = 0;
  for (const auto &t : terms_) {
    Rational v = t.coeff;
    for (const auto &f : t.mono.factors()) {
      auto it = point.find(f.var);
      if (it == point.end())
        throw Error(ErrorKind::InvalidInput,
                    "no value supplied for " + var_name(f.var));
      for (std::uint32_t k = 0; k < f.exp; ++k)
        v *= it->second;
    }
    sum += v;
  }
  return sum;
}

std::string to_string(const Polynomial &p)
{
  if (p.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &t : p.terms()) {
    bool negative = sgn(t.coeff) < 0;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    Rational mag = abs(t.coeff);
    bool unit = mag == 1;
    if (t.mono.is_one()) {
      s += to_string(mag);
      continue;
    }
    if (!unit)
      s += to_string(mag) + "*";
    bool first_factor = true;
    for (const auto &f : t.mono.factors()) {
      if (!first_factor)
        s += "*";
      first_factor = false;
      s += var_name(f.var);
      if (f.exp > 1)
        s += "^" + std::to_string(f.exp);
    }
  }
  return s;
}

} // namespace jetzcr
