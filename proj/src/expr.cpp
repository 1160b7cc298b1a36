#include "jetzcr/expr.hpp"

#include "jetzcr/errors.hpp"

#include <algorithm>
#include <set>

namespace jetzcr {

DiffFunction::DiffFunction(const Polynomial &num, const Polynomial &den)
{
  if (den.is_zero())
    throw Error(ErrorKind::ZeroDenominator, "zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den.is_constant()) {
    num_ = num.scaled(1 / den.constant_value());
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(num, den);
  Polynomial n = num, d = den;
  if (!g.is_one()) {
    n = *num.divide_exact(g);
    d = *den.divide_exact(g);
  }
  Rational lc = d.leading_term().coeff;
  num_ = n.scaled(1 / lc);
  den_ = d.scaled(1 / lc);
}

DiffFunction DiffFunction::from_coprime(Polynomial num, Polynomial den)
{
  if (num.is_zero())
    return {};
  if (den.is_constant())
    return DiffFunction(num.scaled(1 / den.constant_value()));
  Rational lc = den.leading_term().coeff;
  return {Raw{}, num.scaled(1 / lc), den.scaled(1 / lc)};
}

std::vector<JetCoordinate> DiffFunction::jet_coordinates() const
{
  std::set<VarCode> vars = num_.variables();
  auto dv = den_.variables();
  vars.insert(dv.begin(), dv.end());
  std::vector<JetCoordinate> out;
  for (VarCode v : vars)
    if (JetCoordinate::is_jet(v))
      out.push_back(JetCoordinate::from_code(v));
  return out;
}

DiffFunction DiffFunction::operator-() const { return {Raw{}, -num_, den_}; }

DiffFunction DiffFunction::operator+(const DiffFunction &o) const
{
  if (o.is_zero())
    return *this;
  if (is_zero())
    return o;
  if (is_polynomial() && o.is_polynomial())
    return DiffFunction(num_ + o.num_);
  if (den_ == o.den_)
    return {num_ + o.num_, den_};
  // a/b + c/d = (a d' + c b') / (b d' g) with g = gcd(b, d), b = g b', d = g d';
  // only factors of g can cancel afterwards
  Polynomial g = gcd(den_, o.den_);
  Polynomial b1 = g.is_one() ? den_ : *den_.divide_exact(g);
  Polynomial d1 = g.is_one() ? o.den_ : *o.den_.divide_exact(g);
  Polynomial n = num_ * d1 + o.num_ * b1;
  if (n.is_zero())
    return {};
  Polynomial d = den_ * d1;
  if (!g.is_one()) {
    Polynomial c = gcd(n, g);
    if (!c.is_one()) {
      n = *n.divide_exact(c);
      d = *d.divide_exact(c);
    }
  }
  Rational lc = d.leading_term().coeff;
  return {Raw{}, n.scaled(1 / lc), d.scaled(1 / lc)};
}

DiffFunction DiffFunction::operator-(const DiffFunction &o) const
{
  return *this + (-o);
}

DiffFunction DiffFunction::operator*(const DiffFunction &o) const
{
  if (is_zero() || o.is_zero())
    return {};
  if (is_polynomial() && o.is_polynomial())
    return DiffFunction(num_ * o.num_);
  // both inputs are reduced, so only cross gcds can cancel
  Polynomial n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
  if (!d2.is_one()) {
    Polynomial g = gcd(n1, d2);
    if (!g.is_one()) {
      n1 = *n1.divide_exact(g);
      d2 = *d2.divide_exact(g);
    }
  }
  if (!d1.is_one()) {
    Polynomial g = gcd(n2, d1);
    if (!g.is_one()) {
      n2 = *n2.divide_exact(g);
      d1 = *d1.divide_exact(g);
    }
  }
  Polynomial d = d1 * d2;
  Rational lc = d.leading_term().coeff;
  return {Raw{}, (n1 * n2).scaled(1 / lc), d.scaled(1 / lc)};
}

DiffFunction DiffFunction::operator/(const DiffFunction &o) const
{
  if (o.is_zero())
    throw Error(ErrorKind::ZeroDenominator, "division by zero");
  return *this * from_coprime(o.den_, o.num_);
}

DiffFunction DiffFunction::pow(unsigned n) const
{
  if (is_polynomial())
    return DiffFunction(num_.pow(n));
  return {Raw{}, num_.pow(n), den_.pow(n)};
}

Rational DiffFunction::evaluate(const std::map<VarCode, Rational> &point) const
{
  Rational d = den_.evaluate(point);
  if (sgn(d) == 0)
    throw Error(ErrorKind::ZeroDenominator, "denominator vanishes at point");
  return num_.evaluate(point) / d;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Op>
DiffFunction quotient_rule(const DiffFunction &f, Op derive)
{
  if (f.is_polynomial())
    return DiffFunction(derive(f.numerator()));
  const Polynomial &p = f.numerator();
  const Polynomial &q = f.denominator();
  // (p' q - p q') / q^2 divided through by h = gcd(q, q'); a factor left in
  // common with the denominator must divide h
  Polynomial dq = derive(q);
  if (dq.is_zero())
    return DiffFunction(derive(p), q);
  Polynomial h = gcd(q, dq);
  Polynomial qh = h.is_one() ? q : *q.divide_exact(h);
  Polynomial dqh = h.is_one() ? dq : *dq.divide_exact(h);
  Polynomial n = derive(p) * qh - p * dqh;
  if (n.is_zero())
    return {};
  Polynomial d = q * qh;
  if (!h.is_one()) {
    Polynomial g = gcd(n, h);
    if (!g.is_one()) {
      n = *n.divide_exact(g);
      d = *d.divide_exact(g);
    }
  }
  return DiffFunction::from_coprime(std::move(n), std::move(d));
}

} // namespace

DiffFunction partial(const DiffFunction &f, VarCode v)
{
  if (!f.depends_on(v))
    return {};
  return quotient_rule(f, [v](const Polynomial &p) { return p.partial(v); });
}

DiffFunction total_derivative(const DiffFunction &f, Direction d)
{
  return quotient_rule(
      f, [d](const Polynomial &p) { return p.total_derivative(d); });
}

DiffFunction total_multi(const DiffFunction &f, int a, int b)
{
  DiffFunction r = f;
  for (int i = 0; i < b; ++i)
    r = total_y(r);
  for (int i = 0; i < a; ++i)
    r = total_x(r);
  return r;
}

DiffFunction euler_component(const DiffFunction &f, int k)
{
  DiffFunction sum;
  for (const auto &c : f.jet_coordinates()) {
    if (c.dep != k)
      continue;
    DiffFunction term = total_multi(partial(f, c), c.a, c.b);
    if (c.order() % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

DiffFunction divergence(const DiffFunction &p1, const DiffFunction &p2)
{
  return total_x(p1) + total_y(p2);
}

std::string to_string(const DiffFunction &f)
{
  if (f.is_polynomial())
    return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) +
         ")";
}

ExprReport report(const DiffFunction &f)
{
  ExprReport r;
  r.pretty = to_string(f);
  r.occurring = f.jet_coordinates();
  r.numerator_degree = f.numerator().total_degree();
  r.denominator_degree = f.denominator().total_degree();
  for (const auto &c : r.occurring)
    r.max_jet_order = std::max(r.max_jet_order, c.order());
  return r;
}

const char *error_kind_name(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::Syntax: return "SyntaxError";
  case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
  case ErrorKind::DependentOutOfRange: return "DependentOutOfRange";
  case ErrorKind::ZeroDenominator: return "ZeroDenominator";
  case ErrorKind::SizeMismatch: return "SizeMismatch";
  case ErrorKind::NotInSpan: return "NotInSpan";
  case ErrorKind::LinearlyDependentBasis: return "LinearlyDependentBasis";
  case ErrorKind::NotClosedUnderBracket: return "NotClosedUnderBracket";
  case ErrorKind::SingularMatrix: return "SingularMatrix";
  case ErrorKind::OverlappingLeads: return "OverlappingLeads";
  case ErrorKind::NonPassive: return "NonPassive";
  case ErrorKind::DepthExceeded: return "DepthExceeded";
  case ErrorKind::SingularOnEquation: return "SingularOnEquation";
  case ErrorKind::NotAZcr: return "NotAZcr";
  case ErrorKind::BadDecomposition: return "BadDecomposition";
  case ErrorKind::InternalIdentityFailure: return "InternalIdentityFailure";
  case ErrorKind::GaugeLeavesAlgebra: return "GaugeLeavesAlgebra";
  case ErrorKind::NonAbelianAlgebra: return "NonAbelianAlgebra";
  case ErrorKind::NotConserved: return "NotConserved";
  case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

} // namespace jetzcr
