// Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.
// Inputs in this engine are small (a handful of variables, low degree), so the
// classical algorithm is adequate.

#include "jetzcr/polynomial.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace jetzcr {

namespace {

Polynomial primitive(const Polynomial &p)
{
  if (p.is_zero())
    return p;
  return p.scaled(1 / p.content());
}

Polynomial gcd_primitive(const Polynomial &a, const Polynomial &b);

// gcd of a single term with a polynomial: the common monomial divisor.
Polynomial gcd_with_term(const Polynomial &p, const Monomial &m)
{
  Polynomial g(1);
  for (const auto &f : m.factors()) {
    std::uint32_t e = f.exp;
    for (const auto &t : p.terms())
      e = std::min(e, t.mono.exponent(f.var));
    if (e > 0)
      g = g * Polynomial::variable(f.var).pow(e);
  }
  return g;
}

bool disjoint(const Polynomial &a, const Polynomial &b)
{
  for (VarCode v : a.variables())
    if (b.contains(v))
      return false;
  return true;
}

Polynomial leading_coefficient_in(const Polynomial &p, VarCode v)
{
  return p.coefficients_in(v).back();
}

Polynomial content_in(const Polynomial &p, VarCode v)
{
  Polynomial g;
  for (const auto &c : p.coefficients_in(v)) {
    if (c.is_zero())
      continue;
    g = gcd_primitive(g, c);
    if (g.is_constant())
      return Polynomial(1);
  }
  return g;
}

Polynomial exact(const Polynomial &a, const Polynomial &b)
{
  auto q = a.divide_exact(b);
  // gcd building blocks always divide exactly; anything else is a kernel bug
  if (!q)
    throw std::logic_error("inexact division inside polynomial gcd");
  return *q;
}

Polynomial pseudo_remainder(const Polynomial &a, const Polynomial &b, VarCode v)
{
  const std::uint32_t db = b.degree_in(v);
  const Polynomial lcb = leading_coefficient_in(b, v);
  Polynomial r = a;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_in(v);
    if (dr < db)
      break;
    Polynomial lcr = leading_coefficient_in(r, v);
    Polynomial shift = (lcr * b).times_monomial(Monomial::variable(v, dr - db), 1);
    r = primitive(r * lcb - shift);
  }
  return r;
}

Polynomial pseudo_remainder(const Polynomial &a, const Polynomial &b, VarCode v);

// Degree in v of the gcd of the images of a and b under substituting fixed
// integers for every other variable, or nullopt when a leading coefficient in
// v vanishes there. The image gcd has at least the degree in v of gcd(a, b).
std::optional<std::uint32_t> image_gcd_degree(const Polynomial &a, const Polynomial &b,
                                              VarCode v, long salt)
{
  std::set<VarCode> vars = a.variables();
  for (VarCode w : b.variables())
    vars.insert(w);
  std::map<VarCode, Polynomial> point;
  long i = 0;
  for (VarCode w : vars)
    if (w != v)
      point.emplace(w, Polynomial(Rational(3 + 2 * (i++) + 7 * salt)));
  Polynomial ia = a.substitute(point), ib = b.substitute(point);
  if (ia.degree_in(v) != a.degree_in(v) || ib.degree_in(v) != b.degree_in(v))
    return std::nullopt;
  if (ia.degree_in(v) < ib.degree_in(v))
    std::swap(ia, ib);
  while (!ib.is_zero() && ib.degree_in(v) > 0) {
    Polynomial r = pseudo_remainder(ia, ib, v);
    ia = std::move(ib);
    ib = std::move(r);
  }
  return ib.is_zero() ? ia.degree_in(v) : 0;
}

// Variables that may occur in gcd(a, b); the others provably do not.
std::set<VarCode> gcd_support(const Polynomial &a, const Polynomial &b)
{
  std::set<VarCode> out;
  for (VarCode v : a.variables()) {
    if (!b.contains(v))
      continue;
    bool absent = false;
    for (long salt = 0; salt < 3 && !absent; ++salt) {
      auto d = image_gcd_degree(a, b, v, salt);
      absent = d && *d == 0;
    }
    if (!absent)
      out.insert(v);
  }
  return out;
}

// Coefficients of p as a polynomial in the variables outside `keep`.
std::vector<Polynomial> coefficients_over(const Polynomial &p, const std::set<VarCode> &keep)
{
  std::vector<std::pair<Monomial, std::vector<Term>>> groups;
  for (const auto &t : p.terms()) {
    Monomial inner, outer;
    for (const auto &f : t.mono.factors())
      (keep.count(f.var) ? inner : outer) = (keep.count(f.var) ? inner : outer) *
                                            Monomial::variable(f.var, f.exp);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto &g) { return g.first == outer; });
    if (it == groups.end()) {
      groups.push_back({outer, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back({inner, t.coeff});
  }
  std::vector<Polynomial> out;
  for (auto &g : groups)
    out.push_back(Polynomial::from_terms(std::move(g.second)));
  std::sort(out.begin(), out.end(),
            [](const Polynomial &x, const Polynomial &y) { return x.size() < y.size(); });
  return out;
}

Polynomial gcd_primitive(const Polynomial &a, const Polynomial &b)
{
  if (a.is_zero())
    return primitive(b);
  if (b.is_zero())
    return primitive(a);
  if (a.is_constant() || b.is_constant())
    return Polynomial(1);
  if (a == b)
    return primitive(a);
  if (a.size() == 1)
    return gcd_with_term(b, a.leading_term().mono);
  if (b.size() == 1)
    return gcd_with_term(a, b.leading_term().mono);
  if (disjoint(a, b))
    return Polynomial(1);

  // Restrict to the variables the gcd can contain; it divides every
  // coefficient of a and b over the remaining ones.
  std::set<VarCode> support = gcd_support(a, b);
  if (support.empty())
    return Polynomial(1);
  if (support.size() < a.variables().size() || support.size() < b.variables().size()) {
    // Smallest coefficients first, so the running gcd shrinks early.
    std::vector<Polynomial> cs = coefficients_over(a, support);
    for (auto &c : coefficients_over(b, support))
      cs.push_back(std::move(c));
    std::stable_sort(cs.begin(), cs.end(), [](const Polynomial &x, const Polynomial &y) {
      return x.size() < y.size();
    });
    Polynomial g;
    for (const auto &c : cs) {
      g = gcd_primitive(g, c);
      if (g.is_constant())
        return Polynomial(1);
    }
    return g;
  }

  const VarCode v = std::max(a.greatest_variable(), b.greatest_variable());
  if (!a.contains(v))
    return gcd_primitive(a, content_in(b, v));
  if (!b.contains(v))
    return gcd_primitive(content_in(a, v), b);

  // Only the smaller operand's content is computed in full: the content gcd
  // folds the larger operand's coefficients into it one at a time.
  const bool a_small = a.size() <= b.size();
  const Polynomial &small = a_small ? a : b;
  const Polynomial &large = a_small ? b : a;
  Polynomial cs = content_in(small, v);
  Polynomial c = cs;
  for (const auto &k : large.coefficients_in(v)) {
    if (c.is_constant())
      break;
    if (!k.is_zero())
      c = gcd_primitive(c, k);
  }
  // gcd(pp(large), pp(small)) is the primitive part of gcd(large, pp(small)).
  Polynomial pb = primitive(exact(small, cs));
  Polynomial pa = primitive(large);
  if (pa.degree_in(v) < pb.degree_in(v))
    pa = primitive(exact(large, content_in(large, v)));

  if (pa.degree_in(v) < pb.degree_in(v))
    std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero())
      break;
    if (r.degree_in(v) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive(exact(r, content_in(r, v)));
  }
  if (!pb.is_constant())
    pb = exact(pb, content_in(pb, v));
  return primitive(c * pb);
}

} // namespace

Polynomial gcd(const Polynomial &a, const Polynomial &b)
{
  if (a.is_zero() && b.is_zero())
    return {};
  Polynomial g = gcd_primitive(a, b);
  return g.scaled(1 / g.leading_term().coeff);
}

} // namespace jetzcr
