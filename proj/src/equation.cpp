#include "jetzcr/equation.hpp"

#include "jetzcr/errors.hpp"

#include <functional>
#include <mutex>
#include <tuple>

namespace jetzcr {

const char *ranking_name(Ranking r)
{
  switch (r) {
  case Ranking::YLex: return "y-lex";
  case Ranking::XLex: return "x-lex";
  case Ranking::Graded: return "graded";
  }
  return "?";
}

bool ranking_less(Ranking r, const JetCoordinate &p, const JetCoordinate &q)
{
  switch (r) {
  case Ranking::YLex:
    return std::tie(p.b, p.a, p.dep) < std::tie(q.b, q.a, q.dep);
  case Ranking::XLex:
    return std::tie(p.a, p.b, p.dep) < std::tie(q.a, q.b, q.dep);
  case Ranking::Graded: {
    int po = p.order(), qo = q.order();
    return std::tie(po, p.b, p.a, p.dep) < std::tie(qo, q.b, q.a, q.dep);
  }
  }
  return false;
}

std::string to_string(const CertKey &k)
{
  return "(" + std::to_string(k.l) + "," + std::to_string(k.a) + "," +
         std::to_string(k.b) + ")";
}

void validate_system(int m, const std::vector<Equation> &equations)
{
  if (m < 0)
    throw Error(ErrorKind::InvalidInput, "number of dependents must be nonnegative");
  for (std::size_t l = 0; l < equations.size(); ++l) {
    const auto &lead = equations[l].lead;
    if (lead.dep < 1 || lead.dep > m)
      throw Error(ErrorKind::DependentOutOfRange,
                  "lead " + lead.to_string() + " of equation " + std::to_string(l + 1) +
                      " is outside dependents 1.." + std::to_string(m));
    for (const auto &c : equations[l].rhs.jet_coordinates())
      if (c.dep > m)
        throw Error(ErrorKind::DependentOutOfRange,
                    "rhs of equation " + std::to_string(l + 1) + " uses " +
                        c.to_string() + " beyond dependents 1.." + std::to_string(m));
  }
  for (std::size_t i = 0; i < equations.size(); ++i)
    for (std::size_t j = 0; j < equations.size(); ++j) {
      if (i == j)
        continue;
      const auto &p = equations[i].lead;
      const auto &q = equations[j].lead;
      if (p.is_derivative_of(q))
        throw Error(ErrorKind::OverlappingLeads,
                    p == q ? "equations " + std::to_string(j + 1) + " and " +
                                 std::to_string(i + 1) + " share the lead " +
                                 p.to_string()
                           : "lead " + p.to_string() + " of equation " +
                                 std::to_string(i + 1) + " is a derivative of lead " +
                                 q.to_string() + " of equation " +
                                 std::to_string(j + 1));
    }
  for (std::size_t l = 0; l < equations.size(); ++l)
    for (const auto &c : equations[l].rhs.jet_coordinates())
      for (std::size_t j = 0; j < equations.size(); ++j)
        if (c.is_derivative_of(equations[j].lead))
          throw Error(ErrorKind::NonPassive,
                      "rhs of equation " + std::to_string(l + 1) + " contains " +
                          c.to_string() + ", a derivative of lead " +
                          equations[j].lead.to_string() +
                          "; solve the system for leads whose derivatives do not "
                          "occur on the right-hand sides");
}

// ---------------------------------------------------------------------------

struct EquationSystem::Cache
{
  std::recursive_mutex mutex;
  std::map<JetCoordinate, DiffFunction> normal_forms;
  std::map<CertKey, DiffFunction> derived;
};

namespace {

bool ranking_compatible(Ranking r, const std::vector<Equation> &equations)
{
  for (const auto &eq : equations)
    for (const auto &c : eq.rhs.jet_coordinates())
      if (!ranking_less(r, c, eq.lead))
        return false;
  return true;
}

} // namespace

EquationSystem::EquationSystem(int m, std::vector<Equation> equations,
                               std::size_t depth_limit)
    : m_(m), equations_(std::move(equations)), ranking_(Ranking::Graded),
      depth_limit_(depth_limit), cache_(std::make_shared<Cache>())
{
  validate_system(m_, equations_);
  for (const auto &eq : equations_)
    F_.push_back(DiffFunction::jet(eq.lead) - eq.rhs);
  // Leads must outrank every coordinate of their right-hand sides so that
  // each substitution strictly lowers the greatest offending coordinate.
  for (Ranking r : {Ranking::YLex, Ranking::XLex, Ranking::Graded})
    if (ranking_compatible(r, equations_)) {
      ranking_ = r;
      break;
    }
}

std::optional<CertKey> EquationSystem::offending(const JetCoordinate &c) const
{
  for (std::size_t l = 0; l < equations_.size(); ++l) {
    const auto &lead = equations_[l].lead;
    if (c.is_derivative_of(lead))
      return CertKey{static_cast<int>(l + 1), c.a - lead.a, c.b - lead.b};
  }
  return std::nullopt;
}

std::optional<JetCoordinate> EquationSystem::greatest_offending(const DiffFunction &f) const
{
  std::optional<JetCoordinate> best;
  if (equations_.empty())
    return best;
  for (const auto &c : f.jet_coordinates())
    if (offending(c) && (!best || ranking_less(ranking_, *best, c)))
      best = c;
  return best;
}

DiffFunction EquationSystem::derived_rhs(const CertKey &k) const
{
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->derived.find(k);
  if (it != cache_->derived.end())
    return it->second;
  DiffFunction r;
  if (k.a == 0 && k.b == 0)
    r = equations_[k.l - 1].rhs;
  else if (k.a > 0)
    r = total_x(derived_rhs({k.l, k.a - 1, k.b}));
  else
    r = total_y(derived_rhs({k.l, k.a, k.b - 1}));
  return cache_->derived.emplace(k, std::move(r)).first->second;
}

DiffFunction EquationSystem::coordinate_normal_form(const JetCoordinate &c) const
{
  return coordinate_normal_form(c, 0);
}

namespace {

DiffFunction substitute_normal_forms(const DiffFunction &f, const EquationSystem &sys,
                                     const std::function<DiffFunction(const JetCoordinate &)> &nf);

} // namespace

DiffFunction EquationSystem::coordinate_normal_form(const JetCoordinate &c,
                                                    std::size_t depth) const
{
  if (depth > depth_limit_)
    throw Error(ErrorKind::DepthExceeded,
                "reduction exceeded the depth limit of " + std::to_string(depth_limit_));
  auto key = offending(c);
  if (!key)
    return DiffFunction::jet(c);
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->normal_forms.find(c);
  if (it != cache_->normal_forms.end())
    return it->second;

  // NF(lead + J) = NF(D(NF(lead + J - 1))); the rhs itself is already reduced.
  DiffFunction value;
  if (key->a == 0 && key->b == 0) {
    value = equations_[key->l - 1].rhs;
  } else {
    JetCoordinate prev = key->a > 0 ? c.shifted(-1, 0) : c.shifted(0, -1);
    Direction dir = key->a > 0 ? Direction::X : Direction::Y;
    DiffFunction d = total_derivative(coordinate_normal_form(prev, depth + 1), dir);
    value = substitute_normal_forms(d, *this, [&](const JetCoordinate &q) {
      return coordinate_normal_form(q, depth + 1);
    });
  }
  return cache_->normal_forms.emplace(c, std::move(value)).first->second;
}

// ---------------------------------------------------------------------------

namespace {

// Substitutes every offending coordinate of f by its normal form in one pass.
DiffFunction substitute_normal_forms(const DiffFunction &f, const EquationSystem &sys,
                                     const std::function<DiffFunction(const JetCoordinate &)> &nf)
{
  std::map<VarCode, DiffFunction> values;
  bool polynomial = true;
  for (const auto &c : f.jet_coordinates()) {
    if (!sys.offending(c))
      continue;
    DiffFunction v = nf(c);
    polynomial = polynomial && v.is_polynomial();
    values.emplace(c.code(), std::move(v));
  }
  if (values.empty())
    return f;

  if (polynomial) {
    std::map<VarCode, Polynomial> pv;
    for (const auto &[code, v] : values)
      pv.emplace(code, v.numerator());
    Polynomial num = f.numerator().substitute(pv);
    if (f.is_polynomial())
      return DiffFunction(std::move(num));
    Polynomial den = f.denominator().substitute(pv);
    if (den.is_zero())
      throw Error(ErrorKind::SingularOnEquation,
                  "denominator " + to_string(f.denominator()) + " vanishes on the equation");
    return DiffFunction(num, den);
  }

  // Rational substitutes: Horner over one variable at a time.
  auto eval = [&](const Polynomial &p) {
    DiffFunction acc(p);
    for (const auto &[code, v] : values) {
      if (!acc.numerator().contains(code))
        continue;
      auto cs = acc.numerator().coefficients_in(code);
      DiffFunction r(cs.back());
      for (std::size_t i = cs.size() - 1; i-- > 0;)
        r = r * v + DiffFunction(cs[i]);
      acc = r;
    }
    return acc;
  };
  DiffFunction num = eval(f.numerator());
  if (f.is_polynomial())
    return num;
  DiffFunction den = eval(f.denominator());
  if (den.is_zero())
    throw Error(ErrorKind::SingularOnEquation,
                "denominator " + to_string(f.denominator()) + " vanishes on the equation");
  return num / den;
}

// Synthetic division of p by (v - r) as a polynomial in v: returns the
// quotient and p(r).
std::pair<DiffFunction, DiffFunction> divide_linear(const Polynomial &p, VarCode v,
                                                    const DiffFunction &r)
{
  if (!p.contains(v))
    return {DiffFunction(), DiffFunction(p)};
  auto cs = p.coefficients_in(v);
  const std::size_t d = cs.size() - 1;
  // q_{d-1} = c_d, q_{i-1} = c_i + r q_i, remainder c_0 + r q_0
  std::vector<DiffFunction> q(d);
  DiffFunction carry(cs[d]);
  for (std::size_t i = d; i-- > 0;) {
    q[i] = carry;
    carry = DiffFunction(cs[i]) + r * carry;
  }
  DiffFunction vv(Polynomial::variable(v));
  DiffFunction quotient = q[d - 1];
  for (std::size_t i = d - 1; i-- > 0;)
    quotient = quotient * vv + q[i];
  return {quotient, carry};
}

} // namespace

namespace {

std::optional<JetCoordinate> greatest_lead(const DiffFunction &f, const EquationSystem &sys)
{
  std::optional<JetCoordinate> best;
  for (const auto &c : f.jet_coordinates()) {
    auto key = sys.offending(c);
    if (key && key->a == 0 && key->b == 0 &&
        (!best || ranking_less(sys.ranking(), *best, c)))
      best = c;
  }
  return best;
}

// Polynomial reduction: p = normal + sum D_J(F^l) coeffs, all polynomial.
ScalarIdealDecomposition reduce_polynomial(const Polynomial &p, const EquationSystem &sys,
                                           bool leads_only)
{
  ScalarIdealDecomposition out;
  DiffFunction cur(p);
  std::size_t steps = 0;
  while (auto v = leads_only ? greatest_lead(cur, sys) : sys.greatest_offending(cur)) {
    if (++steps > sys.depth_limit())
      throw Error(ErrorKind::DepthExceeded,
                  "reduction exceeded the limit of " + std::to_string(sys.depth_limit()) +
                      " substitution steps");
    CertKey key = *sys.offending(*v);
    // With G = D_J(F^l) = v - r: p = p(r) + G * (p - p(r)) / (v - r).
    auto [cofactor, next] = divide_linear(cur.numerator(), v->code(), sys.derived_rhs(key));
    if (!cofactor.is_zero()) {
      auto [it, fresh] = out.coeffs.emplace(key, cofactor);
      if (!fresh) {
        it->second += cofactor;
        if (it->second.is_zero())
          out.coeffs.erase(it);
      }
    }
    cur = std::move(next);
  }
  out.normal = std::move(cur);
  return out;
}

ScalarIdealDecomposition reduce_impl(const DiffFunction &f, const EquationSystem &sys,
                                     bool leads_only)
{
  ScalarIdealDecomposition num = reduce_polynomial(f.numerator(), sys, leads_only);
  if (f.is_polynomial())
    return num;
  // N = nN + sum G_I cN_I and D = nD + sum G_I cD_I with n = nN/nD give
  // N/D = n + sum G_I (cN_I - n cD_I) / D, dividing only by the input's D.
  ScalarIdealDecomposition den = reduce_polynomial(f.denominator(), sys, leads_only);
  if (den.normal.is_zero())
    throw Error(ErrorKind::SingularOnEquation,
                "denominator " + to_string(f.denominator()) + " vanishes on the equation");
  ScalarIdealDecomposition out;
  out.normal = num.normal / den.normal;
  std::map<CertKey, DiffFunction> lifted = std::move(num.coeffs);
  for (const auto &[key, c] : den.coeffs)
    lifted[key] -= out.normal * c;
  const DiffFunction d(f.denominator());
  for (auto &[key, c] : lifted)
    if (!c.is_zero())
      out.coeffs.emplace(key, c / d);
  return out;
}

} // namespace

ScalarIdealDecomposition reduce_scalar(const DiffFunction &f, const EquationSystem &sys)
{
  return reduce_impl(f, sys, false);
}

ScalarIdealDecomposition reduce_leads(const DiffFunction &f, const EquationSystem &sys)
{
  return reduce_impl(f, sys, true);
}

DiffFunction normal_form(const DiffFunction &f, const EquationSystem &sys)
{
  return substitute_normal_forms(
      f, sys, [&](const JetCoordinate &c) { return sys.coordinate_normal_form(c); });
}

MatrixFunction normal_form(const MatrixFunction &m, const EquationSystem &sys)
{
  return m.map([&](const DiffFunction &f) { return normal_form(f, sys); });
}

IdealDecomposition reduce_matrix(const MatrixFunction &m, const EquationSystem &sys,
                                 const LieAlgebraSpec &g)
{
  BasisCoordinates coords = g.decompose(m);
  const std::size_t d = g.dimension();
  BasisCoordinates normal;
  std::map<CertKey, BasisCoordinates> parts;
  for (std::size_t i = 0; i < d; ++i) {
    ScalarIdealDecomposition s = reduce_scalar(coords.coords[i], sys);
    normal.coords.push_back(std::move(s.normal));
    for (auto &[key, c] : s.coeffs) {
      auto &slot = parts[key];
      slot.coords.resize(d);
      slot.coords[i] = std::move(c);
    }
  }
  IdealDecomposition out;
  out.normal = g.compose(normal);
  for (const auto &[key, c] : parts)
    out.coeffs.emplace(key, g.compose(c));
  return out;
}

DiffFunction reconstruct(const ScalarIdealDecomposition &d, const EquationSystem &sys)
{
  DiffFunction sum = d.normal;
  for (const auto &[key, c] : d.coeffs)
    sum += total_multi(sys.F(key.l), key.a, key.b) * c;
  return sum;
}

MatrixFunction reconstruct(const IdealDecomposition &d, const EquationSystem &sys)
{
  MatrixFunction sum = d.normal;
  for (const auto &[key, c] : d.coeffs)
    sum += total_multi(sys.F(key.l), key.a, key.b) * c;
  return sum;
}

bool in_ideal(const DiffFunction &f, const EquationSystem &sys)
{
  return normal_form(f, sys).is_zero();
}

bool in_ideal(const MatrixFunction &m, const EquationSystem &sys)
{
  return normal_form(m, sys).is_zero();
}

bool equivalent_on_e(const DiffFunction &a, const DiffFunction &b, const EquationSystem &sys)
{
  return in_ideal(a - b, sys);
}

bool equivalent_on_e(const MatrixFunction &a, const MatrixFunction &b,
                     const EquationSystem &sys)
{
  return in_ideal(a - b, sys);
}

} // namespace jetzcr
