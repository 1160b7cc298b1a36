#include "jetzcr/zcr.hpp"

#include "jetzcr/errors.hpp"

#include <set>

namespace jetzcr {

ZCRPair::ZCRPair(MatrixFunction a, MatrixFunction b, LieAlgebraPtr alg, SystemPtr s)
    : A(std::move(a)), B(std::move(b)), g(std::move(alg)), sys(std::move(s))
{
  if (!g || !sys)
    throw Error(ErrorKind::InvalidInput, "ZCR needs an algebra and an equation system");
  if (A.size() != g->n() || B.size() != g->n())
    throw Error(ErrorKind::SizeMismatch, "A and B must be " + std::to_string(g->n()) +
                                             " x " + std::to_string(g->n()));
  if (!g->contains(A))
    throw Error(ErrorKind::NotInSpan, "A is not in the span of the algebra basis");
  if (!g->contains(B))
    throw Error(ErrorKind::NotInSpan, "B is not in the span of the algebra basis");
}

MatrixFunction mc_residual(const ZCRPair &p)
{
  return total_y_mat(p.A) - total_x_mat(p.B) + bracket(p.A, p.B);
}

ZcrCheck is_zcr(const ZCRPair &p)
{
  ZcrCheck out;
  out.certificate = reduce_matrix(mc_residual(p), *p.sys, *p.g);
  out.is_zcr = out.certificate.normal.is_zero();
  return out;
}

IdealDecomposition zcr_certificate(const ZCRPair &p,
                                   const std::optional<IdealDecomposition> &decomp)
{
  if (!decomp) {
    ZcrCheck c = is_zcr(p);
    if (!c.is_zcr)
      throw Error(ErrorKind::NotAZcr,
                  "the Maurer-Cartan residual does not vanish on the equation; its "
                  "normal form is " + to_string(c.certificate.normal));
    return c.certificate;
  }
  const IdealDecomposition &d = *decomp;
  if (d.normal.size() != p.g->n())
    throw Error(ErrorKind::BadDecomposition, "decomposition has the wrong matrix size");
  for (const auto &[key, c] : d.coeffs) {
    if (key.l < 1 || key.l > static_cast<int>(p.sys->size()) || key.a < 0 || key.b < 0)
      throw Error(ErrorKind::BadDecomposition,
                  "decomposition key " + to_string(key) + " does not name an equation");
    if (c.size() != p.g->n())
      throw Error(ErrorKind::BadDecomposition,
                  "coefficient " + to_string(key) + " has the wrong matrix size");
    if (!p.g->contains(c))
      throw Error(ErrorKind::BadDecomposition,
                  "coefficient " + to_string(key) + " is not in the algebra");
  }
  if (!(reconstruct(d, *p.sys) == mc_residual(p)))
    throw Error(ErrorKind::BadDecomposition,
                "decomposition does not reconstruct the Maurer-Cartan residual");
  if (!in_ideal(d.normal, *p.sys))
    throw Error(ErrorKind::NotAZcr,
                "the remainder of the decomposition does not vanish on the equation");
  return d;
}

namespace {

// sum over (a, b) of (-1)^(a+b) X^a Y^b T_(a,b), nested Horner-style so each
// operator is applied once per layer.
template <typename V, typename XOp, typename YOp>
V alternating_sum(const std::map<std::pair<int, int>, V> &terms, const V &zero, XOp X,
                  YOp Y)
{
  std::map<int, std::map<int, const V *>> by_a;
  for (const auto &[ab, t] : terms)
    by_a[ab.first][ab.second] = &t;
  if (by_a.empty())
    return zero;
  V outer = zero;
  for (int a = by_a.rbegin()->first; a >= 0; --a) {
    V inner = zero;
    auto it = by_a.find(a);
    if (it != by_a.end()) {
      for (int b = it->second.rbegin()->first; b >= 0; --b) {
        V next = inner.is_zero() ? zero : Y(inner);
        auto t = it->second.find(b);
        inner = t != it->second.end() ? *t->second - next : -next;
      }
    }
    V next = outer.is_zero() ? zero : X(outer);
    outer = inner - next;
  }
  return outer;
}

struct OnEOps
{
  const EquationSystem &sys;
  MatrixFunction A, B; // already reduced

  MatrixFunction x(const MatrixFunction &t) const
  {
    return normal_form(total_x_mat(t), sys) - bracket(A, t);
  }
  MatrixFunction y(const MatrixFunction &t) const
  {
    return normal_form(total_y_mat(t), sys) - bracket(B, t);
  }
};

MatrixFunction twisted_alternating_on_e(const std::map<std::pair<int, int>, MatrixFunction> &terms,
                                        const ZCRPair &p)
{
  const EquationSystem &sys = *p.sys;
  OnEOps ops{sys, normal_form(p.A, sys), normal_form(p.B, sys)};
  std::map<std::pair<int, int>, MatrixFunction> reduced;
  for (const auto &[ab, t] : terms)
    reduced.emplace(ab, normal_form(t, sys));
  return alternating_sum(
      reduced, MatrixFunction(p.g->n()),
      [&](const MatrixFunction &t) { return ops.x(t); },
      [&](const MatrixFunction &t) { return ops.y(t); });
}

std::set<JetCoordinate> coordinates_of(const MatrixFunction &m, int k)
{
  std::set<JetCoordinate> out;
  for (const auto &e : m.entries())
    for (const auto &c : e.jet_coordinates())
      if (c.dep == k)
        out.insert(c);
  return out;
}

std::map<std::pair<int, int>, MatrixFunction> euler_terms(const MatrixFunction &m, int k)
{
  std::map<std::pair<int, int>, MatrixFunction> terms;
  for (const auto &c : coordinates_of(m, k))
    terms.emplace(std::make_pair(c.a, c.b), partial(m, c.code()));
  return terms;
}

void require_dependent(const EquationSystem &sys, int k)
{
  if (k < 1 || k > sys.dependents())
    throw Error(ErrorKind::DependentOutOfRange,
                "dependent index " + std::to_string(k) + " out of range 1.." +
                    std::to_string(sys.dependents()));
}

} // namespace

std::vector<MatrixFunction> characteristic_element(
    const ZCRPair &p, const std::optional<IdealDecomposition> &decomp)
{
  IdealDecomposition d = zcr_certificate(p, decomp);
  std::vector<MatrixFunction> out;
  for (int l = 1; l <= static_cast<int>(p.sys->size()); ++l) {
    std::map<std::pair<int, int>, MatrixFunction> terms;
    for (const auto &[key, c] : d.coeffs)
      if (key.l == l)
        terms.emplace(std::make_pair(key.a, key.b), c);
    out.push_back(twisted_alternating_on_e(terms, p));
  }
  return out;
}

CharacteristicFormResult characteristic_form(
    const ZCRPair &p, const std::optional<IdealDecomposition> &decomp)
{
  const EquationSystem &sys = *p.sys;
  const std::size_t n = p.g->n();
  CharacteristicFormResult out;
  out.decomposition = zcr_certificate(p, decomp);

  // X^j C for every coefficient, where X is the twisted x-derivative with A.
  std::map<CertKey, std::vector<MatrixFunction>> xpowers;
  for (const auto &[key, c] : out.decomposition.coeffs) {
    auto &pw = xpowers[key];
    pw.push_back(c);
    for (int j = 1; j <= key.a; ++j)
      pw.push_back(twisted_x(pw.back(), p.A));
  }

  MatrixFunction b1(n);
  for (const auto &[key, c] : out.decomposition.coeffs) {
    const auto &pw = xpowers[key];
    for (int j = 1; j <= key.a; ++j) {
      DiffFunction f = total_multi(sys.F(key.l), key.a - j, key.b);
      MatrixFunction t = f * pw[j - 1];
      b1 = j % 2 ? b1 + t : b1 - t;
    }
  }
  MatrixFunction s = p.B + b1;

  MatrixFunction a1(n);
  std::vector<MatrixFunction> q(sys.size(), MatrixFunction(n));
  for (const auto &[key, c] : out.decomposition.coeffs) {
    // Y^j X^a C with Y the twisted y-derivative with S = B + B1
    MatrixFunction yx = xpowers[key][key.a];
    for (int j = 1; j <= key.b; ++j) {
      DiffFunction f = total_multi(sys.F(key.l), 0, key.b - j);
      MatrixFunction t = f * yx;
      a1 = (key.a + j - 1) % 2 ? a1 - t : a1 + t;
      yx = twisted_y(yx, s);
    }
    auto &ql = q[key.l - 1];
    ql = (key.a + key.b) % 2 ? ql - yx : ql + yx;
  }

  out.A1 = a1;
  out.B1 = b1;
  out.A_tilde = p.A - a1;
  out.B_tilde = s;
  out.Q = std::move(q);

  MatrixFunction lhs = total_y_mat(out.A_tilde) - total_x_mat(out.B_tilde) +
                       bracket(out.A_tilde, out.B_tilde);
  MatrixFunction rhs(n);
  for (std::size_t l = 0; l < sys.size(); ++l)
    rhs += sys.F(static_cast<int>(l + 1)) * out.Q[l];
  if (!(lhs == rhs))
    throw Error(ErrorKind::InternalIdentityFailure,
                "characteristic form identity failed to hold structurally");
  out.identity_verified = true;
  return out;
}

CharRepCheck is_characteristic_representative(const ZCRPair &p)
{
  // Dividing only by the F^l themselves (never by their derivatives) leaves
  // a zero remainder exactly when the residual lies in the algebraic ideal
  // they generate, i.e. when residual = sum_l F^l Q_l on the jet space. The
  // derivative-substituting reducer cannot be used here: a Q_l that contains
  // derivatives of a lead would push its certificate off I = (0,0).
  const EquationSystem &sys = *p.sys;
  const LieAlgebraSpec &g = *p.g;
  BasisCoordinates coords = g.decompose(mc_residual(p));
  const std::size_t d = g.dimension();
  BasisCoordinates rem;
  std::vector<BasisCoordinates> q(sys.size());
  for (auto &qc : q)
    qc.coords.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    ScalarIdealDecomposition s = reduce_leads(coords.coords[i], sys);
    rem.coords.push_back(std::move(s.normal));
    for (auto &[key, c] : s.coeffs)
      q[key.l - 1].coords[i] = std::move(c);
  }
  CharRepCheck out;
  out.remainder = g.compose(rem);
  out.is_representative = out.remainder.is_zero();
  for (const auto &qc : q)
    out.Q.push_back(g.compose(qc));
  return out;
}

ZCRPair gauge_transform(const ZCRPair &p, const MatrixFunction &h)
{
  if (h.size() != p.g->n())
    throw Error(ErrorKind::SizeMismatch, "gauge matrix must be " + std::to_string(p.g->n()) +
                                             " x " + std::to_string(p.g->n()));
  MatrixFunction hinv = matrix_inverse(h);
  MatrixFunction a = total_x_mat(h) * hinv + h * p.A * hinv;
  MatrixFunction b = total_y_mat(h) * hinv + h * p.B * hinv;
  if (!p.g->contains(a) || !p.g->contains(b))
    throw Error(ErrorKind::GaugeLeavesAlgebra,
                "the gauge transformed pair leaves the algebra" +
                    (p.g->name().empty() ? std::string() : " " + p.g->name()));
  return ZCRPair(std::move(a), std::move(b), p.g, p.sys);
}

MatrixFunction twisted_euler(const ZCRPair &p, const MatrixFunction &m, int k)
{
  require_dependent(*p.sys, k);
  if (!p.g->contains(m))
    throw Error(ErrorKind::NotInSpan, "matrix is not in the span of the algebra basis");
  return alternating_sum(
      euler_terms(m, k), MatrixFunction(p.g->n()),
      [&](const MatrixFunction &t) { return twisted_x(t, p.A); },
      [&](const MatrixFunction &t) { return twisted_y(t, p.B); });
}

MatrixFunction twisted_euler_on_e(const ZCRPair &p, const MatrixFunction &m, int k)
{
  require_dependent(*p.sys, k);
  if (!p.g->contains(m))
    throw Error(ErrorKind::NotInSpan, "matrix is not in the span of the algebra basis");
  return twisted_alternating_on_e(euler_terms(m, k), p);
}

bool MatrixConditionReport::passed() const
{
  for (const auto &m : normal)
    if (!m.is_zero())
      return false;
  return true;
}

bool ScalarConditionReport::passed() const
{
  for (const auto &f : normal)
    if (!f.is_zero())
      return false;
  return true;
}

MatrixConditionReport check_gauge_euler_condition(const ZCRPair &p)
{
  MatrixFunction residual = mc_residual(p);
  MatrixConditionReport out;
  for (int k = 1; k <= p.sys->dependents(); ++k)
    out.normal.push_back(twisted_euler_on_e(p, residual, k));
  return out;
}

MatrixConditionReport char_element_nec_check(const ZCRPair &p,
                                             const std::vector<MatrixFunction> &chi)
{
  const EquationSystem &sys = *p.sys;
  if (chi.size() != sys.size())
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(sys.size()) +
                                             " characteristic components, got " +
                                             std::to_string(chi.size()));
  std::vector<MatrixFunction> reduced;
  for (const auto &c : chi) {
    if (c.size() != p.g->n())
      throw Error(ErrorKind::SizeMismatch, "characteristic component has the wrong size");
    if (!p.g->contains(c))
      throw Error(ErrorKind::NotInSpan, "characteristic component is not in the algebra");
    reduced.push_back(normal_form(c, sys));
  }
  if (!is_zcr(p).is_zcr)
    throw Error(ErrorKind::NotAZcr, "the pair is not a zero-curvature representation");

  MatrixConditionReport out;
  for (int k = 1; k <= sys.dependents(); ++k) {
    std::map<std::pair<int, int>, MatrixFunction> terms;
    for (std::size_t l = 0; l < sys.size(); ++l) {
      const DiffFunction &f = sys.F(static_cast<int>(l + 1));
      for (const auto &c : f.jet_coordinates()) {
        if (c.dep != k)
          continue;
        MatrixFunction t = partial(f, c) * reduced[l];
        auto [it, fresh] = terms.emplace(std::make_pair(c.a, c.b), t);
        if (!fresh)
          it->second += t;
      }
    }
    out.normal.push_back(twisted_alternating_on_e(terms, p));
  }
  return out;
}

namespace {

DiffFunction alternating_on_e(const std::map<std::pair<int, int>, DiffFunction> &terms,
                              const EquationSystem &sys)
{
  std::map<std::pair<int, int>, DiffFunction> reduced;
  for (const auto &[ab, t] : terms)
    reduced.emplace(ab, normal_form(t, sys));
  return alternating_sum(
      reduced, DiffFunction(),
      [&](const DiffFunction &t) { return normal_form(total_x(t), sys); },
      [&](const DiffFunction &t) { return normal_form(total_y(t), sys); });
}

} // namespace

ScalarConditionReport cosymmetry_check(const std::vector<DiffFunction> &psi,
                                       const EquationSystem &sys)
{
  if (psi.size() != sys.size())
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(sys.size()) +
                                             " cosymmetry components, got " +
                                             std::to_string(psi.size()));
  ScalarConditionReport out;
  for (int k = 1; k <= sys.dependents(); ++k) {
    std::map<std::pair<int, int>, DiffFunction> terms;
    for (std::size_t l = 0; l < sys.size(); ++l) {
      const DiffFunction &f = sys.F(static_cast<int>(l + 1));
      for (const auto &c : f.jet_coordinates()) {
        if (c.dep != k)
          continue;
        terms[{c.a, c.b}] += partial(f, c) * psi[l];
      }
    }
    out.normal.push_back(alternating_on_e(terms, sys));
  }
  return out;
}

MatrixConditionReport abelian_characteristic_condition(const std::vector<MatrixFunction> &q,
                                                       const EquationSystem &sys,
                                                       const LieAlgebraSpec &g)
{
  if (!g.is_abelian())
    throw Error(ErrorKind::NonAbelianAlgebra,
                "the sufficient condition applies to abelian algebras only" +
                    (g.name().empty() ? std::string() : "; " + g.name() + " is not abelian"));
  if (q.size() != sys.size())
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(sys.size()) +
                                             " characteristic components, got " +
                                             std::to_string(q.size()));
  MatrixFunction sum(g.n());
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (!g.contains(q[l]))
      throw Error(ErrorKind::NotInSpan, "characteristic component is not in the algebra");
    sum += sys.F(static_cast<int>(l + 1)) * q[l];
  }
  MatrixConditionReport out;
  for (int k = 1; k <= sys.dependents(); ++k)
    out.normal.push_back(euler_g_component(sum, k));
  return out;
}

std::vector<DiffFunction> generating_function(const DiffFunction &p1, const DiffFunction &p2,
                                              const EquationSystem &sys)
{
  ScalarIdealDecomposition d = reduce_scalar(divergence(p1, p2), sys);
  if (!d.normal.is_zero())
    throw Error(ErrorKind::NotConserved,
                "Div P does not vanish on the equation; its normal form is " +
                    to_string(d.normal));
  std::vector<DiffFunction> psi;
  for (int l = 1; l <= static_cast<int>(sys.size()); ++l) {
    std::map<std::pair<int, int>, DiffFunction> terms;
    for (const auto &[key, c] : d.coeffs)
      if (key.l == l)
        terms.emplace(std::make_pair(key.a, key.b), c);
    psi.push_back(alternating_on_e(terms, sys));
  }
  return psi;
}

std::pair<DiffFunction, DiffFunction> current_shift(const DiffFunction &p1,
                                                    const DiffFunction &p2,
                                                    const DiffFunction &r)
{
  return {p1 - total_y(r), p2 + total_x(r)};
}

ZCRPair current_to_zcr(const DiffFunction &p1, const DiffFunction &p2, SystemPtr sys)
{
  static const LieAlgebraPtr reals =
      std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::reals());
  return ZCRPair(MatrixFunction{{p2}}, MatrixFunction{{-p1}}, reals, std::move(sys));
}

} // namespace jetzcr
