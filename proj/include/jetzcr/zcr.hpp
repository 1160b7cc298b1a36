#pragma once

#include "jetzcr/equation.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace jetzcr {

using SystemPtr = std::shared_ptr<const EquationSystem>;

/// A candidate zero-curvature representation: g-valued A, B over a system.
/// Construction checks sizes and span membership, not the zero-curvature
/// condition itself.
struct ZCRPair
{
  ZCRPair(MatrixFunction a, MatrixFunction b, LieAlgebraPtr g, SystemPtr sys);

  MatrixFunction A;
  MatrixFunction B;
  LieAlgebraPtr g;
  SystemPtr sys;
};

/// D_y A - D_x B + [A, B].
MatrixFunction mc_residual(const ZCRPair &p);

struct ZcrCheck
{
  bool is_zcr = false;
  IdealDecomposition certificate;
};

ZcrCheck is_zcr(const ZCRPair &p);

/// Certificate for the residual of p: the supplied one after verifying the
/// reconstruction identity (BadDecomposition otherwise) or the reducer's.
/// Throws NotAZcr when the residual does not vanish on the equation.
IdealDecomposition zcr_certificate(const ZCRPair &p,
                                   const std::optional<IdealDecomposition> &decomp);

/// K_l = sum_I (-1)^|I| D_I C^I_l with twisted derivatives, in normal form.
std::vector<MatrixFunction> characteristic_element(
    const ZCRPair &p, const std::optional<IdealDecomposition> &decomp = std::nullopt);

struct CharacteristicFormResult
{
  MatrixFunction A_tilde;
  MatrixFunction B_tilde;
  std::vector<MatrixFunction> Q;
  MatrixFunction A1;
  MatrixFunction B1;
  IdealDecomposition decomposition;
  /// D_y A~ - D_x B~ + [A~, B~] == sum_l F^l Q_l was checked structurally.
  bool identity_verified = false;
};

CharacteristicFormResult characteristic_form(
    const ZCRPair &p, const std::optional<IdealDecomposition> &decomp = std::nullopt);

struct CharRepCheck
{
  bool is_representative = false;
  std::vector<MatrixFunction> Q;
  /// Residual minus sum_l F^l Q_l; zero exactly when is_representative.
  MatrixFunction remainder;
};

/// Whether the residual equals sum_l F^l Q_l on the whole jet space.
CharRepCheck is_characteristic_representative(const ZCRPair &p);

/// (D_x(H) H^-1 + H A H^-1, D_y(H) H^-1 + H B H^-1).
ZCRPair gauge_transform(const ZCRPair &p, const MatrixFunction &h);

/// sum_I (-1)^|I| (D_x^A)^a (D_y^B)^b (dM/du^k_I), exact on the jet space.
MatrixFunction twisted_euler(const ZCRPair &p, const MatrixFunction &m, int k);
/// Normal form of twisted_euler(p, m, k), reducing after every step.
MatrixFunction twisted_euler_on_e(const ZCRPair &p, const MatrixFunction &m, int k);

struct MatrixConditionReport
{
  /// Per dependent k (index k - 1): the reduced value.
  std::vector<MatrixFunction> normal;
  bool passed() const;
};

struct ScalarConditionReport
{
  std::vector<DiffFunction> normal;
  bool passed() const;
};

/// Reduced twisted Euler operator of the residual, for every dependent.
MatrixConditionReport check_gauge_euler_condition(const ZCRPair &p);

/// sum_{l,I} (-1)^|I| D_I(dF^l/du^k_I chi_l) with twisted derivatives, reduced.
MatrixConditionReport char_element_nec_check(const ZCRPair &p,
                                             const std::vector<MatrixFunction> &chi);

/// sum_{l,I} (-1)^|I| D_I(dF^l/du^k_I psi_l), reduced.
ScalarConditionReport cosymmetry_check(const std::vector<DiffFunction> &psi,
                                       const EquationSystem &sys);

/// E_k(sum_l F^l Q_l) on the whole jet space; g must be abelian.
MatrixConditionReport abelian_characteristic_condition(const std::vector<MatrixFunction> &q,
                                                       const EquationSystem &sys,
                                                       const LieAlgebraSpec &g);

/// psi_l = sum_I (-1)^|I| D_I C^I_l for Div P = sum D_I(F^l) C^I_l, reduced.
/// Throws NotConserved when Div P does not vanish on the equation.
std::vector<DiffFunction> generating_function(const DiffFunction &p1, const DiffFunction &p2,
                                              const EquationSystem &sys);

/// (P1 - D_y R, P2 + D_x R).
std::pair<DiffFunction, DiffFunction> current_shift(const DiffFunction &p1,
                                                    const DiffFunction &p2,
                                                    const DiffFunction &r);

/// The R-valued pair (P2, -P1), whose residual is Div P.
ZCRPair current_to_zcr(const DiffFunction &p1, const DiffFunction &p2, SystemPtr sys);

} // namespace jetzcr
