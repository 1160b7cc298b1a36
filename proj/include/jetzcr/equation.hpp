#pragma once

#include "jetzcr/liealg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace jetzcr {

/// One orthonomic equation lead = rhs, i.e. F = lead - rhs.
struct Equation
{
  JetCoordinate lead;
  DiffFunction rhs;
};

/// Ordering of jet coordinates used to pick the next elimination target.
enum class Ranking {
  YLex,   ///< by (b, a, k)
  XLex,   ///< by (a, b, k)
  Graded, ///< by (a + b, b, a, k)
};

const char *ranking_name(Ranking r);
/// Strict comparison of two jet coordinates under a ranking.
bool ranking_less(Ranking r, const JetCoordinate &p, const JetCoordinate &q);

/// Key (l, a, b) of a certificate entry: equation l (1-based) differentiated
/// a times in x and b times in y.
struct CertKey
{
  int l = 1;
  int a = 0;
  int b = 0;
  auto operator<=>(const CertKey &) const = default;
};

std::string to_string(const CertKey &k);

struct ScalarIdealDecomposition
{
  DiffFunction normal;
  std::map<CertKey, DiffFunction> coeffs;
};

struct IdealDecomposition
{
  MatrixFunction normal;
  std::map<CertKey, MatrixFunction> coeffs;
};

inline constexpr std::size_t kDefaultDepthLimit = 10000;

/// Throws OverlappingLeads or NonPassive when the equations are not an
/// orthonomic passive system over m dependents.
void validate_system(int m, const std::vector<Equation> &equations);

/// A validated orthonomic system. Reductions substitute every derivative of
/// a lead by the matching derivative of its right-hand side, always taking
/// the greatest offending coordinate under ranking().
class EquationSystem
{
public:
  EquationSystem(int m, std::vector<Equation> equations,
                 std::size_t depth_limit = kDefaultDepthLimit);

  int dependents() const { return m_; }
  std::size_t size() const { return equations_.size(); }
  const std::vector<Equation> &equations() const { return equations_; }
  /// F^l = lead_l - rhs_l, l 1-based.
  const DiffFunction &F(int l) const { return F_[l - 1]; }
  Ranking ranking() const { return ranking_; }
  std::size_t depth_limit() const { return depth_limit_; }
  void set_depth_limit(std::size_t n) { depth_limit_ = n; }

  /// The certificate key whose lead derivative is c, if c is offending. When
  /// several leads have c as a derivative the lowest l wins.
  std::optional<CertKey> offending(const JetCoordinate &c) const;
  /// Greatest offending coordinate of f under ranking(), if any.
  std::optional<JetCoordinate> greatest_offending(const DiffFunction &f) const;

  /// Normal form of the single coordinate c (memoized).
  DiffFunction coordinate_normal_form(const JetCoordinate &c) const;
  /// D_J(rhs_l) for the key (l, J) (memoized).
  DiffFunction derived_rhs(const CertKey &k) const;

private:
  struct Cache;
  DiffFunction coordinate_normal_form(const JetCoordinate &c, std::size_t depth) const;

  int m_;
  std::vector<Equation> equations_;
  std::vector<DiffFunction> F_;
  Ranking ranking_;
  std::size_t depth_limit_;
  std::shared_ptr<Cache> cache_;
};

/// Certificate-producing reduction: f = normal + sum D_I(F^l) C^I_l exactly.
ScalarIdealDecomposition reduce_scalar(const DiffFunction &f, const EquationSystem &sys);
/// Division by the equations themselves, without their derivatives: only
/// the leads are substituted, so coeffs is supported on (l, 0, 0) and normal
/// is zero exactly when f = sum_l F^l Q_l on the whole jet space.
ScalarIdealDecomposition reduce_leads(const DiffFunction &f, const EquationSystem &sys);
/// Normal form alone, by simultaneous substitution of memoized coordinate
/// normal forms. Agrees with reduce_scalar(f, sys).normal.
DiffFunction normal_form(const DiffFunction &f, const EquationSystem &sys);
MatrixFunction normal_form(const MatrixFunction &m, const EquationSystem &sys);

/// Decomposes M in the basis of g, reduces every coordinate and reassembles,
/// so all certificate coefficients lie in the span of g.
IdealDecomposition reduce_matrix(const MatrixFunction &m, const EquationSystem &sys,
                                 const LieAlgebraSpec &g);

/// normal + sum D_I(F^l) C^I_l, for checking certificates.
DiffFunction reconstruct(const ScalarIdealDecomposition &d, const EquationSystem &sys);
MatrixFunction reconstruct(const IdealDecomposition &d, const EquationSystem &sys);

bool in_ideal(const DiffFunction &f, const EquationSystem &sys);
bool in_ideal(const MatrixFunction &m, const EquationSystem &sys);
bool equivalent_on_e(const DiffFunction &a, const DiffFunction &b, const EquationSystem &sys);
bool equivalent_on_e(const MatrixFunction &a, const MatrixFunction &b,
                     const EquationSystem &sys);

} // namespace jetzcr
