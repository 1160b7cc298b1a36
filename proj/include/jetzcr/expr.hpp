#pragma once

#include "jetzcr/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace jetzcr {

/// A differential function on the jet space: a canonical fraction P/Q of
/// polynomials in x, y and finitely many jet coordinates.
///
/// Canonical means gcd(P, Q) = 1 and Q has leading coefficient 1 (Q = 1 for
/// polynomials), so two DiffFunctions are equal as functions exactly when
/// they compare equal with ==.
class DiffFunction
{
public:
  DiffFunction() : den_(1) {}
  DiffFunction(long c) : num_(c), den_(1) {}
  DiffFunction(const Rational &c) : num_(c), den_(1) {}
  explicit DiffFunction(Polynomial p) : num_(std::move(p)), den_(1) {}
  /// Canonicalizes num/den; throws ZeroDenominator when den is zero.
  DiffFunction(const Polynomial &num, const Polynomial &den);

  static DiffFunction x() { return DiffFunction(Polynomial::variable(kVarX)); }
  static DiffFunction y() { return DiffFunction(Polynomial::variable(kVarY)); }
  static DiffFunction jet(const JetCoordinate &c)
  {
    return DiffFunction(Polynomial::variable(c.code()));
  }
  static DiffFunction jet(int dep, int a = 0, int b = 0)
  {
    return jet(JetCoordinate{dep, a, b});
  }

  const Polynomial &numerator() const { return num_; }
  const Polynomial &denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  /// Jet coordinates occurring in numerator or denominator, ascending.
  std::vector<JetCoordinate> jet_coordinates() const;
  bool depends_on(VarCode v) const { return num_.contains(v) || den_.contains(v); }

  DiffFunction operator-() const;
  DiffFunction operator+(const DiffFunction &o) const;
  DiffFunction operator-(const DiffFunction &o) const;
  DiffFunction operator*(const DiffFunction &o) const;
  DiffFunction operator/(const DiffFunction &o) const;
  DiffFunction &operator+=(const DiffFunction &o) { return *this = *this + o; }
  DiffFunction &operator-=(const DiffFunction &o) { return *this = *this - o; }
  DiffFunction &operator*=(const DiffFunction &o) { return *this = *this * o; }
  DiffFunction pow(unsigned n) const;

  bool operator==(const DiffFunction &o) const
  {
    return num_ == o.num_ && den_ == o.den_;
  }

  Rational evaluate(const std::map<VarCode, Rational> &point) const;

  /// num/den for coprime num, den (den nonzero); only the leading
  /// coefficient of den is normalized.
  static DiffFunction from_coprime(Polynomial num, Polynomial den);

private:
  struct Raw {};
  DiffFunction(Raw, Polynomial num, Polynomial den)
      : num_(std::move(num)), den_(std::move(den))
  {}

  Polynomial num_;
  Polynomial den_;
};

/// Partial derivative with every jet coordinate treated as an independent
/// indeterminate. `v` is kVarX, kVarY or a JetCoordinate::code().
DiffFunction partial(const DiffFunction &f, VarCode v);
inline DiffFunction partial(const DiffFunction &f, const JetCoordinate &c)
{
  return partial(f, c.code());
}

DiffFunction total_derivative(const DiffFunction &f, Direction d);
inline DiffFunction total_x(const DiffFunction &f)
{
  return total_derivative(f, Direction::X);
}
inline DiffFunction total_y(const DiffFunction &f)
{
  return total_derivative(f, Direction::Y);
}
/// (D_x)^a (D_y)^b f.
DiffFunction total_multi(const DiffFunction &f, int a, int b);

/// k-th component of the Euler operator, sum_I (-1)^|I| D_I(df/du^k_I).
DiffFunction euler_component(const DiffFunction &f, int k);

/// D_x p1 + D_y p2.
DiffFunction divergence(const DiffFunction &p1, const DiffFunction &p2);

/// Parses the expression grammar: x, y, u<k>[a,b], u<k>, u<k>_xxy, bare u
/// and u_x... when m == 1, integers, + - * / ^ and parentheses. `m` bounds
/// the admissible dependent indices; m == 0 admits constants only.
DiffFunction parse_expr(std::string_view text, int m);

/// Canonical text form; parse_expr(to_string(f), m) == f for any m covering
/// the dependents occurring in f.
std::string to_string(const DiffFunction &f);

struct ExprReport
{
  std::string pretty;
  std::vector<JetCoordinate> occurring;
  std::uint32_t numerator_degree = 0;
  std::uint32_t denominator_degree = 0;
  int max_jet_order = 0;
};

ExprReport report(const DiffFunction &f);

} // namespace jetzcr
