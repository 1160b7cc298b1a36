#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jetzcr {

using Rational = mpq_class;

std::string to_string(const Rational &q);

/// Packed variable identifier. Integer order is the variable order of the
/// polynomial ring: x < y < every jet coordinate, jet coordinates ordered
/// lexicographically by (dependent, a, b).
using VarCode = std::uint32_t;

inline constexpr VarCode kVarX = 0;
inline constexpr VarCode kVarY = 1;

enum class Direction { X, Y };

/// The coordinate u^k_{(a,b)}: dependent k (1-based) differentiated a times
/// in x and b times in y.
struct JetCoordinate
{
  int dep = 1;
  int a = 0;
  int b = 0;

  static constexpr int kMaxOrder = 1023;
  static constexpr int kMaxDependents = 4095;

  auto operator<=>(const JetCoordinate &) const = default;

  VarCode code() const;
  static JetCoordinate from_code(VarCode code);
  static bool is_jet(VarCode code) { return code >= 2; }

  JetCoordinate shifted(int da, int db) const { return {dep, a + da, b + db}; }
  JetCoordinate derivative(Direction d) const
  {
    return d == Direction::X ? shifted(1, 0) : shifted(0, 1);
  }
  int order() const { return a + b; }

  /// True when this coordinate is D_J applied to `base` for some J >= 0.
  bool is_derivative_of(const JetCoordinate &base) const
  {
    return dep == base.dep && a >= base.a && b >= base.b;
  }

  std::string to_string() const;
};

std::string var_name(VarCode v);

/// Power product of variables, stored as (variable, exponent) pairs sorted by
/// increasing variable code. Exponents are strictly positive.
class Monomial
{
public:
  struct Factor
  {
    VarCode var;
    std::uint32_t exp;
    bool operator==(const Factor &) const = default;
  };
  using Storage = boost::container::small_vector<Factor, 4>;

  Monomial() = default;
  static Monomial variable(VarCode v, std::uint32_t exp = 1);

  const Storage &factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(VarCode v) const;

  Monomial operator*(const Monomial &other) const;
  /// Removes `count` copies of `v`; requires exponent(v) >= count.
  Monomial without(VarCode v, std::uint32_t count = 1) const;
  bool divides(const Monomial &other) const;
  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial &other) const;

  bool operator==(const Monomial &other) const
  {
    return degree_ == other.degree_ && factors_ == other.factors_;
  }

private:
  Storage factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison; among equal degrees the monomial with the
/// larger exponent on the greatest differing variable is greater.
int compare_grlex(const Monomial &lhs, const Monomial &rhs);

struct Term
{
  Monomial mono;
  Rational coeff;
};

/// Multivariate polynomial with exact rational coefficients. Terms are kept
/// strictly decreasing in graded lexicographic order with nonzero
/// coefficients, so equality is structural.
class Polynomial
{
public:
  Polynomial() = default;
  explicit Polynomial(const Rational &c);
  explicit Polynomial(long c) : Polynomial(Rational(c)) {}
  static Polynomial variable(VarCode v);
  static Polynomial monomial(const Monomial &m, const Rational &c);
  /// Accepts terms in any order; combines duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_value() const;
  const Term &leading_term() const { return terms_.front(); }
  std::uint32_t total_degree() const;

  std::set<VarCode> variables() const;
  bool contains(VarCode v) const;
  std::uint32_t degree_in(VarCode v) const;
  VarCode greatest_variable() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial &o) const;
  Polynomial operator-(const Polynomial &o) const;
  Polynomial operator*(const Polynomial &o) const;
  Polynomial &operator+=(const Polynomial &o) { return *this = *this + o; }
  Polynomial &operator-=(const Polynomial &o) { return *this = *this - o; }
  Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }
  Polynomial scaled(const Rational &c) const;
  Polynomial times_monomial(const Monomial &m, const Rational &c) const;
  Polynomial pow(unsigned n) const;

  bool operator==(const Polynomial &o) const;

  Polynomial partial(VarCode v) const;
  Polynomial total_derivative(Direction d) const;

  /// Coefficients c_i with this = sum_i c_i * v^i; index = power of v.
  std::vector<Polynomial> coefficients_in(VarCode v) const;
  Polynomial substitute(VarCode v, const Polynomial &value) const;
  /// Simultaneous substitution of every variable present in `values`.
  Polynomial substitute(const std::map<VarCode, Polynomial> &values) const;

  /// Exact quotient this / divisor, or nullopt if divisor does not divide.
  std::optional<Polynomial> divide_exact(const Polynomial &divisor) const;

  /// Positive rational c such that this / c has coprime integer coefficients
  /// and a positive leading coefficient times sign; returns the signed factor
  /// making the result primitive with positive leading coefficient.
  Rational content() const;

  Rational evaluate(const std::map<VarCode, Rational> &point) const;

private:
  std::vector<Term> terms_;
};

/// Greatest common divisor over Q, normalized to leading coefficient 1.
/// gcd(0, 0) = 0.
Polynomial gcd(const Polynomial &a, const Polynomial &b);

std::string to_string(const Polynomial &p);

} // namespace jetzcr
