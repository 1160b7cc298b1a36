#pragma once

#include "jetzcr/expr.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jetzcr {

/// Square matrix of differential functions (an element of F^{gl(n)}).
class MatrixFunction
{
public:
  MatrixFunction() = default;
  explicit MatrixFunction(std::size_t n) : n_(n), entries_(n * n) {}
  MatrixFunction(std::size_t n, std::vector<DiffFunction> row_major);
  MatrixFunction(std::initializer_list<std::initializer_list<DiffFunction>> rows);

  static MatrixFunction zero(std::size_t n) { return MatrixFunction(n); }
  static MatrixFunction identity(std::size_t n);

  std::size_t size() const { return n_; }
  const DiffFunction &operator()(std::size_t i, std::size_t j) const
  {
    return entries_[i * n_ + j];
  }
  DiffFunction &operator()(std::size_t i, std::size_t j)
  {
    return entries_[i * n_ + j];
  }
  const std::vector<DiffFunction> &entries() const { return entries_; }

  bool is_zero() const;
  bool is_polynomial() const;

  MatrixFunction operator+(const MatrixFunction &o) const;
  MatrixFunction operator-(const MatrixFunction &o) const;
  MatrixFunction operator-() const;
  MatrixFunction operator*(const MatrixFunction &o) const;
  MatrixFunction &operator+=(const MatrixFunction &o) { return *this = *this + o; }
  MatrixFunction &operator-=(const MatrixFunction &o) { return *this = *this - o; }
  bool operator==(const MatrixFunction &o) const
  {
    return n_ == o.n_ && entries_ == o.entries_;
  }

  template <typename Fn> MatrixFunction map(Fn &&fn) const
  {
    MatrixFunction r(n_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      r.entries_[k] = fn(entries_[k]);
    return r;
  }

private:
  std::size_t n_ = 0;
  std::vector<DiffFunction> entries_;
};

MatrixFunction operator*(const DiffFunction &f, const MatrixFunction &m);

/// Row-major text rendering of every entry.
std::vector<std::vector<std::string>> to_strings(const MatrixFunction &m);
std::string to_string(const MatrixFunction &m);

/// Constant matrix with exact rational entries, used for algebra bases.
struct RationalMatrix
{
  std::size_t n = 0;
  std::vector<Rational> entries; // row-major

  Rational operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  MatrixFunction to_function() const;
};

/// Coordinates f^1..f^d with M = sum_i f^i T_i.
struct BasisCoordinates
{
  std::vector<DiffFunction> coords;
};

/// A matrix Lie algebra given by a fixed basis T_1..T_d of constant n x n
/// matrices. Construction checks linear independence and closure under the
/// bracket, caches the structure constants, and pre-factors the exact linear
/// solve used for basis decomposition.
class LieAlgebraSpec
{
public:
  LieAlgebraSpec(std::vector<RationalMatrix> basis, std::string name = "");

  /// sl(2) in the basis e, h, f.
  static LieAlgebraSpec sl2();
  /// The d-dimensional diagonal (abelian) algebra inside gl(d).
  static LieAlgebraSpec diagonal(std::size_t d);
  /// The one-dimensional algebra R = gl(1).
  static LieAlgebraSpec reals() { return diagonal(1); }

  std::size_t n() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::string &name() const { return name_; }
  const std::vector<RationalMatrix> &basis() const { return basis_; }
  /// c^k_{ij} with [T_i, T_j] = sum_k c^k_{ij} T_k.
  const Rational &structure_constant(std::size_t i, std::size_t j, std::size_t k) const
  {
    return structure_[(i * basis_.size() + j) * basis_.size() + k];
  }
  bool is_abelian() const;

  /// Unique coordinates of M; throws NotInSpan if M leaves the span.
  BasisCoordinates decompose(const MatrixFunction &m) const;
  std::optional<BasisCoordinates> try_decompose(const MatrixFunction &m) const;
  bool contains(const MatrixFunction &m) const { return try_decompose(m).has_value(); }
  MatrixFunction compose(const BasisCoordinates &c) const;

private:
  std::size_t n_ = 0;
  std::string name_;
  std::vector<RationalMatrix> basis_;
  std::vector<Rational> structure_;
  std::vector<std::size_t> pivot_entries_; // d entry indices
  std::vector<Rational> solve_;            // d x d inverse, row-major
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebraSpec>;

inline BasisCoordinates basis_decompose(const MatrixFunction &m, const LieAlgebraSpec &g)
{
  return g.decompose(m);
}

MatrixFunction bracket(const MatrixFunction &m, const MatrixFunction &n);
inline MatrixFunction ad_apply(const MatrixFunction &r, const MatrixFunction &m)
{
  return bracket(r, m);
}

MatrixFunction total_derivative(const MatrixFunction &m, Direction d);
inline MatrixFunction total_x_mat(const MatrixFunction &m)
{
  return total_derivative(m, Direction::X);
}
inline MatrixFunction total_y_mat(const MatrixFunction &m)
{
  return total_derivative(m, Direction::Y);
}
MatrixFunction partial(const MatrixFunction &m, VarCode v);

/// D_x M - [R, M].
MatrixFunction twisted_x(const MatrixFunction &m, const MatrixFunction &r);
/// D_y M - [S, M].
MatrixFunction twisted_y(const MatrixFunction &m, const MatrixFunction &s);

enum class TwistOrder {
  XY, ///< (D_x^R)^a applied to (D_y^S)^b M: y-twists innermost
  YX, ///< (D_y^S)^b applied to (D_x^R)^a M: x-twists innermost
};

MatrixFunction twisted_power(const MatrixFunction &m, const MatrixFunction &r,
                             const MatrixFunction &s, int a, int b, TwistOrder order);

DiffFunction determinant(const MatrixFunction &h);
/// adjugate(H) / det(H); throws SingularMatrix when det(H) == 0.
MatrixFunction matrix_inverse(const MatrixFunction &h);
/// H M H^{-1}.
MatrixFunction conjugate(const MatrixFunction &m, const MatrixFunction &h);

MatrixFunction euler_g_component(const MatrixFunction &m, int k);
MatrixFunction divergence_g(const MatrixFunction &m, const MatrixFunction &n);

} // namespace jetzcr
