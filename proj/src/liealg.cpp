#include "jetzcr/liealg.hpp"

#include "jetzcr/errors.hpp"

#include <map>
#include <utility>

namespace jetzcr {

// ---------------------------------------------------------------------------
// MatrixFunction

MatrixFunction::MatrixFunction(std::size_t n, std::vector<DiffFunction> row_major)
    : n_(n), entries_(std::move(row_major))
{
  if (entries_.size() != n * n)
    throw Error(ErrorKind::SizeMismatch, "matrix entry count is not n*n");
}

MatrixFunction::MatrixFunction(
    std::initializer_list<std::initializer_list<DiffFunction>> rows)
    : n_(rows.size())
{
  for (const auto &row : rows) {
    if (row.size() != n_)
      throw Error(ErrorKind::SizeMismatch, "matrix must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

MatrixFunction MatrixFunction::identity(std::size_t n)
{
  MatrixFunction m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = DiffFunction(1);
  return m;
}

bool MatrixFunction::is_zero() const
{
  for (const auto &e : entries_)
    if (!e.is_zero())
      return false;
  return true;
}

bool MatrixFunction::is_polynomial() const
{
  for (const auto &e : entries_)
    if (!e.is_polynomial())
      return false;
  return true;
}

namespace {

void require_same_size(const MatrixFunction &a, const MatrixFunction &b)
{
  if (a.size() != b.size())
    throw Error(ErrorKind::SizeMismatch,
                "matrix sizes differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

} // namespace

MatrixFunction MatrixFunction::operator+(const MatrixFunction &o) const
{
  require_same_size(*this, o);
  MatrixFunction r(n_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    r.entries_[k] = entries_[k] + o.entries_[k];
  return r;
}

MatrixFunction MatrixFunction::operator-(const MatrixFunction &o) const
{
  require_same_size(*this, o);
  MatrixFunction r(n_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    r.entries_[k] = entries_[k] - o.entries_[k];
  return r;
}

MatrixFunction MatrixFunction::operator-() const
{
  return map([](const DiffFunction &f) { return -f; });
}

MatrixFunction MatrixFunction::operator*(const MatrixFunction &o) const
{
  require_same_size(*this, o);
  MatrixFunction r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      DiffFunction s;
      for (std::size_t k = 0; k < n_; ++k) {
        const auto &a = (*this)(i, k);
        const auto &b = o(k, j);
        if (!a.is_zero() && !b.is_zero())
          s += a * b;
      }
      r(i, j) = std::move(s);
    }
  return r;
}

MatrixFunction operator*(const DiffFunction &f, const MatrixFunction &m)
{
  return m.map([&f](const DiffFunction &e) { return f * e; });
}

std::vector<std::vector<std::string>> to_strings(const MatrixFunction &m)
{
  std::vector<std::vector<std::string>> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      rows[i].push_back(to_string(m(i, j)));
  return rows;
}

std::string to_string(const MatrixFunction &m)
{
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j)
      s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

MatrixFunction RationalMatrix::to_function() const
{
  MatrixFunction m(n);
  for (std::size_t k = 0; k < entries.size(); ++k)
    m(k / n, k % n) = DiffFunction(entries[k]);
  return m;
}

// ---------------------------------------------------------------------------
// LieAlgebraSpec

namespace {

// Gauss-Jordan inverse of a d x d rational matrix; nullopt when singular.
std::optional<std::vector<Rational>> invert(std::vector<Rational> a, std::size_t d)
{
  std::vector<Rational> inv(d * d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    inv[i * d + i] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && sgn(a[piv * d + col]) == 0)
      ++piv;
    if (piv == d)
      return std::nullopt;
    if (piv != col)
      for (std::size_t k = 0; k < d; ++k) {
        std::swap(a[piv * d + k], a[col * d + k]);
        std::swap(inv[piv * d + k], inv[col * d + k]);
      }
    Rational p = a[col * d + col];
    for (std::size_t k = 0; k < d; ++k) {
      a[col * d + k] /= p;
      inv[col * d + k] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || sgn(a[r * d + col]) == 0)
        continue;
      Rational f = a[r * d + col];
      for (std::size_t k = 0; k < d; ++k) {
        a[r * d + k] -= f * a[col * d + k];
        inv[r * d + k] -= f * inv[col * d + k];
      }
    }
  }
  return inv;
}

RationalMatrix commutator(const RationalMatrix &a, const RationalMatrix &b)
{
  std::size_t n = a.n;
  RationalMatrix c{n, std::vector<Rational>(n * n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s += a(i, k) * b(k, j) - b(i, k) * a(k, j);
      c.entries[i * n + j] = s;
    }
  return c;
}

} // namespace

LieAlgebraSpec::LieAlgebraSpec(std::vector<RationalMatrix> basis, std::string name)
    : name_(std::move(name)), basis_(std::move(basis))
{
  if (basis_.empty())
    throw Error(ErrorKind::InvalidInput, "Lie algebra basis is empty");
  n_ = basis_.front().n;
  if (n_ == 0)
    throw Error(ErrorKind::InvalidInput, "matrix size must be positive");
  for (const auto &t : basis_)
    if (t.n != n_ || t.entries.size() != n_ * n_)
      throw Error(ErrorKind::SizeMismatch, "basis matrices must all be n x n");

  const std::size_t d = basis_.size();
  // Greedily pick d matrix entries whose rows (T_1[e], ..., T_d[e]) are
  // independent; the d x d block they form is then invertible.
  std::vector<std::pair<std::vector<Rational>, std::size_t>> echelon;
  for (std::size_t e = 0; e < n_ * n_ && pivot_entries_.size() < d; ++e) {
    std::vector<Rational> row(d);
    for (std::size_t i = 0; i < d; ++i)
      row[i] = basis_[i].entries[e];
    for (const auto &[erow, pcol] : echelon) {
      if (sgn(row[pcol]) == 0)
        continue;
      Rational f = row[pcol] / erow[pcol];
      for (std::size_t k = 0; k < d; ++k)
        row[k] -= f * erow[k];
    }
    std::size_t pcol = 0;
    while (pcol < d && sgn(row[pcol]) == 0)
      ++pcol;
    if (pcol == d)
      continue;
    echelon.emplace_back(std::move(row), pcol);
    pivot_entries_.push_back(e);
  }
  if (pivot_entries_.size() < d)
    throw Error(ErrorKind::LinearlyDependentBasis,
                "basis matrices are linearly dependent");

  std::vector<Rational> block(d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t i = 0; i < d; ++i)
      block[p * d + i] = basis_[i].entries[pivot_entries_[p]];
  solve_ = *invert(std::move(block), d);

  structure_.assign(d * d * d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      RationalMatrix c = commutator(basis_[i], basis_[j]);
      auto coords = try_decompose(c.to_function());
      if (!coords)
        throw Error(ErrorKind::NotClosedUnderBracket,
                    "basis is not closed under the bracket: [T" +
                        std::to_string(i + 1) + ", T" + std::to_string(j + 1) +
                        "] leaves the span");
      for (std::size_t k = 0; k < d; ++k)
        structure_[(i * d + j) * d + k] = coords->coords[k].constant_value();
    }
}

LieAlgebraSpec LieAlgebraSpec::sl2()
{
  auto m = [](long a, long b, long c, long d) {
    return RationalMatrix{2, {Rational(a), Rational(b), Rational(c), Rational(d)}};
  };
  return LieAlgebraSpec({m(0, 1, 0, 0), m(1, 0, 0, -1), m(0, 0, 1, 0)}, "sl2");
}

LieAlgebraSpec LieAlgebraSpec::diagonal(std::size_t d)
{
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < d; ++i) {
    RationalMatrix t{d, std::vector<Rational>(d * d, Rational(0))};
    t.entries[i * d + i] = 1;
    basis.push_back(std::move(t));
  }
  return LieAlgebraSpec(std::move(basis), d == 1 ? "R" : "diag" + std::to_string(d));
}

bool LieAlgebraSpec::is_abelian() const
{
  for (const auto &c : structure_)
    if (sgn(c) != 0)
      return false;
  return true;
}

std::optional<BasisCoordinates> LieAlgebraSpec::try_decompose(const MatrixFunction &m) const
{
  if (m.size() != n_)
    throw Error(ErrorKind::SizeMismatch, "matrix size " + std::to_string(m.size()) +
                                             " does not match algebra size " +
                                             std::to_string(n_));
  const std::size_t d = basis_.size();
  BasisCoordinates out;
  out.coords.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    DiffFunction s;
    for (std::size_t p = 0; p < d; ++p) {
      const Rational &w = solve_[i * d + p];
      if (sgn(w) == 0)
        continue;
      const auto &e = m.entries()[pivot_entries_[p]];
      if (!e.is_zero())
        s += DiffFunction(w) * e;
    }
    out.coords[i] = std::move(s);
  }
  if (!(compose(out) == m))
    return std::nullopt;
  return out;
}

BasisCoordinates LieAlgebraSpec::decompose(const MatrixFunction &m) const
{
  auto c = try_decompose(m);
  if (!c)
    throw Error(ErrorKind::NotInSpan,
                "matrix is not in the span of the algebra basis" +
                    (name_.empty() ? std::string() : " (" + name_ + ")"));
  return *c;
}

MatrixFunction LieAlgebraSpec::compose(const BasisCoordinates &c) const
{
  if (c.coords.size() != basis_.size())
    throw Error(ErrorKind::SizeMismatch, "coordinate count does not match dimension");
  MatrixFunction m(n_);
  for (std::size_t e = 0; e < n_ * n_; ++e) {
    DiffFunction s;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational &t = basis_[i].entries[e];
      if (sgn(t) != 0 && !c.coords[i].is_zero())
        s += DiffFunction(t) * c.coords[i];
    }
    m(e / n_, e % n_) = std::move(s);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Calculus on matrices

MatrixFunction bracket(const MatrixFunction &m, const MatrixFunction &n)
{
  require_same_size(m, n);
  return m * n - n * m;
}

MatrixFunction total_derivative(const MatrixFunction &m, Direction d)
{
  return m.map([d](const DiffFunction &f) { return total_derivative(f, d); });
}

MatrixFunction partial(const MatrixFunction &m, VarCode v)
{
  return m.map([v](const DiffFunction &f) { return partial(f, v); });
}

MatrixFunction twisted_x(const MatrixFunction &m, const MatrixFunction &r)
{
  require_same_size(m, r);
  return total_x_mat(m) - bracket(r, m);
}

MatrixFunction twisted_y(const MatrixFunction &m, const MatrixFunction &s)
{
  require_same_size(m, s);
  return total_y_mat(m) - bracket(s, m);
}

MatrixFunction twisted_power(const MatrixFunction &m, const MatrixFunction &r,
                             const MatrixFunction &s, int a, int b, TwistOrder order)
{
  require_same_size(m, r);
  require_same_size(m, s);
  if (a < 0 || b < 0)
    throw Error(ErrorKind::InvalidInput, "twist powers must be nonnegative");
  MatrixFunction out = m;
  if (order == TwistOrder::XY) {
    for (int i = 0; i < b; ++i)
      out = twisted_y(out, s);
    for (int i = 0; i < a; ++i)
      out = twisted_x(out, r);
  } else {
    for (int i = 0; i < a; ++i)
      out = twisted_x(out, r);
    for (int i = 0; i < b; ++i)
      out = twisted_y(out, s);
  }
  return out;
}

namespace {

// Determinants of square submatrices by first-row Laplace expansion, memoized
// on (row set, column set).
class MinorTable
{
public:
  explicit MinorTable(const MatrixFunction &h) : h_(h) {}

  DiffFunction minor(unsigned rows, unsigned cols)
  {
    if (rows == 0)
      return DiffFunction(1);
    auto key = std::make_pair(rows, cols);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    unsigned r = static_cast<unsigned>(__builtin_ctz(rows));
    unsigned rest = rows & ~(1u << r);
    DiffFunction sum;
    int sign = 1;
    for (unsigned c = 0; c < h_.size(); ++c) {
      if (!(cols & (1u << c)))
        continue;
      const auto &e = h_(r, c);
      if (!e.is_zero()) {
        DiffFunction t = e * minor(rest, cols & ~(1u << c));
        sum = sign > 0 ? sum + t : sum - t;
      }
      sign = -sign;
    }
    return memo_.emplace(key, sum).first->second;
  }

private:
  const MatrixFunction &h_;
  std::map<std::pair<unsigned, unsigned>, DiffFunction> memo_;
};

} // namespace

DiffFunction determinant(const MatrixFunction &h)
{
  if (h.size() > 16)
    throw Error(ErrorKind::InvalidInput, "matrix too large for symbolic determinant");
  unsigned all = (1u << h.size()) - 1;
  return MinorTable(h).minor(all, all);
}

MatrixFunction matrix_inverse(const MatrixFunction &h)
{
  const std::size_t n = h.size();
  if (n > 16)
    throw Error(ErrorKind::InvalidInput, "matrix too large for symbolic inverse");
  MinorTable table(h);
  unsigned all = (1u << n) - 1;
  DiffFunction det = table.minor(all, all);
  if (det.is_zero())
    throw Error(ErrorKind::SingularMatrix, "matrix determinant is identically zero");
  MatrixFunction inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(H)_{ji} = (-1)^{i+j} minor without row i and column j
      DiffFunction cof = table.minor(all & ~(1u << i), all & ~(1u << j));
      if ((i + j) % 2)
        cof = -cof;
      inv(j, i) = cof / det;
    }
  return inv;
}

MatrixFunction conjugate(const MatrixFunction &m, const MatrixFunction &h)
{
  require_same_size(m, h);
  return h * m * matrix_inverse(h);
}

MatrixFunction euler_g_component(const MatrixFunction &m, int k)
{
  return m.map([k](const DiffFunction &f) { return euler_component(f, k); });
}

MatrixFunction divergence_g(const MatrixFunction &m, const MatrixFunction &n)
{
  require_same_size(m, n);
  return total_x_mat(m) + total_y_mat(n);
}

} // namespace jetzcr
