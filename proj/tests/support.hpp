#pragma once

#include "jetzcr/errors.hpp"
#include "jetzcr/zcr.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <tuple>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace jt {

using namespace jetzcr;

/// Fixed seed ("JETZ" in ASCII) shared by every randomized test.
inline constexpr std::uint64_t kSeed = 0x4A45545A;

inline MatrixFunction M(const std::vector<std::vector<std::string>> &rows, int m = 1)
{
  std::vector<DiffFunction> e;
  for (const auto &row : rows)
    for (const auto &s : row)
      e.push_back(parse_expr(s, m));
  return MatrixFunction(rows.size(), std::move(e));
}

inline DiffFunction P(const std::string &s, int m = 1) { return parse_expr(s, m); }

inline SystemPtr kdv()
{
  return std::make_shared<const EquationSystem>(
      1, std::vector<Equation>{{JetCoordinate{1, 0, 1}, P("u_xxx - 6*u*u_x")}});
}

inline LieAlgebraPtr sl2()
{
  return std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::sl2());
}

inline LieAlgebraPtr reals()
{
  return std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::reals());
}

// KdV data.
inline const std::string kF = "u_y - u_xxx + 6*u*u_x";
inline const std::string kDxF = "u_xy - u_xxxx + 6*u_x^2 + 6*u*u_xx";
inline const std::string kDyF = "u_yy - u_xxxy + 6*u_x*u_y + 6*u*u_xy";
inline const std::string kDxDyF = "u_xyy - u_xxxxy + 12*u_x*u_xy + 6*u_xx*u_y + 6*u*u_xxy";

inline std::string par(const std::string &s) { return "(" + s + ")"; }

inline MatrixFunction big_A()
{
  return M({{"6*u*u_xx + 6*u_x^2 - u_xxxx + u_xy", "1"},
            {"u", "-6*u*u_xx - 6*u_x^2 + u_xxxx - u_xy"}});
}
inline MatrixFunction big_B()
{
  return M({{"6*u*u_x + u_x - u_xxx + u_y", "-2*u"},
            {"-2*u^2 + u_xx", "-6*u*u_x - u_x + u_xxx - u_y"}});
}
inline MatrixFunction bar_A() { return M({{"0", "1"}, {"u", "0"}}); }
inline MatrixFunction bar_B() { return M({{"u_x", "-2*u"}, {"-2*u^2 + u_xx", "-u_x"}}); }

inline MatrixFunction tilde_A()
{
  return M({{"6*u*u_xx + 6*u_x^2 - u_xxxx + u_xy", "12*u*u_x - 2*u_xxx + 2*u_y + 1"},
            {"u - 12*u^2*u_x + 2*u*u_xxx - 2*u*u_y", "-6*u*u_xx - 6*u_x^2 + u_xxxx - u_xy"}});
}
inline MatrixFunction tilde_B()
{
  return M({{"6*u*u_xy + 6*u_x*u_y + u_x - u_xxxy + u_yy",
             "-2*u - 4*(6*u*u_x - u_xxx + u_y)*u"},
            {"-2*u^2 + u_xx + (6*u*u_x - u_xxx + u_y)*(4*u^2 - 2*u_xx)",
             "-6*u*u_xy - 6*u_x*u_y - u_x + u_xxxy - u_yy"}});
}
inline MatrixFunction tilde_Q()
{
  return M({{"-4*u_xx*" + par(kF), "-8*u*" + par(kDxF) + " - 4*" + par(kDyF)},
            {"1 - 2*" + par(kF) + " + (4*u_xx - 8*u^2)*" + par(kDxF) + " - 4*u*" + par(kDyF),
             "4*u_xx*" + par(kF)}});
}

/// A three-term decomposition of the residual of (A, B).
inline IdealDecomposition three_term_decomposition()
{
  IdealDecomposition d;
  d.normal = MatrixFunction(2);
  d.coeffs[{1, 0, 0}] = M({{"0", "-2"}, {"2*u + 1", "0"}});
  d.coeffs[{1, 1, 0}] = M({{"-1", "-4*u"}, {"4*u^2 - 2*u_xx", "1"}});
  d.coeffs[{1, 1, 1}] = M({{"1", "0"}, {"0", "-1"}});
  return d;
}

inline const std::string kF1 = "288*u^2*u_x + 20*u*u_xxx + 124*u_x*u_xx - 8*u_xxxxx";
inline const std::string kF2 = "64*u^3 + 152*u*u_xx + 160*u_x^2 - 20*u_xxxx";
inline const std::string kF3 = "-64*u^4 - 168*u^2*u_xx - 280*u*u_x^2 + 16*u*u_xxxx - "
                               "16*u_x*u_xxx - 20*u_xx^2 + 2*u_xxxxxx";

// ---------------------------------------------------------------------------
// Independent evaluation oracle.
//
// Re-parses expression text on its own and evaluates it exactly along a jet
// field, i.e. at the prolongation of concrete functions u^k(x, y) at a point.
// Every value carries its first partials in x and y, so the total derivatives
// of an expression are available without any symbolic differentiation.

struct Dual
{
  mpq_class v, dx, dy;
};

inline Dual operator+(const Dual &p, const Dual &q) { return {p.v + q.v, p.dx + q.dx, p.dy + q.dy}; }
inline Dual operator-(const Dual &p, const Dual &q) { return {p.v - q.v, p.dx - q.dx, p.dy - q.dy}; }
inline Dual operator*(const Dual &p, const Dual &q)
{
  return {p.v * q.v, p.dx * q.v + p.v * q.dx, p.dy * q.v + p.v * q.dy};
}
inline Dual operator/(const Dual &p, const Dual &q)
{
  if (q.v == 0)
    throw std::domain_error("pole");
  mpq_class q2 = q.v * q.v;
  return {p.v / q.v, (p.dx * q.v - p.v * q.dx) / q2, (p.dy * q.v - p.v * q.dy) / q2};
}

/// Values of d^(a+b) u^k / dx^a dy^b at the evaluation point.
struct JetField
{
  mpq_class x, y;
  std::function<mpq_class(int k, int a, int b)> u;
};

class Oracle
{
public:
  Oracle(const std::string &text, const JetField &f) : s_(text), f_(f) {}

  Dual eval()
  {
    Dual r = sum();
    space();
    if (i_ != s_.size())
      throw std::invalid_argument("oracle: trailing input in '" + s_ + "'");
    return r;
  }

private:
  std::string s_;
  const JetField &f_;
  std::size_t i_ = 0;

  void space()
  {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool eat(char c)
  {
    space();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  long integer()
  {
    space();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (st == i_)
      throw std::invalid_argument("oracle: digits expected in '" + s_ + "'");
    return std::stol(s_.substr(st, i_ - st));
  }
  Dual sum()
  {
    Dual r = product();
    for (;;) {
      if (eat('+'))
        r = r + product();
      else if (eat('-'))
        r = r - product();
      else
        return r;
    }
  }
  Dual product()
  {
    Dual r = signed_factor();
    for (;;) {
      if (eat('*'))
        r = r * signed_factor();
      else if (eat('/'))
        r = r / signed_factor();
      else
        return r;
    }
  }
  Dual signed_factor()
  {
    if (eat('-')) {
      Dual d = signed_factor();
      return {-d.v, -d.dx, -d.dy};
    }
    if (eat('+'))
      return signed_factor();
    Dual b = atom();
    if (!eat('^'))
      return b;
    long e = integer();
    Dual r{1, 0, 0};
    for (long k = 0; k < e; ++k)
      r = r * b;
    return r;
  }
  Dual jet(int k, int a, int b) { return {f_.u(k, a, b), f_.u(k, a + 1, b), f_.u(k, a, b + 1)}; }
  Dual atom()
  {
    space();
    if (eat('(')) {
      Dual r = sum();
      if (!eat(')'))
        throw std::invalid_argument("oracle: ')' expected in '" + s_ + "'");
      return r;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        ++i_;
      return {mpq_class(mpz_class(s_.substr(st, i_ - st))), 0, 0};
    }
    char c = i_ < s_.size() ? s_[i_] : '\0';
    ++i_;
    if (c == 'x')
      return {f_.x, 1, 0};
    if (c == 'y')
      return {f_.y, 0, 1};
    if (c != 'u')
      throw std::invalid_argument("oracle: unexpected character in '" + s_ + "'");
    int k = 1;
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      k = static_cast<int>(integer());
    int a = 0, b = 0;
    if (i_ < s_.size() && s_[i_] == '[') {
      ++i_;
      a = static_cast<int>(integer());
      eat(',');
      b = static_cast<int>(integer());
      if (!eat(']'))
        throw std::invalid_argument("oracle: ']' expected in '" + s_ + "'");
    } else if (i_ < s_.size() && s_[i_] == '_') {
      ++i_;
      while (i_ < s_.size() && (s_[i_] == 'x' || s_[i_] == 'y'))
        (s_[i_++] == 'x' ? a : b) += 1;
    }
    return jet(k, a, b);
  }
};

inline Dual oracle(const std::string &text, const JetField &f) { return Oracle(text, f).eval(); }
inline Dual oracle(const DiffFunction &g, const JetField &f) { return oracle(to_string(g), f); }

/// Polynomial u^k(x, y) = sum c_ij x^i y^j, one per dependent.
struct PolyField
{
  std::vector<std::vector<std::vector<mpq_class>>> c; // [k][i][j]

  mpq_class derivative(int k, int a, int b, const mpq_class &x, const mpq_class &y) const
  {
    const auto &ck = c[static_cast<std::size_t>(k - 1)];
    mpq_class total = 0;
    for (std::size_t i = 0; i < ck.size(); ++i)
      for (std::size_t j = 0; j < ck[i].size(); ++j) {
        if (static_cast<int>(i) < a || static_cast<int>(j) < b || ck[i][j] == 0)
          continue;
        mpq_class t = ck[i][j];
        for (int r = 0; r < a; ++r)
          t *= static_cast<long>(i) - r;
        for (int r = 0; r < b; ++r)
          t *= static_cast<long>(j) - r;
        mpq_class p = 1;
        for (std::size_t r = a; r < i; ++r)
          p *= x;
        for (std::size_t r = b; r < j; ++r)
          p *= y;
        total += t * p;
      }
    return total;
  }
};

inline mpq_class random_rational(std::mt19937_64 &rng, int num = 9, int den = 4)
{
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  mpq_class q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

/// A random jet field of polynomial functions of degree < 12 in each variable.
inline JetField random_field(std::mt19937_64 &rng, int m = 1)
{
  auto pf = std::make_shared<PolyField>();
  pf->c.resize(static_cast<std::size_t>(m));
  for (auto &ck : pf->c) {
    ck.assign(12, std::vector<mpq_class>(12));
    for (auto &row : ck)
      for (auto &e : row)
        e = random_rational(rng, 5, 3);
  }
  JetField f;
  f.x = random_rational(rng, 3, 3);
  f.y = random_rational(rng, 3, 3);
  mpq_class x = f.x, y = f.y;
  auto cache = std::make_shared<std::map<std::tuple<int, int, int>, mpq_class>>();
  f.u = [pf, x, y, cache](int k, int a, int b) {
    auto [it, fresh] = cache->try_emplace({k, a, b});
    if (fresh)
      it->second = pf->derivative(k, a, b, x, y);
    return it->second;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Random expression text.

struct ExprGen
{
  std::mt19937_64 &rng;
  int m = 1;
  int max_order = 3;
  bool use_independents = true;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::string atom()
  {
    int r = pick(0, 9);
    if (use_independents && r == 0)
      return "x";
    if (use_independents && r == 1)
      return "y";
    if (r <= 3)
      return std::to_string(pick(1, 7));
    int k = pick(1, m), a = pick(0, max_order);
    int b = pick(0, max_order - a);
    return "u" + std::to_string(k) + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
  }

  std::string monomial()
  {
    std::string s = std::to_string(pick(-6, 6)) + "/" + std::to_string(pick(1, 3));
    int n = pick(0, 3);
    for (int i = 0; i < n; ++i) {
      s += "*" + atom();
      if (pick(0, 4) == 0)
        s += "^2";
    }
    return s;
  }

  /// Polynomial with up to `terms` monomials.
  std::string poly(int terms = 4)
  {
    int n = pick(1, terms);
    std::string s = "(" + monomial();
    for (int i = 1; i < n; ++i)
      s += " + " + monomial();
    return s + ")";
  }

  /// Polynomial, or a quotient of polynomials when `rational`.
  std::string function(bool rational = false)
  {
    if (rational && pick(0, 2) == 0) {
      std::string den = poly(2);
      return "(" + poly() + "/(" + den + " + " + std::to_string(pick(1, 5)) + "*" + atom() +
             "^2 + 1))";
    }
    return poly();
  }
};

/// A random element of sl(2) with entries built from the generator.
inline MatrixFunction random_sl2(ExprGen &g, int terms = 3)
{
  std::string a = g.poly(terms);
  return M({{a, g.poly(terms)}, {g.poly(terms), "-" + a}}, g.m);
}

/// A random constant-determinant gauge matrix: unipotent products.
inline MatrixFunction random_gauge(ExprGen &g)
{
  MatrixFunction lower = M({{"1", "0"}, {g.poly(2), "1"}}, g.m);
  MatrixFunction upper = M({{"1", g.poly(2)}, {"0", "1"}}, g.m);
  return lower * upper;
}

/// Jets of the travelling wave u = c + 2/(x - 6 c y)^2, an exact KdV solution.
inline JetField kdv_wave(const mpq_class &c, const mpq_class &x, const mpq_class &y)
{
  JetField f;
  f.x = x;
  f.y = y;
  mpq_class s = x - 6 * c * y;
  f.u = [c, s](int, int a, int b) {
    int n = a + b;
    mpq_class v = 2;
    for (int i = 0; i < b; ++i)
      v *= -6 * c;
    for (int i = 0; i < n; ++i)
      v *= -(2 + i);
    for (int i = 0; i < n + 2; ++i)
      v /= s;
    return n == 0 ? v + c : v;
  };
  return f;
}

inline int count_env(const char *name, int fallback)
{
  const char *v = std::getenv(name);
  return v ? std::atoi(v) : fallback;
}

} // namespace jt
