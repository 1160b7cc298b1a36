#include "jetzcr/errors.hpp"
#include "jetzcr/expr.hpp"

#include <cctype>

namespace jetzcr {

namespace {

class Parser
{
public:
  Parser(std::string_view text, int m) : text_(text), m_(m) {}

  DiffFunction parse()
  {
    skip_space();
    if (at_end())
      fail(ErrorKind::Syntax, "empty expression");
    DiffFunction f = expression();
    skip_space();
    if (!at_end())
      fail(ErrorKind::Syntax, std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

private:
  // expression := term (('+' | '-') term)*
  DiffFunction expression()
  {
    DiffFunction f = term();
    while (true) {
      skip_space();
      if (accept('+'))
        f += term();
      else if (accept('-'))
        f -= term();
      else
        return f;
    }
  }

  // term := unary (('*' | '/') unary)*
  DiffFunction term()
  {
    DiffFunction f = unary();
    while (true) {
      skip_space();
      std::size_t at = pos_;
      if (accept('*')) {
        f *= unary();
      } else if (accept('/')) {
        DiffFunction d = unary();
        if (d.is_zero())
          fail(ErrorKind::ZeroDenominator, "division by zero", at);
        f = f / d;
      } else {
        return f;
      }
    }
  }

  // unary := ('-' | '+') unary | power
  DiffFunction unary()
  {
    skip_space();
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  // power := atom ('^' integer)?
  DiffFunction power()
  {
    DiffFunction base = atom();
    skip_space();
    if (!accept('^'))
      return base;
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(ErrorKind::Syntax, "exponent must be a nonnegative integer literal");
    std::size_t at = pos_;
    mpz_class e(read_digits());
    if (e > 10000)
      fail(ErrorKind::Syntax, "exponent too large", at);
    skip_space();
    if (peek('^'))
      fail(ErrorKind::Syntax, "chained exponent; use parentheses");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  DiffFunction atom()
  {
    skip_space();
    if (at_end())
      fail(ErrorKind::Syntax, "unexpected end of expression");
    char c = text_[pos_];
    if (accept('(')) {
      DiffFunction f = expression();
      skip_space();
      if (!accept(')'))
        fail(ErrorKind::Syntax, "expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return DiffFunction(Rational(mpz_class(read_digits())));
    if (std::isalpha(static_cast<unsigned char>(c)))
      return identifier();
    fail(ErrorKind::Syntax, std::string("unexpected '") + c + "'");
  }

  DiffFunction identifier()
  {
    std::size_t start = pos_;
    if (text_[pos_] == 'u')
      return jet(start);
    std::string name;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      name += text_[pos_++];
    if (name == "x")
      return DiffFunction::x();
    if (name == "y")
      return DiffFunction::y();
    fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + name + "'", start);
  }

  DiffFunction jet(std::size_t start)
  {
    ++pos_; // 'u'
    int dep = 1;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::string digits = read_digits();
      if (digits.size() > 6)
        fail(ErrorKind::DependentOutOfRange, "dependent index too large", start);
      dep = std::stoi(digits);
    } else if (m_ != 1) {
      if (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
        fail(ErrorKind::UnknownIdentifier, "unknown identifier", start);
      fail(ErrorKind::UnknownIdentifier,
           "bare 'u' is only accepted with a single dependent variable", start);
    }
    if (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail(ErrorKind::UnknownIdentifier, "unknown identifier", start);
    if (dep < 1 || dep > m_)
      fail(ErrorKind::DependentOutOfRange,
           "dependent index " + std::to_string(dep) + " out of range 1.." +
               std::to_string(m_),
           start);

    int a = 0, b = 0;
    if (accept('[')) {
      a = small_int();
      skip_space();
      if (!accept(','))
        fail(ErrorKind::Syntax, "expected ',' in jet multi-index");
      b = small_int();
      skip_space();
      if (!accept(']'))
        fail(ErrorKind::Syntax, "expected ']' in jet multi-index");
    } else if (accept('_')) {
      std::size_t n = 0;
      while (!at_end() && (text_[pos_] == 'x' || text_[pos_] == 'y')) {
        (text_[pos_] == 'x' ? a : b) += 1;
        ++pos_;
        ++n;
      }
      if (n == 0)
        fail(ErrorKind::Syntax, "expected x/y derivative letters after '_'");
      if (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        fail(ErrorKind::UnknownIdentifier, "unknown identifier", start);
    }
    if (a > JetCoordinate::kMaxOrder || b > JetCoordinate::kMaxOrder)
      fail(ErrorKind::Syntax, "derivative order too large", start);
    return DiffFunction::jet(dep, a, b);
  }

  int small_int()
  {
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(ErrorKind::Syntax, "expected nonnegative integer");
    std::string d = read_digits();
    if (d.size() > 5)
      return JetCoordinate::kMaxOrder + 1;
    return std::stoi(d);
  }

  std::string read_digits()
  {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      d += text_[pos_++];
    return d;
  }

  void skip_space()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }
  bool accept(char c)
  {
    if (!peek(c))
      return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(ErrorKind kind, const std::string &msg)
  {
    fail(kind, msg, pos_);
  }
  [[noreturn]] void fail(ErrorKind kind, const std::string &msg, std::size_t at)
  {
    throw ParseError(kind, msg, at);
  }

  std::string_view text_;
  int m_;
  std::size_t pos_ = 0;
};

} // namespace

DiffFunction parse_expr(std::string_view text, int m)
{
  return Parser(text, m).parse();
}

} // namespace jetzcr
