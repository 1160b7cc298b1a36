#include "jetzcr/problem.hpp"

#include "jetzcr/errors.hpp"

#include <fstream>
#include <regex>

namespace jetzcr {

namespace {

[[noreturn]] void invalid(const std::string &where, const std::string &msg)
{
  throw Error(ErrorKind::InvalidInput, where + ": " + msg);
}

// Re-throws engine errors with the JSON path prepended, keeping the kind.
template <typename Fn> auto at_path(const std::string &where, Fn &&fn)
{
  try {
    return fn();
  } catch (const Error &e) {
    if (std::string(e.what()).rfind(where + ":", 0) == 0)
      throw;
    throw Error(e.kind(), where + ": " + e.what());
  }
}

DiffFunction parse_entry(const Json &j, int m, const std::string &where)
{
  if (j.is_number_integer())
    return DiffFunction(j.get<long>());
  if (!j.is_string())
    invalid(where, "expected an expression string");
  return at_path(where, [&] { return parse_expr(j.get<std::string>(), m); });
}

MatrixFunction parse_matrix(const Json &j, int m, const std::string &where,
                            std::optional<std::size_t> n = std::nullopt)
{
  if (!j.is_array() || j.empty())
    invalid(where, "expected a non-empty square matrix (array of rows)");
  std::size_t size = j.size();
  if (n && size != *n)
    throw Error(ErrorKind::SizeMismatch, where + ": expected " + std::to_string(*n) +
                                             " rows, got " + std::to_string(size));
  std::vector<DiffFunction> entries;
  for (std::size_t i = 0; i < size; ++i) {
    const auto &row = j[i];
    if (!row.is_array() || row.size() != size)
      throw Error(ErrorKind::SizeMismatch,
                  where + "[" + std::to_string(i) + "]: every row must have " +
                      std::to_string(size) + " entries");
    for (std::size_t k = 0; k < size; ++k)
      entries.push_back(parse_entry(row[k], m,
                                    where + "[" + std::to_string(i) + "][" +
                                        std::to_string(k) + "]"));
  }
  return MatrixFunction(size, std::move(entries));
}

bool is_single_matrix(const Json &j)
{
  return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
         !j[0][0].is_array();
}

std::vector<MatrixFunction> parse_matrix_list(const Json &j, int m, const std::string &where,
                                              std::size_t n)
{
  if (is_single_matrix(j))
    return {parse_matrix(j, m, where, n)};
  if (!j.is_array())
    invalid(where, "expected a list of matrices");
  std::vector<MatrixFunction> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_matrix(j[i], m, where + "[" + std::to_string(i) + "]", n));
  return out;
}

JetCoordinate parse_lead(const Json &j, int m, const std::string &where)
{
  DiffFunction f = parse_entry(j, m, where);
  const auto &terms = f.numerator().terms();
  if (f.is_polynomial() && terms.size() == 1 && terms[0].coeff == 1 &&
      terms[0].mono.degree() == 1) {
    VarCode v = terms[0].mono.factors()[0].var;
    if (JetCoordinate::is_jet(v))
      return JetCoordinate::from_code(v);
  }
  invalid(where, "lead must be a single jet coordinate such as u1[0,1]");
}

} // namespace

LieAlgebraPtr parse_algebra(const Json &j)
{
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "sl2")
      return std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::sl2());
    if (name == "R" || name == "reals")
      return std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::reals());
    std::smatch mt;
    if (std::regex_match(name, mt, std::regex("diag([1-9][0-9]?)")))
      return std::make_shared<const LieAlgebraSpec>(
          LieAlgebraSpec::diagonal(std::stoul(mt[1].str())));
    invalid("algebra", "unknown algebra name '" + name + "' (known: sl2, R, diag<d>)");
  }
  if (!j.is_object() || !j.contains("basis"))
    invalid("algebra", "expected a name or an object with a basis");
  const Json &basis = j["basis"];
  if (!basis.is_array() || basis.empty())
    invalid("algebra.basis", "expected a non-empty list of matrices");
  std::optional<std::size_t> n;
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
      invalid("algebra.n", "expected a positive integer");
    n = j["n"].get<std::size_t>();
  }
  std::vector<RationalMatrix> mats;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string where = "algebra.basis[" + std::to_string(i) + "]";
    if (!n && !mats.empty())
      n = mats[0].n;
    MatrixFunction m = parse_matrix(basis[i], 0, where, n);
    RationalMatrix r{m.size(), {}};
    for (const auto &e : m.entries()) {
      if (!e.is_constant())
        invalid(where, "basis entries must be rational constants");
      r.entries.push_back(e.constant_value());
    }
    mats.push_back(std::move(r));
  }
  std::string name = j.contains("name") && j["name"].is_string()
                         ? j["name"].get<std::string>()
                         : std::string();
  return at_path("algebra", [&] {
    return std::make_shared<const LieAlgebraSpec>(std::move(mats), name);
  });
}

SystemPtr parse_system(const Json &j, std::size_t depth_limit)
{
  if (!j.is_object() || !j.contains("dependents") || !j.contains("equations"))
    invalid("equations", "expected {\"dependents\": m, \"equations\": [...]}");
  if (!j["dependents"].is_number_unsigned())
    invalid("equations.dependents", "expected a nonnegative integer");
  int m = j["dependents"].get<int>();
  if (m > JetCoordinate::kMaxDependents)
    invalid("equations.dependents", "too many dependents");
  const Json &list = j["equations"];
  if (!list.is_array())
    invalid("equations.equations", "expected a list of {lead, rhs} objects");
  std::vector<Equation> eqs;
  for (std::size_t l = 0; l < list.size(); ++l) {
    std::string where = "equations.equations[" + std::to_string(l) + "]";
    const Json &e = list[l];
    if (!e.is_object() || !e.contains("lead") || !e.contains("rhs"))
      invalid(where, "expected {\"lead\": ..., \"rhs\": ...}");
    eqs.push_back({parse_lead(e["lead"], m, where + ".lead"),
                   parse_entry(e["rhs"], m, where + ".rhs")});
  }
  return at_path("equations", [&] {
    return std::make_shared<const EquationSystem>(m, std::move(eqs), depth_limit);
  });
}

ZCRPair Problem::zcr() const
{
  if (!A || !B)
    throw Error(ErrorKind::InvalidInput, "problem has no zero-curvature pair (fields A, B)");
  return at_path("zcr", [&] { return ZCRPair(*A, *B, g, sys); });
}

Problem parse_problem(const Json &j, std::size_t depth_limit)
{
  if (!j.is_object())
    invalid("problem", "expected a JSON object");
  Problem p;
  if (!j.contains("equations"))
    invalid("problem", "missing field 'equations'");
  p.sys = parse_system(j["equations"], depth_limit);
  const int m = p.sys->dependents();
  const std::size_t big_n = p.sys->size();
  p.g = j.contains("algebra") ? parse_algebra(j["algebra"])
                              : std::make_shared<const LieAlgebraSpec>(LieAlgebraSpec::reals());
  const std::size_t n = p.g->n();

  const Json *pair = j.contains("zcr") ? &j["zcr"] : &j;
  const std::string prefix = j.contains("zcr") ? "zcr." : "";
  if (pair->contains("A") != pair->contains("B"))
    invalid(prefix + "A", "A and B must be given together");
  if (pair->contains("A")) {
    p.A = parse_matrix((*pair)["A"], m, prefix + "A", n);
    p.B = parse_matrix((*pair)["B"], m, prefix + "B", n);
  }
  if (j.contains("gauge"))
    p.gauge = parse_matrix(j["gauge"], m, "gauge", n);
  if (j.contains("Q")) {
    p.Q = parse_matrix_list(j["Q"], m, "Q", n);
    if (p.Q->size() != big_n)
      throw Error(ErrorKind::SizeMismatch, "Q: expected " + std::to_string(big_n) +
                                               " matrices, one per equation");
  }
  if (j.contains("psi")) {
    const Json &psi = j["psi"];
    std::vector<DiffFunction> v;
    if (psi.is_array()) {
      for (std::size_t i = 0; i < psi.size(); ++i)
        v.push_back(parse_entry(psi[i], m, "psi[" + std::to_string(i) + "]"));
    } else {
      v.push_back(parse_entry(psi, m, "psi"));
    }
    if (v.size() != big_n)
      throw Error(ErrorKind::SizeMismatch, "psi: expected " + std::to_string(big_n) +
                                               " entries, one per equation");
    p.psi = std::move(v);
  }
  if (j.contains("decomposition")) {
    const Json &d = j["decomposition"];
    if (!d.is_object())
      invalid("decomposition", "expected an object keyed by \"(l,a,b)\"");
    IdealDecomposition dec;
    dec.normal = MatrixFunction(n);
    static const std::regex key_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))");
    for (const auto &[key, value] : d.items()) {
      std::smatch mt;
      if (!std::regex_match(key, mt, key_re))
        invalid("decomposition", "key '" + key + "' is not of the form (l,a,b)");
      CertKey k{std::stoi(mt[1].str()), std::stoi(mt[2].str()), std::stoi(mt[3].str())};
      if (k.l < 1 || k.l > static_cast<int>(big_n))
        invalid("decomposition", "key '" + key + "' names no equation");
      if (k.a > JetCoordinate::kMaxOrder || k.b > JetCoordinate::kMaxOrder)
        invalid("decomposition", "key '" + key + "' has too large an order");
      dec.coeffs[k] = parse_matrix(value, m, "decomposition." + key, n);
    }
    p.decomposition = std::move(dec);
  }
  if (j.contains("current")) {
    const Json &c = j["current"];
    if (!c.is_object() || !c.contains("P1") || !c.contains("P2"))
      invalid("current", "expected {\"P1\": ..., \"P2\": ...}");
    p.current = Current{parse_entry(c["P1"], m, "current.P1"),
                        parse_entry(c["P2"], m, "current.P2")};
  }
  return p;
}

Problem load_problem(const std::string &path, std::size_t depth_limit)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidInput, "cannot open problem file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorKind::Syntax, path + ": invalid JSON: " + e.what());
  }
  return parse_problem(j, depth_limit);
}

Json matrix_to_json(const MatrixFunction &m)
{
  Json rows = Json::array();
  for (const auto &row : to_strings(m))
    rows.push_back(row);
  return rows;
}

MatrixFunction matrix_from_json(const Json &j, int m) { return parse_matrix(j, m, "matrix"); }

Json decomposition_to_json(const IdealDecomposition &d)
{
  Json coeffs = Json::object();
  for (const auto &[key, c] : d.coeffs)
    coeffs[to_string(key)] = matrix_to_json(c);
  return coeffs;
}

} // namespace jetzcr
