#include "jetzcr/cli.hpp"

#include "jetzcr/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace jetzcr {

namespace {

const std::vector<std::string> kCommands = {
    "check-zcr",  "char-form",     "char-element", "is-char-rep",
    "gauge",      "euler-check",   "nec-check",    "cosymmetry",
    "abelian-check", "conservation", "shift"};

Json list_to_json(const std::vector<MatrixFunction> &ms)
{
  Json a = Json::array();
  for (const auto &m : ms)
    a.push_back(matrix_to_json(m));
  return a;
}

Json list_to_json(const std::vector<DiffFunction> &fs)
{
  Json a = Json::array();
  for (const auto &f : fs)
    a.push_back(to_string(f));
  return a;
}

Json matrix_results(const MatrixConditionReport &r)
{
  Json a = Json::array();
  for (std::size_t k = 0; k < r.normal.size(); ++k)
    a.push_back({{"k", k + 1},
                 {"pass", r.normal[k].is_zero()},
                 {"normal", matrix_to_json(r.normal[k])}});
  return a;
}

const char *verdict(bool ok) { return ok ? "pass" : "fail"; }

template <typename T> const T &require(const std::optional<T> &v, const char *field,
                                       const std::string &command)
{
  if (!v)
    throw Error(ErrorKind::InvalidInput,
                "command '" + command + "' needs the field '" + field + "'");
  return *v;
}

} // namespace

Json build_report(const std::string &command, const Problem &problem, const CliOptions &opts)
{
  Json r;
  r["command"] = command;
  r["status"] = "computed";
  const EquationSystem &sys = *problem.sys;

  if (command == "check-zcr") {
    ZCRPair p = problem.zcr();
    r["residual"] = matrix_to_json(mc_residual(p));
    if (problem.decomposition) {
      try {
        IdealDecomposition d = zcr_certificate(p, problem.decomposition);
        r["is_zcr"] = true;
        r["certificate_source"] = "supplied";
        r["certificate"] = decomposition_to_json(d);
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotAZcr)
          throw;
        r["is_zcr"] = false;
        r["certificate_source"] = "supplied";
        r["message"] = e.what();
      }
    } else {
      ZcrCheck c = is_zcr(p);
      r["is_zcr"] = c.is_zcr;
      r["normal"] = matrix_to_json(c.certificate.normal);
      r["certificate_source"] = "reducer";
      r["certificate"] = decomposition_to_json(c.certificate);
    }
    r["status"] = verdict(r["is_zcr"].get<bool>());
  } else if (command == "char-form") {
    CharacteristicFormResult cf = characteristic_form(problem.zcr(), problem.decomposition);
    r["A_tilde"] = matrix_to_json(cf.A_tilde);
    r["B_tilde"] = matrix_to_json(cf.B_tilde);
    r["Q"] = list_to_json(cf.Q);
    r["A1"] = matrix_to_json(cf.A1);
    r["B1"] = matrix_to_json(cf.B1);
    r["decomposition"] = decomposition_to_json(cf.decomposition);
    r["identity_verified"] = cf.identity_verified;
  } else if (command == "char-element") {
    r["element"] = list_to_json(characteristic_element(problem.zcr(), problem.decomposition));
  } else if (command == "is-char-rep") {
    CharRepCheck c = is_characteristic_representative(problem.zcr());
    r["is_representative"] = c.is_representative;
    if (c.is_representative)
      r["Q"] = list_to_json(c.Q);
    else
      r["remainder"] = matrix_to_json(c.remainder);
    r["status"] = verdict(c.is_representative);
  } else if (command == "gauge") {
    ZCRPair p = problem.zcr();
    const MatrixFunction &h = require(problem.gauge, "gauge", command);
    ZCRPair q = gauge_transform(p, h);
    r["H"] = matrix_to_json(h);
    r["A"] = matrix_to_json(q.A);
    r["B"] = matrix_to_json(q.B);
    r["is_zcr"] = is_zcr(q).is_zcr;
  } else if (command == "euler-check") {
    MatrixConditionReport c = check_gauge_euler_condition(problem.zcr());
    r["results"] = matrix_results(c);
    r["status"] = verdict(c.passed());
  } else if (command == "nec-check") {
    ZCRPair p = problem.zcr();
    std::vector<MatrixFunction> chi;
    if (problem.Q) {
      chi = *problem.Q;
      r["chi_source"] = "Q";
    } else {
      chi = characteristic_element(p, problem.decomposition);
      r["chi_source"] = "characteristic_element";
    }
    r["chi"] = list_to_json(chi);
    MatrixConditionReport c = char_element_nec_check(p, chi);
    r["results"] = matrix_results(c);
    r["status"] = verdict(c.passed());
  } else if (command == "cosymmetry") {
    const auto &psi = require(problem.psi, "psi", command);
    ScalarConditionReport c = cosymmetry_check(psi, sys);
    r["psi"] = list_to_json(psi);
    Json a = Json::array();
    for (std::size_t k = 0; k < c.normal.size(); ++k)
      a.push_back({{"k", k + 1},
                   {"pass", c.normal[k].is_zero()},
                   {"normal", to_string(c.normal[k])}});
    r["results"] = a;
    r["status"] = verdict(c.passed());
  } else if (command == "abelian-check") {
    const auto &q = require(problem.Q, "Q", command);
    MatrixConditionReport c = abelian_characteristic_condition(q, sys, *problem.g);
    r["Q"] = list_to_json(q);
    Json a = Json::array();
    for (std::size_t k = 0; k < c.normal.size(); ++k)
      a.push_back({{"k", k + 1},
                   {"pass", c.normal[k].is_zero()},
                   {"value", matrix_to_json(c.normal[k])}});
    r["results"] = a;
    r["status"] = verdict(c.passed());
  } else if (command == "conservation") {
    const Current &cur = require(problem.current, "current", command);
    r["P1"] = to_string(cur.P1);
    r["P2"] = to_string(cur.P2);
    DiffFunction div = normal_form(divergence(cur.P1, cur.P2), sys);
    r["divergence_normal"] = to_string(div);
    r["conserved"] = div.is_zero();
    if (div.is_zero())
      r["psi"] = list_to_json(generating_function(cur.P1, cur.P2, sys));
    r["status"] = verdict(div.is_zero());
  } else if (command == "shift") {
    const Current &cur = require(problem.current, "current", command);
    if (!opts.R)
      throw Error(ErrorKind::InvalidInput, "command 'shift' needs --R <expr>");
    DiffFunction rr = parse_expr(*opts.R, sys.dependents());
    auto [p1, p2] = current_shift(cur.P1, cur.P2, rr);
    r["R"] = to_string(rr);
    r["P1"] = to_string(p1);
    r["P2"] = to_string(p2);
    bool conserved = in_ideal(divergence(cur.P1, cur.P2), sys);
    r["conserved"] = conserved;
    if (conserved) {
      r["psi_before"] = list_to_json(generating_function(cur.P1, cur.P2, sys));
      r["psi_after"] = list_to_json(generating_function(p1, p2, sys));
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown command '" + command + "'");
  }
  return r;
}

namespace {

bool is_matrix(const Json &j)
{
  if (!j.is_array() || j.empty())
    return false;
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != j.size())
      return false;
    for (const auto &e : row)
      if (!e.is_string())
        return false;
  }
  return true;
}

std::string inline_value(const Json &j)
{
  if (j.is_string())
    return j.get<std::string>();
  if (is_matrix(j)) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      s += i ? ", [" : "[";
      for (std::size_t k = 0; k < j[i].size(); ++k)
        s += (k ? ", " : "") + j[i][k].get<std::string>();
      s += "]";
    }
    return s + "]";
  }
  return j.dump();
}

void render_text(const Json &j, std::ostream &out, int indent)
{
  std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto &[key, value] : j.items()) {
    if (value.is_object() && !value.empty()) {
      out << pad << key << ":\n";
      render_text(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && !is_matrix(value)) {
      out << pad << key << ":\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object()) {
          out << pad << "  -\n";
          render_text(value[i], out, indent + 4);
        } else {
          out << pad << "  [" << i + 1 << "] " << inline_value(value[i]) << "\n";
        }
      }
    } else {
      out << pad << key << ": " << inline_value(value) << "\n";
    }
  }
}

} // namespace

ExitCode run_command(const std::string &command, const std::string &problem_path,
                     const CliOptions &opts, std::ostream &out, std::ostream &err)
{
  auto start = std::chrono::steady_clock::now();
  Json report;
  ExitCode code = ExitCode::Pass;
  std::string problem_name = std::filesystem::path(problem_path).filename().string();
  try {
    Problem problem = load_problem(problem_path, opts.depth_limit);
    Json body = build_report(command, problem, opts);
    report["command"] = command;
    report["problem"] = problem_name;
    for (auto &[key, value] : body.items())
      if (key != "command")
        report[key] = std::move(value);
    if (report["status"] == "fail")
      code = ExitCode::Fail;
  } catch (const Error &e) {
    report = Json::object();
    report["command"] = command;
    report["problem"] = problem_name;
    if (e.kind() == ErrorKind::NotAZcr || e.kind() == ErrorKind::NotConserved) {
      report["status"] = "fail";
      code = ExitCode::Fail;
    } else {
      report["status"] = "error";
      code = ExitCode::InputError;
    }
    report["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    err << "jetzcr: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
  }
  if (opts.timing) {
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    report["timing_ms"] = static_cast<long>(ms * 1000) / 1000.0;
  }
  if (opts.json)
    out << report.dump(2) << "\n";
  else
    render_text(report, out, 0);
  return code;
}

int cli_main(int argc, char **argv)
{
  CLI::App app{"Zero-curvature representations and conservation laws on jet spaces"};
  app.name("jetzcr");
  std::string command, path, format = "text";
  CliOptions opts;
  bool no_timing = false;
  std::string r;
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("problem", path, "Problem file (JSON)")->required();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timing", no_timing, "Omit timing from the report");
  app.add_option("--depth-limit", opts.depth_limit, "Bound on reduction steps")
      ->check(CLI::PositiveNumber);
  auto *ropt = app.add_option("--R", r, "Expression R for the shift command");
  app.footer("Commands: check-zcr char-form char-element is-char-rep gauge euler-check\n"
             "          nec-check cosymmetry abelian-check conservation shift\n"
             "Exit status: 0 pass or computed, 1 fail, 2 input error.");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }
  opts.json = format == "json";
  opts.timing = !no_timing;
  if (*ropt)
    opts.R = r;
  return static_cast<int>(run_command(command, path, opts, std::cout, std::cerr));
}

} // namespace jetzcr
