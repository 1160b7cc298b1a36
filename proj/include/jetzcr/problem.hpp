#pragma once

#include "jetzcr/zcr.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace jetzcr {

using Json = nlohmann::ordered_json;

struct Current
{
  DiffFunction P1;
  DiffFunction P2;
};

/// A parsed problem file. Only the equation system and the algebra are
/// mandatory; each command checks for the optional parts it needs.
struct Problem
{
  SystemPtr sys;
  LieAlgebraPtr g;
  std::optional<MatrixFunction> A;
  std::optional<MatrixFunction> B;
  std::optional<MatrixFunction> gauge;
  std::optional<std::vector<MatrixFunction>> Q;
  std::optional<std::vector<DiffFunction>> psi;
  std::optional<IdealDecomposition> decomposition;
  std::optional<Current> current;

  /// Throws InvalidInput when A or B is missing.
  ZCRPair zcr() const;
};

LieAlgebraPtr parse_algebra(const Json &j);
SystemPtr parse_system(const Json &j, std::size_t depth_limit = kDefaultDepthLimit);

/// Errors carry the JSON path of the offending field in their message.
Problem parse_problem(const Json &j, std::size_t depth_limit = kDefaultDepthLimit);
Problem load_problem(const std::string &path, std::size_t depth_limit = kDefaultDepthLimit);

Json matrix_to_json(const MatrixFunction &m);
/// Inverse of matrix_to_json for a system with m dependents.
MatrixFunction matrix_from_json(const Json &j, int m = 1);
Json decomposition_to_json(const IdealDecomposition &d);

} // namespace jetzcr
