#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "granular/grid.hpp"
#include "granular/ode.hpp"
#include "granular/partition.hpp"
#include "granular/prey_predator.hpp"

namespace granular::cli {

/// Everything a subcommand needs, after validation.
struct RunConfig {
  std::string name;
  std::optional<model::ModelParams> model;
  std::string function;  ///< demo function for ftransform
  GridSpec grid;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> h;
  std::optional<std::size_t> m;
  std::vector<Method> methods{Method::ft_midpoint, Method::euler, Method::reference};
  std::size_t refinement = 10;
  Quadrature quadrature{};

  /// Partition from h when set, otherwise from m (default 101 nodes).
  FuzzyPartition partition() const;
  const model::ModelParams& require_model() const;
};

/// Names of the configs shipped with the tool.
std::vector<std::string> builtin_names();
/// JSON text of a built-in config. Throws ValidationError for unknown names.
std::string builtin_json(std::string_view name);

/// Parses JSON config text. Throws ValidationError with the offending key.
RunConfig parse_config(std::string_view json_text);

/// A built-in name or a path to a JSON file.
RunConfig load_config(const std::string& name_or_path);

}  // namespace granular::cli
