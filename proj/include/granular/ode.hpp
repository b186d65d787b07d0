#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "granular/execution.hpp"
#include "granular/grid.hpp"
#include "granular/partition.hpp"

namespace granular {

/// dx = f(u, x; params) for one crisp (alpha, mu) slice.
using RhsFn = std::function<void(double u, std::span<const double> x, std::span<const double> params,
                                 std::span<double> dx)>;

/// Initial-value problem whose parameters and initial values are granular grids on one spec.
struct FuzzyIVP {
  std::size_t dimension = 0;
  RhsFn rhs;
  std::vector<std::string> state_names;  ///< defaults to x1, x2, ... when empty
  std::vector<std::string> param_names;
  std::vector<GranularGrid> params;
  std::vector<GranularGrid> init;
  double a = 0.0;
  double b = 1.0;
  bool autonomous = true;

  const GridSpec& spec() const { return init.front().spec(); }
  void validate() const;
};

/// One (alpha, mu) slice of a FuzzyIVP.
struct CrispIVP {
  std::size_t dimension = 0;
  RhsFn rhs;
  std::vector<double> params;
  std::vector<double> init;
  bool autonomous = true;
};

CrispIVP slice_of(const FuzzyIVP& ivp, std::size_t slice);

struct CrispTrajectory {
  FuzzyPartition partition;
  std::vector<std::vector<double>> states;  ///< states[variable][node]
};

struct FuzzyTrajectory {
  FuzzyPartition partition;
  std::vector<std::string> state_names;
  std::vector<std::vector<GranularGrid>> states;  ///< states[variable][node]

  const GridSpec& spec() const { return states.front().front().spec(); }
  /// The crisp trajectory of one slice.
  CrispTrajectory slice(std::size_t slice) const;
};

enum class Method { euler, ft_midpoint, reference };

const char* to_string(Method m) noexcept;
/// Accepts "euler", "ft-midpoint" (or "ft_midpoint", "ft") and "reference" (or "rk4").
Method parse_method(std::string_view name);

struct SolverOptions {
  std::size_t refinement = 10;  ///< reference steps per partition gap
  Quadrature quadrature{};      ///< F-hat quadrature for non-autonomous right-hand sides
  Execution execution = Execution::parallel;
};

/// Throws DivergenceError (alpha and mu set to NaN) at the first node with a non-finite state.
CrispTrajectory solve_crisp(const CrispIVP& ivp, const FuzzyPartition& p, Method method,
                            const SolverOptions& opts = {});

/// Solves every slice independently. On divergence, rethrows the error of the lowest diverging
/// slice with its alpha and mu filled in.
FuzzyTrajectory solve(const FuzzyIVP& ivp, const FuzzyPartition& p, Method method, const SolverOptions& opts = {});

/// X_1 = init, X_2 = X_1 + h F_1, X_{i+1} = X_{i-1} + 2h F_i, with F_i the P_i-weighted mean of
/// the right-hand side at the frozen state X_i (rhs(u_i, X_i) when autonomous).
inline FuzzyTrajectory solve_ft_euler_midpoint(const FuzzyIVP& ivp, const FuzzyPartition& p,
                                               const SolverOptions& opts = {}) {
  return solve(ivp, p, Method::ft_midpoint, opts);
}

inline FuzzyTrajectory solve_euler(const FuzzyIVP& ivp, const FuzzyPartition& p, const SolverOptions& opts = {}) {
  return solve(ivp, p, Method::euler, opts);
}

/// Classical RK4 with `refinement` substeps per gap, sampled at the partition nodes.
FuzzyTrajectory solve_reference(const FuzzyIVP& ivp, const FuzzyPartition& p, std::size_t refinement,
                                SolverOptions opts = {});

/// sqrt(mean((x_k - y_k)^2)). Throws ShapeError on length mismatch.
double rms_error(std::span<const double> x, std::span<const double> y);

/// Long format `state,u,alpha,mu,value`, ordered by state, node, then slice.
void write_csv(std::ostream& out, const FuzzyTrajectory& t);

}  // namespace granular
