#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "granular/execution.hpp"
#include "granular/fuzzy_number.hpp"
#include "granular/grid.hpp"
#include "granular/linalg.hpp"
#include "granular/ode.hpp"

namespace granular::model {

/// Two prey (p, q) and one predator (r):
///   p' = a1 p (1 - p) - p r + p q r
///   q' = a2 q (1 - q) - q r + p q r
///   r' = -a3 r^2 + a4 p r + a5 q r
struct ModelParams {
  std::array<TriangularFuzzyNumber, 5> rates;  ///< a1..a5
  std::array<TriangularFuzzyNumber, 3> init;   ///< p0, q0, r0

  /// Throws ValidationError unless every number is a valid triangle with left > 0.
  void validate() const;
};

/// One (alpha, mu) slice of the rates.
struct Rates {
  double a1, a2, a3, a4, a5;
};

using State = std::array<double, 3>;

Rates rates_at(const ModelParams& params, double alpha, double mu);
State initial_state_at(const ModelParams& params, double alpha, double mu);

State rhs(const State& x, const Rates& k) noexcept;

inline constexpr std::size_t kEquilibriumCount = 8;

struct Equilibria {
  std::array<State, kEquilibriumCount> points;  ///< E0..E7
  /// The three printed existence inequalities for E7, in order.
  std::array<bool, 3> e7_conditions;
  bool e7_exists;
};

Equilibria equilibria(const Rates& k) noexcept;

Matrix3 variational_matrix(const State& x, const Rates& k) noexcept;

enum class Verdict { stable, unstable, inconclusive };
const char* to_string(Verdict v) noexcept;

/// Real parts below -threshold: stable; any above +threshold: unstable.
inline constexpr double kStabilityThreshold = 1e-9;
Verdict classify(const std::array<std::complex<double>, 3>& eigenvalues) noexcept;

struct PointStability {
  std::size_t index;  ///< k of E_k
  State point;
  bool exists;
  std::array<std::complex<double>, 3> eigenvalues;
  Verdict verdict;
  /// The closed-form conditions for this point, in printed order. E0..E3 have none and are unstable.
  std::vector<bool> conditions;
  bool closed_form_stable;
  bool agrees;  ///< closed_form_stable == (verdict == stable)
};

std::array<PointStability, kEquilibriumCount> local_stability(const Rates& k);

/// sum over components of x - x_e - x_e log(x / x_e). Throws DomainError for nonpositive components.
double lyapunov_value(const State& x, const State& equilibrium);

struct LyapunovSample {
  State state;
  double value;         ///< U
  double derivative;    ///< dU/dt in the simplified quadratic form
  double derivative_direct;  ///< sum (x - x_e)/x * x'
  bool same_sign;       ///< all deviations from E7 share one strict sign
};

struct LyapunovEvaluation {
  State equilibrium;
  bool e7_exists;
  bool a4_below_one;
  bool coupling_condition;  ///< a3 r_e / q_e < a4 p_e / q_e + 1
  bool conditions_hold;     ///< both of the above
  std::vector<LyapunovSample> samples;
  /// dU/dt < 0 at every sampled same-sign state (vacuously true with none).
  bool decreasing_on_same_sign;
  /// Same test on the direct derivative, which carries terms the simplified form drops.
  bool direct_decreasing_on_same_sign;
};

/// Evaluates U around E7. Throws DomainError if E7 or any sample has a nonpositive component.
LyapunovEvaluation lyapunov_check(const Rates& k, std::span<const State> states);

/// Per-slice equilibria over a grid, alpha-major like GridSpec slices.
struct EquilibriumTable {
  GridSpec spec;
  std::vector<Equilibria> slices;
};

EquilibriumTable equilibria(const ModelParams& params, const GridSpec& spec);

struct StabilityTable {
  GridSpec spec;
  std::vector<std::array<PointStability, kEquilibriumCount>> slices;
};

StabilityTable stability(const ModelParams& params, const GridSpec& spec, Execution exec = Execution::parallel);

/// The model as an autonomous FuzzyIVP on [a, b] with states p, q, r and parameters a1..a5.
FuzzyIVP make_ivp(const ModelParams& params, const GridSpec& spec, double a, double b);

FuzzyTrajectory simulate(const ModelParams& params, const GridSpec& spec, const FuzzyPartition& partition,
                         Method method, const SolverOptions& opts = {});

}  // namespace granular::model
