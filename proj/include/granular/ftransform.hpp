#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "granular/execution.hpp"
#include "granular/grid.hpp"
#include "granular/partition.hpp"

namespace granular {

using CrispFunction = std::function<double(double u)>;
using FuzzyFunction = std::function<double(double u, double alpha, double mu)>;

struct CrispComponents {
  FuzzyPartition partition;
  std::vector<double> values;
};

struct GranularComponents {
  FuzzyPartition partition;
  std::vector<GranularGrid> values;

  const GridSpec& spec() const { return values.front().spec(); }
};

/// A fuzzy function stored as grids at ordered abscissae.
struct SampledFuzzyFunction {
  std::vector<double> u;
  std::vector<GranularGrid> grids;

  const GridSpec& spec() const { return grids.front().spec(); }
  /// Throws ValidationError/ShapeError unless u is strictly increasing, sizes match and grids share a spec.
  void validate() const;
};

SampledFuzzyFunction sample(const FuzzyFunction& g, const GridSpec& spec, std::vector<double> u);

/// Samples g at the quadrature abscissae of (p, quad), the layout granular_ftransform expects.
SampledFuzzyFunction sample_on_partition(const FuzzyFunction& g, const GridSpec& spec,
                                         const FuzzyPartition& p, const Quadrature& quad = {});

/// Normalized weights P_i(u_k) w_k / integral(P_i) for every component of a partition.
///
/// Component i reads samples k in [(i-1)N, (i+1)N] of quadrature_points(p, quad).
/// Denominators are the closed-form hat integrals.
class TransformWeights {
 public:
  TransformWeights(const FuzzyPartition& p, const Quadrature& quad);

  std::size_t component_count() const noexcept { return first_.size(); }
  std::size_t sample_count() const noexcept { return sample_count_; }
  /// Index range [first, last] of the samples read by component i.
  std::size_t first_sample(std::size_t i) const { return first_[i]; }
  std::size_t last_sample(std::size_t i) const { return first_[i] + weights_[i].size() - 1; }

  /// F_i from values at all quadrature abscissae.
  double component(std::size_t i, std::span<const double> values) const;

 private:
  std::size_t sample_count_;
  std::size_t stride_;
  std::vector<std::size_t> first_;
  std::vector<std::vector<double>> weights_;
};

CrispComponents ftransform(const CrispFunction& f, const FuzzyPartition& p, const Quadrature& quad = {});

/// F-transform from values already sampled at quadrature_points(p, quad).
CrispComponents ftransform_samples(std::span<const double> values, const FuzzyPartition& p,
                                   const Quadrature& quad = {});

/// sum_i F_i P_i(u). Throws DomainError outside [a, b].
double inverse_ftransform(const CrispComponents& c, double u);

/// Componentwise per (alpha, mu) slice. g must be sampled at quadrature_points(p, quad).
GranularComponents granular_ftransform(const SampledFuzzyFunction& g, const FuzzyPartition& p,
                                       const Quadrature& quad = {},
                                       Execution exec = Execution::parallel);

GranularGrid granular_inverse_ftransform(const GranularComponents& c, double u);

/// max over sample pairs with |u_k - u_l| <= delta of the distance between their grids.
/// A lower bound of the continuous modulus; pairs include k = l.
double modulus_of_continuity(const SampledFuzzyFunction& g, double delta,
                             MuPairing pairing = MuPairing::matched);

struct BoundOptions {
  Quadrature quadrature{};
  MuPairing pairing = MuPairing::matched;
  double slack = 1e-9;
};

/// Result of checking the component bound d(g(u), F_i) <= omega(2h) on every gap of both
/// partitions, and the reconstruction bound d(g_m(u), g'_m(u)) <= 2 omega(2 h_max).
struct BoundReport {
  double omega = 0.0;          ///< omega(2h) for the first partition
  double omega_alt = 0.0;      ///< omega(2h') for the second partition
  double component_distance = 0.0;      ///< max d(g(u), F_i) over gaps, first partition
  double component_distance_alt = 0.0;  ///< same for the second partition
  double inverse_distance = 0.0;        ///< max d between the two reconstructions
  double inverse_bound = 0.0;           ///< 2 omega(2 max(h, h'))
  double component_slack = 0.0;         ///< min of omega - distance over both partitions
  double inverse_slack = 0.0;
  bool component_holds = false;
  bool inverse_holds = false;

  bool holds() const noexcept { return component_holds && inverse_holds; }
};

/// Both partitions need m >= 3 and the same interval. Moduli are taken over the union of both
/// sets of quadrature abscissae, where the reconstruction distances are also evaluated.
BoundReport check_bounds(const FuzzyFunction& g, const GridSpec& spec, const FuzzyPartition& p,
                         const FuzzyPartition& p_alt, const BoundOptions& opts = {});

/// `component,u,value` rows.
void write_csv(std::ostream& out, const CrispComponents& c);
/// Long format `component,u,alpha,mu,value`, alpha-major within each component.
void write_csv(std::ostream& out, const GranularComponents& c);

}  // namespace granular
