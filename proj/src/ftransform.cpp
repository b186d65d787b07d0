#include "granular/ftransform.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular {
namespace {

double hat_integral(const FuzzyPartition& p, std::size_t i) {
  return (i == 0 || i + 1 == p.size()) ? p.h() / 2.0 : p.h();
}

void require_aligned(const SampledFuzzyFunction& g, const FuzzyPartition& p, const Quadrature& quad) {
  const auto expected = quadrature_points(p, quad);
  if (g.u.size() != expected.size()) {
    throw ShapeError("fuzzy function has " + std::to_string(g.u.size()) + " samples, the quadrature needs " +
                     std::to_string(expected.size()));
  }
  const double tol = 1e-12 * (p.b() - p.a());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (std::abs(g.u[k] - expected[k]) > tol) {
      throw ShapeError("fuzzy function sample u=" + text::shortest(g.u[k]) +
                       " is not the quadrature abscissa " + text::shortest(expected[k]));
    }
  }
}

// Pointwise evaluation of the two active hats, identical for crisp and granular inverses.
struct ActiveHats {
  std::size_t left;
  double w_left;
  double w_right;
};

ActiveHats active_hats(const FuzzyPartition& p, double u) {
  if (!(u >= p.a() && u <= p.b())) {
    throw DomainError("u=" + text::shortest(u) + " lies outside [" + text::shortest(p.a()) + "," +
                      text::shortest(p.b()) + "]");
  }
  const std::size_t j = p.cell_of(u);
  return {j, basic_eval(p, j, u), basic_eval(p, j + 1, u)};
}

}  // namespace

void SampledFuzzyFunction::validate() const {
  if (u.size() < 2) throw ValidationError("a sampled fuzzy function needs at least two samples");
  if (u.size() != grids.size()) throw ShapeError("sample abscissae and grids differ in count");
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (!(u[k] > u[k - 1])) throw ValidationError("sample abscissae must be strictly increasing");
    if (!(grids[k].spec() == grids[0].spec())) throw ShapeError("samples use different grid specs");
  }
}

SampledFuzzyFunction sample(const FuzzyFunction& g, const GridSpec& spec, std::vector<double> u) {
  SampledFuzzyFunction out{std::move(u), {}};
  out.grids.reserve(out.u.size());
  for (double x : out.u) {
    out.grids.push_back(GranularGrid::generate(spec, [&](double alpha, double mu) { return g(x, alpha, mu); }));
  }
  out.validate();
  return out;
}

SampledFuzzyFunction sample_on_partition(const FuzzyFunction& g, const GridSpec& spec, const FuzzyPartition& p,
                                         const Quadrature& quad) {
  return sample(g, spec, quadrature_points(p, quad));
}

TransformWeights::TransformWeights(const FuzzyPartition& p, const Quadrature& quad)
    : sample_count_((p.size() - 1) * quad.subintervals + 1), stride_(quad.subintervals) {
  const auto w = quadrature_weights(p, quad);
  const std::size_t m = p.size();
  const double n = static_cast<double>(stride_);
  first_.resize(m);
  weights_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t centre = i * stride_;
    const std::size_t lo = i == 0 ? 0 : centre - stride_;
    const std::size_t hi = i + 1 == m ? centre : centre + stride_;
    const double denom = hat_integral(p, i);
    first_[i] = lo;
    auto& row = weights_[i];
    row.resize(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
      const double offset = std::abs(static_cast<double>(k) - static_cast<double>(centre));
      row[k - lo] = w[k] * (1.0 - offset / n) / denom;
    }
  }
}

double TransformWeights::component(std::size_t i, std::span<const double> values) const {
  const auto& row = weights_[i];
  const double* v = values.data() + first_[i];
  double sum = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) sum += row[k] * v[k];
  return sum;
}

CrispComponents ftransform(const CrispFunction& f, const FuzzyPartition& p, const Quadrature& quad) {
  const auto u = quadrature_points(p, quad);
  std::vector<double> values(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) values[k] = f(u[k]);
  return ftransform_samples(values, p, quad);
}

CrispComponents ftransform_samples(std::span<const double> values, const FuzzyPartition& p,
                                   const Quadrature& quad) {
  const TransformWeights weights(p, quad);
  if (values.size() != weights.sample_count()) {
    throw ShapeError("expected " + std::to_string(weights.sample_count()) + " samples, got " +
                     std::to_string(values.size()));
  }
  CrispComponents out{p, std::vector<double>(p.size())};
  for (std::size_t i = 0; i < p.size(); ++i) out.values[i] = weights.component(i, values);
  return out;
}

double inverse_ftransform(const CrispComponents& c, double u) {
  const auto hats = active_hats(c.partition, u);
  return c.values[hats.left] * hats.w_left + c.values[hats.left + 1] * hats.w_right;
}

GranularComponents granular_ftransform(const SampledFuzzyFunction& g, const FuzzyPartition& p,
                                       const Quadrature& quad, Execution exec) {
  g.validate();
  require_aligned(g, p, quad);
  const TransformWeights weights(p, quad);
  const GridSpec& spec = g.spec();
  const std::size_t slices = spec.slice_count();
  const std::size_t samples = g.u.size();
  const std::size_t m = p.size();

  std::vector<std::vector<double>> component_values(m, std::vector<double>(slices));
  const long long count = static_cast<long long>(slices);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (long long s = 0; s < count; ++s) {
    std::vector<double> slice_values(samples);
    for (std::size_t k = 0; k < samples; ++k) slice_values[k] = g.grids[k][static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < m; ++i) {
      component_values[i][static_cast<std::size_t>(s)] = weights.component(i, slice_values);
    }
  }

  GranularComponents out{p, {}};
  out.values.reserve(m);
  for (auto& v : component_values) out.values.emplace_back(spec, std::move(v));
  return out;
}

GranularGrid granular_inverse_ftransform(const GranularComponents& c, double u) {
  const auto hats = active_hats(c.partition, u);
  const auto left = c.values[hats.left].values();
  const auto right = c.values[hats.left + 1].values();
  std::vector<double> out(left.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = left[s] * hats.w_left + right[s] * hats.w_right;
  return GranularGrid(c.spec(), std::move(out));
}

double modulus_of_continuity(const SampledFuzzyFunction& g, double delta, MuPairing pairing) {
  if (!(delta > 0.0)) throw ValidationError("modulus of continuity needs delta > 0");
  g.validate();
  const double reach = delta * (1.0 + 1e-12) + 1e-15;
  double omega = 0.0;
  for (std::size_t k = 0; k < g.u.size(); ++k) {
    for (std::size_t l = k; l < g.u.size() && g.u[l] - g.u[k] <= reach; ++l) {
      omega = std::max(omega, gr_distance(g.grids[k], g.grids[l], pairing));
    }
  }
  return omega;
}

namespace {

std::vector<double> merged_abscissae(std::vector<double> x, const std::vector<double>& y, double span) {
  x.insert(x.end(), y.begin(), y.end());
  std::sort(x.begin(), x.end());
  const double tol = 1e-12 * span;
  std::vector<double> out;
  for (double v : x) {
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  }
  return out;
}

struct ComponentCheck {
  double omega;
  double distance;
};

// d(g(u), F_i) and d(g(u), F_{i+1}) for every sample u in [u_i, u_{i+1}].
ComponentCheck check_components(const SampledFuzzyFunction& all, const GranularComponents& components,
                                const BoundOptions& opts) {
  const FuzzyPartition& p = components.partition;
  ComponentCheck out{modulus_of_continuity(all, 2.0 * p.h(), opts.pairing), 0.0};
  for (std::size_t k = 0; k < all.u.size(); ++k) {
    const std::size_t j = p.cell_of(all.u[k]);
    const bool on_node = all.u[k] == p.node(j + 1);
    for (std::size_t i : {j, j + 1}) {
      out.distance = std::max(out.distance, gr_distance(all.grids[k], components.values[i], opts.pairing));
    }
    // A sample on u_{j+1} also belongs to the next gap.
    if (on_node && j + 2 < p.size()) {
      out.distance = std::max(out.distance, gr_distance(all.grids[k], components.values[j + 2], opts.pairing));
    }
  }
  return out;
}

}  // namespace

BoundReport check_bounds(const FuzzyFunction& g, const GridSpec& spec, const FuzzyPartition& p,
                         const FuzzyPartition& p_alt, const BoundOptions& opts) {
  if (p.size() < 3 || p_alt.size() < 3) throw UnsupportedError("bound checks need partitions with m >= 3");
  if (p.a() != p_alt.a() || p.b() != p_alt.b()) throw ValidationError("bound checks need a common interval");

  const double span = p.b() - p.a();
  const auto all = sample(g, spec,
                          merged_abscissae(quadrature_points(p, opts.quadrature),
                                           quadrature_points(p_alt, opts.quadrature), span));

  const auto c1 =
      granular_ftransform(sample_on_partition(g, spec, p, opts.quadrature), p, opts.quadrature, Execution::serial);
  const auto c2 = granular_ftransform(sample_on_partition(g, spec, p_alt, opts.quadrature), p_alt,
                                      opts.quadrature, Execution::serial);

  BoundReport r;
  const auto first = check_components(all, c1, opts);
  const auto second = check_components(all, c2, opts);
  r.omega = first.omega;
  r.omega_alt = second.omega;
  r.component_distance = first.distance;
  r.component_distance_alt = second.distance;
  r.component_slack = std::min(first.omega - first.distance, second.omega - second.distance);
  r.component_holds = r.component_slack >= -opts.slack;

  for (double u : all.u) {
    r.inverse_distance = std::max(r.inverse_distance, gr_distance(granular_inverse_ftransform(c1, u),
                                                                       granular_inverse_ftransform(c2, u),
                                                                       opts.pairing));
  }
  r.inverse_bound = 2.0 * modulus_of_continuity(all, 2.0 * std::max(p.h(), p_alt.h()), opts.pairing);
  r.inverse_slack = r.inverse_bound - r.inverse_distance;
  r.inverse_holds = r.inverse_slack >= -opts.slack;
  return r;
}

void write_csv(std::ostream& out, const CrispComponents& c) {
  out << "component,u,value\n";
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    out << i + 1 << ',' << text::shortest(c.partition.node(i)) << ',' << text::shortest(c.values[i]) << '\n';
  }
}

void write_csv(std::ostream& out, const GranularComponents& c) {
  out << "component,u,alpha,mu,value\n";
  const auto& spec = c.spec();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    for (std::size_t s = 0; s < spec.slice_count(); ++s) {
      out << i + 1 << ',' << text::shortest(c.partition.node(i)) << ',' << text::shortest(spec.alpha_of(s)) << ','
          << text::shortest(spec.mu_of(s)) << ',' << text::shortest(c.values[i][s]) << '\n';
    }
  }
}

}  // namespace granular
