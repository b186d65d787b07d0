#include "granular/ode.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>

#include "granular/errors.hpp"
#include "granular/ftransform.hpp"
#include "granular/text.hpp"

namespace granular {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite(std::span<const double> x, std::size_t node, double u) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw DivergenceError("non-finite state at node " + std::to_string(node) + " (u=" + text::shortest(u) + ")",
                            node, kNaN, kNaN);
    }
  }
}

// Node-major scratch trajectory: x[node * n + var].
class Stepper {
 public:
  Stepper(const CrispIVP& ivp, const FuzzyPartition& p, const SolverOptions& opts)
      : ivp_(ivp), p_(p), opts_(opts), n_(ivp.dimension), x_(p.size() * ivp.dimension) {
    std::copy(ivp.init.begin(), ivp.init.end(), x_.begin());
    require_finite(state(0), 0, p.a());
  }

  std::vector<double> run(Method method) {
    switch (method) {
      case Method::euler:
        euler();
        break;
      case Method::ft_midpoint:
        leapfrog();
        break;
      case Method::reference:
        rk4();
        break;
    }
    return std::move(x_);
  }

 private:
  std::span<double> state(std::size_t node) { return {x_.data() + node * n_, n_}; }

  void eval(double u, std::span<const double> x, std::span<double> dx) const { ivp_.rhs(u, x, ivp_.params, dx); }

  void euler() {
    std::vector<double> dx(n_);
    const double h = p_.h();
    for (std::size_t i = 0; i + 1 < p_.size(); ++i) {
      eval(p_.node(i), state(i), dx);
      auto next = state(i + 1);
      auto cur = state(i);
      for (std::size_t v = 0; v < n_; ++v) next[v] = cur[v] + h * dx[v];
      require_finite(next, i + 1, p_.node(i + 1));
    }
  }

  // P_i-weighted mean of rhs(u, X_i) over the support of P_i.
  void component(std::size_t i, std::span<const double> x, std::span<double> out) {
    if (ivp_.autonomous) {
      eval(p_.node(i), x, out);
      return;
    }
    if (!weights_) {
      weights_.emplace(p_, opts_.quadrature);
      abscissae_ = quadrature_points(p_, opts_.quadrature);
      samples_.assign(n_, std::vector<double>(weights_->sample_count()));
    }
    std::vector<double> dx(n_);
    for (std::size_t k = weights_->first_sample(i); k <= weights_->last_sample(i); ++k) {
      eval(abscissae_[k], x, dx);
      for (std::size_t v = 0; v < n_; ++v) samples_[v][k] = dx[v];
    }
    for (std::size_t v = 0; v < n_; ++v) out[v] = weights_->component(i, samples_[v]);
  }

  void leapfrog() {
    std::vector<double> f(n_);
    const double h = p_.h();
    component(0, state(0), f);
    for (std::size_t v = 0; v < n_; ++v) state(1)[v] = state(0)[v] + h * f[v];
    require_finite(state(1), 1, p_.node(1));
    for (std::size_t i = 1; i + 1 < p_.size(); ++i) {
      component(i, state(i), f);
      auto next = state(i + 1);
      auto prev = state(i - 1);
      for (std::size_t v = 0; v < n_; ++v) next[v] = prev[v] + 2.0 * h * f[v];
      require_finite(next, i + 1, p_.node(i + 1));
    }
  }

  void rk4() {
    const std::size_t r = opts_.refinement;
    std::vector<double> x(n_), k1(n_), k2(n_), k3(n_), k4(n_), tmp(n_);
    auto cur = state(0);
    std::copy(cur.begin(), cur.end(), x.begin());
    for (std::size_t i = 0; i + 1 < p_.size(); ++i) {
      const double u0 = p_.node(i);
      const double dt = (p_.node(i + 1) - u0) / static_cast<double>(r);
      for (std::size_t j = 0; j < r; ++j) {
        const double u = u0 + static_cast<double>(j) * dt;
        eval(u, x, k1);
        for (std::size_t v = 0; v < n_; ++v) tmp[v] = x[v] + 0.5 * dt * k1[v];
        eval(u + 0.5 * dt, tmp, k2);
        for (std::size_t v = 0; v < n_; ++v) tmp[v] = x[v] + 0.5 * dt * k2[v];
        eval(u + 0.5 * dt, tmp, k3);
        for (std::size_t v = 0; v < n_; ++v) tmp[v] = x[v] + dt * k3[v];
        eval(u + dt, tmp, k4);
        for (std::size_t v = 0; v < n_; ++v) x[v] += dt / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);
      }
      auto next = state(i + 1);
      std::copy(x.begin(), x.end(), next.begin());
      require_finite(next, i + 1, p_.node(i + 1));
    }
  }

  const CrispIVP& ivp_;
  const FuzzyPartition& p_;
  const SolverOptions& opts_;
  std::size_t n_;
  std::vector<double> x_;
  std::optional<TransformWeights> weights_;
  std::vector<double> abscissae_;
  std::vector<std::vector<double>> samples_;
};

void validate_crisp(const CrispIVP& ivp) {
  if (ivp.dimension == 0) throw ValidationError("an IVP needs at least one state variable");
  if (!ivp.rhs) throw ValidationError("an IVP needs a right-hand side");
  if (ivp.init.size() != ivp.dimension) throw ShapeError("initial state size differs from the dimension");
}

void validate_options(const SolverOptions& opts, Method method) {
  if (method == Method::reference && opts.refinement == 0) throw ValidationError("refinement must be >= 1");
  opts.quadrature.validate();
}

std::vector<double> solve_slice(const CrispIVP& ivp, const FuzzyPartition& p, Method method,
                                const SolverOptions& opts) {
  return Stepper(ivp, p, opts).run(method);
}

}  // namespace

void FuzzyIVP::validate() const {
  if (dimension == 0) throw ValidationError("an IVP needs at least one state variable");
  if (!rhs) throw ValidationError("an IVP needs a right-hand side");
  if (init.size() != dimension) throw ShapeError("initial grids differ in count from the dimension");
  if (!state_names.empty() && state_names.size() != dimension) throw ShapeError("state names differ in count");
  if (!param_names.empty() && param_names.size() != params.size()) throw ShapeError("parameter names differ in count");
  if (!(a < b)) throw ValidationError("an IVP needs a < b");
  for (const auto& g : init) {
    if (!(g.spec() == spec())) throw ShapeError("initial grids use different grid specs");
  }
  for (const auto& g : params) {
    if (!(g.spec() == spec())) throw ShapeError("parameter grids use a different grid spec");
  }
}

CrispIVP slice_of(const FuzzyIVP& ivp, std::size_t slice) {
  CrispIVP out{ivp.dimension, ivp.rhs, std::vector<double>(ivp.params.size()), std::vector<double>(ivp.dimension),
               ivp.autonomous};
  for (std::size_t j = 0; j < ivp.params.size(); ++j) out.params[j] = ivp.params[j][slice];
  for (std::size_t v = 0; v < ivp.dimension; ++v) out.init[v] = ivp.init[v][slice];
  return out;
}

CrispTrajectory FuzzyTrajectory::slice(std::size_t s) const {
  CrispTrajectory out{partition, std::vector<std::vector<double>>(states.size())};
  for (std::size_t v = 0; v < states.size(); ++v) {
    out.states[v].reserve(states[v].size());
    for (const auto& g : states[v]) out.states[v].push_back(g[s]);
  }
  return out;
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::euler:
      return "euler";
    case Method::ft_midpoint:
      return "ft-midpoint";
    case Method::reference:
      return "reference";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::euler;
  if (name == "ft-midpoint" || name == "ft_midpoint" || name == "ft") return Method::ft_midpoint;
  if (name == "reference" || name == "rk4") return Method::reference;
  throw ValidationError("unknown method '" + std::string(name) + "' (expected euler, ft-midpoint or reference)");
}

CrispTrajectory solve_crisp(const CrispIVP& ivp, const FuzzyPartition& p, Method method, const SolverOptions& opts) {
  validate_crisp(ivp);
  validate_options(opts, method);
  const auto x = solve_slice(ivp, p, method, opts);
  const std::size_t n = ivp.dimension;
  CrispTrajectory out{p, std::vector<std::vector<double>>(n, std::vector<double>(p.size()))};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) out.states[v][i] = x[i * n + v];
  }
  return out;
}

FuzzyTrajectory solve(const FuzzyIVP& ivp, const FuzzyPartition& p, Method method, const SolverOptions& opts) {
  ivp.validate();
  validate_options(opts, method);
  if (p.a() != ivp.a || p.b() != ivp.b) {
    throw ValidationError("partition interval [" + text::shortest(p.a()) + "," + text::shortest(p.b()) +
                          "] differs from the IVP interval");
  }
  const GridSpec& spec = ivp.spec();
  const std::size_t slices = spec.slice_count();
  const std::size_t n = ivp.dimension;
  const std::size_t m = p.size();

  std::vector<std::vector<double>> results(slices);
  std::vector<std::exception_ptr> errors(slices);
  const long long count = static_cast<long long>(slices);
#pragma omp parallel for schedule(dynamic) if (opts.execution == Execution::parallel)
  for (long long s = 0; s < count; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    try {
      results[idx] = solve_slice(slice_of(ivp, idx), p, method, opts);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (std::size_t s = 0; s < slices; ++s) {
    if (!errors[s]) continue;
    try {
      std::rethrow_exception(errors[s]);
    } catch (const DivergenceError& e) {
      const double alpha = spec.alpha_of(s);
      const double mu = spec.mu_of(s);
      throw DivergenceError(std::string(to_string(method)) + ": " + e.what() + " at alpha=" + text::shortest(alpha) +
                                ", mu=" + text::shortest(mu),
                            e.node(), alpha, mu);
    }
  }

  FuzzyTrajectory out{p, ivp.state_names, std::vector<std::vector<GranularGrid>>(n)};
  if (out.state_names.empty()) {
    for (std::size_t v = 0; v < n; ++v) out.state_names.push_back("x" + std::to_string(v + 1));
  }
  std::vector<double> buffer(slices);
  for (std::size_t v = 0; v < n; ++v) {
    out.states[v].reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < slices; ++s) buffer[s] = results[s][i * n + v];
      out.states[v].emplace_back(spec, buffer);
    }
  }
  return out;
}

FuzzyTrajectory solve_reference(const FuzzyIVP& ivp, const FuzzyPartition& p, std::size_t refinement,
                                SolverOptions opts) {
  opts.refinement = refinement;
  return solve(ivp, p, Method::reference, opts);
}

double rms_error(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("RMS needs sequences of equal length");
  if (x.empty()) throw ValidationError("RMS of empty sequences");
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(sum / static_cast<double>(x.size()));
}

void write_csv(std::ostream& out, const FuzzyTrajectory& t) {
  out << "state,u,alpha,mu,value\n";
  const auto& spec = t.spec();
  for (std::size_t v = 0; v < t.states.size(); ++v) {
    for (std::size_t i = 0; i < t.partition.size(); ++i) {
      const std::string prefix = t.state_names[v] + ',' + text::shortest(t.partition.node(i)) + ',';
      for (std::size_t s = 0; s < spec.slice_count(); ++s) {
        out << prefix << text::shortest(spec.alpha_of(s)) << ',' << text::shortest(spec.mu_of(s)) << ','
            << text::shortest(t.states[v][i][s]) << '\n';
      }
    }
  }
}

}  // namespace granular
