#include "granular/prey_predator.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular::model {
namespace {

double hmf(const TriangularFuzzyNumber& t, double alpha, double mu) {
  const auto cut = t.alpha_cut(alpha);
  return cut.lower + (cut.upper - cut.lower) * mu;
}

Rates from_span(std::span<const double> v) { return {v[0], v[1], v[2], v[3], v[4]}; }

}  // namespace

void ModelParams::validate() const {
  static constexpr const char* rate_names[] = {"a1", "a2", "a3", "a4", "a5"};
  static constexpr const char* init_names[] = {"p0", "q0", "r0"};
  const auto check = [](const TriangularFuzzyNumber& t, const char* name) {
    try {
      t.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(name) + ": " + e.what());
    }
    if (!(t.left > 0.0)) throw ValidationError(std::string(name) + " must be positive, got " + t.to_string());
  };
  for (std::size_t i = 0; i < rates.size(); ++i) check(rates[i], rate_names[i]);
  for (std::size_t i = 0; i < init.size(); ++i) check(init[i], init_names[i]);
}

Rates rates_at(const ModelParams& params, double alpha, double mu) {
  const auto& r = params.rates;
  return {hmf(r[0], alpha, mu), hmf(r[1], alpha, mu), hmf(r[2], alpha, mu), hmf(r[3], alpha, mu),
          hmf(r[4], alpha, mu)};
}

State initial_state_at(const ModelParams& params, double alpha, double mu) {
  return {hmf(params.init[0], alpha, mu), hmf(params.init[1], alpha, mu), hmf(params.init[2], alpha, mu)};
}

State rhs(const State& x, const Rates& k) noexcept {
  const auto [p, q, r] = x;
  return {k.a1 * p * (1.0 - p) - p * r + p * q * r,
          k.a2 * q * (1.0 - q) - q * r + p * q * r,
          -k.a3 * r * r + k.a4 * p * r + k.a5 * q * r};
}

Equilibria equilibria(const Rates& k) noexcept {
  Equilibria e{};
  e.points[0] = {0.0, 0.0, 0.0};
  e.points[1] = {1.0, 0.0, 0.0};
  e.points[2] = {0.0, 1.0, 0.0};
  e.points[3] = {1.0, 1.0, 0.0};

  const double d4 = k.a2 * k.a3 + k.a5;
  e.points[4] = {0.0, k.a2 * k.a3 / d4, k.a2 * k.a5 / d4};

  const double d5 = k.a1 * k.a3 + k.a4;
  e.points[5] = {k.a1 * k.a3 / d5, 0.0, k.a1 * k.a4 / d5};

  e.points[6] = {1.0, 1.0, (k.a4 + k.a5) / k.a3};

  const double ratio = std::sqrt(k.a2 / k.a1);
  const double geo = std::sqrt(k.a1 * k.a2);
  const double d7 = k.a5 + k.a4 * ratio;
  e.points[7] = {(k.a2 * k.a3 + k.a5 * (1.0 - ratio)) / d7, (k.a3 * geo - k.a4 * (1.0 - ratio)) / d7, geo};

  e.e7_conditions = {k.a3 * geo <= k.a4 + k.a5, k.a1 * k.a3 + k.a4 > k.a4 * ratio,
                     k.a2 * k.a3 + k.a5 > k.a5 * std::sqrt(k.a1 / k.a2)};
  e.e7_exists = e.e7_conditions[0] && e.e7_conditions[1] && e.e7_conditions[2];
  return e;
}

Matrix3 variational_matrix(const State& x, const Rates& k) noexcept {
  const auto [p, q, r] = x;
  return {{{k.a1 - 2.0 * k.a1 * p - r + q * r, p * r, -p + p * q},
           {q * r, k.a2 - 2.0 * k.a2 * q - r + p * r, -q + p * q},
           {k.a4 * r, k.a5 * r, -2.0 * k.a3 * r + k.a4 * p + k.a5 * q}}};
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::stable:
      return "stable";
    case Verdict::unstable:
      return "unstable";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict classify(const std::array<std::complex<double>, 3>& eigenvalues) noexcept {
  bool all_negative = true;
  for (const auto& z : eigenvalues) {
    if (z.real() > kStabilityThreshold) return Verdict::unstable;
    if (!(z.real() < -kStabilityThreshold)) all_negative = false;
  }
  return all_negative ? Verdict::stable : Verdict::inconclusive;
}

std::array<PointStability, kEquilibriumCount> local_stability(const Rates& k) {
  const auto eq = equilibria(k);
  const double d4 = k.a2 * k.a3 + k.a5;
  const double d5 = k.a1 * k.a3 + k.a4;

  std::array<PointStability, kEquilibriumCount> out;
  for (std::size_t i = 0; i < kEquilibriumCount; ++i) {
    auto& s = out[i];
    s.index = i;
    s.point = eq.points[i];
    s.exists = i < 7 || eq.e7_exists;
    s.eigenvalues = eigenvalues_3x3(variational_matrix(s.point, k));
    s.verdict = classify(s.eigenvalues);
    switch (i) {
      case 4:
        s.conditions = {k.a1 < k.a2 * k.a5 * k.a5 / (d4 * d4)};
        break;
      case 5:
        s.conditions = {k.a2 < k.a1 * k.a4 * k.a4 / (d5 * d5)};
        break;
      case 6:
        s.conditions = {k.a1 * k.a2 > (k.a4 + k.a5) * (k.a4 + k.a5) / (k.a3 * k.a3)};
        break;
      case 7:
        s.conditions = {k.a4 + k.a5 > k.a3 * std::sqrt(k.a1 * k.a2), k.a2 >= k.a1, k.a1 * k.a3 >= 1.0};
        break;
      default:
        break;
    }
    s.closed_form_stable = !s.conditions.empty();
    for (bool c : s.conditions) s.closed_form_stable = s.closed_form_stable && c;
    s.agrees = s.closed_form_stable == (s.verdict == Verdict::stable);
  }
  return out;
}

double lyapunov_value(const State& x, const State& equilibrium) {
  double u = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(x[i] > 0.0) || !(equilibrium[i] > 0.0)) {
      throw DomainError("Lyapunov function needs positive components, got " + text::shortest(x[i]) + " against " +
                        text::shortest(equilibrium[i]));
    }
    u += x[i] - equilibrium[i] - equilibrium[i] * std::log(x[i] / equilibrium[i]);
  }
  return u;
}

LyapunovEvaluation lyapunov_check(const Rates& k, std::span<const State> states) {
  const auto eq = equilibria(k);
  const State e = eq.points[7];
  for (double v : e) {
    if (!(v > 0.0)) throw DomainError("E7 has a nonpositive component; the Lyapunov function is undefined");
  }
  const auto [pe, qe, re] = e;

  LyapunovEvaluation out;
  out.equilibrium = e;
  out.e7_exists = eq.e7_exists;
  out.a4_below_one = k.a4 < 1.0;
  const double coupling = k.a3 * re / qe - k.a4 * pe / qe - 1.0;
  out.coupling_condition = coupling < 0.0;
  out.conditions_hold = out.a4_below_one && out.coupling_condition;
  out.decreasing_on_same_sign = true;
  out.direct_decreasing_on_same_sign = true;

  out.samples.reserve(states.size());
  for (const auto& x : states) {
    LyapunovSample s;
    s.state = x;
    s.value = lyapunov_value(x, e);
    const double dp = x[0] - pe;
    const double dq = x[1] - qe;
    const double dr = x[2] - re;
    s.derivative = -k.a1 * dp * dp - k.a2 * dq * dq - k.a3 * dr * dr + (k.a4 - 1.0) * dp * dr + coupling * dq * dr;
    const auto f = rhs(x, k);
    s.derivative_direct = dp / x[0] * f[0] + dq / x[1] * f[1] + dr / x[2] * f[2];
    s.same_sign = (dp > 0.0 && dq > 0.0 && dr > 0.0) || (dp < 0.0 && dq < 0.0 && dr < 0.0);
    if (s.same_sign && !(s.derivative < 0.0)) out.decreasing_on_same_sign = false;
    if (s.same_sign && !(s.derivative_direct < 0.0)) out.direct_decreasing_on_same_sign = false;
    out.samples.push_back(s);
  }
  return out;
}

EquilibriumTable equilibria(const ModelParams& params, const GridSpec& spec) {
  params.validate();
  EquilibriumTable out{spec, std::vector<Equilibria>(spec.slice_count())};
  for (std::size_t s = 0; s < spec.slice_count(); ++s) {
    out.slices[s] = equilibria(rates_at(params, spec.alpha_of(s), spec.mu_of(s)));
  }
  return out;
}

StabilityTable stability(const ModelParams& params, const GridSpec& spec, Execution exec) {
  params.validate();
  StabilityTable out{spec, std::vector<std::array<PointStability, kEquilibriumCount>>(spec.slice_count())};
  const long long count = static_cast<long long>(spec.slice_count());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (long long s = 0; s < count; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    out.slices[idx] = local_stability(rates_at(params, spec.alpha_of(idx), spec.mu_of(idx)));
  }
  return out;
}

FuzzyIVP make_ivp(const ModelParams& params, const GridSpec& spec, double a, double b) {
  params.validate();
  FuzzyIVP ivp;
  ivp.dimension = 3;
  ivp.rhs = [](double, std::span<const double> x, std::span<const double> k, std::span<double> dx) {
    const auto f = rhs({x[0], x[1], x[2]}, from_span(k));
    dx[0] = f[0];
    dx[1] = f[1];
    dx[2] = f[2];
  };
  ivp.state_names = {"p", "q", "r"};
  ivp.param_names = {"a1", "a2", "a3", "a4", "a5"};
  for (const auto& t : params.rates) ivp.params.push_back(hmf_from_triangular(t, spec));
  for (const auto& t : params.init) ivp.init.push_back(hmf_from_triangular(t, spec));
  ivp.a = a;
  ivp.b = b;
  ivp.autonomous = true;
  ivp.validate();
  return ivp;
}

FuzzyTrajectory simulate(const ModelParams& params, const GridSpec& spec, const FuzzyPartition& partition,
                         Method method, const SolverOptions& opts) {
  return solve(make_ivp(params, spec, partition.a(), partition.b()), partition, method, opts);
}

}  // namespace granular::model
