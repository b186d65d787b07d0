#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "granular/errors.hpp"
#include "granular/prey_predator.hpp"

using namespace granular;
using namespace granular::model;

namespace {

using T = TriangularFuzzyNumber;

ModelParams example(int which) {
  const std::array<T, 3> init{T::crisp(0.1), T::crisp(0.2), T::crisp(0.3)};
  switch (which) {
    case 1:
      return {{T{0.01, 0.02, 0.03}, T{2, 4, 6}, T{0.1, 0.2, 0.3}, T{3, 4, 5}, T{1, 2, 3}}, init};
    case 2:
      return {{T{2, 4, 6}, T{0.01, 0.02, 0.03}, T{0.1, 0.2, 0.3}, T{1, 2, 3}, T{3, 4, 5}}, init};
    case 3:
      return {{T{3, 4, 5}, T{2, 4, 6}, T{3, 4, 5}, T{1, 2, 3}, T{0.01, 0.02, 0.03}}, init};
    default:
      return {{T{1, 2, 3}, T{2, 4, 6}, T{1, 2, 3}, T{3, 4, 5}, T{1, 2, 3}}, init};
  }
}

// Printed E5 rows of the second example, indexed [mu][alpha].
constexpr double kTable2[4][3][2] = {
    {{0.1667, 1.6667}, {0.2308, 2.3077}, {0.2857, 2.8571}},
    {{0.2647, 2.6471}, {0.2754, 2.7536}, {0.2857, 2.8571}},
    {{0.3056, 3.0556}, {0.2958, 2.9577}, {0.2857, 2.8571}},
    {{0.375, 3.75}, {0.3333, 3.3333}, {0.28571, 2.8571}},
};

double max_abs(const State& x) { return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])}); }

// dU/dt expanded exactly around E7 using the equilibrium equations.
double expanded_derivative(const State& x, const State& e, const Rates& k) {
  const double dp = x[0] - e[0], dq = x[1] - e[1], dr = x[2] - e[2];
  return -k.a1 * dp * dp - k.a2 * dq * dq - k.a3 * dr * dr + (k.a4 - 1 + e[1]) * dp * dr +
         (k.a5 - 1 + e[0]) * dq * dr + 2 * e[2] * dp * dq + 2 * dp * dq * dr;
}

}  // namespace

TEST_CASE("model right-hand side") {
  const Rates k{0.02, 4, 0.2, 4, 2};
  CHECK(max_abs(rhs({0, 0, 0}, k)) == 0.0);
  CHECK(max_abs(rhs({1, 1, 0}, k)) == 0.0);
  const auto f = rhs({0.1, 0.2, 0.3}, k);
  CHECK(f[0] == doctest::Approx(-0.0222));
  CHECK(f[1] == doctest::Approx(4 * 0.2 * 0.8 - 0.06 + 0.006));
  CHECK(f[2] == doctest::Approx(-0.2 * 0.09 + 4 * 0.03 + 2 * 0.06));
}

TEST_CASE("parameter validation and slicing") {
  auto params = example(1);
  CHECK_NOTHROW(params.validate());
  const auto k = rates_at(params, 0.0, 1.0);
  CHECK(k.a1 == doctest::Approx(0.03));
  CHECK(k.a2 == doctest::Approx(6.0));
  CHECK(initial_state_at(params, 0.5, 0.4)[2] == 0.3);
  params.rates[2] = T{0.0, 0.1, 0.2};
  CHECK_THROWS_AS(params.validate(), ValidationError);
  params.rates[2] = T{0.3, 0.1, 0.2};
  CHECK_THROWS_AS(params.validate(), ValidationError);
}

TEST_CASE("equilibria reproduce the printed tables") {
  const GridSpec spec;
  const auto t1 = equilibria(example(1), spec);
  CHECK(t1.slices[spec.slice(0, 0)].points[4][1] == doctest::Approx(0.1667).epsilon(1e-3));
  CHECK(t1.slices[spec.slice(0, 0)].points[4][2] == doctest::Approx(1.6667).epsilon(1e-3));
  CHECK(t1.slices[spec.slice(1, 2)].points[4][2] == doctest::Approx(2.9578).epsilon(1e-3));

  const auto t2 = equilibria(example(2), spec);
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t a = 0; a < 3; ++a) {
      const auto& e5 = t2.slices[spec.slice(a, m)].points[5];
      CHECK(std::abs(e5[0] - kTable2[m][a][0]) <= 1e-3);
      CHECK(e5[1] == 0.0);
      CHECK(std::abs(e5[2] - kTable2[m][a][1]) <= 1e-3);
    }
  }

  const auto t3 = equilibria(example(3), spec);
  CHECK(t3.slices[spec.slice(0, 0)].points[6][2] == doctest::Approx(0.3367).epsilon(1e-3));

  const auto t4 = equilibria(example(4), spec);
  const auto& e7 = t4.slices[spec.slice(2, 0)].points[7];
  CHECK(std::abs(e7[0] - 0.9366) <= 1e-3);
  CHECK(std::abs(e7[1] - 0.9552) <= 1e-3);
  CHECK(std::abs(e7[2] - 2.8284) <= 1e-3);
  CHECK(t4.slices[spec.slice(2, 0)].e7_exists);
}

TEST_CASE("every equilibrium zeroes the right-hand side") {
  const auto spec = GridSpec::uniform(6, 6);
  for (int ex = 1; ex <= 4; ++ex) {
    const auto params = example(ex);
    const auto table = equilibria(params, spec);
    for (std::size_t s = 0; s < spec.slice_count(); ++s) {
      const auto k = rates_at(params, spec.alpha_of(s), spec.mu_of(s));
      for (const auto& point : table.slices[s].points) CHECK(max_abs(rhs(point, k)) < 1e-9);
    }
  }
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> rate(0.05, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Rates k{rate(rng), rate(rng), rate(rng), rate(rng), rate(rng)};
    for (const auto& point : equilibria(k).points) CHECK(max_abs(rhs(point, k)) < 1e-9 * (1 + max_abs(point)));
  }
}

TEST_CASE("E7 existence flags follow the printed inequalities") {
  const Rates ok{2, 4, 2, 4, 2};
  CHECK(equilibria(ok).e7_exists);
  // a3 sqrt(a1 a2) > a4 + a5 breaks the first inequality.
  const Rates broken{2, 4, 10, 1, 1};
  const auto e = equilibria(broken);
  CHECK_FALSE(e.e7_conditions[0]);
  CHECK_FALSE(e.e7_exists);
}

TEST_CASE("variational matrix at the trivial equilibria") {
  const Rates k{0.02, 4, 0.2, 4, 2};
  const auto m0 = variational_matrix({0, 0, 0}, k);
  const Matrix3 diag{{{0.02, 0, 0}, {0, 4, 0}, {0, 0, 0}}};
  CHECK(m0 == diag);
  const auto m1 = variational_matrix({1, 0, 0}, k);
  CHECK(m1[0][0] == doctest::Approx(-0.02));
  CHECK(m1[1][1] == doctest::Approx(4));
  CHECK(m1[2][2] == doctest::Approx(4));
  const auto l3 = eigenvalues_3x3(variational_matrix({1, 1, 0}, k));
  CHECK(l3[0].real() == doctest::Approx(6.0));
  CHECK(l3[1].real() == doctest::Approx(-0.02));
  CHECK(l3[2].real() == doctest::Approx(-4.0));

  const auto l0 = eigenvalues_3x3(m0);
  CHECK(l0[0].real() == doctest::Approx(4.0));
  CHECK(l0[1].real() == doctest::Approx(0.02));
  CHECK(std::abs(l0[2]) < 1e-14);
}

TEST_CASE("variational matrix matches finite differences") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> value(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Rates k{value(rng), value(rng), value(rng), value(rng), value(rng)};
    const State x{value(rng), value(rng), value(rng)};
    const auto j = variational_matrix(x, k);
    for (int c = 0; c < 3; ++c) {
      State plus = x, minus = x;
      const double step = 1e-6;
      plus[c] += step;
      minus[c] -= step;
      const auto fp = rhs(plus, k), fm = rhs(minus, k);
      for (int r = 0; r < 3; ++r) CHECK(j[r][c] == doctest::Approx((fp[r] - fm[r]) / (2 * step)).epsilon(1e-6));
    }
  }
}

TEST_CASE("local stability on the four examples") {
  const GridSpec spec;
  const std::array<std::size_t, 4> expected_stable{4, 5, 6, 7};
  for (int ex = 1; ex <= 4; ++ex) {
    const auto table = stability(example(ex), spec, Execution::serial);
    for (std::size_t s = 0; s < spec.slice_count(); ++s) {
      const auto& points = table.slices[s];
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(points[i].conditions.empty());
        CHECK_FALSE(points[i].closed_form_stable);
        CHECK(points[i].verdict != Verdict::stable);
      }
      CHECK(points[0].verdict == Verdict::unstable);
      for (const auto& p : points) {
        INFO("example " << ex << ", slice " << s << ", E" << p.index);
        CHECK(p.agrees);
        const auto m = variational_matrix(p.point, rates_at(example(ex), spec.alpha_of(s), spec.mu_of(s)));
        double n = 0.0;
        for (const auto& row : m) {
          for (double v : row) n = std::max(n, std::abs(v));
        }
        const auto c = characteristic_coefficients(m);
        for (const auto& l : p.eigenvalues) {
          CHECK(std::abs(((l + c[0]) * l + c[1]) * l + c[2]) < 1e-8 * std::max(n * n * n, 1e-300));
        }
      }
    }
    // The example's designated equilibrium satisfies its closed-form condition at every grid point
    // except where the fourth example's E7 inequalities fail.
    if (ex < 4) {
      for (std::size_t s = 0; s < spec.slice_count(); ++s) {
        CHECK(table.slices[s][expected_stable[ex - 1]].closed_form_stable);
        CHECK(table.slices[s][expected_stable[ex - 1]].verdict == Verdict::stable);
      }
    }
  }
  const auto fourth = stability(example(4), spec, Execution::serial);
  CHECK(fourth.slices[spec.slice(2, 0)][7].verdict == Verdict::stable);
}

TEST_CASE("eigenvalue verdicts agree with Eigen") {
  const GridSpec spec = GridSpec::uniform(5, 5);
  for (int ex = 1; ex <= 4; ++ex) {
    const auto table = stability(example(ex), spec, Execution::serial);
    for (std::size_t s = 0; s < spec.slice_count(); ++s) {
      const auto k = rates_at(example(ex), spec.alpha_of(s), spec.mu_of(s));
      for (const auto& p : table.slices[s]) {
        const auto m = variational_matrix(p.point, k);
        Eigen::Matrix3d e;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) e(i, j) = m[i][j];
        }
        const auto ev = Eigen::EigenSolver<Eigen::Matrix3d>(e, false).eigenvalues();
        std::array<std::complex<double>, 3> oracle{ev(0), ev(1), ev(2)};
        CHECK(classify(oracle) == p.verdict);
      }
    }
  }
}

TEST_CASE("Lyapunov function values") {
  const Rates k{1, 1, 1, 0.5, 0.5};
  const auto e = equilibria(k).points[7];
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  CHECK(e[2] == doctest::Approx(1.0));
  CHECK(lyapunov_value(e, e) == 0.0);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> value(0.01, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const State x{value(rng), value(rng), value(rng)};
    CHECK(lyapunov_value(x, e) > 0.0);
  }
  CHECK_THROWS_AS(lyapunov_value({0.0, 1.0, 1.0}, e), DomainError);
  CHECK_THROWS_AS(lyapunov_value({1.0, -1.0, 1.0}, e), DomainError);
}

TEST_CASE("Lyapunov derivative check") {
  const Rates k{1, 1, 1, 0.5, 0.5};
  const std::vector<State> states{{1.1, 1.1, 1.1}, {0.9, 0.9, 0.9}, {1.2, 0.8, 1.0}, {1, 1, 1}};
  const auto r = lyapunov_check(k, states);
  CHECK(r.e7_exists);
  CHECK(r.a4_below_one);
  CHECK(r.coupling_condition);
  CHECK(r.conditions_hold);
  REQUIRE(r.samples.size() == 4);
  CHECK(r.samples[0].same_sign);
  CHECK(r.samples[0].derivative == doctest::Approx(-0.04));
  CHECK(r.samples[1].same_sign);
  CHECK_FALSE(r.samples[2].same_sign);
  CHECK_FALSE(r.samples[3].same_sign);
  CHECK(r.samples[3].value == 0.0);
  CHECK(r.samples[3].derivative == 0.0);
  CHECK(r.decreasing_on_same_sign);
  // The exact derivative keeps terms the simplified form drops and is positive at 1.1 E7.
  CHECK(r.samples[0].derivative_direct == doctest::Approx(0.002));
  CHECK_FALSE(r.direct_decreasing_on_same_sign);

  const auto fourth = lyapunov_check(rates_at(example(4), 1.0, 0.0), states);
  CHECK_FALSE(fourth.a4_below_one);
  CHECK_FALSE(fourth.conditions_hold);

  CHECK_THROWS_AS(lyapunov_check(k, std::vector<State>{{1, 0, 1}}), DomainError);
}

TEST_CASE("direct Lyapunov derivative is the time derivative of U") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> value(0.3, 3.0);
  const Rates k{2, 4, 2, 4, 2};
  const auto e = equilibria(k).points[7];
  std::vector<State> states;
  for (int trial = 0; trial < 50; ++trial) states.push_back({value(rng), value(rng), value(rng)});
  const auto r = lyapunov_check(k, states);
  for (const auto& s : r.samples) {
    const auto f = rhs(s.state, k);
    const double step = 1e-6;
    State plus, minus;
    for (int i = 0; i < 3; ++i) {
      plus[i] = s.state[i] + step * f[i];
      minus[i] = s.state[i] - step * f[i];
    }
    const double numeric = (lyapunov_value(plus, e) - lyapunov_value(minus, e)) / (2 * step);
    CHECK(s.derivative_direct == doctest::Approx(numeric).epsilon(1e-5));
    CHECK(s.derivative_direct == doctest::Approx(expanded_derivative(s.state, e, k)).epsilon(1e-9));
  }
}

TEST_CASE("model IVP wiring") {
  const auto spec = GridSpec({0, 1}, {0, 1});
  const auto ivp = make_ivp(example(1), spec, 0.0, 1.0);
  CHECK(ivp.state_names == std::vector<std::string>{"p", "q", "r"});
  CHECK(ivp.params.size() == 5);
  const auto t = simulate(example(1), spec, uniform_partition(0, 1, 11), Method::euler);
  const auto k = rates_at(example(1), 1.0, 0.0);
  const auto f = rhs({0.1, 0.2, 0.3}, k);
  CHECK(t.states[0][1][spec.slice(1, 0)] == doctest::Approx(0.1 + 0.1 * f[0]).epsilon(1e-14));
  CHECK(t.states[2][1][spec.slice(1, 1)] == doctest::Approx(0.3 + 0.1 * f[2]).epsilon(1e-14));
}
