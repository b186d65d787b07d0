#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "granular/errors.hpp"
#include "granular/partition.hpp"
#include "oracles.hpp"

using namespace granular;

TEST_CASE("uniform_partition examples") {
  const auto p = uniform_partition(0, 3, 4);
  CHECK(p.nodes() == std::vector<double>{0, 1, 2, 3});
  CHECK(p.h() == 1.0);
  CHECK(p.shape() == BasicShape::triangular);
  // P_1 = (0,0,1) and P_4 = (2,3,3) as triangles.
  CHECK(basic_eval(p, 0, 0.0) == 1.0);
  CHECK(basic_eval(p, 0, 1.0) == 0.0);
  CHECK(basic_eval(p, 3, 2.0) == 0.0);
  CHECK(basic_eval(p, 3, 3.0) == 1.0);

  const auto minimal = uniform_partition(0, 1, 2);
  CHECK(minimal.nodes() == std::vector<double>{0, 1});
  CHECK(minimal.h() == 1.0);

  const auto fine = uniform_partition(0, 1, 101);
  CHECK(fine.h() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(fine.node(0) == 0.0);
  CHECK(fine.node(100) == 1.0);
}

TEST_CASE("uniform_partition validation") {
  CHECK_THROWS_AS(uniform_partition(0, 1, 1), ValidationError);
  CHECK_THROWS_AS(uniform_partition(1, 1, 5), ValidationError);
  CHECK_THROWS_AS(uniform_partition(2, 1, 5), ValidationError);
  CHECK_THROWS_AS(partition_with_step(0, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(partition_with_step(0, 1, 0.3), ValidationError);
  CHECK(partition_with_step(0, 1, 0.01).size() == 101);
  CHECK(partition_with_step(0, 50, 0.01).size() == 5001);
}

TEST_CASE("basic_eval values") {
  const auto p = uniform_partition(0, 3, 4);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(basic_eval(p, i, p.node(i)) == 1.0);
  CHECK(basic_eval(p, 1, 0.5) == doctest::Approx(0.5));
  CHECK(basic_eval(p, 1, 2.5) == 0.0);
  CHECK_THROWS_AS(basic_eval(p, 1, -0.1), DomainError);
  CHECK_THROWS_AS(basic_eval(p, 1, 3.1), DomainError);
  CHECK_THROWS_AS(basic_eval(p, 4, 1.0), ValidationError);
}

TEST_CASE("Ruspini sum holds at random points") {
  std::mt19937 rng(5);
  for (std::size_t m : {2u, 3u, 4u, 11u, 101u}) {
    const auto p = uniform_partition(-1.5, 2.0, m);
    std::uniform_real_distribution<double> dist(p.a(), p.b());
    for (int k = 0; k < 100; ++k) {
      const double u = dist(rng);
      double sum = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) sum += basic_eval(p, i, u);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("hats agree with an independent definition and are symmetric") {
  const auto p = uniform_partition(0, 2, 9);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  std::uniform_real_distribution<double> offset(0.0, p.h());
  for (int k = 0; k < 200; ++k) {
    const double u = dist(rng);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(basic_eval(p, i, u) == doctest::Approx(oracle::hat(0, p.h(), 9, static_cast<int>(i), u)));
    }
  }
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double d = offset(rng);
    CHECK(basic_eval(p, i, p.node(i) - d) == doctest::Approx(basic_eval(p, i, p.node(i) + d)).epsilon(1e-12));
  }
}

TEST_CASE("basic_integral closed form") {
  const auto p = uniform_partition(0, 3, 4);
  CHECK(basic_integral(p, 0) == 0.5);
  CHECK(basic_integral(p, 1) == 1.0);
  CHECK(basic_integral(p, 3) == 0.5);
  CHECK(basic_integral(uniform_partition(0, 1, 101), 50) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK_THROWS_AS(basic_integral(uniform_partition(0, 1, 2), 0), UnsupportedError);
}

TEST_CASE("basic_integral matches quadrature of the hats") {
  for (std::size_t m : {3u, 5u, 17u}) {
    const auto p = uniform_partition(0.5, 4.0, m);
    for (std::size_t i = 0; i < m; ++i) {
      const double lo = i == 0 ? p.a() : p.node(i - 1);
      const double hi = i + 1 == m ? p.b() : p.node(i + 1);
      const auto f = [&](double u) { return basic_eval(p, i, std::clamp(u, p.a(), p.b())); };
      double q = 0.0;
      if (lo < p.node(i)) q += oracle::integrate(f, lo, p.node(i), 50);
      if (p.node(i) < hi) q += oracle::integrate(f, p.node(i), hi, 50);
      CHECK(std::abs(q - basic_integral(p, i)) < 1e-10);
    }
  }
}

TEST_CASE("quadrature points and weights") {
  const auto p = uniform_partition(0, 3, 4);
  const Quadrature trap{};
  const auto u = quadrature_points(p, trap);
  REQUIRE(u.size() == 31);
  CHECK(u[10] == doctest::Approx(1.0));
  CHECK(u.back() == 3.0);
  const auto w = quadrature_weights(p, trap);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(3.0));

  const Quadrature simpson{Quadrature::Rule::simpson, 4};
  const auto ws = quadrature_weights(p, simpson);
  const auto us = quadrature_points(p, simpson);
  double cubic = 0.0;
  for (std::size_t k = 0; k < us.size(); ++k) cubic += ws[k] * us[k] * us[k] * us[k];
  CHECK(cubic == doctest::Approx(81.0 / 4.0).epsilon(1e-13));

  CHECK_THROWS_AS(quadrature_points(p, Quadrature{Quadrature::Rule::simpson, 3}), ValidationError);
  CHECK_THROWS_AS(quadrature_weights(p, Quadrature{Quadrature::Rule::trapezoid, 0}), ValidationError);
}

TEST_CASE("cell_of locates the enclosing gap") {
  const auto p = uniform_partition(0, 3, 4);
  CHECK(p.cell_of(0.0) == 0);
  CHECK(p.cell_of(0.99) == 0);
  CHECK(p.cell_of(1.0) == 1);
  CHECK(p.cell_of(2.5) == 2);
  CHECK(p.cell_of(3.0) == 2);
}
