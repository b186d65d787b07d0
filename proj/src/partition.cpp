#include "granular/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular {

FuzzyPartition uniform_partition(double a, double b, std::size_t m) {
  if (m < 2) throw ValidationError("a fuzzy partition needs m >= 2 nodes");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ValidationError("a fuzzy partition needs a finite interval with a < b");
  }
  std::vector<double> nodes(m);
  const double span = b - a;
  const double last = static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) nodes[i] = a + span * (static_cast<double>(i) / last);
  nodes.back() = b;
  return FuzzyPartition(a, b, std::move(nodes), span / last);
}

FuzzyPartition partition_with_step(double a, double b, double h) {
  if (!std::isfinite(h) || !(h > 0.0)) throw ValidationError("step h must be positive, got " + text::shortest(h));
  if (!(a < b)) throw ValidationError("a fuzzy partition needs a < b");
  const double gaps = (b - a) / h;
  const double rounded = std::round(gaps);
  if (rounded < 1.0 || std::abs(gaps - rounded) > 1e-9 * std::max(1.0, gaps)) {
    throw ValidationError("step h=" + text::shortest(h) + " does not divide [" + text::shortest(a) + "," +
                          text::shortest(b) + "] into whole gaps");
  }
  return uniform_partition(a, b, static_cast<std::size_t>(rounded) + 1);
}

std::size_t FuzzyPartition::cell_of(double u) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t j = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(j, nodes_.size() - 2);
}

double basic_eval(const FuzzyPartition& p, std::size_t i, double u) {
  if (i >= p.size()) throw ValidationError("basic function index out of range");
  if (!(u >= p.a() && u <= p.b())) {
    throw DomainError("u=" + text::shortest(u) + " lies outside [" + text::shortest(p.a()) + "," +
                      text::shortest(p.b()) + "]");
  }
  const auto& x = p.nodes();
  if (u == x[i]) return 1.0;
  if (u < x[i]) {
    if (i == 0 || u <= x[i - 1]) return 0.0;
    return (u - x[i - 1]) / (x[i] - x[i - 1]);
  }
  if (i + 1 == x.size() || u >= x[i + 1]) return 0.0;
  return (x[i + 1] - u) / (x[i + 1] - x[i]);
}

double basic_integral(const FuzzyPartition& p, std::size_t i) {
  if (p.size() < 3) throw UnsupportedError("closed-form basic integrals need m >= 3");
  if (i >= p.size()) throw ValidationError("basic function index out of range");
  return (i == 0 || i + 1 == p.size()) ? p.h() / 2.0 : p.h();
}

void Quadrature::validate() const {
  if (subintervals == 0) throw ValidationError("quadrature needs at least one subinterval per gap");
  if (rule == Rule::simpson && subintervals % 2 != 0) {
    throw ValidationError("Simpson quadrature needs an even number of subintervals per gap");
  }
}

std::vector<double> quadrature_points(const FuzzyPartition& p, const Quadrature& q) {
  q.validate();
  const std::size_t total = (p.size() - 1) * q.subintervals;
  std::vector<double> u(total + 1);
  const double span = p.b() - p.a();
  for (std::size_t k = 0; k <= total; ++k) {
    u[k] = p.a() + span * (static_cast<double>(k) / static_cast<double>(total));
  }
  u.back() = p.b();
  return u;
}

std::vector<double> quadrature_weights(const FuzzyPartition& p, const Quadrature& q) {
  q.validate();
  const std::size_t n = q.subintervals;
  const std::size_t total = (p.size() - 1) * n;
  const double step = p.h() / static_cast<double>(n);
  std::vector<double> w(total + 1, 0.0);
  for (std::size_t gap = 0; gap + 1 < p.size(); ++gap) {
    const std::size_t base = gap * n;
    if (q.rule == Quadrature::Rule::trapezoid) {
      for (std::size_t k = 0; k < n; ++k) {
        w[base + k] += step / 2.0;
        w[base + k + 1] += step / 2.0;
      }
    } else {
      for (std::size_t k = 0; k < n; k += 2) {
        w[base + k] += step / 3.0;
        w[base + k + 1] += 4.0 * step / 3.0;
        w[base + k + 2] += step / 3.0;
      }
    }
  }
  return w;
}

}  // namespace granular
