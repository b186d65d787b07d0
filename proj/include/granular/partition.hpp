#pragma once

#include <cstddef>
#include <vector>

namespace granular {

enum class BasicShape { triangular };

/// h-uniform Ruspini partition of [a, b] by triangular hats P_0..P_{m-1}.
///
/// Indices are zero-based: P_i peaks at nodes()[i], the first hat is a half-hat on
/// [u_0, u_1] and the last on [u_{m-2}, u_{m-1}].  sum_i P_i(u) = 1 on [a, b].
class FuzzyPartition {
 public:
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double h() const noexcept { return h_; }
  BasicShape shape() const noexcept { return BasicShape::triangular; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }

  /// Index j with u in [u_j, u_{j+1}], clamped to [0, m-2]. u must be in [a, b].
  std::size_t cell_of(double u) const;

  friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;

 private:
  friend FuzzyPartition uniform_partition(double a, double b, std::size_t m);
  FuzzyPartition(double a, double b, std::vector<double> nodes, double h)
      : a_(a), b_(b), h_(h), nodes_(std::move(nodes)) {}

  double a_;
  double b_;
  double h_;
  std::vector<double> nodes_;
};

/// m equidistant nodes u_i = a + i (b-a)/(m-1). Throws ValidationError unless m >= 2 and a < b.
FuzzyPartition uniform_partition(double a, double b, std::size_t m);

/// Partition of [a, b] with spacing h. (b-a)/h must be an integer to within 1e-9 relative.
FuzzyPartition partition_with_step(double a, double b, double h);

/// P_i(u). Throws DomainError for u outside [a, b] and ValidationError for i >= m.
double basic_eval(const FuzzyPartition& p, std::size_t i, double u);

/// Closed-form integral of P_i: h/2 for the two boundary hats, h otherwise.
/// Throws UnsupportedError when m < 3.
double basic_integral(const FuzzyPartition& p, std::size_t i);

/// Composite quadrature applied on each inter-node gap.
struct Quadrature {
  enum class Rule { trapezoid, simpson };
  Rule rule = Rule::trapezoid;
  std::size_t subintervals = 10;  ///< per gap; must be even for Simpson

  void validate() const;
};

/// Abscissae u_k = a + k (b-a)/((m-1) N), k = 0..(m-1)N, shared by every quadrature in the library.
/// Node u_i coincides with sample k = i N.
std::vector<double> quadrature_points(const FuzzyPartition& p, const Quadrature& q);

/// Composite-rule weights matching quadrature_points (sum = b - a).
std::vector<double> quadrature_weights(const FuzzyPartition& p, const Quadrature& q);

}  // namespace granular
