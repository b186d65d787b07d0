#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "granular/fuzzy_number.hpp"

namespace granular {

/// Sampling lattice for horizontal membership functions.
///
/// Both axes are strictly increasing lists in [0,1] that contain the endpoints 0 and 1.
/// A slice is one (alpha, mu) pair; slices are numbered alpha-major:
/// `slice = alpha_index * mu_count() + mu_index`.
class GridSpec {
 public:
  /// alphas = {0, 0.5, 1}, mus = {0, 0.4, 0.6, 1}
  GridSpec();
  GridSpec(std::vector<double> alphas, std::vector<double> mus);

  /// Equispaced levels on both axes (each count >= 2).
  static GridSpec uniform(std::size_t alpha_count, std::size_t mu_count);

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  const std::vector<double>& mus() const noexcept { return mus_; }
  std::size_t alpha_count() const noexcept { return alphas_.size(); }
  std::size_t mu_count() const noexcept { return mus_.size(); }
  std::size_t slice_count() const noexcept { return alphas_.size() * mus_.size(); }

  std::size_t slice(std::size_t alpha_index, std::size_t mu_index) const noexcept {
    return alpha_index * mus_.size() + mu_index;
  }
  double alpha_of(std::size_t slice) const noexcept { return alphas_[slice / mus_.size()]; }
  double mu_of(std::size_t slice) const noexcept { return mus_[slice % mus_.size()]; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::vector<double> alphas_;
  std::vector<double> mus_;
};

/// A fuzzy quantity sampled through its horizontal membership function:
/// values(a, m) = x^gr(alphas[a], mus[m]).  Immutable.
class GranularGrid {
 public:
  /// `values` is alpha-major with spec.slice_count() entries.
  GranularGrid(GridSpec spec, std::vector<double> values);

  static GranularGrid constant(const GridSpec& spec, double value);
  static GranularGrid generate(const GridSpec& spec,
                               const std::function<double(double alpha, double mu)>& hmf);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t alpha_index, std::size_t mu_index) const {
    return values_[spec_.slice(alpha_index, mu_index)];
  }
  double operator[](std::size_t slice) const { return values_[slice]; }

  friend bool operator==(const GranularGrid&, const GranularGrid&) = default;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Nested alpha-cuts of a fuzzy number, one interval per alpha level of the source grid.
struct AlphaCutFamily {
  std::vector<double> alphas;
  std::vector<Interval> cuts;

  bool is_nested() const noexcept;
};

/// K(t): samples x^gr(a, m) = lower_a + (upper_a - lower_a) m.
GranularGrid hmf_from_triangular(const TriangularFuzzyNumber& t, const GridSpec& spec);

/// K^-1: cut(a) = [inf over b>=a of min over mu, sup over b>=a of max over mu].
AlphaCutFamily alpha_cuts(const GranularGrid& g);

enum class BinaryOp { add, sub, mul, div };

/// Pointwise arithmetic with one shared RDM variable (matched mu indices).
/// Throws ShapeError on spec mismatch and SingularityError when dividing by a grid
/// that has |value| <= 1e-300 at some point.
GranularGrid gr_binary(BinaryOp op, const GranularGrid& a, const GranularGrid& b);

inline GranularGrid operator+(const GranularGrid& a, const GranularGrid& b) {
  return gr_binary(BinaryOp::add, a, b);
}
inline GranularGrid operator-(const GranularGrid& a, const GranularGrid& b) {
  return gr_binary(BinaryOp::sub, a, b);
}
inline GranularGrid operator*(const GranularGrid& a, const GranularGrid& b) {
  return gr_binary(BinaryOp::mul, a, b);
}
inline GranularGrid operator/(const GranularGrid& a, const GranularGrid& b) {
  return gr_binary(BinaryOp::div, a, b);
}

/// How the RDM variables of the two operands are paired when measuring distance.
enum class MuPairing {
  independent,  ///< max over mu_1, mu_2 separately (granular metric as defined)
  matched,      ///< one shared mu (the form the approximation bounds actually use)
};

/// Granular distance: sup over alpha of max |a(alpha, mu_1) - b(alpha, mu_2)|.
///
/// On a finite grid this is a lower bound of the continuous sup/max. With independent
/// pairing d(a, a) equals the widest sampled cut, so it is zero only for crisp grids.
double gr_distance(const GranularGrid& a, const GranularGrid& b, MuPairing pairing);

/// The granular metric with independent RDM variables.
inline double gr_metric(const GranularGrid& a, const GranularGrid& b) {
  return gr_distance(a, b, MuPairing::independent);
}

/// Header row `alpha/mu,<mu_0>,<mu_1>,...`, then one row per alpha: `<alpha>,<v_0>,<v_1>,...`.
/// Numbers use the shortest representation that round-trips.
void write_csv(std::ostream& out, const GranularGrid& g);
GranularGrid read_csv(std::istream& in);

}  // namespace granular
