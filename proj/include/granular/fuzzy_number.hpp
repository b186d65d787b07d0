#pragma once

#include <string>
#include <string_view>

namespace granular {

/// Closed real interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double width() const noexcept { return upper - lower; }
  bool contains(const Interval& inner) const noexcept {
    return lower <= inner.lower && inner.upper <= upper;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Triangular fuzzy number given by its three kink abscissae.
///
/// Membership rises linearly from `left` to 1 at `peak` and falls back to 0 at `right`.
/// A crisp value c is the degenerate triangle (c, c, c).
struct TriangularFuzzyNumber {
  double left = 0.0;
  double peak = 0.0;
  double right = 0.0;

  static TriangularFuzzyNumber crisp(double value) noexcept { return {value, value, value}; }

  /// Parses the text form "(l,p,r)"; whitespace around numbers is allowed.
  /// A bare number "c" is read as the crisp triangle (c,c,c).
  static TriangularFuzzyNumber parse(std::string_view text);

  /// Throws ValidationError unless left <= peak <= right and all are finite.
  void validate() const;

  bool is_crisp() const noexcept { return left == peak && peak == right; }

  /// [left + a(peak-left), right - a(right-peak)]
  Interval alpha_cut(double alpha) const noexcept {
    return {left + alpha * (peak - left), right - alpha * (right - peak)};
  }

  std::string to_string() const;

  friend bool operator==(const TriangularFuzzyNumber&, const TriangularFuzzyNumber&) = default;
};

}  // namespace granular
