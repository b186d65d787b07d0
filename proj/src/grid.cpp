#include "granular/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular {
namespace {

void validate_axis(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2) {
    throw ValidationError(std::string(name) + " must contain at least the levels 0 and 1");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] >= 0.0 && axis[i] <= 1.0)) {
      throw ValidationError(std::string(name) + " entries must lie in [0,1]");
    }
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw ValidationError(std::string(name) + " must be strictly increasing");
    }
  }
  if (axis.front() != 0.0 || axis.back() != 1.0) {
    throw ValidationError(std::string(name) + " must include 0 and 1");
  }
}

std::vector<double> equispaced(std::size_t n) {
  if (n < 2) throw ValidationError("a grid axis needs at least two levels");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

void require_same_spec(const GranularGrid& a, const GranularGrid& b) {
  if (!(a.spec() == b.spec())) throw ShapeError("granular grids are sampled on different grid specs");
}

constexpr double kZeroTolerance = 1e-300;

}  // namespace

GridSpec::GridSpec() : GridSpec({0.0, 0.5, 1.0}, {0.0, 0.4, 0.6, 1.0}) {}

GridSpec::GridSpec(std::vector<double> alphas, std::vector<double> mus)
    : alphas_(std::move(alphas)), mus_(std::move(mus)) {
  validate_axis(alphas_, "alphas");
  validate_axis(mus_, "mus");
}

GridSpec GridSpec::uniform(std::size_t alpha_count, std::size_t mu_count) {
  return GridSpec(equispaced(alpha_count), equispaced(mu_count));
}

GranularGrid::GranularGrid(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.slice_count()) {
    throw ShapeError("grid has " + std::to_string(values_.size()) + " values, spec expects " +
                     std::to_string(spec_.slice_count()));
  }
}

GranularGrid GranularGrid::constant(const GridSpec& spec, double value) {
  return GranularGrid(spec, std::vector<double>(spec.slice_count(), value));
}

GranularGrid GranularGrid::generate(const GridSpec& spec,
                                    const std::function<double(double, double)>& hmf) {
  std::vector<double> v(spec.slice_count());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = hmf(spec.alpha_of(s), spec.mu_of(s));
  return GranularGrid(spec, std::move(v));
}

bool AlphaCutFamily::is_nested() const noexcept {
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!cuts[i - 1].contains(cuts[i])) return false;
  }
  return true;
}

GranularGrid hmf_from_triangular(const TriangularFuzzyNumber& t, const GridSpec& spec) {
  t.validate();
  return GranularGrid::generate(spec, [&t](double alpha, double mu) {
    const auto cut = t.alpha_cut(alpha);
    return cut.lower + (cut.upper - cut.lower) * mu;
  });
}

AlphaCutFamily alpha_cuts(const GranularGrid& g) {
  const auto& spec = g.spec();
  const std::size_t na = spec.alpha_count();
  const std::size_t nm = spec.mu_count();
  AlphaCutFamily family{spec.alphas(), std::vector<Interval>(na)};

  // Suffix aggregation: the cut at level a collects every level b >= a.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t a = na; a-- > 0;) {
    for (std::size_t m = 0; m < nm; ++m) {
      lo = std::min(lo, g.at(a, m));
      hi = std::max(hi, g.at(a, m));
    }
    family.cuts[a] = {lo, hi};
  }
  return family;
}

GranularGrid gr_binary(BinaryOp op, const GranularGrid& a, const GranularGrid& b) {
  require_same_spec(a, b);
  const auto x = a.values();
  const auto y = b.values();
  std::vector<double> out(x.size());
  switch (op) {
    case BinaryOp::add:
      for (std::size_t s = 0; s < out.size(); ++s) out[s] = x[s] + y[s];
      break;
    case BinaryOp::sub:
      for (std::size_t s = 0; s < out.size(); ++s) out[s] = x[s] - y[s];
      break;
    case BinaryOp::mul:
      for (std::size_t s = 0; s < out.size(); ++s) out[s] = x[s] * y[s];
      break;
    case BinaryOp::div:
      for (std::size_t s = 0; s < out.size(); ++s) {
        if (std::abs(y[s]) <= kZeroTolerance) {
          const double alpha = a.spec().alpha_of(s);
          const double mu = a.spec().mu_of(s);
          throw SingularityError("division by a grid that is zero at alpha=" + text::shortest(alpha) +
                                     ", mu=" + text::shortest(mu),
                                 alpha, mu);
        }
        out[s] = x[s] / y[s];
      }
      break;
  }
  return GranularGrid(a.spec(), std::move(out));
}

double gr_distance(const GranularGrid& a, const GranularGrid& b, MuPairing pairing) {
  require_same_spec(a, b);
  const auto& spec = a.spec();
  double d = 0.0;
  for (std::size_t al = 0; al < spec.alpha_count(); ++al) {
    if (pairing == MuPairing::matched) {
      for (std::size_t m = 0; m < spec.mu_count(); ++m) d = std::max(d, std::abs(a.at(al, m) - b.at(al, m)));
      continue;
    }
    // max |x - y| over independent x in row a, y in row b is attained at opposite extremes.
    double amin = a.at(al, 0), amax = amin, bmin = b.at(al, 0), bmax = bmin;
    for (std::size_t m = 1; m < spec.mu_count(); ++m) {
      amin = std::min(amin, a.at(al, m));
      amax = std::max(amax, a.at(al, m));
      bmin = std::min(bmin, b.at(al, m));
      bmax = std::max(bmax, b.at(al, m));
    }
    d = std::max({d, amax - bmin, bmax - amin});
  }
  return d;
}

void write_csv(std::ostream& out, const GranularGrid& g) {
  const auto& spec = g.spec();
  out << "alpha/mu";
  for (double mu : spec.mus()) out << ',' << text::shortest(mu);
  out << '\n';
  for (std::size_t a = 0; a < spec.alpha_count(); ++a) {
    out << text::shortest(spec.alphas()[a]);
    for (std::size_t m = 0; m < spec.mu_count(); ++m) out << ',' << text::shortest(g.at(a, m));
    out << '\n';
  }
}

GranularGrid read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("grid CSV is empty");
  const auto header = text::trim(line);
  const auto first_comma = header.find(',');
  if (first_comma == std::string_view::npos) throw ValidationError("grid CSV header has no mu columns");
  const auto mus = text::parse_list(header.substr(first_comma + 1));

  std::vector<double> alphas;
  std::vector<double> values;
  while (std::getline(in, line)) {
    const auto row = text::trim(line);
    if (row.empty()) continue;
    const auto fields = text::parse_list(row);
    if (fields.size() != mus.size() + 1) {
      throw ShapeError("grid CSV row has " + std::to_string(fields.size() - 1) + " values, header has " +
                       std::to_string(mus.size()));
    }
    alphas.push_back(fields.front());
    values.insert(values.end(), fields.begin() + 1, fields.end());
  }
  return GranularGrid(GridSpec(std::move(alphas), mus), std::move(values));
}

}  // namespace granular
