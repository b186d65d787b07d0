#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "granular/errors.hpp"
#include "granular/ftransform.hpp"
#include "granular/grid.hpp"
#include "granular/ode.hpp"
#include "granular/prey_predator.hpp"
#include "granular/text.hpp"
#include "run_config.hpp"

namespace granular::cli {
namespace {

std::string fixed4(double v) {
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string full(double v) { return text::shortest(v); }

std::string flag(bool b) { return b ? "true" : "false"; }

// Three values at 4 decimals followed by the same three at full precision.
std::string triple(const std::array<double, 3>& x) {
  return fixed4(x[0]) + ',' + fixed4(x[1]) + ',' + fixed4(x[2]) + ',' + full(x[0]) + ',' + full(x[1]) + ',' +
         full(x[2]);
}

constexpr const char* kTripleHeader = "p,q,r,p_full,q_full,r_full";

// Writes named CSV documents either into a directory or, one after another, to a stream.
class Output {
 public:
  Output(std::ostream& out, std::optional<std::string> dir) : out_(out), dir_(std::move(dir)) {
    if (dir_) std::filesystem::create_directories(*dir_);
  }

  void write(const std::string& name, const std::string& csv) {
    if (dir_) {
      const auto path = std::filesystem::path(*dir_) / (name + ".csv");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error("cannot write " + path.string());
      f << csv;
      out_ << "wrote " << path.string() << '\n';
      return;
    }
    if (count_++ > 0) out_ << '\n';
    if (labelled_) out_ << "# " << name << '\n';
    out_ << csv;
  }

  void label_sections() { labelled_ = true; }

 private:
  std::ostream& out_;
  std::optional<std::string> dir_;
  int count_ = 0;
  bool labelled_ = false;
};

// Flags shared by the subcommands; empty means "keep the config value".
struct CommonFlags {
  std::string config;
  std::string alphas;
  std::string mus;
  std::size_t m = 0;
  double h = std::numeric_limits<double>::quiet_NaN();
  std::string interval;
  std::string method;
  std::string out;
  std::string quadrature;
  std::size_t subintervals = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_config = true) {
  if (with_config) cmd->add_option("--config", f.config, "Built-in config name or JSON file");
  cmd->add_option("--alphas", f.alphas, "Comma-separated alpha levels (must include 0 and 1)");
  cmd->add_option("--mus", f.mus, "Comma-separated RDM values (must include 0 and 1)");
  cmd->add_option("--out", f.out, "Directory for CSV files (default: stdout)");
}

void add_partition_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--m", f.m, "Number of partition nodes");
  cmd->add_option("--h", f.h, "Partition spacing (overrides --m)");
  cmd->add_option("--interval", f.interval, "Interval as a,b");
}

void apply_grid(const CommonFlags& f, RunConfig& c) {
  if (f.alphas.empty() && f.mus.empty()) return;
  c.grid = GridSpec(f.alphas.empty() ? c.grid.alphas() : text::parse_list(f.alphas),
                    f.mus.empty() ? c.grid.mus() : text::parse_list(f.mus));
}

void apply_partition(const CommonFlags& f, RunConfig& c) {
  if (!f.interval.empty()) {
    const auto iv = text::parse_list(f.interval);
    if (iv.size() != 2 || !(iv[0] < iv[1])) throw ValidationError("--interval must be a,b with a < b");
    c.a = iv[0];
    c.b = iv[1];
  }
  if (f.m != 0) {
    c.m = f.m;
    c.h.reset();
  }
  if (!std::isnan(f.h)) {
    if (!(f.h > 0.0)) throw ValidationError("--h must be positive, got " + text::shortest(f.h));
    c.h = f.h;
  }
  if (!f.quadrature.empty()) {
    if (f.quadrature == "trapezoid") {
      c.quadrature.rule = Quadrature::Rule::trapezoid;
    } else if (f.quadrature == "simpson") {
      c.quadrature.rule = Quadrature::Rule::simpson;
    } else {
      throw ValidationError("unknown quadrature rule '" + f.quadrature + "'");
    }
  }
  if (f.subintervals != 0) c.quadrature.subintervals = f.subintervals;
  c.quadrature.validate();
}

RunConfig resolve(const CommonFlags& f, const std::string& default_config) {
  RunConfig c = load_config(f.config.empty() ? default_config : f.config);
  apply_grid(f, c);
  apply_partition(f, c);
  if (!f.method.empty() && f.method != "all") c.methods = {parse_method(f.method)};
  return c;
}

std::optional<std::string> out_dir(const CommonFlags& f) {
  return f.out.empty() ? std::nullopt : std::optional<std::string>(f.out);
}

// ---------------------------------------------------------------------------------------------
// Demo functions for `ftransform`.

FuzzyFunction demo_function(const std::string& name) {
  if (name == "example3_1") {
    return [](double u, double alpha, double mu) {
      const double cube = u * u * u / 3.0;
      return cube + alpha * (u + 3.0) + mu * (1.0 - alpha) * (cube + 4.0);
    };
  }
  if (name == "linear") return [](double u, double, double) { return u; };
  if (name == "square") return [](double u, double, double) { return u * u; };
  if (name == "sin") return [](double u, double, double) { return std::sin(u); };
  if (name == "exp") return [](double u, double, double) { return std::exp(u); };
  if (name.rfind("const:", 0) == 0) {
    const double c = text::parse_double(std::string_view(name).substr(6));
    return [c](double, double, double) { return c; };
  }
  if (name.rfind("fuzzy:", 0) == 0) {
    const auto t = TriangularFuzzyNumber::parse(std::string_view(name).substr(6));
    t.validate();
    return [t](double, double alpha, double mu) {
      const auto cut = t.alpha_cut(alpha);
      return cut.lower + (cut.upper - cut.lower) * mu;
    };
  }
  throw ValidationError("unknown demo function '" + name +
                        "' (expected example3_1, linear, square, sin, exp, const:C or fuzzy:(l,p,r))");
}

std::string components_csv(const GranularComponents& c) {
  std::ostringstream s;
  s << "component,u,alpha,mu,value,value_full\n";
  const auto& spec = c.spec();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    for (std::size_t k = 0; k < spec.slice_count(); ++k) {
      s << i + 1 << ',' << full(c.partition.node(i)) << ',' << full(spec.alpha_of(k)) << ','
        << full(spec.mu_of(k)) << ',' << fixed4(c.values[i][k]) << ',' << full(c.values[i][k]) << '\n';
    }
  }
  return s.str();
}

GranularComponents run_ftransform(const RunConfig& c, const std::string& function) {
  const auto p = c.partition();
  const auto g = sample_on_partition(demo_function(function), c.grid, p, c.quadrature);
  return granular_ftransform(g, p, c.quadrature);
}

// ---------------------------------------------------------------------------------------------
// Model tables.

constexpr const char* kPointNames[] = {"E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7"};

std::size_t parse_point(const std::string& s) {
  for (std::size_t i = 0; i < model::kEquilibriumCount; ++i) {
    if (s == kPointNames[i]) return i;
  }
  throw ValidationError("unknown equilibrium '" + s + "' (expected E0..E7)");
}

std::string equilibria_csv(const model::EquilibriumTable& t, std::optional<std::size_t> only) {
  std::ostringstream s;
  s << "alpha,mu,point,exists," << kTripleHeader << '\n';
  for (std::size_t k = 0; k < t.spec.slice_count(); ++k) {
    const auto& e = t.slices[k];
    for (std::size_t i = 0; i < model::kEquilibriumCount; ++i) {
      if (only && *only != i) continue;
      const bool exists = i < 7 || e.e7_exists;
      s << full(t.spec.alpha_of(k)) << ',' << full(t.spec.mu_of(k)) << ',' << kPointNames[i] << ',' << flag(exists)
        << ',' << triple(e.points[i]) << '\n';
    }
  }
  return s.str();
}

std::string e7_conditions_csv(const model::EquilibriumTable& t) {
  std::ostringstream s;
  s << "alpha,mu,existence_1,existence_2,existence_3,exists\n";
  for (std::size_t k = 0; k < t.spec.slice_count(); ++k) {
    const auto& e = t.slices[k];
    s << full(t.spec.alpha_of(k)) << ',' << full(t.spec.mu_of(k)) << ',' << flag(e.e7_conditions[0]) << ','
      << flag(e.e7_conditions[1]) << ',' << flag(e.e7_conditions[2]) << ',' << flag(e.e7_exists) << '\n';
  }
  return s.str();
}

std::string stability_csv(const model::StabilityTable& t) {
  std::ostringstream s;
  s << "alpha,mu,point,exists," << kTripleHeader
    << ",eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im,eig1_re_full,eig2_re_full,eig3_re_full,"
       "verdict,conditions,closed_form_stable,agrees\n";
  for (std::size_t k = 0; k < t.spec.slice_count(); ++k) {
    for (const auto& p : t.slices[k]) {
      s << full(t.spec.alpha_of(k)) << ',' << full(t.spec.mu_of(k)) << ',' << kPointNames[p.index] << ','
        << flag(p.exists) << ',' << triple(p.point);
      for (const auto& z : p.eigenvalues) s << ',' << fixed4(z.real()) << ',' << fixed4(z.imag());
      for (const auto& z : p.eigenvalues) s << ',' << full(z.real());
      std::string conditions;
      for (bool c : p.conditions) conditions += c ? 'T' : 'F';
      s << ',' << model::to_string(p.verdict) << ',' << (conditions.empty() ? "-" : conditions) << ','
        << flag(p.closed_form_stable) << ',' << flag(p.agrees) << '\n';
    }
  }
  return s.str();
}

// States around E7: same-sign scalings and mixed-sign perturbations.
std::vector<model::State> lyapunov_samples(const model::State& e) {
  std::vector<model::State> out;
  for (double f : {0.5, 0.9, 1.1, 1.5, 2.0}) out.push_back({e[0] * f, e[1] * f, e[2] * f});
  out.push_back({e[0] * 1.1, e[1] * 0.9, e[2] * 1.1});
  out.push_back({e[0] * 0.9, e[1] * 1.1, e[2] * 0.9});
  out.push_back({e[0] * 1.2, e[1] * 1.2, e[2] * 0.8});
  return out;
}

std::string lyapunov_csv(const model::ModelParams& params, const GridSpec& spec) {
  std::ostringstream s;
  s << "alpha,mu,e7_exists,a4_below_one,coupling_condition,conditions_hold,samples,same_sign_samples,"
       "decreasing_on_same_sign,direct_decreasing_on_same_sign,min_value\n";
  for (std::size_t k = 0; k < spec.slice_count(); ++k) {
    const auto rates = model::rates_at(params, spec.alpha_of(k), spec.mu_of(k));
    s << full(spec.alpha_of(k)) << ',' << full(spec.mu_of(k)) << ',';
    const auto e = model::equilibria(rates).points[7];
    if (!(e[0] > 0.0 && e[1] > 0.0 && e[2] > 0.0)) {
      s << flag(model::equilibria(rates).e7_exists) << ",undefined,undefined,undefined,0,0,undefined,undefined,-\n";
      continue;
    }
    const auto samples = lyapunov_samples(e);
    const auto eval = model::lyapunov_check(rates, samples);
    std::size_t same_sign = 0;
    double min_value = std::numeric_limits<double>::infinity();
    for (const auto& x : eval.samples) {
      same_sign += x.same_sign ? 1 : 0;
      min_value = std::min(min_value, x.value);
    }
    s << flag(eval.e7_exists) << ',' << flag(eval.a4_below_one) << ',' << flag(eval.coupling_condition) << ','
      << flag(eval.conditions_hold) << ',' << eval.samples.size() << ',' << same_sign << ','
      << flag(eval.decreasing_on_same_sign) << ',' << flag(eval.direct_decreasing_on_same_sign) << ','
      << fixed4(min_value) << '\n';
  }
  return s.str();
}

// ---------------------------------------------------------------------------------------------
// Trajectories.

struct Solution {
  Method method;
  FuzzyTrajectory trajectory;
};

std::vector<Solution> run_solve(const RunConfig& c) {
  const auto& params = c.require_model();
  const auto p = c.partition();
  SolverOptions opts;
  opts.refinement = c.refinement;
  opts.quadrature = c.quadrature;
  std::vector<Solution> out;
  for (Method m : c.methods) out.push_back({m, model::simulate(params, c.grid, p, m, opts)});
  return out;
}

// Rows for nodes whose index is a multiple of `stride`, restricted to one alpha when given.
std::string trajectory_csv(const std::vector<Solution>& sols, std::size_t stride, std::optional<double> alpha) {
  std::ostringstream s;
  s << "alpha,mu,u,method," << kTripleHeader << '\n';
  if (sols.empty()) return s.str();
  const auto& spec = sols.front().trajectory.spec();
  const auto& part = sols.front().trajectory.partition;
  for (std::size_t k = 0; k < spec.slice_count(); ++k) {
    if (alpha && spec.alpha_of(k) != *alpha) continue;
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (i % stride != 0 && i + 1 != part.size()) continue;
      for (const auto& sol : sols) {
        const auto& st = sol.trajectory.states;
        s << full(spec.alpha_of(k)) << ',' << full(spec.mu_of(k)) << ',' << fixed4(part.node(i)) << ','
          << to_string(sol.method) << ',' << triple({st[0][i][k], st[1][i][k], st[2][i][k]}) << '\n';
      }
    }
  }
  return s.str();
}

std::string rms_csv(const std::vector<Solution>& sols, const FuzzyTrajectory& reference) {
  std::ostringstream s;
  s << "alpha,mu,method,rms_p,rms_q,rms_r,rms_p_full,rms_q_full,rms_r_full\n";
  const auto& spec = reference.spec();
  for (std::size_t k = 0; k < spec.slice_count(); ++k) {
    const auto ref = reference.slice(k);
    for (const auto& sol : sols) {
      if (sol.method == Method::reference) continue;
      const auto x = sol.trajectory.slice(k);
      s << full(spec.alpha_of(k)) << ',' << full(spec.mu_of(k)) << ',' << to_string(sol.method) << ','
        << triple({rms_error(x.states[0], ref.states[0]), rms_error(x.states[1], ref.states[1]),
                   rms_error(x.states[2], ref.states[2])})
        << '\n';
    }
  }
  return s.str();
}

const FuzzyTrajectory& reference_of(std::vector<Solution>& sols, const RunConfig& c) {
  for (const auto& s : sols) {
    if (s.method == Method::reference) return s.trajectory;
  }
  SolverOptions opts;
  opts.refinement = c.refinement;
  sols.push_back({Method::reference, model::simulate(c.require_model(), c.grid, c.partition(), Method::reference, opts)});
  return sols.back().trajectory;
}

// ---------------------------------------------------------------------------------------------

std::string table_csv(const model::EquilibriumTable& t, std::size_t point) {
  std::ostringstream s;
  s << "alpha,mu," << kTripleHeader << (point == 7 ? ",exists" : "") << '\n';
  for (std::size_t k = 0; k < t.spec.slice_count(); ++k) {
    s << full(t.spec.alpha_of(k)) << ',' << full(t.spec.mu_of(k)) << ',' << triple(t.slices[k].points[point]);
    if (point == 7) s << ',' << flag(t.slices[k].e7_exists);
    s << '\n';
  }
  return s.str();
}

void run_tables(const CommonFlags& f, Output& out) {
  const struct {
    const char* table;
    const char* config;
    std::size_t point;
  } equilibrium_tables[] = {
      {"table1", "example4_1", 4}, {"table2", "example4_2", 5}, {"table3", "example4_3", 6}, {"table4", "example4_4", 7}};
  for (const auto& e : equilibrium_tables) {
    RunConfig c = load_config(e.config);
    apply_grid(f, c);
    out.write(e.table, table_csv(model::equilibria(c.require_model(), c.grid), e.point));
  }

  RunConfig c = load_config("example5_1");
  apply_grid(f, c);
  if (!std::isnan(f.h)) {
    if (!(f.h > 0.0)) throw ValidationError("--h must be positive, got " + text::shortest(f.h));
    c.h = f.h;
  }
  auto sols = run_solve(c);
  const auto part = c.partition();
  const std::size_t stride = std::max<std::size_t>(1, (part.size() - 1) / 5);
  out.write("table5", trajectory_csv(sols, stride, 0.0));
  out.write("table6", trajectory_csv(sols, stride, 0.5));
  out.write("table7", trajectory_csv(sols, stride, 1.0));
  const auto& reference = reference_of(sols, c);
  out.write("table8", rms_csv(sols, reference));

  RunConfig demo = load_config("example3_1");
  out.write("example3_1", components_csv(run_ftransform(demo, demo.function)));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Granular fuzzy arithmetic, F-transform and fuzzy prey-predator tool", "granular"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "granular 1.0");
  std::function<void()> action;

  std::string hmf_literal;
  CommonFlags hmf_flags;
  auto* hmf = app.add_subcommand("hmf", "Sample the horizontal membership function of \"(l,p,r)\"");
  hmf->add_option("number", hmf_literal, "Triangular fuzzy number \"(l,p,r)\"")->required();
  add_common(hmf, hmf_flags, false);
  hmf->callback([&] {
    action = [&] {
      RunConfig c;
      apply_grid(hmf_flags, c);
      const auto t = TriangularFuzzyNumber::parse(hmf_literal);
      std::ostringstream s;
      write_csv(s, hmf_from_triangular(t, c.grid));
      Output(out, out_dir(hmf_flags)).write("hmf", s.str());
    };
  });

  std::string ft_function;
  CommonFlags ft_flags;
  auto* ft = app.add_subcommand("ftransform", "Granular F-transform components of a demo function");
  ft->add_option("function", ft_function,
                 "example3_1, linear, square, sin, exp, const:C or fuzzy:(l,p,r) (default: from config)");
  add_common(ft, ft_flags);
  add_partition_flags(ft, ft_flags);
  ft->add_option("--quadrature", ft_flags.quadrature, "trapezoid or simpson");
  ft->add_option("--subintervals", ft_flags.subintervals, "Quadrature subintervals per gap");
  ft->callback([&] {
    action = [&] {
      const auto c = resolve(ft_flags, "example3_1");
      const std::string fn = !ft_function.empty() ? ft_function : (c.function.empty() ? "example3_1" : c.function);
      Output(out, out_dir(ft_flags)).write("ftransform", components_csv(run_ftransform(c, fn)));
    };
  });

  CommonFlags eq_flags;
  std::string eq_point;
  auto* eq = app.add_subcommand("equilibria", "Equilibria E0..E7 at every grid point");
  add_common(eq, eq_flags);
  eq->add_option("--point", eq_point, "Only this equilibrium (E0..E7)");
  eq->callback([&] {
    action = [&] {
      const auto c = resolve(eq_flags, "example4_1");
      const auto table = model::equilibria(c.require_model(), c.grid);
      Output o(out, out_dir(eq_flags));
      o.write("equilibria", equilibria_csv(table, eq_point.empty() ? std::nullopt
                                                                   : std::optional<std::size_t>(parse_point(eq_point))));
      o.write("e7_existence", e7_conditions_csv(table));
    };
  });

  CommonFlags solve_flags;
  std::size_t stride = 1;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the fuzzy prey-predator IVP and report RMS errors");
  add_common(solve_cmd, solve_flags);
  add_partition_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--method", solve_flags.method, "euler, ft-midpoint, reference or all");
  solve_cmd->add_option("--stride", stride, "Print every k-th node (the last node is always printed)")
      ->check(CLI::PositiveNumber);
  solve_cmd->callback([&] {
    action = [&] {
      auto c = resolve(solve_flags, "example5_1");
      if (solve_flags.method == "all") c.methods = {Method::ft_midpoint, Method::euler, Method::reference};
      auto sols = run_solve(c);
      Output o(out, out_dir(solve_flags));
      o.write("trajectory", trajectory_csv(sols, stride, std::nullopt));
      const auto& reference = reference_of(sols, c);
      o.write("rms", rms_csv(sols, reference));
    };
  });

  CommonFlags stab_flags;
  auto* stab = app.add_subcommand("stability", "Local stability of E0..E7 and the Lyapunov conditions for E7");
  add_common(stab, stab_flags);
  stab->callback([&] {
    action = [&] {
      const auto c = resolve(stab_flags, "example4_1");
      Output o(out, out_dir(stab_flags));
      o.write("stability", stability_csv(model::stability(c.require_model(), c.grid)));
      o.write("lyapunov", lyapunov_csv(c.require_model(), c.grid));
    };
  });

  CommonFlags tables_flags;
  auto* tables = app.add_subcommand("tables", "Reproduce every table of the worked examples");
  add_common(tables, tables_flags, false);
  tables->add_option("--h", tables_flags.h, "Step for the example5_1 solves");
  tables->callback([&] {
    action = [&] {
      Output o(out, out_dir(tables_flags));
      o.label_sections();
      run_tables(tables_flags, o);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const DivergenceError& e) {
    err << "error: divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace granular::cli
