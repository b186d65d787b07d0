#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular::cli {
namespace {

using nlohmann::json;

constexpr std::string_view kExample3_1 = R"json({
  "name": "example3_1",
  "function": "example3_1",
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.5, 1]},
  "interval": [0, 3],
  "m": 4
})json";

constexpr std::string_view kExample4_1 = R"json({
  "name": "example4_1",
  "model": {
    "a1": "(0.01,0.02,0.03)", "a2": "(2,4,6)", "a3": "(0.1,0.2,0.3)", "a4": "(3,4,5)", "a5": "(1,2,3)",
    "p0": 0.1, "q0": 0.2, "r0": 0.3
  },
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.4, 0.6, 1]},
  "interval": [0, 50],
  "h": 0.01,
  "methods": ["reference"]
})json";

constexpr std::string_view kExample4_2 = R"json({
  "name": "example4_2",
  "model": {
    "a1": "(2,4,6)", "a2": "(0.01,0.02,0.03)", "a3": "(0.1,0.2,0.3)", "a4": "(1,2,3)", "a5": "(3,4,5)",
    "p0": 0.1, "q0": 0.2, "r0": 0.3
  },
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.4, 0.6, 1]},
  "interval": [0, 50],
  "h": 0.01,
  "methods": ["reference"]
})json";

constexpr std::string_view kExample4_3 = R"json({
  "name": "example4_3",
  "model": {
    "a1": "(3,4,5)", "a2": "(2,4,6)", "a3": "(3,4,5)", "a4": "(1,2,3)", "a5": "(0.01,0.02,0.03)",
    "p0": 0.1, "q0": 0.2, "r0": 0.3
  },
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.4, 0.6, 1]},
  "interval": [0, 50],
  "h": 0.01,
  "methods": ["reference"]
})json";

constexpr std::string_view kExample4_4 = R"json({
  "name": "example4_4",
  "model": {
    "a1": "(1,2,3)", "a2": "(2,4,6)", "a3": "(1,2,3)", "a4": "(3,4,5)", "a5": "(1,2,3)",
    "p0": 0.1, "q0": 0.2, "r0": 0.3
  },
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.4, 0.6, 1]},
  "interval": [0, 50],
  "h": 0.01,
  "methods": ["reference"]
})json";

constexpr std::string_view kExample5_1 = R"json({
  "name": "example5_1",
  "model": {
    "a1": "(0.01,0.02,0.03)", "a2": "(2,4,6)", "a3": "(0.1,0.2,0.3)", "a4": "(3,4,5)", "a5": "(1,2,3)",
    "p0": 0.1, "q0": 0.2, "r0": 0.3
  },
  "grid": {"alphas": [0, 0.5, 1], "mus": [0, 0.4, 0.6, 1]},
  "interval": [0, 1],
  "h": 0.01,
  "methods": ["ft-midpoint", "euler", "reference"],
  "refinement": 10
})json";

const std::map<std::string, std::string_view, std::less<>>& builtins() {
  static const std::map<std::string, std::string_view, std::less<>> table{
      {"example3_1", kExample3_1}, {"example4_1", kExample4_1}, {"example4_2", kExample4_2},
      {"example4_3", kExample4_3}, {"example4_4", kExample4_4}, {"example5_1", kExample5_1},
  };
  return table;
}

TriangularFuzzyNumber fuzzy_value(const json& v, const std::string& key) {
  TriangularFuzzyNumber t;
  if (v.is_number()) {
    t = TriangularFuzzyNumber::crisp(v.get<double>());
  } else if (v.is_string()) {
    t = TriangularFuzzyNumber::parse(v.get<std::string>());
  } else if (v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number()) {
    t = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  } else {
    throw ValidationError("'" + key + "' must be a number, \"(l,p,r)\" or [l,p,r]");
  }
  t.validate();
  return t;
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError("'" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("'" + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 1) throw ValidationError("'" + key + "' must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

model::ModelParams parse_model(const json& j) {
  if (!j.is_object()) throw ValidationError("'model' must be an object");
  static constexpr const char* rate_keys[] = {"a1", "a2", "a3", "a4", "a5"};
  static constexpr const char* init_keys[] = {"p0", "q0", "r0"};
  model::ModelParams params;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!j.contains(rate_keys[i])) throw ValidationError(std::string("model is missing '") + rate_keys[i] + "'");
    params.rates[i] = fuzzy_value(j.at(rate_keys[i]), rate_keys[i]);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j.contains(init_keys[i])) throw ValidationError(std::string("model is missing '") + init_keys[i] + "'");
    params.init[i] = fuzzy_value(j.at(init_keys[i]), init_keys[i]);
  }
  params.validate();
  return params;
}

}  // namespace

FuzzyPartition RunConfig::partition() const {
  if (h) return partition_with_step(a, b, *h);
  return uniform_partition(a, b, m.value_or(101));
}

const model::ModelParams& RunConfig::require_model() const {
  if (!model) throw ValidationError("config '" + name + "' has no model parameters");
  return *model;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : builtins()) out.push_back(name);
  return out;
}

std::string builtin_json(std::string_view name) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) throw ValidationError("unknown built-in config '" + std::string(name) + "'");
  return std::string(it->second);
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");

  static const std::vector<std::string> known{"name",     "model", "function", "grid",       "interval",
                                              "h",        "m",     "methods",  "refinement", "quadrature"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }

  RunConfig c;
  c.name = j.value("name", std::string("custom"));
  if (j.contains("model")) c.model = parse_model(j.at("model"));
  if (j.contains("function")) {
    if (!j.at("function").is_string()) throw ValidationError("'function' must be a string");
    c.function = j.at("function").get<std::string>();
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw ValidationError("'grid' must be an object");
    c.grid = GridSpec(g.contains("alphas") ? number_list(g.at("alphas"), "grid.alphas") : GridSpec().alphas(),
                      g.contains("mus") ? number_list(g.at("mus"), "grid.mus") : GridSpec().mus());
  }
  if (j.contains("interval")) {
    const auto iv = number_list(j.at("interval"), "interval");
    if (iv.size() != 2 || !(iv[0] < iv[1])) throw ValidationError("'interval' must be [a, b] with a < b");
    c.a = iv[0];
    c.b = iv[1];
  }
  if (j.contains("h")) {
    c.h = number(j.at("h"), "h");
    if (!(*c.h > 0.0)) throw ValidationError("'h' must be positive, got " + text::shortest(*c.h));
  }
  if (j.contains("m")) c.m = count(j.at("m"), "m");
  if (j.contains("methods")) {
    const auto& ms = j.at("methods");
    if (!ms.is_array() || ms.empty()) throw ValidationError("'methods' must be a non-empty array of names");
    c.methods.clear();
    for (const auto& x : ms) {
      if (!x.is_string()) throw ValidationError("'methods' must be a non-empty array of names");
      c.methods.push_back(parse_method(x.get<std::string>()));
    }
  }
  if (j.contains("refinement")) c.refinement = count(j.at("refinement"), "refinement");
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    if (!q.is_object()) throw ValidationError("'quadrature' must be an object");
    const std::string rule = q.value("rule", std::string("trapezoid"));
    if (rule == "trapezoid") {
      c.quadrature.rule = Quadrature::Rule::trapezoid;
    } else if (rule == "simpson") {
      c.quadrature.rule = Quadrature::Rule::simpson;
    } else {
      throw ValidationError("unknown quadrature rule '" + rule + "'");
    }
    if (q.contains("subintervals")) c.quadrature.subintervals = count(q.at("subintervals"), "quadrature.subintervals");
    c.quadrature.validate();
  }
  c.partition();
  return c;
}

RunConfig load_config(const std::string& name_or_path) {
  if (builtins().contains(name_or_path)) return parse_config(builtin_json(name_or_path));
  std::ifstream in(name_or_path);
  if (!in) throw ValidationError("config '" + name_or_path + "' is neither a built-in name nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace granular::cli
