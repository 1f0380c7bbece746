#include "cfp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cfp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

double read_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number, got " + std::string(j.type_name()));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

std::uint64_t read_unsigned(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  fail(field, "expected a non-negative integer");
}

Complex read_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected a complex scalar [re, im]");
  return {read_number(j[0], field + "[0]"), read_number(j[1], field + "[1]")};
}

ComplexMatrix read_matrix(const json& j, std::size_t n, const std::string& field) {
  const std::string expected = "expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix";
  if (!j.is_array() || j.size() != n) fail(field, expected);
  std::vector<std::vector<Complex>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) fail(row_field, expected);
    for (std::size_t k = 0; k < n; ++k)
      rows[i].push_back(read_complex(j[i][k], row_field + "[" + std::to_string(k) + "]"));
  }
  return ComplexMatrix::from_rows(rows);
}

MapDescriptor read_map(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object {kind, params}");
  if (!j.contains("kind") || !j["kind"].is_string()) fail(field + ".kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();
  std::vector<double> params;
  if (j.contains("params")) {
    if (!j["params"].is_array()) fail(field + ".params", "expected an array of numbers");
    for (std::size_t i = 0; i < j["params"].size(); ++i)
      params.push_back(read_number(j["params"][i], field + ".params[" + std::to_string(i) + "]"));
  }
  auto arity = [&](std::size_t want) {
    if (params.size() != want)
      fail(field + ".params", "map kind '" + kind + "' takes " + std::to_string(want) +
                                  " parameter(s), got " + std::to_string(params.size()));
  };
  try {
    if (kind == "zero") { arity(0); return MapDescriptor::zero(); }
    if (kind == "scaled_identity") { arity(1); return MapDescriptor::scaled_identity(params[0]); }
    if (kind == "spectral_power") {
      arity(2);
      return MapDescriptor::spectral_power(params[0], params[1]);
    }
    if (kind == "spectral_tanh") { arity(1); return MapDescriptor::spectral_tanh(params[0]); }
    if (kind == "affine") { arity(2); return MapDescriptor::affine(params[0], params[1]); }
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
  fail(field + ".kind", "unknown map kind '" + kind +
                            "' (expected zero, scaled_identity, spectral_power, spectral_tanh, affine)");
}

EquationConfig read_equation(const json& j, std::size_t n, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  for (const char* key : {"Q", "sign", "A", "map"})
    if (!j.contains(key)) fail(field, std::string("missing field '") + key + "'");

  EquationConfig eq;
  eq.q = read_matrix(j["Q"], n, field + ".Q");
  if (!j["sign"].is_string()) fail(field + ".sign", "expected \"plus\" or \"minus\"");
  const std::string sign = j["sign"].get<std::string>();
  if (sign == "plus") {
    eq.sign = Sign::plus;
  } else if (sign == "minus") {
    eq.sign = Sign::minus;
  } else {
    fail(field + ".sign", "expected \"plus\" or \"minus\", got \"" + sign + "\"");
  }
  if (!j["A"].is_array()) fail(field + ".A", "expected an array of matrices");
  for (std::size_t i = 0; i < j["A"].size(); ++i)
    eq.a.push_back(read_matrix(j["A"][i], n, field + ".A[" + std::to_string(i) + "]"));
  eq.map = read_map(j["map"], field + ".map");
  return eq;
}

}  // namespace

EquationPair ProblemConfig::pair() const {
  std::array<std::optional<EquationSpec>, 2> specs;
  for (std::size_t e = 0; e < 2; ++e) {
    const std::string field = "equations[" + std::to_string(e) + "]";
    const auto& eq = equations[e];
    std::optional<HermitianMatrix> q;
    try {
      q.emplace(eq.q);
    } catch (const std::invalid_argument& ex) {
      fail(field + ".Q", ex.what());
    }
    try {
      specs[e].emplace(*q, eq.sign, eq.a, eq.map);
    } catch (const std::invalid_argument& ex) {
      fail(field, ex.what());
    }
  }
  try {
    return EquationPair(*specs[0], *specs[1]);
  } catch (const std::invalid_argument& ex) {
    fail("equations", ex.what());
  }
}

double ProblemConfig::resolved_k1() const {
  if (k1) return *k1;
  const auto a1 = equations[0].map.auto_k1(ball_radius);
  const auto a2 = equations[1].map.auto_k1(ball_radius);
  if (!a1 || !a2)
    fail("k1", "\"auto\" is not available for spectral_power maps; give k1 explicitly");
  return std::max(*a1, *a2);
}

ProblemConfig parse_config(const json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  for (const char* key : {"n", "equations", "ball_radius"})
    if (!j.contains(key)) fail("<root>", std::string("missing field '") + key + "'");

  ProblemConfig c;
  c.n = read_unsigned(j["n"], "n");
  if (c.n == 0) fail("n", "dimension must be positive");
  if (!j["equations"].is_array() || j["equations"].size() != 2)
    fail("equations", "expected exactly two equations");
  for (std::size_t e = 0; e < 2; ++e)
    c.equations[e] = read_equation(j["equations"][e], c.n, "equations[" + std::to_string(e) + "]");

  c.ball_radius = read_number(j["ball_radius"], "ball_radius");
  if (c.ball_radius <= 0.0) fail("ball_radius", "must be positive");
  if (j.contains("k1")) {
    const auto& k1 = j["k1"];
    if (k1.is_string()) {
      if (k1.get<std::string>() != "auto") fail("k1", "expected a number or \"auto\"");
    } else {
      c.k1 = read_number(k1, "k1");
      if (*c.k1 < 0.0) fail("k1", "must be non-negative");
    }
  }
  if (j.contains("alpha")) {
    c.alpha = read_number(j["alpha"], "alpha");
    if (c.alpha <= 0.0) fail("alpha", "must be positive");
  }
  if (j.contains("tolerance")) {
    c.tolerance = read_number(j["tolerance"], "tolerance");
    if (c.tolerance <= 0.0) fail("tolerance", "must be positive");
  }
  if (j.contains("max_iterations")) {
    c.max_iterations = read_unsigned(j["max_iterations"], "max_iterations");
    if (c.max_iterations < 2) fail("max_iterations", "must be at least 2");
  }
  if (j.contains("seed")) c.seed = read_unsigned(j["seed"], "seed");
  if (j.contains("samples")) {
    c.samples = read_unsigned(j["samples"], "samples");
    if (c.samples < 1) fail("samples", "must be at least 1");
  }

  (void)c.pair();
  (void)c.resolved_k1();
  return c;
}

ProblemConfig parse_config_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + e.what());
  }
  return parse_config(j);
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ProblemConfig& c) {
  json eqs = json::array();
  for (const auto& eq : c.equations) {
    json as = json::array();
    for (const auto& a : eq.a) as.push_back(matrix_to_json(a));
    eqs.push_back({{"Q", matrix_to_json(eq.q)},
                   {"sign", to_string(eq.sign)},
                   {"A", std::move(as)},
                   {"map", {{"kind", to_string(eq.map.kind())}, {"params", eq.map.params()}}}});
  }
  json j{{"n", c.n},
         {"equations", std::move(eqs)},
         {"ball_radius", c.ball_radius},
         {"alpha", c.alpha},
         {"tolerance", c.tolerance},
         {"max_iterations", c.max_iterations},
         {"seed", c.seed},
         {"samples", c.samples}};
  if (c.k1) {
    j["k1"] = *c.k1;
  } else {
    j["k1"] = "auto";
  }
  return j;
}

}  // namespace cfp
