#include "cfp/report.hpp"

#include <cmath>

namespace cfp {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json opt_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

}  // namespace

json to_json(const ConditionReport& r) {
  const auto& c1 = r.condition_i;
  const auto& c2 = r.condition_ii;
  const auto& c3 = r.condition_iii;

  json violations3 = json::array();
  for (const auto& v : c3.violations) violations3.push_back({{"sample", v.sample}, {"margin", number(v.margin)}});

  return {
      {"k", number(r.k)},
      {"k1", number(r.k1)},
      {"samples", r.samples},
      {"seed", r.seed},
      {"sampled_not_proven", r.sampled_not_proven},
      {"all_pass", r.all_pass()},
      {"condition_i",
       {{"pass", c1.pass},
        {"bound", number(c1.bound)},
        {"margin_q1", number(c1.margin_q1)},
        {"margin_q2", number(c1.margin_q2)}}},
      {"condition_ii",
       {{"pass", c2.pass},
        {"samples", c2.samples},
        {"min_margin", number(c2.min_margin)},
        {"min_margin_first", number(c2.min_margin_first)},
        {"min_margin_second", number(c2.min_margin_second)},
        {"first_branch_uniform", c2.first_branch_uniform},
        {"second_branch_uniform", c2.second_branch_uniform},
        {"violating_samples", c2.violating_samples}}},
      {"condition_iii",
       {{"pass", c3.pass},
        {"samples", c3.samples},
        {"lhs", number(c3.lhs)},
        {"worst_margin", number(c3.worst_margin)},
        {"worst_sample", c3.worst_sample},
        {"violations", std::move(violations3)}}},
  };
}

json to_json(const InequalityCertificate<HermitianMatrix, double>& c) {
  json violations = json::array();
  for (const auto& v : c.violations)
    violations.push_back({{"pair", v.first_index}, {"lhs", number(v.lhs)}, {"rhs", number(v.rhs)}});
  return {{"pairs", c.pairs},
          {"exhaustive", c.exhaustive},
          {"holds", c.holds()},
          {"worst_margin", number(c.worst_margin)},
          {"worst_pair", c.worst_first_index},
          {"violations", std::move(violations)}};
}

json to_json(const GapMonotonicityReport& r) {
  return {{"gaps", r.gaps}, {"monotone", r.monotone()}, {"violations", r.violations}};
}

json to_json(const SolveReport& r) {
  json gaps = json::array();
  for (double g : r.trace.gaps) gaps.push_back(number(g));
  return {
      {"verdict", to_string(r.verdict)},
      {"iterations", r.trace.steps()},
      {"tolerance", number(r.tolerance)},
      {"solution", r.solution ? matrix_to_json(r.solution->matrix()) : json(nullptr)},
      {"best_iterate", matrix_to_json(r.best_iterate.matrix())},
      {"residual_1", number(r.residual_1)},
      {"residual_2", number(r.residual_2)},
      {"trace_residual_f", opt_number(r.trace.residual_f)},
      {"trace_residual_g", opt_number(r.trace.residual_g)},
      {"nonfinite_index", r.trace.nonfinite_index ? json(*r.trace.nonfinite_index) : json(nullptr)},
      {"min_eigenvalue", number(r.min_eigenvalue)},
      {"positive_definite", r.positive_definite},
      {"trace_norm", number(r.trace_norm)},
      {"in_ball", r.in_ball},
      {"gaps", std::move(gaps)},
      {"gap_monotonicity", to_json(gap_monotonicity_check(r.trace))},
  };
}

json rational_to_json(const linf::Rational& r) {
  return {{"exact", r.str()}, {"approx", number(r.convert_to<double>())}};
}

json to_json(const InequalityCertificate<linf::Point, linf::Rational>& c) {
  json violations = json::array();
  for (const auto& v : c.violations) {
    violations.push_back({{"x", linf::to_string(v.x)},
                          {"y", linf::to_string(v.y)},
                          {"lhs", rational_to_json(v.lhs)},
                          {"rhs", rational_to_json(v.rhs)}});
  }
  return {{"pairs", c.pairs},
          {"exhaustive", c.exhaustive},
          {"holds", c.holds()},
          {"worst_margin", rational_to_json(c.worst_margin)},
          {"worst_pair", {c.worst_first_index, c.worst_second_index}},
          {"violations", std::move(violations)}};
}

json to_json(const IterationTrace<linf::Point, linf::Rational>& t) {
  json iterates = json::array();
  for (const auto& p : t.iterates) iterates.push_back(linf::to_string(p));
  json gaps = json::array();
  for (const auto& g : t.gaps) gaps.push_back(g.str());
  return {{"verdict", to_string(t.verdict)},
          {"iterates", std::move(iterates)},
          {"gaps", std::move(gaps)},
          {"residual_f", t.residual_f ? json(t.residual_f->str()) : json(nullptr)},
          {"residual_g", t.residual_g ? json(t.residual_g->str()) : json(nullptr)},
          {"gap_monotonicity", to_json(gap_monotonicity_check(t, linf::Rational(0)))}};
}

json to_json(const UniquenessReport<linf::Point, linf::Rational>& r) {
  json runs = json::array();
  for (const auto& run : r.runs)
    runs.push_back({{"verdict", to_string(run.verdict)},
                    {"steps", run.steps},
                    {"limit", linf::to_string(run.limit)}});
  json flagged = json::array();
  for (const auto& f : r.flagged)
    flagged.push_back({{"first", f.first}, {"second", f.second}, {"distance", f.distance.str()}});
  return {{"starts", r.runs.size()},
          {"all_converged", r.all_converged()},
          {"unique", r.unique()},
          {"runs", std::move(runs)},
          {"flagged", std::move(flagged)}};
}

}  // namespace cfp
