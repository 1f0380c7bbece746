#pragma once

// JSON views of checker, certificate and solver results. Doubles are written
// in shortest round-trip form; non-finite values become null.

#include "json.hpp"

#include "cfp/config.hpp"
#include "cfp/fixpoint.hpp"
#include "cfp/linf_example.hpp"
#include "cfp/mateq.hpp"

namespace cfp {

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const InequalityCertificate<HermitianMatrix, double>& c);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const GapMonotonicityReport& r);

nlohmann::json to_json(const InequalityCertificate<linf::Point, linf::Rational>& c);
nlohmann::json to_json(const IterationTrace<linf::Point, linf::Rational>& t);
nlohmann::json to_json(const UniquenessReport<linf::Point, linf::Rational>& r);

/// Exact value as "p/q" alongside a double approximation.
nlohmann::json rational_to_json(const linf::Rational& r);

}  // namespace cfp
