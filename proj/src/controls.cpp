#include "cfp/controls.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace cfp {

namespace {

void require_argument(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error(std::string(what) + " must be a finite non-negative real, got " +
                            std::to_string(t));
  }
}

void require_param(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

// -- AlteringDistanceFn -------------------------------------------------------

AlteringDistanceFn AlteringDistanceFn::linear(double c) {
  require_param(std::isfinite(c) && c > 0.0, "linear altering distance needs c > 0");
  return {Kind::linear, {c}, {}, true, [c](double t) { return c * t; }};
}

AlteringDistanceFn AlteringDistanceFn::capped_linear(double c, double cap_at, double cap_value) {
  require_param(std::isfinite(c) && c > 0.0, "capped_linear needs c > 0");
  require_param(std::isfinite(cap_at) && cap_at > 0.0, "capped_linear needs cap_at > 0");
  require_param(std::isfinite(cap_value) && cap_value >= 0.0, "capped_linear needs cap_value >= 0");
  return {Kind::capped_linear, {c, cap_at, cap_value}, {}, false,
          [c, cap_at, cap_value](double t) { return t <= cap_at ? c * t : cap_value; }};
}

AlteringDistanceFn AlteringDistanceFn::power(double c, double p) {
  require_param(std::isfinite(c) && c > 0.0, "power altering distance needs c > 0");
  require_param(std::isfinite(p) && p > 0.0, "power altering distance needs p > 0");
  return {Kind::power, {c, p}, {}, true,
          [c, p](double t) { return t == 0.0 ? 0.0 : c * std::pow(t, p); }};
}

AlteringDistanceFn AlteringDistanceFn::custom(std::string id) {
  auto entry = ControlRegistry::instance().find_phi(id);
  if (!entry) throw std::invalid_argument("unknown altering distance function id '" + id + "'");
  return {Kind::custom, {}, std::move(id), entry->strictly_increasing, std::move(entry->fn)};
}

double AlteringDistanceFn::operator()(double t) const {
  require_argument(t, "altering distance argument");
  if (t == 0.0 && kind_ != Kind::custom) return 0.0;
  return eval_(t);
}

// -- PsiControl ---------------------------------------------------------------

PsiControl PsiControl::max_alpha_phi(double alpha, AlteringDistanceFn phi) {
  require_param(std::isfinite(alpha) && alpha >= 0.0, "max_alpha_phi needs alpha >= 0");
  auto inner = std::make_shared<const AlteringDistanceFn>(std::move(phi));
  auto eval = [alpha, inner](double t1, double t2) {
    return (*inner)(std::max(alpha * t1, alpha * t2));
  };
  return {Kind::max_alpha_phi, {alpha}, {}, inner, std::move(eval)};
}

PsiControl PsiControl::sum_scaled(double c, double threshold, double fallback) {
  require_param(std::isfinite(c) && c >= 0.0, "sum_scaled needs c >= 0");
  require_param(std::isfinite(threshold) && threshold >= 0.0, "sum_scaled needs threshold >= 0");
  require_param(std::isfinite(fallback) && fallback >= 0.0, "sum_scaled needs fallback >= 0");
  return {Kind::sum_scaled, {c, threshold, fallback}, {}, nullptr,
          [c, threshold, fallback](double t1, double t2) {
            return (t1 <= threshold && t2 <= threshold) ? c * (t1 + t2) : fallback;
          }};
}

PsiControl PsiControl::custom(std::string id) {
  auto fn = ControlRegistry::instance().find_psi(id);
  if (!fn) throw std::invalid_argument("unknown psi control id '" + id + "'");
  return {Kind::custom, {}, std::move(id), nullptr, std::move(*fn)};
}

double PsiControl::operator()(double t1, double t2) const {
  require_argument(t1, "psi first argument");
  require_argument(t2, "psi second argument");
  return eval_(t1, t2);
}

ControlFunctions<double> ControlBundle::functions() const {
  return {[phi = phi](const double& t) { return phi(t); },
          [phi1 = phi1](const double& t) { return phi1(t); },
          [psi = psi](const double& t1, const double& t2) { return psi(t1, t2); }};
}

// -- registry -----------------------------------------------------------------

struct ControlRegistry::Impl {
  mutable std::shared_mutex mutex;
  std::map<std::string, PhiEntry> phis;
  std::map<std::string, std::function<double(double, double)>> psis;
};

ControlRegistry::ControlRegistry() : impl_(std::make_unique<Impl>()) {
  impl_->phis.emplace("log1p", PhiEntry{[](double t) { return std::log1p(t); }, true});
  impl_->phis.emplace("sqrt", PhiEntry{[](double t) { return std::sqrt(t); }, true});
  impl_->phis.emplace("saturating", PhiEntry{[](double t) { return t / (1.0 + t); }, true});
  impl_->psis.emplace("zero", [](double, double) { return 0.0; });
  impl_->psis.emplace("half_max", [](double t1, double t2) { return 0.5 * std::max(t1, t2); });
}

ControlRegistry& ControlRegistry::instance() {
  static ControlRegistry registry;
  return registry;
}

bool ControlRegistry::add_phi(const std::string& id, std::function<double(double)> fn,
                              bool strictly_increasing) {
  std::unique_lock lock(impl_->mutex);
  return impl_->phis.emplace(id, PhiEntry{std::move(fn), strictly_increasing}).second;
}

bool ControlRegistry::add_psi(const std::string& id, std::function<double(double, double)> fn) {
  std::unique_lock lock(impl_->mutex);
  return impl_->psis.emplace(id, std::move(fn)).second;
}

std::optional<ControlRegistry::PhiEntry> ControlRegistry::find_phi(const std::string& id) const {
  std::shared_lock lock(impl_->mutex);
  auto it = impl_->phis.find(id);
  if (it == impl_->phis.end()) return std::nullopt;
  return it->second;
}

std::optional<std::function<double(double, double)>> ControlRegistry::find_psi(
    const std::string& id) const {
  std::shared_lock lock(impl_->mutex);
  auto it = impl_->psis.find(id);
  if (it == impl_->psis.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ControlRegistry::phi_ids() const {
  std::shared_lock lock(impl_->mutex);
  std::vector<std::string> ids;
  for (const auto& [id, _] : impl_->phis) ids.push_back(id);
  return ids;
}

std::vector<std::string> ControlRegistry::psi_ids() const {
  std::shared_lock lock(impl_->mutex);
  std::vector<std::string> ids;
  for (const auto& [id, _] : impl_->psis) ids.push_back(id);
  return ids;
}

// -- grids --------------------------------------------------------------------

SamplingGrid SamplingGrid::log_uniform(double max, std::size_t points) {
  require_param(std::isfinite(max) && max > 0.0, "grid max must be positive");
  require_param(points >= 2, "log grid needs at least two points");
  return {max, points, Spacing::log_uniform};
}

SamplingGrid SamplingGrid::uniform(double max, double step) {
  require_param(std::isfinite(max) && max > 0.0, "grid max must be positive");
  require_param(std::isfinite(step) && step > 0.0 && step <= max, "grid step must be in (0, max]");
  const auto intervals = static_cast<std::size_t>(std::llround(max / step));
  return {max, std::max<std::size_t>(intervals, 1), Spacing::uniform};
}

std::vector<double> SamplingGrid::samples() const {
  std::vector<double> out;
  out.reserve(points + 1);
  out.push_back(0.0);
  if (spacing == Spacing::uniform) {
    for (std::size_t k = 1; k <= points; ++k)
      out.push_back(max * static_cast<double>(k) / static_cast<double>(points));
  } else {
    // Geometric from max * 2^-40 to max.
    const double lo = std::log(max) - 40.0 * std::log(2.0);
    const double hi = std::log(max);
    for (std::size_t k = 0; k < points; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(points - 1);
      out.push_back(k + 1 == points ? max : std::exp(lo + u * (hi - lo)));
    }
  }
  return out;
}

// -- verification -------------------------------------------------------------

AdfPropertyReport verify_adf_properties(const AlteringDistanceFn& f, const SamplingGrid& grid) {
  std::string label;
  switch (f.kind()) {
    case AlteringDistanceFn::Kind::linear: label = "linear"; break;
    case AlteringDistanceFn::Kind::capped_linear: label = "capped_linear"; break;
    case AlteringDistanceFn::Kind::power: label = "power"; break;
    case AlteringDistanceFn::Kind::custom: label = "custom:" + f.custom_id(); break;
  }
  return verify_adf_properties([&f](double t) { return f(t); }, grid, label);
}

AdfPropertyReport verify_adf_properties(const std::function<double(double)>& f,
                                        const SamplingGrid& grid, std::string label) {
  constexpr double kSlack = 1e-12;
  AdfPropertyReport report;
  report.label = std::move(label);
  const auto ts = grid.samples();
  report.samples = ts.size();

  std::vector<double> values(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) values[k] = f(ts[k]);

  report.zero_at_zero = values.front() == 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k)
    if (values[k] == 0.0) report.zeros_off_origin.push_back(ts[k]);

  std::size_t argmax = 0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (values[argmax] > values[k] + kSlack) {
      report.monotonicity_violations.emplace_back(ts[argmax], ts[k]);
    } else if (values[k] <= values[k - 1]) {
      report.plateaus.emplace_back(ts[k - 1], ts[k]);
    }
    if (values[k] > values[argmax]) argmax = k;
  }
  if (!report.monotonicity_violations.empty()) {
    report.monotonicity = Monotonicity::violated;
  } else if (!report.plateaus.empty()) {
    report.monotonicity = Monotonicity::non_decreasing_only;
  }

  for (int e = 2; e <= 8; ++e) {
    const double h = grid.max * std::pow(10.0, -e);
    double modulus = 0.0;
    for (double t : ts) modulus = std::max(modulus, std::abs(f(t + h) - f(t)));
    report.continuity_moduli.emplace_back(h, modulus);
  }
  return report;
}

PsiDominanceReport verify_psi_dominance(const ControlBundle& b, const SamplingGrid& grid) {
  PsiDominanceReport report;
  const auto ts = grid.samples();
  std::vector<double> phis(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) phis[k] = b.phi(ts[k]);

  report.psi_zero_at_origin = b.psi(0.0, 0.0) == 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (i == 0 && j == 0) continue;
      ++report.samples;
      const double psi = b.psi(ts[i], ts[j]);
      if (!(psi < phis[i] || psi < phis[j]))
        report.violations.push_back({ts[i], ts[j], psi, phis[i], phis[j]});
    }
  return report;
}

WeakDominanceReport verify_psi_weak_dominance(const ControlBundle& b, const SamplingGrid& grid) {
  WeakDominanceReport report;
  const auto ts = grid.samples();
  std::vector<double> phis(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) phis[k] = b.phi(ts[k]);

  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      ++report.samples;
      const double psi = b.psi(ts[i], ts[j]);
      const DominanceViolation v{ts[i], ts[j], psi, phis[i], phis[j]};
      if (!(psi <= phis[i])) report.literal_violations.push_back(v);
      if (!(psi <= phis[i] && psi <= phis[j])) report.symmetric_violations.push_back(v);
    }
  return report;
}

}  // namespace cfp
