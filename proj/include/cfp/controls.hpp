#pragma once

// Control functions for the contractive inequality
//
//   phi(|f(x) - g(y)|) <= psi(|x - f(x)|, |y - g(y)|) - phi1(|x - y|)
//
// phi and phi1 are altering distance functions: monotone, continuous, and
// zero exactly at zero. psi is a two-argument control with psi(0, 0) = 0
// that must be dominated by phi in at least one argument away from the
// origin.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfp {

/// Type-erased (phi, phi1, psi) triple over an arbitrary scalar. The
/// fixed-point engine consumes this; `ControlBundle` produces the double
/// version and the l-infinity fixture builds an exact rational one.
template <class Scalar>
struct ControlFunctions {
  std::function<Scalar(const Scalar&)> phi;
  std::function<Scalar(const Scalar&)> phi1;
  std::function<Scalar(const Scalar&, const Scalar&)> psi;
};

class AlteringDistanceFn {
 public:
  enum class Kind { linear, capped_linear, power, custom };

  /// t -> c t
  static AlteringDistanceFn linear(double c);
  /// t -> c t for t <= cap_at, cap_value beyond.
  static AlteringDistanceFn capped_linear(double c, double cap_at, double cap_value);
  /// t -> c t^p
  static AlteringDistanceFn power(double c, double p);
  /// Looks the id up in the process registry; throws if unknown.
  static AlteringDistanceFn custom(std::string id);

  /// Throws std::domain_error for negative or non-finite t.
  double operator()(double t) const;

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::string& custom_id() const noexcept { return id_; }
  /// Whether the function is strictly increasing on [0, inf) by construction.
  bool strictly_increasing() const noexcept { return strict_; }

 private:
  AlteringDistanceFn(Kind kind, std::vector<double> params, std::string id, bool strict,
                     std::function<double(double)> eval)
      : kind_(kind), params_(std::move(params)), id_(std::move(id)), strict_(strict),
        eval_(std::move(eval)) {}

  Kind kind_;
  std::vector<double> params_;
  std::string id_;
  bool strict_;
  std::function<double(double)> eval_;
};

class PsiControl {
 public:
  enum class Kind { max_alpha_phi, sum_scaled, custom };

  /// (t1, t2) -> phi(max{alpha t1, alpha t2})
  static PsiControl max_alpha_phi(double alpha, AlteringDistanceFn phi);
  /// (t1, t2) -> c (t1 + t2) when both are <= threshold, fallback elsewhere.
  static PsiControl sum_scaled(double c, double threshold, double fallback);
  static PsiControl custom(std::string id);

  double operator()(double t1, double t2) const;

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::string& custom_id() const noexcept { return id_; }
  /// Inner phi of a max_alpha_phi control.
  const AlteringDistanceFn* inner_phi() const noexcept { return inner_.get(); }

 private:
  PsiControl(Kind kind, std::vector<double> params, std::string id,
             std::shared_ptr<const AlteringDistanceFn> inner,
             std::function<double(double, double)> eval)
      : kind_(kind), params_(std::move(params)), id_(std::move(id)), inner_(std::move(inner)),
        eval_(std::move(eval)) {}

  Kind kind_;
  std::vector<double> params_;
  std::string id_;
  std::shared_ptr<const AlteringDistanceFn> inner_;
  std::function<double(double, double)> eval_;
};

struct ControlBundle {
  AlteringDistanceFn phi;
  AlteringDistanceFn phi1;
  PsiControl psi;

  ControlFunctions<double> functions() const;
};

// -- registry ---------------------------------------------------------------

/// Process-local table of named control functions. Built-ins are present
/// from first use; further entries are meant to be added during start-up.
class ControlRegistry {
 public:
  static ControlRegistry& instance();

  /// Returns false when the id is already taken.
  bool add_phi(const std::string& id, std::function<double(double)> fn, bool strictly_increasing);
  bool add_psi(const std::string& id, std::function<double(double, double)> fn);

  struct PhiEntry {
    std::function<double(double)> fn;
    bool strictly_increasing;
  };
  std::optional<PhiEntry> find_phi(const std::string& id) const;
  std::optional<std::function<double(double, double)>> find_psi(const std::string& id) const;

  std::vector<std::string> phi_ids() const;
  std::vector<std::string> psi_ids() const;

 private:
  ControlRegistry();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// -- property verification --------------------------------------------------

/// Sample points on [0, max]. Log spacing puts resolution near zero, where
/// dominance of psi by phi is most delicate.
struct SamplingGrid {
  enum class Spacing { log_uniform, uniform };

  double max = 1.0;
  std::size_t points = 512;
  Spacing spacing = Spacing::log_uniform;

  static SamplingGrid log_uniform(double max, std::size_t points = 512);
  /// 0, step, 2 step, ..., up to max.
  static SamplingGrid uniform(double max, double step);

  /// Sorted ascending, always starting at 0.
  std::vector<double> samples() const;
};

enum class Monotonicity { strictly_increasing, non_decreasing_only, violated };

struct AdfPropertyReport {
  std::string label;
  std::size_t samples = 0;
  /// (t, t') with t < t' and phi(t) > phi(t') + 1e-12.
  std::vector<std::pair<double, double>> monotonicity_violations;
  /// Adjacent grid points where phi does not strictly increase (plateaus).
  std::vector<std::pair<double, double>> plateaus;
  Monotonicity monotonicity = Monotonicity::strictly_increasing;
  bool zero_at_zero = true;
  /// Grid points t > 0 where phi(t) == 0.
  std::vector<double> zeros_off_origin;
  /// (h, max_t |phi(t + h) - phi(t)|) for shrinking h. Evidence, not proof.
  std::vector<std::pair<double, double>> continuity_moduli;

  bool is_altering_distance_evidence() const {
    return monotonicity != Monotonicity::violated && zero_at_zero && zeros_off_origin.empty();
  }
};

AdfPropertyReport verify_adf_properties(const AlteringDistanceFn& f, const SamplingGrid& grid);
AdfPropertyReport verify_adf_properties(const std::function<double(double)>& f,
                                        const SamplingGrid& grid, std::string label = "custom");

struct DominanceViolation {
  double t1;
  double t2;
  double psi;
  double phi_t1;
  double phi_t2;
};

struct PsiDominanceReport {
  std::size_t samples = 0;
  bool psi_zero_at_origin = true;
  /// Points with t1 > 0 or t2 > 0 where neither psi < phi(t1) nor psi < phi(t2).
  std::vector<DominanceViolation> violations;

  bool holds() const { return psi_zero_at_origin && violations.empty(); }
};

/// Strict "psi < phi(t1) or psi < phi(t2)" check over grid x grid.
PsiDominanceReport verify_psi_dominance(const ControlBundle& b, const SamplingGrid& grid);

/// Weak-dominance check for the variant without continuity of the maps. Its
/// hypothesis is printed as "psi <= phi(t1) and phi(t1)"; both the literal
/// reading (psi <= phi(t1)) and the symmetric reading (psi <= phi(t1) and
/// psi <= phi(t2)) are evaluated and reported separately.
struct WeakDominanceReport {
  std::size_t samples = 0;
  std::vector<DominanceViolation> literal_violations;
  std::vector<DominanceViolation> symmetric_violations;

  bool literal_holds() const { return literal_violations.empty(); }
  bool symmetric_holds() const { return symmetric_violations.empty(); }
};

WeakDominanceReport verify_psi_weak_dominance(const ControlBundle& b, const SamplingGrid& grid);

}  // namespace cfp
