#pragma once

// Residual checks for the gauge identities, fed either by the closed forms or
// by the radial oracle, and assembly of the full verification report.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "twophoton/closedform.hpp"
#include "twophoton/oracle.hpp"
#include "twophoton/rabi.hpp"

namespace twophoton {

inline constexpr double kClosedFormTolerance = 1e-9;
inline constexpr double kOracleTolerance = 1e-6;
inline constexpr double kOnePhotonTolerance = 1e-8;

/// <2S| r^2 |1S> = -512 sqrt2 / 243 bohr^2.
inline const double kR2Overlap2s1s = -512.0 * std::numbers::sqrt2 / 243.0;

enum class Source { closed_form, oracle };

inline const char* to_string(Source s) { return s == Source::closed_form ? "closed_form" : "oracle"; }

struct IdentityCheck {
  std::string name;
  Source source = Source::closed_form;
  std::vector<double> x_values;
  std::vector<double> residuals;
  double tolerance = 0.0;
  bool passed = false;

  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
  }
};

inline IdentityCheck make_check(std::string name, Source source, std::vector<double> xs, std::vector<double> residuals,
                                double tolerance) {
  IdentityCheck c{std::move(name), source, std::move(xs), std::move(residuals), tolerance, false};
  c.passed = !c.residuals.empty() && c.max_residual() <= tolerance;
  // NaN residuals must fail.
  for (double r : c.residuals) {
    if (!std::isfinite(r)) c.passed = false;
  }
  return c;
}

struct ConstantEntry {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool relative = false;  // tolerance applies to relative_error instead of |computed - reference|
  bool passed = false;
  std::string provenance;
};

struct ReadingScore {
  ClosedFormReading reading = ClosedFormReading::derived;
  double max_relative_deviation = 0.0;  // against the oracle Q
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  std::vector<ConstantEntry> constants;
  std::vector<ReadingScore> reading_scores;
  ClosedFormReading reading = ClosedFormReading::derived;
  std::string constants_provenance;
  bool overall_pass = false;
};

/// Q, P and the two scalars the master identity needs, from one source.
struct AmplitudeSource {
  Source kind = Source::closed_form;
  std::function<double(FrequencyX)> q;
  std::function<double(FrequencyX)> p;
  double r2_overlap = kR2Overlap2s1s;
  double transition = kTransitionX;  // E_2S - E_1S, hartree
};

inline AmplitudeSource closed_form_source(const ClosedFormOptions& opts = {}) {
  AmplitudeSource s;
  s.kind = Source::closed_form;
  s.q = [opts](FrequencyX x) { return q_length(x, opts); };
  s.p = [opts](FrequencyX x) { return p_velocity(x, opts); };
  return s;
}

/// The oracle must outlive the returned source.
inline AmplitudeSource oracle_source(const RadialOracle& oracle) {
  AmplitudeSource s;
  s.kind = Source::oracle;
  s.q = [&oracle](FrequencyX x) { return oracle.q(x); };
  s.p = [&oracle](FrequencyX x) { return oracle.p(x); };
  s.r2_overlap = oracle.r2_overlap();
  s.transition = oracle.transition_energy();
  return s;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("linspace: need at least two points");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  xs.back() = hi;
  return xs;
}

inline double default_tolerance(Source s) { return s == Source::closed_form ? kClosedFormTolerance : kOracleTolerance; }

/// P - [(T - x)(-x) Q + (x - T/2) <2S|r^2|1S> / 3], T = E_2S - E_1S.
inline double master_identity_residual(const AmplitudeSource& src, FrequencyX x) {
  const double t = src.transition;
  const double rhs = (t - x.value) * (-x.value) * src.q(x) + (x.value - 0.5 * t) * src.r2_overlap / 3.0;
  return src.p(x) - rhs;
}

inline IdentityCheck check_master_identity(const std::vector<double>& xs, const AmplitudeSource& src,
                                           std::optional<double> tolerance = std::nullopt) {
  std::vector<double> res;
  res.reserve(xs.size());
  for (double x : xs) res.push_back(master_identity_residual(src, FrequencyX{x}));
  return make_check("master_identity", src.kind, xs, std::move(res), tolerance.value_or(default_tolerance(src.kind)));
}

/// P(x_R) + x_R^2 Q(x_R) at x_R = 3/16.
inline IdentityCheck check_resonance_pq(const AmplitudeSource& src, std::optional<double> tolerance = std::nullopt) {
  const FrequencyX xr{kResonanceX};
  const double r = src.p(xr) + xr.value * xr.value * src.q(xr);
  return make_check("resonance_pq", src.kind, {kResonanceX}, {r}, tolerance.value_or(default_tolerance(src.kind)));
}

/// P(x1) + P(x2) + x1 x2 [Q(x1) + Q(x2)] with x1 + x2 = 3/8.
inline double two_color_residual(const AmplitudeSource& src, FrequencyX x1) {
  const FrequencyX x2{kTransitionX - x1.value};
  return src.p(x1) + src.p(x2) + x1.value * x2.value * (src.q(x1) + src.q(x2));
}

inline IdentityCheck check_two_color(const std::vector<double>& x1s, const AmplitudeSource& src,
                                     std::optional<double> tolerance = std::nullopt) {
  std::vector<double> res;
  for (double x : x1s) {
    if (!(x > 0.0 && x < kTransitionX)) throw DomainError("check_two_color: x1 outside (0, 3/8)");
    res.push_back(two_color_residual(src, FrequencyX{x}));
  }
  return make_check("two_color", src.kind, x1s, std::move(res), tolerance.value_or(default_tolerance(src.kind)));
}

/// [P - (3/8 - x)(-x) Q] - (-(512 sqrt2/729)(x - 3/16)).
inline IdentityCheck check_delta_linear(const std::vector<double>& xs, const AmplitudeSource& src,
                                        std::optional<double> tolerance = std::nullopt) {
  std::vector<double> res;
  for (double xv : xs) {
    const FrequencyX x{xv};
    const double delta = src.p(x) - (kTransitionX - xv) * (-xv) * src.q(x);
    res.push_back(delta - delta_linear_law(x));
  }
  return make_check("delta_linear", src.kind, xs, std::move(res), tolerance.value_or(default_tolerance(src.kind)));
}

/// (1/3) [sum_pm <p G p> - 3 - x^2 sum_pm <r G r>] for the 1S state.
inline IdentityCheck check_ac_stark(const std::vector<double>& xs, const RadialOracle& oracle,
                                    double tolerance = kOracleTolerance) {
  std::vector<double> res;
  for (double x : xs) {
    const AcStarkSides s = oracle.ac_stark_sides(x);
    res.push_back((s.velocity_side - s.length_side) / 3.0);
  }
  return make_check("ac_stark", Source::oracle, xs, std::move(res), tolerance);
}

/// M_v / M_l - (E_2P - E_1S)/omega, photon energies in hartree.
inline IdentityCheck check_one_photon_ratio(const std::vector<double>& omegas, const RadialOracle& oracle,
                                            double tolerance = kOnePhotonTolerance) {
  std::vector<double> res;
  for (double w : omegas) {
    const OnePhotonRatio r = oracle.one_photon_ratio(w);
    res.push_back(r.ratio - kTransitionX / w);
  }
  return make_check("one_photon_ratio", Source::oracle, omegas, std::move(res), tolerance);
}

/// Off-resonance gauge differences; the non-invariance claim needs these visibly nonzero.
inline std::vector<double> gauge_differences(const std::vector<double>& xs, const ClosedFormOptions& opts = {}) {
  std::vector<double> out;
  for (double x : xs) out.push_back(gauge_pair(FrequencyX{x}, opts).delta);
  return out;
}

/// Scores each closed-form reading against oracle Q values.
inline std::vector<ReadingScore> score_readings(const RadialOracle& oracle, const std::vector<double>& xs) {
  std::vector<double> reference;
  for (double x : xs) reference.push_back(oracle.q(FrequencyX{x}));
  std::vector<ReadingScore> scores;
  for (auto r : {ClosedFormReading::derived, ClosedFormReading::printed, ClosedFormReading::printed_factor}) {
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double q = q_length(FrequencyX{xs[i]}, {r, true});
      const double dev = std::abs(q - reference[i]) / std::abs(reference[i]);
      worst = std::isfinite(dev) ? std::max(worst, dev) : std::numeric_limits<double>::infinity();
    }
    scores.push_back({r, worst});
  }
  return scores;
}

inline ClosedFormReading best_reading(const std::vector<ReadingScore>& scores) {
  return std::min_element(scores.begin(), scores.end(),
                          [](const ReadingScore& a, const ReadingScore& b) {
                            return a.max_relative_deviation < b.max_relative_deviation;
                          })
      ->reading;
}

// Reference values the constants table is checked against.
inline constexpr double kReferenceQResonance = -7.853655422;
inline constexpr double kReferenceTwoColor = -62.659473633;
inline constexpr double kReferenceBeta = 3.68111e-5;
inline constexpr double kReferenceBetaSlope = 2.32293e-4;

inline ConstantEntry make_constant(std::string name, double computed, double reference, double tolerance,
                                   bool relative, std::string provenance) {
  ConstantEntry c;
  c.name = std::move(name);
  c.computed = computed;
  c.reference = reference;
  c.relative_error = std::abs(computed - reference) / std::abs(reference);
  c.tolerance = tolerance;
  c.relative = relative;
  const double measure = relative ? c.relative_error : std::abs(computed - reference);
  c.passed = std::isfinite(measure) && measure <= tolerance;
  c.provenance = std::move(provenance);
  return c;
}

inline std::vector<ConstantEntry> constants_table(const PhysicalConstants& k, const ClosedFormOptions& opts = {}) {
  std::vector<ConstantEntry> out;
  out.push_back(make_constant("q_resonance", q_length(FrequencyX{kResonanceX}, opts), kReferenceQResonance, 1e-8,
                              false, "reference resonance value"));
  out.push_back(make_constant("two_color_q_7_20", two_color_q(FrequencyX{7.0 / 20.0}, opts), kReferenceTwoColor,
                              1e-8, false, "reference two-color value"));
  out.push_back(make_constant("beta_resonance", beta(FrequencyX{kResonanceX}, k, opts), kReferenceBeta, 1e-3, true,
                              "reference; evaluated with " + k.provenance));
  // The slope is taken on the selected reading too, so a wrong reading shows up here as well.
  const double h = 1e-6;
  const double slope =
      (beta(FrequencyX{kResonanceX + h}, k, opts) - beta(FrequencyX{kResonanceX - h}, k, opts)) / (2.0 * h);
  out.push_back(make_constant("beta_slope", slope, kReferenceBetaSlope, 1e-3, true,
                              "reference; evaluated with " + k.provenance));
  return out;
}

enum class VerifyProfile { strict, oracle };

inline const char* to_string(VerifyProfile p) { return p == VerifyProfile::strict ? "strict" : "oracle"; }

struct VerifyConfig {
  VerifyProfile profile = VerifyProfile::strict;
  ClosedFormReading reading = ClosedFormReading::derived;
  RadialGrid grid{};
  std::size_t n_steps = 20;  // points in the master-identity grid
  PhysicalConstants constants = codata2018();
};

inline VerificationReport run_verification(const VerifyConfig& cfg) {
  if (cfg.n_steps < 2) throw DomainError("verify: need at least 2 grid steps");
  validate(cfg.constants);
  const RadialOracle oracle(cfg.grid);
  const ClosedFormOptions opts{cfg.reading, true};
  const AmplitudeSource cf = closed_form_source(opts);
  const AmplitudeSource orc = oracle_source(oracle);
  const AmplitudeSource& src = cfg.profile == VerifyProfile::strict ? cf : orc;

  const std::vector<double> master_xs = linspace(0.02, 0.36, cfg.n_steps);
  std::vector<double> two_color_xs = {7.0 / 20.0, kResonanceX, 0.30};
  for (double x : linspace(0.01, 0.365, cfg.n_steps)) two_color_xs.push_back(x);
  const std::vector<double> delta_xs =
      cfg.profile == VerifyProfile::strict ? linspace(0.01, 0.37, 200) : linspace(0.02, 0.36, cfg.n_steps);

  VerificationReport rep;
  rep.reading = cfg.reading;
  rep.constants_provenance = cfg.constants.provenance;
  rep.checks.push_back(check_master_identity(master_xs, src));
  rep.checks.push_back(check_resonance_pq(src));
  rep.checks.push_back(check_ac_stark({0.001, 0.05, 0.10, 0.15}, oracle));
  rep.checks.push_back(check_two_color(two_color_xs, src));
  rep.checks.push_back(check_delta_linear(delta_xs, src));
  rep.checks.push_back(check_one_photon_ratio({0.1, 0.2, 0.3}, oracle));
  rep.constants = constants_table(cfg.constants, opts);
  rep.reading_scores = score_readings(oracle, {0.05, 0.10, kResonanceX, 0.25, 0.30});

  rep.overall_pass = true;
  for (const auto& c : rep.checks) rep.overall_pass = rep.overall_pass && c.passed;
  for (const auto& c : rep.constants) rep.overall_pass = rep.overall_pass && c.passed;
  return rep;
}

}  // namespace twophoton
