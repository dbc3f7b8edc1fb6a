#pragma once

// Dimensionless 1S-2S two-photon matrix elements of hydrogen (Z = 1) in the
// length gauge (Q) and velocity gauge (P) as functions of the photon energy
// x = hbar*omega / (alpha^2 m c^2), i.e. the photon energy in hartree.
//
//   Q(x) = (1/3) <2S| r . (H - E_1S - x)^-1 . r |1S>      (atomic units)
//   P(x) = (1/3) <2S| p . (H - E_1S - x)^-1 . p |1S>
//
// Both reduce to rational functions of nu = 1/sqrt(1 - 2x) plus a rational
// multiple of 2F1(1, -nu; 1 - nu; z), z = (1-nu)(2-nu) / ((1+nu)(2+nu)).
// The default evaluation uses the regular rearrangement (k = 0, 1 terms of 2F1
// folded into the rational part), which holds about 1e-15 relative accuracy on
// the whole window; the 2F1 form as written loses digits near both ends.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "twophoton/errors.hpp"
#include "twophoton/specfun.hpp"

namespace twophoton {

/// Photon energy in units of alpha^2 m c^2 (one hartree).
struct FrequencyX {
  double value = 0.0;
};

inline constexpr double kResonanceX = 3.0 / 16.0;  // hbar*omega_R = (E_2S - E_1S)/2
inline constexpr double kTransitionX = 3.0 / 8.0;  // E_2S - E_1S
inline constexpr double kSeriesTolerance = 1e-17;
inline constexpr double kNearPoleBand = 1e-4;

/// Slope of the gauge difference: Delta(x) = -kDeltaSlope * (x - 3/16).
inline const double kDeltaSlope = 512.0 * std::numbers::sqrt2 / 729.0;

/*!
  Substitution variable t = sqrt(1 - 2x), in (1/2, 1) on the scan window.

  The closed forms are written in nu = 1/t, the effective principal quantum
  number of the resolvent energy E_1S + x = -1/(2 nu^2); nu runs over (1, 2)
  and hits the 2P pole at nu = 2 (x = 3/8).
*/
struct TParam {
  double t = 1.0;

  double nu() const { return 1.0 / t; }
  double x() const { return 0.5 * (1.0 - t * t); }
};

/// Which algebraic form of the matrix elements to evaluate.
enum class ClosedFormReading {
  derived,         // nu-form with the nu^9 / nu^5 numerators; matches the oracle
  printed,         // t = sqrt(1-2x), 2F1 denominator (t^2 - 2)^3
  printed_factor,  // t = sqrt(1-2x), 2F1 denominator (t - 2)^3 (t + 2)^2
};

inline const char* to_string(ClosedFormReading r) {
  switch (r) {
    case ClosedFormReading::derived: return "derived";
    case ClosedFormReading::printed: return "printed";
    case ClosedFormReading::printed_factor: return "printed_factor";
  }
  return "unknown";
}

/// allow_limit_path = false evaluates the 2F1 form as written and rejects x
/// inside the near-pole band.
struct ClosedFormOptions {
  ClosedFormReading reading = ClosedFormReading::derived;
  bool allow_limit_path = true;
};

struct AmplitudeValue {
  double value = 0.0;
  bool cancellation_warning = false;  // x inside the near-pole band, |nu - 1| < kNearPoleBand
};

struct GaugeAmplitudes {
  FrequencyX x;
  double q = 0.0;
  double p = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double delta = 0.0;
};

struct ResonanceConstants {
  double x_r = kResonanceX;
  double q_r = 0.0;
  double p_r = 0.0;
};

inline TParam t_of_x(FrequencyX x) {
  if (!(x.value > 0.0) || !(x.value < 0.5)) {
    throw DomainError("t_of_x: x must lie in (0, 1/2), got " + detail::fmt(x.value));
  }
  return {std::sqrt(1.0 - 2.0 * x.value)};
}

namespace detail {

inline void check_window(FrequencyX x, const char* who) {
  if (!(x.value > 0.0) || !(x.value < kTransitionX)) {
    throw DomainError(std::string(who) + ": x must lie in (0, 3/8), got " + fmt(x.value));
  }
}

inline double coulomb_argument(double nu) { return (1.0 - nu) * (2.0 - nu) / ((1.0 + nu) * (2.0 + nu)); }

struct Pair {
  double q;
  double p;
};

// Rational part + 2F1 part, as written.
inline Pair derived_standard(double nu) {
  const double s2 = std::numbers::sqrt2;
  const double z = coulomb_argument(nu);
  const double f = hyp2f1_special(nu, z, kSeriesTolerance).value;
  const double nm2 = nu - 2.0, np2 = nu + 2.0, n21 = nu * nu - 1.0;
  const double nu2 = nu * nu;
  const double poly_q =
      ((((((419.0 * nu + 134.0) * nu - 15.0) * nu + 30.0) * nu + 60.0) * nu - 120.0) * nu - 32.0) * nu + 64.0;
  const double q = 512.0 * s2 * nu2 * poly_q / (729.0 * nm2 * nm2 * nm2 * n21 * n21 * np2 * np2) -
                   4096.0 * s2 * std::pow(nu, 9) * f / (3.0 * nm2 * nm2 * nm2 * n21 * n21 * np2 * np2 * np2);
  const double poly_p = ((23.0 * nu + 8.0) * nu + 1.0) * nu - 2.0;
  const double p = 64.0 * s2 / 81.0 * nu2 * poly_p / (nm2 * nm2 * n21 * np2) -
                   256.0 * s2 * std::pow(nu, 5) * f / (3.0 * nm2 * nm2 * n21 * np2 * np2);
  return {q, p};
}

// Same functions with the k = 0 and k = 1 terms of 2F1 folded into the
// rational part; every (nu - 1) pole then cancels exactly and what remains
// multiplies Phi(z, 1, 2 - nu), whose terms are all regular at nu = 1.
inline Pair derived_regular(double nu) {
  const double s2 = std::numbers::sqrt2;
  const double z = coulomb_argument(nu);
  const double phi = lerch_phi({z, 1, 2.0 - nu}, kSeriesTolerance).value;
  const double nm2 = nu - 2.0, np1 = nu + 1.0, np2 = nu + 2.0;
  const double nu2 = nu * nu;
  const double poly_q =
      ((((((419.0 * nu + 17.0) * nu + 36.0) * nu - 288.0) * nu - 672.0) * nu - 816.0) * nu - 512.0) * nu - 128.0;
  const double q = 512.0 * s2 * nu2 * poly_q / (729.0 * nm2 * nm2 * std::pow(np1, 3) * std::pow(np2, 4)) +
                   4096.0 * s2 * std::pow(nu, 10) * phi / (3.0 * nm2 * std::pow(np1, 4) * std::pow(np2, 5));
  const double poly_p = (((23.0 * nu - 24.0) * nu - 1.0) * nu - 12.0) * nu - 4.0;
  const double p = 64.0 * s2 * nu2 * poly_p / (81.0 * nm2 * np1 * np1 * std::pow(np2, 3)) +
                   256.0 * s2 * std::pow(nu, 6) * (nu - 1.0) * phi / (3.0 * std::pow(np1, 3) * std::pow(np2, 4));
  return {q, p};
}

// Literal transcriptions with t = sqrt(1 - 2x); kept as negative controls.
inline Pair printed_forms(double t, ClosedFormReading reading) {
  const double s2 = std::numbers::sqrt2;
  const double z = coulomb_argument(t);
  const double f = hyp2f1_special(t, z, kSeriesTolerance).value;
  const double tm2 = t - 2.0, tp2 = t + 2.0, t21 = t * t - 1.0;
  const double t2 = t * t;
  const double poly_q =
      ((((((419.0 * t + 134.0) * t - 15.0) * t + 30.0) * t + 60.0) * t - 120.0) * t - 32.0) * t + 64.0;
  const double second_denominator =
      reading == ClosedFormReading::printed ? std::pow(t2 - 2.0, 3) : tm2 * tm2 * tm2 * tp2 * tp2;
  const double q = 512.0 * s2 * t2 * poly_q / (729.0 * tm2 * tm2 * tm2 * t21 * t21 * tp2 * tp2) -
                   4096.0 * s2 * f / (3.0 * second_denominator * t21 * t21);
  const double poly_p = ((23.0 * t + 8.0) * t + 1.0) * t - 2.0;
  const double p = 64.0 * s2 / 81.0 * t2 * poly_p / (tm2 * tm2 * t21 * tp2) -
                   256.0 * s2 * f / (3.0 * tm2 * tm2 * t21 * tp2 * tp2);
  return {q, p};
}

struct PairWithFlag {
  Pair values;
  bool limit_path;
};

inline PairWithFlag evaluate_pair(FrequencyX x, const ClosedFormOptions& opts, const char* who) {
  check_window(x, who);
  const TParam tp = t_of_x(x);
  if (opts.reading != ClosedFormReading::derived) {
    return {printed_forms(tp.t, opts.reading), false};
  }
  const double nu = tp.nu();
  const bool in_band = std::abs(nu - 1.0) < kNearPoleBand;
  if (!opts.allow_limit_path) {
    if (in_band) {
      throw DomainError(std::string(who) + ": x = " + fmt(x.value) +
                        " is inside the near-pole band and the limit path is disabled");
    }
    return {derived_standard(nu), false};
  }
  return {derived_regular(nu), in_band};
}

}  // namespace detail

inline AmplitudeValue q_length_detailed(FrequencyX x, const ClosedFormOptions& opts = {}) {
  const auto r = detail::evaluate_pair(x, opts, "q_length");
  return {r.values.q, r.limit_path};
}

inline AmplitudeValue p_velocity_detailed(FrequencyX x, const ClosedFormOptions& opts = {}) {
  const auto r = detail::evaluate_pair(x, opts, "p_velocity");
  return {r.values.p, r.limit_path};
}

/// Length-gauge element Q(x).
inline double q_length(FrequencyX x, const ClosedFormOptions& opts = {}) { return q_length_detailed(x, opts).value; }

/// Velocity-gauge element P(x).
inline double p_velocity(FrequencyX x, const ClosedFormOptions& opts = {}) {
  return p_velocity_detailed(x, opts).value;
}

/// Q from the 2F1 form as written, for cross-checks; no band guard.
inline double q_length_hypergeometric_form(FrequencyX x) {
  detail::check_window(x, "q_length_hypergeometric_form");
  return detail::derived_standard(t_of_x(x).nu()).q;
}

inline double p_velocity_hypergeometric_form(FrequencyX x) {
  detail::check_window(x, "p_velocity_hypergeometric_form");
  return detail::derived_standard(t_of_x(x).nu()).p;
}

/// f1 = P, f2 = (3/8 - x)(-x) Q, delta = f1 - f2.
inline GaugeAmplitudes gauge_pair(FrequencyX x, const ClosedFormOptions& opts = {}) {
  const auto r = detail::evaluate_pair(x, opts, "gauge_pair");
  GaugeAmplitudes g;
  g.x = x;
  g.q = r.values.q;
  g.p = r.values.p;
  g.f1 = g.p;
  g.f2 = (kTransitionX - x.value) * (-x.value) * g.q;
  g.delta = g.f1 - g.f2;
  return g;
}

/// The r^2-overlap law the gauge difference must follow.
inline double delta_linear_law(FrequencyX x) { return -kDeltaSlope * (x.value - kResonanceX); }

/// Zeros of delta(x) in [lo, hi]: sign changes on an n-point scan, each refined by bisection.
inline std::vector<double> gauge_crossings(double lo, double hi, std::size_t n = 400, double tol = 1e-13,
                                           const ClosedFormOptions& opts = {}) {
  if (!(lo < hi) || n < 2) throw DomainError("gauge_crossings: need lo < hi and n >= 2");
  auto delta = [&](double x) { return gauge_pair(FrequencyX{x}, opts).delta; };
  std::vector<double> roots;
  double x_prev = lo;
  double d_prev = delta(lo);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double d = delta(x);
    if (d_prev == 0.0) {
      roots.push_back(x_prev);
    } else if (d_prev * d < 0.0) {
      double a = x_prev, b = x, da = d_prev;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double dm = delta(m);
        if ((dm < 0.0) == (da < 0.0)) {
          a = m;
          da = dm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    d_prev = d;
  }
  if (d_prev == 0.0) roots.push_back(hi);
  return roots;
}

/// (3/4) [Q(x1) + Q(3/8 - x1)]: resonant two-color element.
inline double two_color_q(FrequencyX x1, const ClosedFormOptions& opts = {}) {
  const FrequencyX x2{kTransitionX - x1.value};
  if (!(x1.value > 0.0) || !(x1.value < kTransitionX)) {
    throw DomainError("two_color_q: x1 must lie in (0, 3/8), got " + detail::fmt(x1.value));
  }
  return 0.75 * (q_length(x1, opts) + q_length(x2, opts));
}

/// Velocity-gauge partner (3/4) [P(x1) + P(3/8 - x1)].
inline double two_color_p(FrequencyX x1, const ClosedFormOptions& opts = {}) {
  const FrequencyX x2{kTransitionX - x1.value};
  if (!(x1.value > 0.0) || !(x1.value < kTransitionX)) {
    throw DomainError("two_color_p: x1 must lie in (0, 3/8), got " + detail::fmt(x1.value));
  }
  return 0.75 * (p_velocity(x1, opts) + p_velocity(x2, opts));
}

inline ResonanceConstants resonance_constants(const ClosedFormOptions& opts = {}) {
  const auto g = gauge_pair(FrequencyX{kResonanceX}, opts);
  return {kResonanceX, g.q, g.p};
}

/// Q at resonance written with a single Lerch transcendent:
/// -(2^15/3^6) [19 sqrt2 + 16 sqrt5 + 64 sqrt2 Phi(-19 + 6 sqrt10, 1, -2 sqrt(2/5))].
inline double q_resonance_lerch_form() {
  const double s2 = std::numbers::sqrt2;
  // -19 + 6 sqrt10 = z(nu_R) with nu_R = 2 sqrt(2/5); the factored form avoids the cancellation.
  const double nu_r = 2.0 * std::sqrt(0.4);
  const double phi = lerch_phi({detail::coulomb_argument(nu_r), 1, -nu_r}, kSeriesTolerance).value;
  return -(32768.0 / 729.0) * (19.0 * s2 + 16.0 * std::sqrt(5.0) + 64.0 * s2 * phi);
}

/// Two-color element at x1 = 7/20 (x2 = 1/40) in its two-Lerch closed form.
/// The second Lerch term carries 40 sqrt2, the value the nu-form coefficients give.
inline double two_color_lerch_form_7_20() {
  const double s2 = std::numbers::sqrt2;
  // Arguments (-263 + 48 sqrt30)/7 and (-848 + 87 sqrt95)/7, evaluated as z(nu).
  const double nu1 = std::sqrt(10.0 / 3.0);
  const double nu2 = 2.0 * std::sqrt(5.0 / 19.0);
  const double phi1 = lerch_phi({detail::coulomb_argument(nu1), 1, -nu1}, kSeriesTolerance).value;
  const double phi2 = lerch_phi({detail::coulomb_argument(nu2), 1, -nu2}, kSeriesTolerance).value;
  return -(160000.0 / 343.0) *
         (157.0 * s2 + 56.0 * std::sqrt(15.0) + 2.0 * std::sqrt(190.0) + 560.0 * s2 * phi1 + 40.0 * s2 * phi2);
}

}  // namespace twophoton
