#pragma once

// SI observables derived from the length-gauge element: the two-photon
// coefficient beta(x) and the Rabi frequency Omega = 2 (2 pi beta) I_L.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "twophoton/closedform.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

struct PhysicalConstants {
  double alpha = 7.2973525693e-3;        // fine-structure constant
  double m_e = 9.1093837015e-31;         // kg
  double c = 299792458.0;                // m/s
  double hbar = 1.054571817e-34;         // J s
  double e = 1.602176634e-19;            // C
  double eps0 = 8.8541878128e-12;        // F/m
  std::string provenance = "CODATA-2018";
};

inline PhysicalConstants codata2018() { return {}; }

inline void validate(const PhysicalConstants& k) {
  for (double v : {k.alpha, k.m_e, k.c, k.hbar, k.e, k.eps0}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("physical constants must be finite and positive");
  }
  if (k.provenance.empty()) throw DomainError("physical constants need a provenance tag");
}

/// Exponents of (kg, m, s, A) for the dimensional audit of the beta prefactor.
struct Dimension {
  int kg = 0, m = 0, s = 0, a = 0;

  constexpr Dimension operator*(Dimension o) const { return {kg + o.kg, m + o.m, s + o.s, a + o.a}; }
  constexpr Dimension operator/(Dimension o) const { return {kg - o.kg, m - o.m, s - o.s, a - o.a}; }
  constexpr Dimension pow(int n) const { return {kg * n, m * n, s * n, a * n}; }
  constexpr bool operator==(const Dimension&) const = default;
};

namespace dim {
inline constexpr Dimension none{};
inline constexpr Dimension kilogram{1, 0, 0, 0};
inline constexpr Dimension metre{0, 1, 0, 0};
inline constexpr Dimension second{0, 0, 1, 0};
inline constexpr Dimension ampere{0, 0, 0, 1};

inline constexpr Dimension charge = ampere * second;
inline constexpr Dimension action = kilogram * metre.pow(2) / second;
inline constexpr Dimension velocity = metre / second;
inline constexpr Dimension permittivity = charge.pow(2) * second.pow(2) / (kilogram * metre.pow(3));
inline constexpr Dimension hertz = none / second;
inline constexpr Dimension watt = kilogram * metre.pow(2) / second.pow(3);
inline constexpr Dimension intensity = watt / metre.pow(2);

// e^2 hbar / (alpha^4 m^3 c^5 4 pi eps0)
inline constexpr Dimension beta_prefactor =
    charge.pow(2) * action / (kilogram.pow(3) * velocity.pow(5) * permittivity);
}  // namespace dim

static_assert(dim::beta_prefactor == dim::hertz / dim::intensity, "beta must carry Hz per W/m^2");
static_assert(dim::beta_prefactor * dim::intensity == dim::hertz, "beta * I_L must be a frequency");

/// e^2 hbar / (alpha^4 m^3 c^5 4 pi eps0), in Hz m^2 / W.
inline double beta_prefactor(const PhysicalConstants& k) {
  const double four_pi_eps0 = 4.0 * std::numbers::pi * k.eps0;
  return k.e * k.e * k.hbar / (std::pow(k.alpha, 4) * std::pow(k.m_e, 3) * std::pow(k.c, 5) * four_pi_eps0);
}

/// beta(x) = -prefactor * Q(x), Hz m^2 / W; positive near the 1S-2S resonance.
inline double beta(FrequencyX x, const PhysicalConstants& k, const ClosedFormOptions& opts = {}) {
  return -beta_prefactor(k) * q_length(x, opts);
}

struct RabiInput {
  FrequencyX x;
  double intensity = 0.0;  // W/m^2
};

/// Omega = 2 (2 pi beta) I_L, rad/s.
inline double rabi_frequency(const RabiInput& in, const PhysicalConstants& k) {
  if (!(in.intensity >= 0.0)) throw DomainError("rabi_frequency: intensity must be >= 0");
  return 2.0 * (2.0 * std::numbers::pi * beta(in.x, k)) * in.intensity;
}

/// Central difference d beta / dx.
inline double beta_derivative(FrequencyX x, const PhysicalConstants& k, double step = 1e-6) {
  if (!(step > 0.0)) throw DomainError("beta_derivative: step must be positive");
  return (beta(FrequencyX{x.value + step}, k) - beta(FrequencyX{x.value - step}, k)) / (2.0 * step);
}

inline double beta_slope_at_resonance(const PhysicalConstants& k, double step = 1e-6) {
  return beta_derivative(FrequencyX{kResonanceX}, k, step);
}

inline constexpr double kLinearizationRadius = 0.05;

/// beta(x_R) + beta'(x_R) (x - x_R), valid for |x - 3/16| < 0.05.
inline double beta_linearized(FrequencyX x, const PhysicalConstants& k) {
  if (!(std::abs(x.value - kResonanceX) < kLinearizationRadius)) {
    throw DomainError("beta_linearized: |x - 3/16| must be < 0.05, got x = " + detail::fmt(x.value));
  }
  const double b0 = beta(FrequencyX{kResonanceX}, k);
  if (x.value == kResonanceX) return b0;
  return b0 + beta_slope_at_resonance(k) * (x.value - kResonanceX);
}

/*!
  Reads a constants file of `name = value` lines (`#` starts a comment).
  Recognized names: alpha, m_e, c, hbar, e, eps0, provenance. Unspecified
  entries keep their CODATA 2018 values; the provenance defaults to
  "file:<path>" when any value is overridden without a tag.
*/
inline PhysicalConstants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file: " + path);
  PhysicalConstants k = codata2018();
  std::map<std::string, double*> slots{{"alpha", &k.alpha}, {"m_e", &k.m_e}, {"c", &k.c},
                                       {"hbar", &k.hbar},   {"e", &k.e},     {"eps0", &k.eps0}};
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  bool overridden = false;
  bool tagged = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": expected `name = value`");
    }
    const std::string key(trim(sv.substr(0, eq)));
    const std::string_view value = trim(sv.substr(eq + 1));
    if (key == "provenance") {
      k.provenance = std::string(value);
      tagged = true;
      continue;
    }
    const auto slot = slots.find(key);
    if (slot == slots.end()) throw DomainError(path + ":" + std::to_string(line_no) + ": unknown constant `" + key + "`");
    double parsed = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": bad number for `" + key + "`");
    }
    *slot->second = parsed;
    overridden = true;
  }
  if (overridden && !tagged) k.provenance = "file:" + path;
  validate(k);
  return k;
}

/// Explicit path, else $GAUGE_WORKBENCH_CONSTANTS, else built-in CODATA 2018.
inline PhysicalConstants resolve_constants(const std::optional<std::string>& path) {
  if (path && !path->empty()) return load_constants(*path);
  if (const char* env = std::getenv("GAUGE_WORKBENCH_CONSTANTS"); env != nullptr && *env != '\0') {
    return load_constants(env);
  }
  return codata2018();
}

}  // namespace twophoton
