// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "twophoton/identities.hpp"

namespace {

using namespace twophoton;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

const RadialOracle& oracle() {
  static const RadialOracle o{RadialGrid{}};
  return o;
}

Outcome resonance_element() {
  const double q = q_length(FrequencyX{kResonanceX});
  const double qo = oracle().q(FrequencyX{kResonanceX});
  const bool ok = std::abs(q + 7.853655422) < 1e-8 && std::abs(qo - q) < 1e-6;
  return {ok, "Q=" + num(q) + " oracle_diff=" + num(qo - q)};
}

Outcome two_color_entry() {
  const double v = two_color_q(FrequencyX{7.0 / 20.0});
  return {std::abs(v + 62.659473633) < 1e-8, "Q2c=" + num(v)};
}

Outcome rabi_coefficient() {
  const PhysicalConstants k = codata2018();
  const double b = beta(FrequencyX{kResonanceX}, k);
  const double s = beta_slope_at_resonance(k);
  const double eb = std::abs(b / 3.68111e-5 - 1.0);
  const double es = std::abs(s / 2.32293e-4 - 1.0);
  return {eb < 1e-3 && es < 1e-3, "beta=" + num(b) + " slope=" + num(s) + " (" + k.provenance + ")"};
}

Outcome gauge_difference_law() {
  double worst = 0.0;
  int sign_changes = 0;
  bool brackets = true;
  double prev_x = 0.0, prev_d = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = 0.01 + 0.36 * i / 199.0;
    const double d = gauge_pair(FrequencyX{x}).delta;
    worst = std::max(worst, std::abs(d - delta_linear_law(FrequencyX{x})));
    if (i > 0 && (d < 0.0) != (prev_d < 0.0)) {
      ++sign_changes;
      brackets = brackets && prev_x < kResonanceX && x > kResonanceX;
    }
    prev_x = x;
    prev_d = d;
  }
  return {worst < 1e-9 && sign_changes == 1 && brackets, "max_dev=" + num(worst)};
}

Outcome single_crossing() {
  const auto roots = gauge_crossings(1e-4, 0.3749);
  const bool ok = roots.size() == 1 && std::abs(roots[0] - kResonanceX) < 1e-9;
  return {ok, std::to_string(roots.size()) + " root(s)" + (roots.empty() ? "" : " at " + num(roots[0]))};
}

Outcome master_identity() {
  const auto xs = linspace(0.02, 0.36, 20);
  const IdentityCheck cf = check_master_identity(xs, closed_form_source());
  const IdentityCheck orc = check_master_identity(xs, oracle_source(oracle()));
  return {cf.max_residual() < 1e-9 && orc.max_residual() < 1e-6,
          "closed=" + num(cf.max_residual()) + " oracle=" + num(orc.max_residual())};
}

Outcome ac_stark() {
  const IdentityCheck c = check_ac_stark({0.001, 0.05, 0.10, 0.15}, oracle());
  return {c.max_residual() < 1e-6, "max_residual=" + num(c.max_residual())};
}

Outcome oracle_self_checks() {
  const RadialOracle& o = oracle();
  double de = 0.0;
  de = std::max(de, std::abs(o.state_1s().energy + 0.5));
  de = std::max(de, std::abs(o.state_2s().energy + 0.125));
  de = std::max(de, std::abs(o.state_2p().energy + 0.125));
  const double ovl = std::abs(o.overlap_2s_1s());
  const double comm = o.commutator_residual();
  const double r2 = std::abs(o.r2_overlap() + 512.0 * std::numbers::sqrt2 / 243.0);
  const bool ok = de < 1e-8 && ovl < 1e-10 && comm < 1e-8 && r2 < 1e-6;
  return {ok, "dE=" + num(de) + " <2S|1S>=" + num(ovl) + " comm=" + num(comm) + " r2=" + num(r2)};
}

Outcome one_photon() {
  const IdentityCheck c = check_one_photon_ratio({0.1, 0.2, 0.3}, oracle());
  return {c.max_residual() < 1e-8, "max_residual=" + num(c.max_residual())};
}

Outcome non_invariance() {
  const auto d = gauge_differences({0.10, 0.25});
  return {std::abs(d[0]) > 1e-2 && std::abs(d[1]) > 1e-2, "delta(0.10)=" + num(d[0]) + " delta(0.25)=" + num(d[1])};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "resonance matrix element", 1.0, resonance_element},
      {2, "two-color table entry", 1.0, two_color_entry},
      {3, "Rabi coefficient and slope", 1.0, rabi_coefficient},
      {4, "gauge difference linear law", 5.0, gauge_difference_law},
      {5, "single f1/f2 crossing", 5.0, single_crossing},
      {6, "master identity", 30.0, master_identity},
      {7, "ac-Stark identity", 30.0, ac_stark},
      {8, "oracle self-checks", 10.0, oracle_self_checks},
      {9, "one-photon ratio", 5.0, one_photon},
      {10, "off-resonance non-invariance", 1.0, non_invariance},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.passed && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s %2d %-30s %s [%.3f s / %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs,
                c.budget_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
