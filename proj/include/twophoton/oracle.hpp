#pragma once

// Brute-force radial oracle for hydrogen (atomic units, Z = 1).
//
// Radial functions u(r) = r R(r) live on the exponential mesh r_i = r_min e^{i h}.
// With v(s) = r^{-1/2} u and s = ln r the radial equation
//     -u''/2 + [l(l+1)/(2r^2) - 1/r - eps] u = f
// becomes v'' = g(s) v + F(s) with
//     g = (l + 1/2)^2 - 2r - 2 eps r^2,    F = -2 r^{3/2} f,
// which is smooth in s (the Coulomb singularity is gone) and is discretized
// with Numerov's scheme. Substituting w_i = (1 - h^2 g_i / 12) v_i gives the
// symmetric tridiagonal form
//     w_{i-1} + d_i(eps) w_i + w_{i+1} = (h^2 / 12) (F_{i-1} + 10 F_i + F_{i+1}),
// d_i = -2 (1 + 5 h^2 g_i / 12) / (1 - h^2 g_i / 12), increasing in eps.
// Bound states come from Sturm counting on that matrix; Green functions from
// a tridiagonal solve with the same operator, so both share one discretization.
// The inner end is not a hard wall: the ghost value w_0 = lambda w_1 follows the
// regular Frobenius solution u ~ r^{l+1} (1 - r/(l+1)), which removes the O(r_min)
// energy shift a wall at r_min would cause.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twophoton/closedform.hpp"
#include "twophoton/compensated_sum.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

struct RadialGrid {
  std::size_t n_points = 6000;
  double r_max = 80.0;   // bohr
  double r_min = 1e-6;   // exponential map origin, bohr
};

inline void validate(const RadialGrid& g) {
  if (g.n_points < 2000) {
    throw DomainError("RadialGrid: n_points must be >= 2000, got " + std::to_string(g.n_points));
  }
  if (!(g.r_max >= 60.0) || !std::isfinite(g.r_max)) {
    throw DomainError("RadialGrid: r_max must be >= 60 bohr, got " + detail::fmt(g.r_max));
  }
  if (!(g.r_min > 0.0) || !(g.r_min < 1e-2)) {
    throw DomainError("RadialGrid: r_min must lie in (0, 1e-2), got " + detail::fmt(g.r_min));
  }
}

/// Exponential mesh. End points carry Dirichlet zeros.
class LogMesh {
 public:
  explicit LogMesh(const RadialGrid& grid) {
    validate(grid);
    const std::size_t n = grid.n_points;
    const double s0 = std::log(grid.r_min);
    step_ = (std::log(grid.r_max) - s0) / static_cast<double>(n - 1);
    r_.resize(n);
    for (std::size_t i = 0; i < n; ++i) r_[i] = std::exp(s0 + step_ * static_cast<double>(i));
  }

  std::size_t size() const { return r_.size(); }
  double step() const { return step_; }
  double r(std::size_t i) const { return r_[i]; }
  std::span<const double> radii() const { return r_; }

  /// int f(r) dr = int f(r(s)) r ds, trapezoid in s (ends vanish).
  double integrate(std::span<const double> f) const {
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * r_[i];
    return acc.value() * step_;
  }

  /// int a(r) w(r) b(r) dr for functions sampled on the mesh.
  template <typename Weight>
  double integrate(std::span<const double> a, std::span<const double> b, Weight&& weight) const {
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * weight(r_[i]) * b[i] * r_[i];
    return acc.value() * step_;
  }

  double overlap(std::span<const double> a, std::span<const double> b) const {
    return integrate(a, b, [](double) { return 1.0; });
  }

  /// du/dr from samples of u, via 8th-order central differences of v = u r^{-1/2} in s.
  std::vector<double> derivative(std::span<const double> u) const {
    const std::size_t n = u.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / std::sqrt(r_[i]);
    static constexpr double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    auto at = [&](std::ptrdiff_t j) {
      return (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : v[static_cast<std::size_t>(j)];
    };
    std::vector<double> du(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<std::ptrdiff_t>(i);
      double dv = 0.0;
      for (std::ptrdiff_t m = 1; m <= 4; ++m) dv += c[m - 1] * (at(ii + m) - at(ii - m));
      dv /= step_;
      // u = e^{s/2} v  =>  du/dr = e^{-s/2} (v' + v/2)
      du[i] = (dv + 0.5 * v[i]) / std::sqrt(r_[i]);
    }
    return du;
  }

 private:
  double step_ = 0.0;
  std::vector<double> r_;
};

struct BoundState {
  int n = 0;
  int l = 0;
  double energy = 0.0;               // hartree
  std::vector<double> radial_values; // u_{nl}(r_i)
  double norm = 0.0;                 // int u^2 dr after normalization
  int nodes = 0;
  double residual = 0.0;             // |K w| / |w| of the discrete eigen equation
};

struct GreenSolve {
  std::vector<double> driving;
  double energy_shift = 0.0;  // eps = E + hbar*omega, hartree
  int l_channel = 1;
  std::vector<double> solution;
  double residual = 0.0;  // |K w - b| / |b|
};

struct OnePhotonRatio {
  double omega = 0.0;
  double ratio = 0.0;     // M_v / M_l on the grid
  double expected = 0.0;  // (E_2P - E_1S) / omega with grid energies
  bool degenerate = false;
};

struct AcStarkSides {
  double velocity_side = 0.0;  // sum_pm <p G_pm p> - 3 <1S|1S>
  double length_side = 0.0;    // x^2 sum_pm <r G_pm r>
};

namespace detail {

class NumerovChannel {
 public:
  NumerovChannel(const LogMesh& mesh, int l) : mesh_(mesh), l_(l) {}

  double c() const { return mesh_.step() * mesh_.step() / 12.0; }

  double g(std::size_t i, double eps) const {
    const double r = mesh_.r(i);
    const double lh = l_ + 0.5;
    return lh * lh - 2.0 * r - 2.0 * eps * r * r;
  }

  double diag(std::size_t i, double eps) const {
    const double cg = c() * g(i, eps);
    return -2.0 * (1.0 + 5.0 * cg) / (1.0 - cg);
  }

  // w_0 / w_1 for the regular solution, energy-independent to O(r_min^2).
  double inner_ratio() const {
    const double r0 = mesh_.r(0), r1 = mesh_.r(1);
    const double lp = l_ + 1.0;
    const double v_ratio = std::exp(-(l_ + 0.5) * mesh_.step()) * (1.0 - r0 / lp) / (1.0 - r1 / lp);
    return v_ratio * (1.0 - c() * g(0, 0.0)) / (1.0 - c() * g(1, 0.0));
  }

  // Interior unknowns are i = 1 .. n-2; row 1 absorbs the ghost value w_0.
  std::size_t first() const { return 1; }
  std::size_t last() const { return mesh_.size() - 2; }

  // Number of discrete eigenvalues below eps: positive pivots of the
  // (increasing) matrix K(eps) in its LDL^T factorization.
  int count_below(double eps) const {
    int count = 0;
    double pivot = 0.0;
    bool first_row = true;
    for (std::size_t i = first(); i <= last(); ++i) {
      const double d = diag(i, eps);
      if (first_row) {
        pivot = d + inner_ratio();
        first_row = false;
      } else {
        pivot = d - 1.0 / pivot;
      }
      if (pivot == 0.0) pivot = -1e-300;
      if (pivot > 0.0) ++count;
    }
    return count;
  }

  // Eigenvector of K(eps) w = 0 by two-sided shooting, returned as u(r).
  std::vector<double> eigenvector(double eps) const {
    const std::size_t n = mesh_.size();
    std::vector<double> d(n);
    for (std::size_t i = first(); i <= last(); ++i) d[i] = diag(i, eps);
    // Matching point: outermost classically allowed index (g < 0).
    std::size_t match = last() - 1;
    bool found = false;
    for (std::size_t i = last(); i > first(); --i) {
      if (g(i, eps) < 0.0) {
        match = i;
        found = true;
        break;
      }
    }
    if (!found) match = (first() + last()) / 2;
    match = std::clamp(match, first() + 2, last() - 2);

    std::vector<double> w(n, 0.0);
    w[first()] = 1e-30;
    w[0] = inner_ratio() * w[first()];
    for (std::size_t i = first(); i < match; ++i) {
      w[i + 1] = -d[i] * w[i] - w[i - 1];
      if (std::abs(w[i + 1]) > 1e250) {
        for (std::size_t j = 0; j <= i + 1; ++j) w[j] *= 1e-250;
      }
    }
    std::vector<double> in(n, 0.0);
    in[last()] = 1e-30;
    for (std::size_t i = last(); i > match; --i) {
      in[i - 1] = -d[i] * in[i] - in[i + 1];
      if (std::abs(in[i - 1]) > 1e250) {
        for (std::size_t j = i - 1; j < n; ++j) in[j] *= 1e-250;
      }
    }
    const double scale = w[match] / in[match];
    for (std::size_t i = match + 1; i < n; ++i) w[i] = in[i] * scale;

    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i <= last(); ++i) {
      const double v = w[i] / (1.0 - c() * g(i, eps));
      u[i] = v * std::sqrt(mesh_.r(i));
    }
    return u;
  }

  // Relative residual |K w| / |w| for u an eigenvector candidate.
  double eigen_residual(std::span<const double> u, double eps) const {
    const std::size_t n = mesh_.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = first(); i <= last(); ++i) w[i] = u[i] / std::sqrt(mesh_.r(i)) * (1.0 - c() * g(i, eps));
    w[0] = inner_ratio() * w[first()];
    double num = 0.0, den = 0.0;
    for (std::size_t i = first(); i <= last(); ++i) {
      const double kw = w[i - 1] + diag(i, eps) * w[i] + w[i + 1];
      num += kw * kw;
      den += w[i] * w[i];
    }
    return std::sqrt(num / den);
  }

  // Solve (H_l - eps) chi = f on the mesh; f and chi given as u-type samples.
  GreenSolve solve(std::span<const double> f, double eps) const {
    const std::size_t n = mesh_.size();
    const double cc = c();
    std::vector<double> big_f(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = mesh_.r(i);
      big_f[i] = -2.0 * r * std::sqrt(r) * f[i];
    }
    std::vector<double> diag_v(n), rhs(n), scale(n, 1.0);
    for (std::size_t i = first(); i <= last(); ++i) {
      scale[i] = 1.0 - cc * g(i, eps);
      diag_v[i] = diag(i, eps);
      rhs[i] = cc * (big_f[i - 1] + 10.0 * big_f[i] + big_f[i + 1]);
    }
    const double lambda = inner_ratio();
    diag_v[first()] += lambda;
    // Thomas algorithm on the symmetric tridiagonal system (unit off-diagonals).
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    for (std::size_t i = first(); i <= last(); ++i) {
      const double prev_c = (i == first()) ? 0.0 : cp[i - 1];
      const double prev_d = (i == first()) ? 0.0 : dp[i - 1];
      const double m = diag_v[i] - prev_c;
      if (m == 0.0) throw ConvergenceError("Green solve: zero pivot");
      cp[i] = 1.0 / m;
      dp[i] = (rhs[i] - prev_d) / m;
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t i = last() + 1; i-- > first();) {
      w[i] = dp[i] - cp[i] * (i + 1 <= last() ? w[i + 1] : 0.0);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = first(); i <= last(); ++i) {
      const double kw = (i > first() ? w[i - 1] : 0.0) + diag_v[i] * w[i] + w[i + 1] - rhs[i];
      num += kw * kw;
      den += rhs[i] * rhs[i];
    }
    GreenSolve out;
    out.driving.assign(f.begin(), f.end());
    out.energy_shift = eps;
    out.l_channel = l_;
    out.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    out.solution.assign(n, 0.0);
    w[0] = lambda * w[first()];
    scale[0] = 1.0 - cc * g(0, eps);
    for (std::size_t i = 0; i <= last(); ++i) out.solution[i] = w[i] / scale[i] * std::sqrt(mesh_.r(i));
    return out;
  }

 private:
  const LogMesh& mesh_;
  int l_;
};

inline int count_nodes(std::span<const double> u) {
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  const double floor = 1e-9 * peak;
  int nodes = 0;
  double last_sign = 0.0;
  for (double v : u) {
    if (std::abs(v) < floor) continue;
    const double s = v > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

}  // namespace detail

/// The k-th (0-based) discrete eigenstate of channel l on the mesh.
inline BoundState solve_channel_state(const LogMesh& mesh, int l, int index) {
  if (l < 0 || index < 0) throw DomainError("solve_channel_state: need l >= 0 and index >= 0");
  const detail::NumerovChannel ch(mesh, l);
  double lo = -1.0;
  while (ch.count_below(lo) > index) lo *= 2.0;
  double hi = 0.0;
  for (int tries = 0; ch.count_below(hi) <= index; ++tries) {
    if (tries > 60) throw ConvergenceError("solve_channel_state: could not bracket level");
    hi = hi == 0.0 ? 0.01 : hi * 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (ch.count_below(mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  BoundState st;
  st.n = index + l + 1;
  st.l = l;
  st.energy = 0.5 * (lo + hi);
  st.radial_values = ch.eigenvector(st.energy);
  double norm2 = mesh.overlap(st.radial_values, st.radial_values);
  const double inv = 1.0 / std::sqrt(norm2);
  // Sign convention: u > 0 near the origin.
  double first_sig = 0.0;
  for (double v : st.radial_values) {
    if (std::abs(v) > 1e-12) {
      first_sig = v;
      break;
    }
  }
  const double sign = first_sig < 0.0 ? -1.0 : 1.0;
  for (double& v : st.radial_values) v *= sign * inv;
  st.norm = mesh.overlap(st.radial_values, st.radial_values);
  st.nodes = detail::count_nodes(st.radial_values);
  st.residual = ch.eigen_residual(st.radial_values, st.energy);
  return st;
}

/// Hydrogen bound state (n, l).
inline BoundState solve_bound(const LogMesh& mesh, int n, int l) {
  if (!(l >= 0 && l < n)) throw DomainError("solve_bound: need 0 <= l < n");
  BoundState st = solve_channel_state(mesh, l, n - l - 1);
  if (!(st.residual < 1e-8)) {
    throw ConvergenceError("solve_bound: eigen residual " + detail::fmt(st.residual) + " exceeds 1e-8");
  }
  return st;
}

inline BoundState solve_bound(const RadialGrid& grid, int n, int l) { return solve_bound(LogMesh(grid), n, l); }

/*!
  Grid plus the cached 1S, 2S, 2P states.

  Immutable after construction; all queries are const and allocate their own
  workspace, so one instance can serve many threads.
*/
class RadialOracle {
 public:
  explicit RadialOracle(const RadialGrid& grid = {})
      : grid_(grid),
        mesh_(grid),
        s1_(solve_bound(mesh_, 1, 0)),
        s2_(solve_bound(mesh_, 2, 0)),
        p2_(solve_bound(mesh_, 2, 1)) {
    for (int n = 2; n <= 6; ++n) p_levels_.push_back(solve_channel_state(mesh_, 1, n - 2).energy);
    r_s1_ = times_r(s1_.radial_values);
    r_s2_ = times_r(s2_.radial_values);
    d_s1_ = velocity_driving(s1_.radial_values);
    d_s2_ = velocity_driving(s2_.radial_values);
  }

  const RadialGrid& grid() const { return grid_; }
  const LogMesh& mesh() const { return mesh_; }
  const BoundState& state_1s() const { return s1_; }
  const BoundState& state_2s() const { return s2_; }
  const BoundState& state_2p() const { return p2_; }

  double transition_energy() const { return s2_.energy - s1_.energy; }

  /// (H_l - eps) chi = f.
  GreenSolve green_solve(std::span<const double> driving, double eps, int l) const {
    GreenSolve gs = detail::NumerovChannel(mesh_, l).solve(driving, eps);
    if (!(gs.residual < 1e-8)) {
      throw ConvergenceError("green_solve: residual " + detail::fmt(gs.residual) + " exceeds 1e-8");
    }
    return gs;
  }

  /// Radial p-wave driving term of d/dz acting on an S state: u' - u/r.
  std::vector<double> velocity_driving(std::span<const double> u) const {
    std::vector<double> d = mesh_.derivative(u);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= u[i] / mesh_.r(i);
    return d;
  }

  std::vector<double> times_r(std::span<const double> u) const {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * mesh_.r(i);
    return out;
  }

  /// Dimensionless length-gauge element from a Dalgarno-Lewis solve.
  double q(FrequencyX x) const { return dl_element(x, r_s1_, r_s2_); }

  /// Same with bra and ket exchanged (driving by r|2S>, projecting on r|1S>).
  double q_swapped(FrequencyX x) const { return dl_element(x, r_s2_, r_s1_); }

  /// Dimensionless velocity-gauge element.
  double p(FrequencyX x) const { return dl_element(x, d_s1_, d_s2_); }

  /// <2S| r^2 |1S> in bohr^2.
  double r2_overlap() const {
    return mesh_.integrate(s2_.radial_values, s1_.radial_values, [](double r) { return r * r; });
  }

  double r2_expectation_1s() const {
    return mesh_.integrate(s1_.radial_values, s1_.radial_values, [](double r) { return r * r; });
  }

  double overlap_2s_1s() const { return mesh_.overlap(s2_.radial_values, s1_.radial_values); }

  /// Relative residual of <2P|d/dz|1S> = -(E_2P - E_1S) <2P|z|1S> (radial parts).
  double commutator_residual() const {
    const double lhs = mesh_.overlap(p2_.radial_values, d_s1_);
    const double rhs = -(p2_.energy - s1_.energy) * mesh_.overlap(p2_.radial_values, r_s1_);
    return std::abs(lhs - rhs) / std::abs(rhs);
  }

  /// M_v / M_l for 1S -> 2P at photon energy omega (hartree).
  OnePhotonRatio one_photon_ratio(double omega) const {
    if (!(omega > 0.0)) throw DomainError("one_photon_ratio: omega must be positive");
    const double dz = mesh_.overlap(p2_.radial_values, d_s1_);
    const double z = mesh_.overlap(p2_.radial_values, r_s1_);
    OnePhotonRatio out;
    out.omega = omega;
    out.ratio = -dz / (omega * z);
    const double gap = p2_.energy - s1_.energy;
    out.expected = gap / omega;
    out.degenerate = std::abs(omega - gap) <= 1e-12 * gap;
    return out;
  }

  /// Both sides of the ac-Stark sum rule for the 1S state at photon energy x.
  AcStarkSides ac_stark_sides(double x) const {
    if (!(x > 0.0)) throw DomainError("ac_stark_sides: x must be positive");
    AcStarkSides out;
    CompensatedSum<double> vel, len;
    for (double sign : {+1.0, -1.0}) {
      const double eps = s1_.energy + sign * x;
      check_resonance(eps);
      const GreenSolve gv = green_solve(d_s1_, eps, 1);
      const GreenSolve gl = green_solve(r_s1_, eps, 1);
      vel += mesh_.overlap(d_s1_, gv.solution);
      len += mesh_.overlap(r_s1_, gl.solution);
    }
    vel += -3.0 * s1_.norm;
    out.velocity_side = vel.value();
    out.length_side = x * x * len.value();
    return out;
  }

  /// Lowest `count` eigenstates of the l = 1 channel (bound and box-discretized continuum).
  std::vector<BoundState> pseudostates(int count) const {
    std::vector<BoundState> states;
    states.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) states.push_back(solve_channel_state(mesh_, 1, k));
    return states;
  }

  /// Q(x) as a spectral sum truncated after the first `count` l = 1 pseudostates.
  double q_pseudostate_sum(FrequencyX x, std::span<const BoundState> states) const {
    const double eps = s1_.energy + x.value;
    CompensatedSum<double> acc;
    for (const BoundState& st : states) {
      const double a = mesh_.overlap(r_s2_, st.radial_values);
      const double b = mesh_.overlap(st.radial_values, r_s1_);
      acc += a * b / (st.energy - eps);
    }
    return acc.value() / 3.0;
  }

 private:
  void check_resonance(double eps) const {
    for (double e : p_levels_) {
      if (std::abs(eps - e) < 1e-6) {
        throw NearResonanceError("resolvent energy " + detail::fmt(eps) + " within 1e-6 hartree of l=1 level " +
                                 detail::fmt(e));
      }
    }
  }

  double dl_element(FrequencyX x, std::span<const double> ket_driving, std::span<const double> bra) const {
    if (!(x.value > 0.0) || !(x.value < kTransitionX)) {
      throw DomainError("oracle: x must lie in (0, 3/8), got " + detail::fmt(x.value));
    }
    const double eps = s1_.energy + x.value;
    check_resonance(eps);
    const GreenSolve gs = green_solve(ket_driving, eps, 1);
    return mesh_.overlap(bra, gs.solution) / 3.0;
  }

  RadialGrid grid_;
  LogMesh mesh_;
  BoundState s1_, s2_, p2_;
  std::vector<double> p_levels_;
  std::vector<double> r_s1_, r_s2_, d_s1_, d_s2_;
};

}  // namespace twophoton
