#pragma once

// Lerch transcendent Phi(z, 1, a) and the Gauss function 2F1(1, -t; 1 - t; z)
// restricted to the real arguments |z| < 1 used by the 1S-2S closed forms.

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "twophoton/compensated_sum.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

struct LerchParams {
  double z = 0.0;
  int s = 1;
  double a = 1.0;
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // bound on |exact - value| from the geometric tail
};

enum class SummationOrder { forward, backward };

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline bool near_integer(double v) {
  const double nearest = std::round(v);
  return std::abs(v - nearest) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
}

inline void check_tolerance(double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw DomainError("series tolerance must lie in (0, 1), got " + fmt(tol));
  }
}

inline void check_unit_disk(double z) {
  if (!std::isfinite(z) || std::abs(z) >= 1.0) {
    throw DomainError("series argument requires |z| < 1, got z = " + fmt(z));
  }
}

// |z|^(K+1) / ((K+1+a)(1-|z|)): bound on sum_{k>K} |z^k/(k+a)| once K+1+a > 0.
inline double geometric_tail(double z, std::size_t last_index, double a) {
  const double az = std::abs(z);
  if (az == 0.0) return 0.0;
  const double denom = (static_cast<double>(last_index) + 1.0 + a) * (1.0 - az);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(az, static_cast<double>(last_index) + 1.0) / denom;
}

inline double sum_terms(const std::vector<double>& terms, SummationOrder order) {
  CompensatedSum<double> acc;
  if (order == SummationOrder::forward) {
    for (double t : terms) acc += t;
  } else {
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc += *it;
  }
  return acc.value();
}

}  // namespace detail

/// Sums Phi(z, 1, a) = sum_{k>=0} z^k / (k + a) until three consecutive terms
/// fall below tol relative to the partial sum.
inline SeriesResult lerch_phi(const LerchParams& p, double tol, std::size_t max_terms = kMaxSeriesTerms) {
  if (p.s != 1) {
    throw DomainError("lerch_phi supports s = 1 only, got s = " + std::to_string(p.s));
  }
  detail::check_unit_disk(p.z);
  detail::check_tolerance(tol);
  if (!std::isfinite(p.a)) throw DomainError("lerch_phi: non-finite shift a");
  if (p.a <= 0.0 && detail::near_integer(p.a)) {
    throw PoleError("lerch_phi: a + k = 0 for k = " + detail::fmt(-std::round(p.a)));
  }

  CompensatedSum<double> acc;
  double zk = 1.0;
  int small_run = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double shift = static_cast<double>(k) + p.a;
    const double term = zk / shift;
    acc += term;
    const double partial = acc.value();
    // Only trust the stop rule once the remaining shifts are all positive.
    if (shift > 0.0 && std::abs(term) <= tol * std::abs(partial)) {
      if (++small_run == 3) {
        return {partial, k + 1, detail::geometric_tail(p.z, k, p.a)};
      }
    } else {
      small_run = 0;
    }
    zk *= p.z;
  }
  throw NonConvergence("lerch_phi: no convergence within " + std::to_string(max_terms) + " terms");
}

/// Exactly n_terms terms of the Lerch series, with the bound on what is left.
inline SeriesResult lerch_phi_terms(const LerchParams& p, std::size_t n_terms) {
  if (p.s != 1) throw DomainError("lerch_phi_terms supports s = 1 only");
  detail::check_unit_disk(p.z);
  if (n_terms == 0) throw DomainError("lerch_phi_terms: need at least one term");
  if (p.a <= 0.0 && detail::near_integer(p.a)) throw PoleError("lerch_phi_terms: a + k = 0 for some k");
  CompensatedSum<double> acc;
  double zk = 1.0;
  for (std::size_t k = 0; k < n_terms; ++k) {
    acc += zk / (static_cast<double>(k) + p.a);
    zk *= p.z;
  }
  return {acc.value(), n_terms, detail::geometric_tail(p.z, n_terms - 1, p.a)};
}

/*!
  2F1(1, -t; 1 - t; z) = sum_k (-t) z^k / (k - t), split by term index.

  The k = 1 term, -t z / (1 - t), is the one that blows up as t -> 1. It is
  returned on its own so that a caller whose z vanishes like (1 - t) can
  replace it by its analytic limit. `tail` holds k >= 2.
*/
struct Hyp2F1Split {
  double leading = 1.0;  // k = 0, identically 1
  double pole_term = 0.0;
  double tail = 0.0;
  SeriesResult total;
};

inline Hyp2F1Split hyp2f1_special_split(double t, double z, double tol,
                                        SummationOrder order = SummationOrder::forward,
                                        std::size_t max_terms = kMaxSeriesTerms) {
  detail::check_unit_disk(z);
  detail::check_tolerance(tol);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("hyp2f1_special: parameter t must be positive, got " + detail::fmt(t));
  }
  if (detail::near_integer(t)) {
    throw PoleError("hyp2f1_special: t = " + detail::fmt(t) + " is a pole of the series");
  }

  Hyp2F1Split out;
  out.pole_term = -t * z / (1.0 - t);

  // c_k = -t z^k / (k - t), generated by the term-ratio recurrence.
  std::vector<double> tail_terms;
  double term = out.pole_term;
  const double head = out.leading + out.pole_term;
  CompensatedSum<double> running(head);
  int small_run = 0;
  std::size_t k = 1;
  bool converged = (z == 0.0);
  while (!converged) {
    if (k + 1 >= max_terms) {
      throw NonConvergence("hyp2f1_special: no convergence within " + std::to_string(max_terms) + " terms");
    }
    const double kd = static_cast<double>(k);
    term *= z * (kd - t) / (kd + 1.0 - t);
    ++k;
    tail_terms.push_back(term);
    running += term;
    if (kd + 1.0 - t > 0.0 && std::abs(term) <= tol * std::abs(running.value())) {
      converged = (++small_run == 3);
    } else {
      small_run = 0;
    }
  }
  out.tail = detail::sum_terms(tail_terms, order);

  CompensatedSum<double> total(out.leading);
  total += out.pole_term;
  total += out.tail;
  out.total.value = total.value();
  out.total.terms_used = k + 1;
  out.total.tail_bound = t * detail::geometric_tail(z, k, -t);
  return out;
}

inline SeriesResult hyp2f1_special(double t, double z, double tol,
                                   SummationOrder order = SummationOrder::forward) {
  return hyp2f1_special_split(t, z, tol, order).total;
}

/// Same function through the reduction 2F1(1, b; b + 1; z) = b Phi(z, 1, b), b = -t.
inline SeriesResult hyp2f1_via_lerch(double t, double z, double tol) {
  const SeriesResult phi = lerch_phi({z, 1, -t}, tol);
  return {-t * phi.value, phi.terms_used, t * phi.tail_bound};
}

}  // namespace twophoton
