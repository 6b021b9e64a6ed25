#pragma once

// Numerical differentiability checks for functions Phi: Omega -> A_n^m on a
// box Omega in E_k: Gateaux differentials and derivatives, Lorch remainders,
// Cauchy-Riemann residuals on spectral slices, and ideal-increment checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cartan/monogenic.hpp"

namespace cartan {

/// Axis-aligned box in R^k.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box cube(std::size_t k, double lo, double hi) { return {std::vector<double>(k, lo), std::vector<double>(k, hi)}; }

  std::size_t dim() const { return lo.size(); }

  bool contains(const SpanPoint& x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    return true;
  }

  /// Euclidean ball of radius r around x lies inside.
  bool contains_ball(const SpanPoint& x, double r) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] - r < lo[i] || x[i] + r > hi[i]) return false;
    return true;
  }

  Box shrunk(double margin) const {
    Box b = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      b.lo[i] += margin;
      b.hi[i] -= margin;
    }
    return b;
  }
};

/// A map from span points to algebra elements, defined on a box.
struct PointFunction {
  std::function<Element(const SpanPoint&)> fn;
  Box domain;

  Element operator()(const SpanPoint& x) const {
    if (!domain.contains(x)) throw Error(ErrorCode::out_of_domain, "point outside the function's domain");
    return fn(x);
  }
};

/// Phi built from a monogenic spec, evaluated by residues.
inline PointFunction representation_function(MonogenicSpec ms, SpanBasis basis, Box domain) {
  return {[ms = std::move(ms), basis = std::move(basis)](const SpanPoint& x) { return eval_residue(ms, x, basis); },
          std::move(domain)};
}

inline std::vector<double> default_step_schedule() { return {1e-2, 5e-3, 2.5e-3, 1.25e-3}; }

struct GateauxDifferential {
  Element value;
  /// Observed order of the raw forward differences; NaN when they agree to rounding.
  double order = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

/// lim_{delta -> 0+} (Phi(x + delta h) - Phi(x)) / delta, extrapolated with a
/// Richardson tableau over the decreasing schedule.
inline GateauxDifferential gateaux_differential(const PointFunction& phi, const SpanPoint& x, const SpanPoint& h,
                                                const std::vector<double>& schedule = default_step_schedule()) {
  if (schedule.size() < 2) throw Error(ErrorCode::invalid_argument, "step schedule needs at least two steps");
  for (std::size_t i = 0; i < schedule.size(); ++i)
    if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] < schedule[i - 1])))
      throw Error(ErrorCode::invalid_argument, "step schedule must be positive and strictly decreasing");
  if (!phi.domain.contains(x)) throw Error(ErrorCode::out_of_domain, "base point outside domain");
  for (double d : schedule)
    if (!phi.domain.contains(x + d * h)) throw Error(ErrorCode::out_of_domain, "step schedule leaves the domain");

  const Element base = phi(x);
  const std::size_t levels = schedule.size();
  std::vector<Element> raw;
  for (double d : schedule) raw.push_back((1.0 / d) * (phi(x + d * h) - base));

  // Neville tableau: tab[i][j] eliminates the delta^1..delta^j error terms.
  std::vector<std::vector<Element>> tab(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    tab[i].push_back(raw[i]);
    for (std::size_t j = 1; j <= i; ++j) {
      const double ratio = schedule[i - j] / schedule[i];
      tab[i].push_back(tab[i][j - 1] + (1.0 / (ratio - 1.0)) * (tab[i][j - 1] - tab[i - 1][j - 1]));
    }
  }

  GateauxDifferential out;
  out.value = tab[levels - 1][levels - 1];
  const double floor = 1e-13 * (1.0 + norm(base)) / schedule.back();
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < levels; ++i) diffs.push_back(norm(raw[i] - raw[i + 1]));
  out.converged = true;
  double order_sum = 0.0;
  int order_count = 0;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    if (diffs[i] <= floor && diffs[i + 1] <= floor) continue;
    if (diffs[i + 1] > 0.75 * diffs[i] && diffs[i + 1] > floor) out.converged = false;
    if (diffs[i] > floor && diffs[i + 1] > floor) {
      order_sum += std::log(diffs[i] / diffs[i + 1]) / std::log(schedule[i] / schedule[i + 1]);
      ++order_count;
    }
  }
  if (order_count > 0) out.order = order_sum / order_count;
  return out;
}

struct DiffReport {
  Element derivative;
  std::vector<SpanPoint> directions;
  std::vector<double> residuals;
  std::vector<double> step_schedule;
  bool converged = true;
  bool pass = false;

  double max_residual() const {
    double r = 0.0;
    for (double v : residuals) r = std::max(r, v);
    return r;
  }
};

/// e_1, the k coordinate axes and `count` seeded random unit vectors.
inline std::vector<SpanPoint> default_directions(std::size_t k, std::uint64_t seed, int count = 20) {
  std::vector<SpanPoint> dirs;
  for (std::size_t i = 0; i < k; ++i) {
    SpanPoint e(k);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int c = 0; c < count; ++c) {
    SpanPoint d(k);
    for (auto& v : d.x) v = gauss(rng);
    dirs.push_back((1.0 / euclidean_norm(d)) * d);
  }
  return dirs;
}

inline constexpr double kGateauxTol = 1e-6;

/// Phi'_G from the differential along e_1 = 1; every other direction h must
/// satisfy D_G(x, h) = h Phi'_G, with residual tolerance tol (1 + |h|).
inline DiffReport gateaux_derivative(const PointFunction& phi, const SpanPoint& x, const std::vector<SpanPoint>& directions,
                                     const SpanBasis& basis, double tol = kGateauxTol,
                                     const std::vector<double>& schedule = default_step_schedule()) {
  SpanPoint e1(static_cast<std::size_t>(basis.k()));
  e1[0] = 1.0;
  if (std::find(directions.begin(), directions.end(), e1) == directions.end())
    throw Error(ErrorCode::invalid_argument, "directions must include e_1");

  DiffReport rep;
  rep.step_schedule = schedule;
  rep.directions = directions;
  const GateauxDifferential d1 = gateaux_differential(phi, x, e1, schedule);
  rep.derivative = d1.value;
  rep.converged = d1.converged;
  rep.pass = true;
  for (const SpanPoint& h : directions) {
    const GateauxDifferential dh = gateaux_differential(phi, x, h, schedule);
    const Element eh = embed(h, basis);
    const double r = norm(dh.value - mul(eh, rep.derivative, basis.algebra()));
    rep.residuals.push_back(r);
    rep.converged = rep.converged && dh.converged;
    if (!(r <= tol * (1.0 + norm(eh)))) rep.pass = false;
  }
  rep.pass = rep.pass && rep.converged;
  return rep;
}

/// max over |h| = delta of |Phi(x+h) - Phi(x) - h c| / |h| for `samples`
/// seeded directions. The same directions are used for every delta.
inline double lorch_residual(const PointFunction& phi, const SpanPoint& x, const Element& candidate, double delta,
                             int samples, const SpanBasis& basis, std::uint64_t seed = 7) {
  if (!phi.domain.contains_ball(x, delta)) throw Error(ErrorCode::out_of_domain, "Lorch ball leaves the domain");
  const Element base = phi(x);
  const auto dirs = default_directions(x.size(), seed, samples);
  double worst = 0.0;
  for (std::size_t i = x.size(); i < dirs.size(); ++i) {
    const SpanPoint h = delta * dirs[i];
    const Element eh = embed(h, basis);
    const Element rem = phi(x + h) - base - mul(eh, candidate, basis.algebra());
    worst = std::max(worst, norm(rem) / norm(eh));
  }
  return worst;
}

/// A complex function of (tau, eta) near the origin, valid for |tau|, |eta| <= half_width.
struct Slice {
  std::function<cplx(double, double)> H;
  double half_width = INFINITY;
};

/// Central-difference estimate of dH/deta - i dH/dtau at the origin.
inline cplx cr_residual(const Slice& slice, double step) {
  if (!(step > 0.0) || step > slice.half_width) throw Error(ErrorCode::out_of_domain, "step leaves the slice");
  const cplx d_tau = (slice.H(step, 0.0) - slice.H(-step, 0.0)) / (2.0 * step);
  const cplx d_eta = (slice.H(0.0, step) - slice.H(0.0, -step)) / (2.0 * step);
  return d_eta - cplx{0.0, 1.0} * d_tau;
}

/// H(tau, eta) = coordinate `coord` of Phi on the plane through x0 along which
/// f_u(zeta) = f_u(zeta_0) + tau + i eta.
inline Slice component_slice(const PointFunction& phi, int u, const SpanPoint& x0, const SpanBasis& basis, int coord) {
  const auto [d_tau, d_eta] = spectral_plane(u, basis);
  double w = INFINITY;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double spread = std::abs(d_tau[i]) + std::abs(d_eta[i]);
    if (spread == 0.0) continue;
    w = std::min(w, std::min(x0[i] - phi.domain.lo[i], phi.domain.hi[i] - x0[i]) / spread);
  }
  return {[phi, x0, d_tau, d_eta, coord](double tau, double eta) {
            return phi(x0 + tau * d_tau + eta * d_eta)[static_cast<std::size_t>(coord)];
          },
          w};
}

/// Scalar slice H(tau, eta) = h(xi0 + tau + i eta).
inline Slice complex_slice(std::function<cplx(cplx)> h, cplx xi0) {
  return {[h = std::move(h), xi0](double tau, double eta) { return h(xi0 + cplx{tau, eta}); }, INFINITY};
}

struct IncrementReport {
  bool vacuous = false;
  int trials = 0;
  double max_increment = 0.0;
  bool pass = true;
};

namespace detail {

template <class Check>
IncrementReport run_increment_trials(const PointFunction& phi, int u, const SpanBasis& basis, int trials,
                                     std::uint64_t seed, double tol, Check&& increment) {
  IncrementReport rep;
  const auto mu = noninvertible_subspace(u, basis);
  if (mu.empty()) {
    rep.vacuous = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const Box& box = phi.domain;
  for (int t = 0; t < trials; ++t) {
    SpanPoint x1(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) x1[i] = box.lo[i] + unif(rng) * (box.hi[i] - box.lo[i]);
    SpanPoint d(box.dim());
    for (const auto& v : mu) d = d + coef(rng) * v;
    int halvings = 0;
    while (!box.contains(x1 + d) && halvings++ < 60) d = 0.5 * d;
    if (!box.contains(x1 + d)) continue;
    const double inc = increment(phi(x1), phi(x1 + d));
    rep.max_increment = std::max(rep.max_increment, inc);
    ++rep.trials;
  }
  rep.pass = rep.max_increment <= tol;
  return rep;
}

}  // namespace detail

/// For zeta_2 - zeta_1 in M_u: |f_u(Phi(zeta_2)) - f_u(Phi(zeta_1))| <= tol.
inline IncrementReport ideal_increment_check(const PointFunction& phi, int u, const SpanBasis& basis, int trials,
                                             std::uint64_t seed = 11, double tol = 1e-10) {
  return detail::run_increment_trials(phi, u, basis, trials, seed, tol, [u](const Element& a, const Element& b) {
    return std::abs(b[static_cast<std::size_t>(u)] - a[static_cast<std::size_t>(u)]);
  });
}

/// For radical-valued Phi = sum_{r >= s} V_r I_r and zeta_2 - zeta_1 in
/// M_{u_s}: the increment has no component on I_1..I_s.
inline IncrementReport radical_increment_check(const PointFunction& phi, int s, const SpanBasis& basis, int trials,
                                               std::uint64_t seed = 13, double tol = 1e-10) {
  const AlgebraSpec& spec = basis.algebra();
  if (s < spec.m() || s >= spec.n()) throw Error(ErrorCode::invalid_argument, "index must be nilpotent", s);
  return detail::run_increment_trials(phi, spec.idempotent_of(s), basis, trials, seed, tol,
                                      [s](const Element& a, const Element& b) {
                                        double worst = 0.0;
                                        for (int r = 0; r <= s; ++r)
                                          worst = std::max(worst, std::abs(b[static_cast<std::size_t>(r)] -
                                                                           a[static_cast<std::size_t>(r)]));
                                        return worst;
                                      });
}

struct HilleOptions {
  int points = 20;
  std::uint64_t seed = 1;
  double tol = kGateauxTol;
  std::vector<double> lorch_steps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  int lorch_samples = 20;
  double margin = 0.05;
  /// Allowed band for residual(delta/2) / residual(delta): halving within a factor 1.5.
  double ratio_lo = 0.5 / 1.5;
  double ratio_hi = 0.75;
};

struct HillePointReport {
  SpanPoint x;
  std::string error;  // nonempty when a precondition failed at this point
  Element derivative;
  double gateaux_max_residual = 0.0;
  bool gateaux_pass = false;
  std::vector<double> lorch_residuals;
  std::vector<double> lorch_ratios;
  bool lorch_pass = false;
  std::optional<double> derivative_error;
  bool derivative_pass = true;
  bool pass = false;
};

struct HilleSummary {
  std::vector<HillePointReport> points;
  double gateaux_pass_rate = 0.0;
  double lorch_pass_rate = 0.0;
  double derivative_pass_rate = 0.0;
  double pass_rate = 0.0;
};

/// Per sampled point: Gateaux derivative, Lorch decay with the Gateaux
/// derivative as candidate, and (if given) agreement with an exact derivative.
inline HilleSummary hille_harness(const PointFunction& phi, const SpanBasis& basis, const HilleOptions& opt,
                                  const std::function<Element(const SpanPoint&)>& exact_derivative = {}) {
  HilleSummary sum;
  const Box inner = phi.domain.shrunk(opt.margin);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto dirs = default_directions(static_cast<std::size_t>(basis.k()), opt.seed);
  int g = 0, l = 0, d = 0, all = 0;
  for (int p = 0; p < opt.points; ++p) {
    HillePointReport rep;
    rep.x = SpanPoint(inner.dim());
    for (std::size_t i = 0; i < inner.dim(); ++i) rep.x[i] = inner.lo[i] + unif(rng) * (inner.hi[i] - inner.lo[i]);
    try {
      const DiffReport gd = gateaux_derivative(phi, rep.x, dirs, basis, opt.tol);
      rep.derivative = gd.derivative;
      rep.gateaux_max_residual = gd.max_residual();
      rep.gateaux_pass = gd.pass;

      for (double delta : opt.lorch_steps)
        rep.lorch_residuals.push_back(lorch_residual(phi, rep.x, gd.derivative, delta, opt.lorch_samples, basis, opt.seed + 1));
      double scale = 0.0;
      for (double r : rep.lorch_residuals) scale = std::max(scale, r);
      rep.lorch_pass = true;
      for (std::size_t i = 0; i + 1 < rep.lorch_residuals.size(); ++i) {
        const double ratio = rep.lorch_residuals[i + 1] / rep.lorch_residuals[i];
        rep.lorch_ratios.push_back(ratio);
        if (!(ratio >= opt.ratio_lo && ratio <= opt.ratio_hi)) rep.lorch_pass = false;
      }
      if (scale <= 1e-10) rep.lorch_pass = true;  // Phi is affine; the remainder is rounding only

      if (exact_derivative) {
        rep.derivative_error = norm(gd.derivative - exact_derivative(rep.x));
        rep.derivative_pass = *rep.derivative_error <= opt.tol;
      }
    } catch (const Error& e) {
      rep.error = std::string(to_string(e.code())) + ": " + e.what();
      rep.gateaux_pass = rep.lorch_pass = rep.derivative_pass = false;
    }
    rep.pass = rep.gateaux_pass && rep.lorch_pass && rep.derivative_pass;
    g += rep.gateaux_pass;
    l += rep.lorch_pass;
    d += rep.derivative_pass;
    all += rep.pass;
    sum.points.push_back(std::move(rep));
  }
  const double np = std::max(1, opt.points);
  sum.gateaux_pass_rate = g / np;
  sum.lorch_pass_rate = l / np;
  sum.derivative_pass_rate = d / np;
  sum.pass_rate = all / np;
  return sum;
}

/// Harness for a representation-built Phi; the exact derivative is the
/// representation of the differentiated components.
inline HilleSummary hille_harness(const MonogenicSpec& ms, const Box& omega, const SpanBasis& basis,
                                  const HilleOptions& opt = {}) {
  const auto cond = check_span_condition(basis);
  for (int u = 0; u < basis.m(); ++u)
    if (!cond[static_cast<std::size_t>(u)])
      throw Error(ErrorCode::span_condition, "f_u restricted to the span is not onto C", u);
  const MonogenicSpec dms = derivative(ms);
  return hille_harness(representation_function(ms, basis, omega), basis, opt,
                       [dms, &basis](const SpanPoint& x) { return eval_residue(dms, x, basis); });
}

}  // namespace cartan
