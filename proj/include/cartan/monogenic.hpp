#pragma once

// Monogenic functions built from holomorphic components:
//
//   Phi(zeta) = sum_u I_u (1/2 pi i) \oint_{Gamma_u} F_u(t) (t e_1 - zeta)^{-1} dt
//             + sum_s I_s (1/2 pi i) \oint_{Gamma_{u_s}} G_s(t) (t e_1 - zeta)^{-1} dt
//
// evaluated either exactly through residues of the resolvent expansion or by
// trapezoidal quadrature on circles.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "cartan/resolvent.hpp"

namespace cartan {

/// Holomorphic component: a polynomial in t, or a truncated power series in
/// (t - center) that may only be evaluated on |t - center| <= 0.9 radius.
struct HoloFunction {
  enum class Kind { polynomial, series };

  Kind kind = Kind::polynomial;
  std::vector<cplx> coeffs;
  cplx center{};
  double radius = INFINITY;

  static HoloFunction polynomial(std::vector<cplx> c) { return {Kind::polynomial, std::move(c), {}, INFINITY}; }
  static HoloFunction series(std::vector<cplx> c, cplx center, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "series radius must be positive");
    return {Kind::series, std::move(c), center, radius};
  }
  static HoloFunction zero() { return polynomial({}); }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != cplx{}) return false;
    return true;
  }

  /// Radius of the closed disc around `center` on which evaluation is allowed.
  double evaluation_radius() const { return kind == Kind::series ? 0.9 * radius : INFINITY; }
  bool contains(cplx xi) const { return std::abs(xi - center) <= evaluation_radius(); }
};

/// F^{(order)}(xi) from the coefficients.
inline cplx holo_eval(const HoloFunction& f, cplx xi, int order = 0) {
  if (order < 0) throw Error(ErrorCode::invalid_argument, "derivative order must be nonnegative");
  if (!f.contains(xi)) throw Error(ErrorCode::out_of_domain, "point outside the series disc");
  const int deg = static_cast<int>(f.coeffs.size()) - 1;
  if (order > deg) return {};
  const cplx z = xi - f.center;
  cplx acc{};
  for (int j = deg; j >= order; --j) {
    double w = 1.0;  // j! / (j - order)!
    for (int i = 0; i < order; ++i) w *= static_cast<double>(j - i);
    acc = acc * z + w * f.coeffs[static_cast<std::size_t>(j)];
  }
  return acc;
}

/// (1/2 pi i) \oint F(t) / (t - xi)^r dt = F^{(r-1)}(xi) / (r-1)!.
inline cplx cauchy_coefficient(const HoloFunction& f, cplx xi, int r) {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "kernel order must be at least 1");
  double fact = 1.0;
  for (int i = 2; i < r; ++i) fact *= i;
  return holo_eval(f, xi, r - 1) / fact;
}

inline HoloFunction derivative(const HoloFunction& f) {
  HoloFunction d = f;
  d.coeffs.clear();
  for (std::size_t j = 1; j < f.coeffs.size(); ++j) d.coeffs.push_back(static_cast<double>(j) * f.coeffs[j]);
  return d;
}

/// Circle Gamma_u with N trapezoid nodes.
struct Contour {
  cplx center;
  double radius = 1.0;
  int nodes = 256;
};

/// F_1..F_m for the idempotent blocks and G_{m+1}..G_n for the nilpotent ones.
struct MonogenicSpec {
  std::vector<HoloFunction> F;
  std::vector<HoloFunction> G;

  /// F_u(t) = p(t) for every u, G = 0.
  static MonogenicSpec uniform(const AlgebraSpec& spec, const HoloFunction& p) {
    return {std::vector<HoloFunction>(static_cast<std::size_t>(spec.m()), p),
            std::vector<HoloFunction>(static_cast<std::size_t>(spec.n() - spec.m()), HoloFunction::zero())};
  }
};

inline MonogenicSpec derivative(const MonogenicSpec& ms) {
  MonogenicSpec d;
  for (const auto& f : ms.F) d.F.push_back(derivative(f));
  for (const auto& g : ms.G) d.G.push_back(derivative(g));
  return d;
}

/// The holomorphic function A_u Phi.
inline HoloFunction component_extract(const MonogenicSpec& ms, int u) {
  if (u < 0 || u >= static_cast<int>(ms.F.size())) throw Error(ErrorCode::invalid_argument, "idempotent index out of range", u);
  return ms.F[static_cast<std::size_t>(u)];
}

namespace detail {

inline void check_mspec(const MonogenicSpec& ms, const AlgebraSpec& spec) {
  if (static_cast<int>(ms.F.size()) != spec.m() || static_cast<int>(ms.G.size()) != spec.n() - spec.m())
    throw Error(ErrorCode::dimension_mismatch, "monogenic spec needs m F-components and n-m G-components");
}

inline const HoloFunction& g_of(const MonogenicSpec& ms, const AlgebraSpec& spec, int s) {
  return ms.G[static_cast<std::size_t>(s - spec.m())];
}

/// (1/2 pi i) \oint_{Gamma_u} f(t) (t e_1 - zeta)^{-1} dt by residues, where
/// Gamma_u encloses xi_u only.
inline Element residue_integral(const HoloFunction& f, int u, const Spectrum& sp, const ResolventCoeffs& c,
                                const AlgebraSpec& spec) {
  const cplx xi = sp.xi[static_cast<std::size_t>(u)];
  if (!f.contains(xi)) throw Error(ErrorCode::out_of_domain, "spectrum point outside component domain", u);
  Element out(static_cast<std::size_t>(spec.n()));
  if (f.is_zero()) return out;
  out[static_cast<std::size_t>(u)] = holo_eval(f, xi, 0);
  for (int s = spec.m(); s < spec.n(); ++s) {
    if (spec.idempotent_of(s) != u) continue;
    cplx acc{};
    const auto& row = c.Q[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == cplx{}) continue;
      acc += cauchy_coefficient(f, xi, static_cast<int>(i) + 2) * row[i];
    }
    out[static_cast<std::size_t>(s)] = acc;
  }
  return out;
}

/// Pairwise (cascade) summation in fixed order.
inline Element pairwise_sum(std::span<const Element> terms, std::size_t n) {
  if (terms.empty()) return Element(n);
  if (terms.size() == 1) return terms[0];
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half), n) + pairwise_sum(terms.subspan(half), n);
}

}  // namespace detail

/// Phi(zeta) through the resolvent expansion, replacing each 1/(t - xi)^r
/// kernel by its residue.
inline Element eval_residue(const MonogenicSpec& ms, const SpanPoint& x, const SpanBasis& basis) {
  const AlgebraSpec& spec = basis.algebra();
  detail::check_mspec(ms, spec);
  const Spectrum sp = spectrum(x, basis);
  const ResolventCoeffs c = resolvent_coeffs(x, basis);
  Element out(static_cast<std::size_t>(spec.n()));
  for (int u = 0; u < spec.m(); ++u)
    out += mul(basis_vector(spec, u), detail::residue_integral(ms.F[static_cast<std::size_t>(u)], u, sp, c, spec), spec);
  for (int s = spec.m(); s < spec.n(); ++s) {
    const HoloFunction& g = detail::g_of(ms, spec, s);
    if (g.is_zero()) continue;
    out += mul(basis_vector(spec, s), detail::residue_integral(g, spec.idempotent_of(s), sp, c, spec), spec);
  }
  return out;
}

/// Only the idempotent sum of the representation; Phi minus this lies in the radical.
inline Element idempotent_part(const MonogenicSpec& ms, const SpanPoint& x, const SpanBasis& basis) {
  const AlgebraSpec& spec = basis.algebra();
  detail::check_mspec(ms, spec);
  const Spectrum sp = spectrum(x, basis);
  const ResolventCoeffs c = resolvent_coeffs(x, basis);
  Element out(static_cast<std::size_t>(spec.n()));
  for (int u = 0; u < spec.m(); ++u)
    out += mul(basis_vector(spec, u), detail::residue_integral(ms.F[static_cast<std::size_t>(u)], u, sp, c, spec), spec);
  return out;
}

/// Circles centred at xi_u with radius half the distance to the nearest other
/// spectrum point (1 when m = 1), shrunk to fit the component domains.
inline std::vector<Contour> default_contours(const MonogenicSpec& ms, const SpanPoint& x, const SpanBasis& basis,
                                             int nodes = 256) {
  const AlgebraSpec& spec = basis.algebra();
  detail::check_mspec(ms, spec);
  const Spectrum sp = spectrum(x, basis);
  std::vector<Contour> out;
  for (int u = 0; u < spec.m(); ++u) {
    const cplx xi = sp.xi[static_cast<std::size_t>(u)];
    double rho = spec.m() == 1 ? 1.0 : INFINITY;
    for (int q = 0; q < spec.m(); ++q)
      if (q != u) rho = std::min(rho, 0.5 * std::abs(xi - sp.xi[static_cast<std::size_t>(q)]));
    if (!(rho > 0.0))
      throw Error(ErrorCode::invalid_argument, "spectrum points coincide; no separating contour exists", u);
    auto clamp = [&](const HoloFunction& f) {
      if (f.is_zero()) return;
      const double room = f.evaluation_radius() - std::abs(xi - f.center);
      if (!(room > 0.0)) throw Error(ErrorCode::out_of_domain, "spectrum point on or outside component domain", u);
      rho = std::min(rho, room);
    };
    clamp(ms.F[static_cast<std::size_t>(u)]);
    for (int s = spec.m(); s < spec.n(); ++s)
      if (spec.idempotent_of(s) == u) clamp(detail::g_of(ms, spec, s));
    out.push_back({xi, rho, nodes});
  }
  return out;
}

namespace detail {

inline void check_contour(const Contour& g, int u, const Spectrum& sp, const std::vector<const HoloFunction*>& fs) {
  if (g.nodes < 1 || !(g.radius > 0.0)) throw Error(ErrorCode::invalid_argument, "contour needs positive radius and nodes", u);
  if (!(std::abs(sp.xi[static_cast<std::size_t>(u)] - g.center) < g.radius))
    throw Error(ErrorCode::invalid_argument, "contour does not enclose its spectrum point", u);
  for (std::size_t q = 0; q < sp.xi.size(); ++q)
    if (static_cast<int>(q) != u && !(std::abs(sp.xi[q] - g.center) > g.radius))
      throw Error(ErrorCode::invalid_argument, "contour encloses or touches another spectrum point", u);
  for (const HoloFunction* f : fs)
    if (std::abs(g.center - f->center) + g.radius > f->evaluation_radius())
      throw Error(ErrorCode::out_of_domain, "contour leaves component domain", u);
}

}  // namespace detail

/// Phi(zeta) by the uniform trapezoid rule on each contour.
inline Element eval_quadrature(const MonogenicSpec& ms, const SpanPoint& x, const SpanBasis& basis,
                               const std::vector<Contour>& contours) {
  const AlgebraSpec& spec = basis.algebra();
  detail::check_mspec(ms, spec);
  if (static_cast<int>(contours.size()) != spec.m())
    throw Error(ErrorCode::dimension_mismatch, "one contour per idempotent is required");
  const auto n = static_cast<std::size_t>(spec.n());
  const Spectrum sp = spectrum(x, basis);
  const ResolventCoeffs coeffs = resolvent_coeffs(x, basis);

  Element out(n);
  for (int u = 0; u < spec.m(); ++u) {
    // Functions integrated over Gamma_u, with the basis vector that multiplies each integral.
    std::vector<const HoloFunction*> fs;
    std::vector<int> targets;
    if (!ms.F[static_cast<std::size_t>(u)].is_zero()) {
      fs.push_back(&ms.F[static_cast<std::size_t>(u)]);
      targets.push_back(u);
    }
    for (int s = spec.m(); s < spec.n(); ++s)
      if (spec.idempotent_of(s) == u && !detail::g_of(ms, spec, s).is_zero()) {
        fs.push_back(&detail::g_of(ms, spec, s));
        targets.push_back(s);
      }
    if (fs.empty()) continue;
    const Contour& g = contours[static_cast<std::size_t>(u)];
    detail::check_contour(g, u, sp, fs);

    std::vector<std::vector<Element>> terms(fs.size());
    for (int j = 0; j < g.nodes; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / g.nodes;
      const cplx offset = std::polar(g.radius, theta);
      const cplx t = g.center + offset;
      const Element r = resolvent_from(t, sp, coeffs, spec);
      for (std::size_t i = 0; i < fs.size(); ++i)
        terms[i].push_back((holo_eval(*fs[i], t) * offset / static_cast<double>(g.nodes)) * r);
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      out += mul(basis_vector(spec, targets[i]), detail::pairwise_sum(terms[i], n), spec);
  }
  return out;
}

struct AdaptiveQuadrature {
  Element value;
  int nodes = 0;
  bool converged = false;
};

/// Doubles the node count from `start` until successive results agree to `tol` or `max_nodes` is reached.
inline AdaptiveQuadrature eval_quadrature_adaptive(const MonogenicSpec& ms, const SpanPoint& x, const SpanBasis& basis,
                                                   double tol = 1e-9, int start = 256, int max_nodes = 4096) {
  std::vector<Contour> contours = default_contours(ms, x, basis, start);
  AdaptiveQuadrature res{eval_quadrature(ms, x, basis, contours), start, false};
  while (res.nodes < max_nodes) {
    for (auto& g : contours) g.nodes = res.nodes * 2;
    Element next = eval_quadrature(ms, x, basis, contours);
    const double diff = norm(next - res.value);
    res = {std::move(next), res.nodes * 2, diff <= tol};
    if (res.converged) break;
  }
  return res;
}

/// zeta^p by repeated multiplication.
inline Element power_function(int p, const SpanPoint& x, const SpanBasis& basis) {
  if (p < 0) throw Error(ErrorCode::invalid_argument, "power must be nonnegative");
  const Element z = embed(x, basis);
  Element out = unit(basis.algebra());
  for (int i = 0; i < p; ++i) out = mul(out, z, basis.algebra());
  return out;
}

}  // namespace cartan
