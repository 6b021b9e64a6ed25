#pragma once

// Resolvent (t e_1 - zeta)^{-1} of a span point zeta, its coefficient
// recurrences, and the closed inverse formula.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "cartan/span.hpp"

namespace cartan {

/// T_s, B_{q,s}, Q_{r,s} at a fixed span point. Vectors are indexed by the
/// zero-based basis index; entries for idempotent indices stay zero.
struct ResolventCoeffs {
  std::vector<cplx> T;               // T[s]
  std::vector<std::vector<cplx>> B;  // B[q][s]
  /// Q[s][r - 2] for r = 2..(s - m + 2) in zero-based s; Q[s][0] == T[s].
  std::vector<std::vector<cplx>> Q;

  /// Q_{r,s} with one-based order r >= 2; zero outside the stored range.
  cplx q(int r, int s) const {
    const auto& row = Q[static_cast<std::size_t>(s)];
    const int i = r - 2;
    return (i >= 0 && i < static_cast<int>(row.size())) ? row[static_cast<std::size_t>(i)] : cplx{};
  }
};

/// T_s = sum_{j>=2} x_j a_{js}: the radical part of zeta.
inline std::vector<cplx> t_coeffs(const SpanPoint& x, const SpanBasis& basis) {
  detail::check_point(x, basis);
  std::vector<cplx> T(static_cast<std::size_t>(basis.n()));
  for (int s = basis.m(); s < basis.n(); ++s) {
    cplx v{};
    for (int j = 1; j < basis.k(); ++j) v += x[static_cast<std::size_t>(j)] * basis.a(j, s);
    T[static_cast<std::size_t>(s)] = v;
  }
  return T;
}

/// B_{q,s} = sum_{p=m}^{s-1} T_p * (coefficient of I_s in I_q I_p).
inline std::vector<std::vector<cplx>> b_coeffs(const std::vector<cplx>& T, const AlgebraSpec& spec) {
  const int n = spec.n();
  const int m = spec.m();
  if (static_cast<int>(T.size()) != n) throw Error(ErrorCode::dimension_mismatch, "T table length must be n");
  std::vector<std::vector<cplx>> B(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(n)));
  for (int s = m + 1; s < n; ++s)
    for (int q = m; q < n; ++q) {
      cplx v{};
      for (int p = m; p < s; ++p) v += T[static_cast<std::size_t>(p)] * spec.structure_constant(q, p, s);
      B[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = v;
    }
  return B;
}

/// Q_{2,s} = T_s, Q_{r,s} = sum_q Q_{r-1,q} B_{q,s}; evaluated by increasing s, then r.
inline std::vector<std::vector<cplx>> q_coeffs(const std::vector<cplx>& T, const std::vector<std::vector<cplx>>& B,
                                               const AlgebraSpec& spec) {
  const int n = spec.n();
  const int m = spec.m();
  std::vector<std::vector<cplx>> Q(static_cast<std::size_t>(n));
  for (int s = m; s < n; ++s) {
    const int count = s - m + 1;  // r = 2..s-m+2 in zero-based s
    auto& row = Q[static_cast<std::size_t>(s)];
    row.assign(static_cast<std::size_t>(count), cplx{});
    row[0] = T[static_cast<std::size_t>(s)];
    for (int r = 3; r < count + 2; ++r) {
      cplx v{};
      for (int q = m; q < s; ++q) {
        // Q_{r-1,q} exists only for r - 1 <= q - m + 2; lower q contribute nothing.
        const auto& prev = Q[static_cast<std::size_t>(q)];
        const int i = r - 3;
        if (i < static_cast<int>(prev.size())) v += prev[static_cast<std::size_t>(i)] * B[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
      }
      row[static_cast<std::size_t>(r - 2)] = v;
    }
  }
  return Q;
}

inline ResolventCoeffs resolvent_coeffs(const SpanPoint& x, const SpanBasis& basis) {
  ResolventCoeffs c;
  c.T = t_coeffs(x, basis);
  c.B = b_coeffs(c.T, basis.algebra());
  c.Q = q_coeffs(c.T, c.B, basis.algebra());
  return c;
}

inline double pole_tolerance(cplx t) { return 1e-8 * (1.0 + std::abs(t)); }

/// Resolvent from precomputed spectrum and coefficients (no pole check).
inline Element resolvent_from(cplx t, const Spectrum& spec_pts, const ResolventCoeffs& c, const AlgebraSpec& spec) {
  Element out(static_cast<std::size_t>(spec.n()));
  for (int u = 0; u < spec.m(); ++u) out[static_cast<std::size_t>(u)] = 1.0 / (t - spec_pts.xi[static_cast<std::size_t>(u)]);
  for (int s = spec.m(); s < spec.n(); ++s) {
    const cplx w = 1.0 / (t - spec_pts.xi[static_cast<std::size_t>(spec.idempotent_of(s))]);
    cplx acc{};
    cplx wp = w;  // w^r, starting at r = 2
    const auto& row = c.Q[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < row.size(); ++i) {
      wp *= w;
      acc += row[i] * wp;
    }
    out[static_cast<std::size_t>(s)] = acc;
  }
  return out;
}

/// (t e_1 - zeta)^{-1} for complex scalar t away from the spectrum.
inline Element resolvent(cplx t, const SpanPoint& x, const SpanBasis& basis) {
  const Spectrum sp = spectrum(x, basis);
  for (int u = 0; u < basis.m(); ++u)
    if (std::abs(t - sp.xi[static_cast<std::size_t>(u)]) <= pole_tolerance(t))
      throw Error(ErrorCode::pole, "t coincides with spectrum point xi_" + std::to_string(u + 1), u);
  return resolvent_from(t, sp, resolvent_coeffs(x, basis), basis.algebra());
}

/// zeta^{-1} = sum_u I_u / xi_u - sum_s sum_r (-1)^r Q_{r,s} / xi_{u_s}^r I_s.
inline Element inverse(const SpanPoint& x, const SpanBasis& basis, double tol) {
  const Spectrum sp = spectrum(x, basis);
  for (int u = 0; u < basis.m(); ++u)
    if (std::abs(sp.xi[static_cast<std::size_t>(u)]) <= tol)
      throw Error(ErrorCode::singular, "point lies on M_" + std::to_string(u + 1) + " (xi_u = 0)", u);
  const ResolventCoeffs c = resolvent_coeffs(x, basis);
  const AlgebraSpec& spec = basis.algebra();
  Element out(static_cast<std::size_t>(spec.n()));
  for (int u = 0; u < spec.m(); ++u) out[static_cast<std::size_t>(u)] = 1.0 / sp.xi[static_cast<std::size_t>(u)];
  for (int s = spec.m(); s < spec.n(); ++s) {
    const cplx w = -1.0 / sp.xi[static_cast<std::size_t>(spec.idempotent_of(s))];
    cplx acc{};
    cplx wp = w;
    for (const cplx& q : c.Q[static_cast<std::size_t>(s)]) {
      wp *= w;
      acc += q * wp;
    }
    out[static_cast<std::size_t>(s)] = -acc;
  }
  return out;
}

inline Element inverse(const SpanPoint& x, const SpanBasis& basis) {
  return inverse(x, basis, default_invertibility_tol(x));
}

/// Matrix of w -> a w in the Cartan basis.
inline Eigen::MatrixXcd multiplication_matrix(const Element& a, const AlgebraSpec& spec) {
  const int n = spec.n();
  Eigen::MatrixXcd L(n, n);
  for (int j = 0; j < n; ++j) {
    const Element col = mul(a, basis_vector(spec, j), spec);
    for (int i = 0; i < n; ++i) L(i, j) = col[static_cast<std::size_t>(i)];
  }
  return L;
}

inline constexpr double kOracleRankThreshold = 1e-10;

/// Brute-force inverse: solves (multiplication by a) w = 1 with a full-pivot LU.
inline Element inverse_oracle(const Element& a, const AlgebraSpec& spec) {
  const Eigen::MatrixXcd L = multiplication_matrix(a, spec);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(L);
  lu.setThreshold(kOracleRankThreshold);
  if (!lu.isInvertible()) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(L).singularValues();
    const double cond = sv(sv.size() - 1) == 0.0 ? INFINITY : sv(0) / sv(sv.size() - 1);
    throw Error(ErrorCode::singular, "multiplication matrix is singular (condition estimate " + std::to_string(cond) + ")");
  }
  const Element one = unit(spec);
  Eigen::VectorXcd rhs(spec.n());
  for (int i = 0; i < spec.n(); ++i) rhs(i) = one[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd w = lu.solve(rhs);
  Element out(static_cast<std::size_t>(spec.n()));
  for (int i = 0; i < spec.n(); ++i) out[static_cast<std::size_t>(i)] = w(i);
  return out;
}

}  // namespace cartan
