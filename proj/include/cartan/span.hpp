#pragma once

// Real linear span E_k = {x_1 e_1 + ... + x_k e_k : x_j real} inside A_n^m,
// with e_1 = 1 and e_j = sum_r a_{jr} I_r.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "cartan/algebra.hpp"

namespace cartan {

/// Real coordinates x_1..x_k of a point of E_k.
struct SpanPoint {
  std::vector<double> x;

  SpanPoint() = default;
  explicit SpanPoint(std::size_t k) : x(k) {}
  explicit SpanPoint(std::vector<double> v) : x(std::move(v)) {}
  SpanPoint(std::initializer_list<double> v) : x(v) {}

  std::size_t size() const { return x.size(); }
  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }

  friend SpanPoint operator+(SpanPoint a, const SpanPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.x[i] += b.x[i];
    return a;
  }
  friend SpanPoint operator-(SpanPoint a, const SpanPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.x[i] -= b.x[i];
    return a;
  }
  friend SpanPoint operator*(double c, SpanPoint a) {
    for (auto& v : a.x) v *= c;
    return a;
  }
  friend bool operator==(const SpanPoint&, const SpanPoint&) = default;
};

inline double euclidean_norm(const SpanPoint& p) {
  double s = 0.0;
  for (double v : p.x) s += v * v;
  return std::sqrt(s);
}

/// xi_1..xi_m, the values f_u(zeta).
struct Spectrum {
  std::vector<cplx> xi;
};

inline constexpr double kRankThreshold = 1e-10;

/// The vectors e_1 = 1, e_2, ..., e_k, stored as a k x n matrix of Cartan
/// coordinates. Construction checks row 1 and real-linear independence.
class SpanBasis {
 public:
  SpanBasis(AlgebraSpec spec, std::vector<std::vector<cplx>> rows) : spec_(std::move(spec)), rows_(std::move(rows)) {
    const int n = spec_.n();
    const int k = static_cast<int>(rows_.size());
    if (k < 2 || k > 2 * n)
      throw Error(ErrorCode::invalid_basis, "span dimension k must satisfy 2 <= k <= 2n");
    for (const auto& row : rows_)
      if (static_cast<int>(row.size()) != n)
        throw Error(ErrorCode::dimension_mismatch, "basis row length does not match algebra dimension");
    const Element one = unit(spec_);
    for (int r = 0; r < n; ++r)
      if (rows_[0][static_cast<std::size_t>(r)] != one[static_cast<std::size_t>(r)])
        throw Error(ErrorCode::invalid_basis, "first basis vector must be the unit");

    Eigen::MatrixXd real(2 * n, k);
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < n; ++r) {
        real(r, j) = rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)].real();
        real(n + r, j) = rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)].imag();
      }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real);
    const auto& sv = svd.singularValues();
    const double cutoff = kRankThreshold * std::max(1.0, sv(0));
    if (sv(k - 1) <= cutoff)
      throw Error(ErrorCode::invalid_basis, "basis vectors are not linearly independent over R");
  }

  const AlgebraSpec& algebra() const { return spec_; }
  int k() const { return static_cast<int>(rows_.size()); }
  int n() const { return spec_.n(); }
  int m() const { return spec_.m(); }

  /// a_{jr}, zero-based in both indices.
  cplx a(int j, int r) const { return rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]; }
  const std::vector<cplx>& row(int j) const { return rows_[static_cast<std::size_t>(j)]; }
  const std::vector<std::vector<cplx>>& rows() const { return rows_; }

 private:
  AlgebraSpec spec_;
  std::vector<std::vector<cplx>> rows_;
};

namespace detail {
inline void check_point(const SpanPoint& x, const SpanBasis& basis) {
  if (static_cast<int>(x.size()) != basis.k())
    throw Error(ErrorCode::dimension_mismatch, "span point length does not match k");
}
}  // namespace detail

/// zeta = sum_j x_j e_j.
inline Element embed(const SpanPoint& x, const SpanBasis& basis) {
  detail::check_point(x, basis);
  Element z(static_cast<std::size_t>(basis.n()));
  for (int j = 0; j < basis.k(); ++j)
    for (int r = 0; r < basis.n(); ++r) z[static_cast<std::size_t>(r)] += x[static_cast<std::size_t>(j)] * basis.a(j, r);
  return z;
}

/// xi_u = x_1 + sum_{j>=2} x_j a_{ju}.
inline Spectrum spectrum(const SpanPoint& x, const SpanBasis& basis) {
  detail::check_point(x, basis);
  Spectrum s;
  s.xi.resize(static_cast<std::size_t>(basis.m()));
  for (int u = 0; u < basis.m(); ++u) {
    cplx v = x[0];
    for (int j = 1; j < basis.k(); ++j) v += x[static_cast<std::size_t>(j)] * basis.a(j, u);
    s.xi[static_cast<std::size_t>(u)] = v;
  }
  return s;
}

/// Per idempotent: true iff f_u maps E_k onto C, i.e. some a_{ju} (j >= 2)
/// has a nonzero imaginary part.
inline std::vector<bool> check_span_condition(const SpanBasis& basis) {
  std::vector<bool> ok(static_cast<std::size_t>(basis.m()), false);
  for (int u = 0; u < basis.m(); ++u)
    for (int j = 1; j < basis.k(); ++j)
      if (basis.a(j, u).imag() != 0.0) ok[static_cast<std::size_t>(u)] = true;
  return ok;
}

namespace detail {
/// 2 x k real system whose kernel is M_u: Re xi_u = 0, Im xi_u = 0.
inline Eigen::MatrixXd spectrum_constraint(int u, const SpanBasis& basis) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, basis.k());
  c(0, 0) = 1.0;
  for (int j = 1; j < basis.k(); ++j) {
    c(0, j) = basis.a(j, u).real();
    c(1, j) = basis.a(j, u).imag();
  }
  return c;
}

inline void require_span_condition(int u, const SpanBasis& basis) {
  if (u < 0 || u >= basis.m()) throw Error(ErrorCode::invalid_argument, "idempotent index out of range", u);
  if (!check_span_condition(basis)[static_cast<std::size_t>(u)])
    throw Error(ErrorCode::span_condition, "f_u restricted to the span is not onto C", u);
}
}  // namespace detail

/// Real basis (k - 2 unit vectors) of M_u = {x : xi_u = 0}.
inline std::vector<SpanPoint> noninvertible_subspace(int u, const SpanBasis& basis) {
  detail::require_span_condition(u, basis);
  const int k = basis.k();
  const Eigen::MatrixXd c = detail::spectrum_constraint(u, basis);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  std::vector<SpanPoint> out;
  for (int col = 2; col < k; ++col) {
    Eigen::VectorXd v = svd.matrixV().col(col);
    v.normalize();
    for (int i = 0; i < k; ++i) {
      if (std::abs(v(i)) > 1e-14) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    SpanPoint p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = v(i) == 0.0 ? 0.0 : v(i);
    out.push_back(std::move(p));
  }
  return out;
}

/// Span directions d_tau, d_eta with f_u(d_tau) = 1 and f_u(d_eta) = i (minimum norm).
inline std::pair<SpanPoint, SpanPoint> spectral_plane(int u, const SpanBasis& basis) {
  detail::require_span_condition(u, basis);
  const Eigen::MatrixXd c = detail::spectrum_constraint(u, basis);
  const Eigen::MatrixXd pinv = c.completeOrthogonalDecomposition().pseudoInverse();
  auto column = [&](int i) {
    SpanPoint p(static_cast<std::size_t>(basis.k()));
    for (int j = 0; j < basis.k(); ++j) p[static_cast<std::size_t>(j)] = pinv(j, i);
    return p;
  };
  return {column(0), column(1)};
}

inline double default_invertibility_tol(const SpanPoint& x) { return 1e-10 * (euclidean_norm(x) + 1.0); }

inline bool is_invertible(const SpanPoint& x, const SpanBasis& basis, double tol) {
  for (const cplx& xi : spectrum(x, basis).xi)
    if (std::abs(xi) <= tol) return false;
  return true;
}

inline bool is_invertible(const SpanPoint& x, const SpanBasis& basis) {
  return is_invertible(x, basis, default_invertibility_tol(x));
}

}  // namespace cartan
