#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace cartan;
using namespace cartan::testing;

namespace {

const cplx I{0.0, 1.0};

SpanBasis dual_basis() { return SpanBasis(dual_algebra(), {{1.0, 0.0}, {I, 1.0}}); }
SpanBasis n4_basis() { return SpanBasis(n4_algebra(), {{1.0, 0.0, 0.0, 0.0}, {I, 1.0, 1.0, 1.0}}); }

cplx random_t_away(const Spectrum& sp, Rng& rng, double min_gap) {
  while (true) {
    const cplx t{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    bool ok = true;
    for (const cplx& xi : sp.xi) ok = ok && std::abs(t - xi) >= min_gap;
    if (ok) return t;
  }
}

}  // namespace

TEST_CASE("t_coeffs examples") {
  CHECK(t_coeffs({2.0, 3.0}, dual_basis())[1] == cplx(3.0));
  for (const cplx& v : t_coeffs({2.5, 0.0}, dual_basis())) CHECK(v == cplx(0.0));
  const auto T = t_coeffs({0.0, 1.0}, n4_basis());
  CHECK(T[1] == cplx(1.0));
  CHECK(T[2] == cplx(1.0));
  CHECK(T[3] == cplx(1.0));
}

TEST_CASE("b_coeffs and q_coeffs on N4 match the expanded products") {
  Rng rng(3);
  const AlgebraSpec n4 = n4_algebra();
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<cplx> T{0.0, random_disc(rng), random_disc(rng), random_disc(rng)};
    const auto B = b_coeffs(T, n4);
    CHECK(B[1][2] == T[1]);  // B_{2,3} = T_2
    CHECK(B[1][3] == T[2]);  // B_{2,4} = T_3
    CHECK(B[2][3] == T[1]);  // B_{3,4} = T_2
    ResolventCoeffs c{T, B, q_coeffs(T, B, n4)};
    CHECK(std::abs(c.q(3, 2) - T[1] * T[1]) < 1e-15);
    CHECK(std::abs(c.q(3, 3) - 2.0 * T[1] * T[2]) < 1e-15);
    CHECK(std::abs(c.q(4, 3) - T[1] * T[1] * T[1]) < 1e-15);
    for (int s = 1; s < 4; ++s) CHECK(c.q(2, s) == T[static_cast<std::size_t>(s)]);
  }
  const std::vector<cplx> zero(4);
  const auto B = b_coeffs(zero, n4);
  for (const auto& row : B)
    for (const auto& v : row) CHECK(v == cplx(0.0));
  for (const auto& row : q_coeffs(zero, B, n4))
    for (const auto& v : row) CHECK(v == cplx(0.0));
}

TEST_CASE("dual numbers: empty B table, Q_{2,2} = T_2 only") {
  const auto c = resolvent_coeffs({2.0, 3.0}, dual_basis());
  for (const auto& row : c.B)
    for (const auto& v : row) CHECK(v == cplx(0.0));
  REQUIRE(c.Q[1].size() == 1);
  CHECK(c.Q[1][0] == cplx(3.0));
}

TEST_CASE("Q recurrence matches the Neumann-series oracle") {
  Rng rng(41);
  const std::vector<AlgebraSpec> algebras{n4_algebra(), random_n6_algebra(2024), AlgebraSpec(random_power_algebra(rng, {3, 1, 2}))};
  for (const auto& spec : algebras) {
    for (int trial = 0; trial < 25; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 3);
      const SpanBasis b = random_basis(spec, k, rng);
      const SpanPoint x = random_point(static_cast<std::size_t>(k), rng);
      const auto c = resolvent_coeffs(x, b);
      const auto oracle = neumann_q(x, b);
      for (int s = spec.m(); s < spec.n(); ++s) {
        REQUIRE(c.Q[static_cast<std::size_t>(s)].size() == oracle[static_cast<std::size_t>(s)].size());
        for (std::size_t i = 0; i < oracle[static_cast<std::size_t>(s)].size(); ++i)
          CHECK(std::abs(c.Q[static_cast<std::size_t>(s)][i] - oracle[static_cast<std::size_t>(s)][i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("resolvent examples") {
  const SpanBasis b = dual_basis();
  const Element r = resolvent(0.0, {2.0, 3.0}, b);
  const cplx xi{2, 3};
  CHECK(std::abs(r[0] + 1.0 / xi) < 1e-15);
  CHECK(std::abs(r[1] - 3.0 / (xi * xi)) < 1e-15);
  // cross-check: (0 - zeta)^{-1} by linear solve
  const Element oracle = inverse_oracle(-1.0 * embed({2.0, 3.0}, b), b.algebra());
  CHECK(norm(r - oracle) < 1e-14);

  // nilpotent-free point
  const Element diag = resolvent(cplx(1, 1), {0.7, 0.0}, b);
  CHECK(diag[0] == 1.0 / (cplx(1, 1) - 0.7));
  CHECK(diag[1] == cplx(0.0));
}

TEST_CASE("resolvent pole error names the idempotent") {
  const SpanBasis b = SpanBasis(cc_algebra(), {{1.0, 1.0}, {I, -I}});
  try {
    resolvent(cplx(0, -1), {0.0, 1.0}, b);
    FAIL("expected a pole error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::pole);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("resolvent identity on random inputs") {
  Rng rng(77);
  const std::vector<AlgebraSpec> algebras{dual_algebra(), cc_algebra(), n4_algebra(), random_n6_algebra(2024)};
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraSpec& spec = algebras[static_cast<std::size_t>(trial) % algebras.size()];
    const int k = 2 + static_cast<int>(rng() % static_cast<unsigned>(2 * spec.n() - 1));
    const SpanBasis b = random_basis(spec, k, rng);
    const SpanPoint x = random_point(static_cast<std::size_t>(k), rng);
    const cplx t = random_t_away(spectrum(x, b), rng, 0.1);
    const Element lhs = mul(t * unit(spec) - embed(x, b), resolvent(t, x, b), spec);
    CHECK(norm(lhs - unit(spec)) <= 1e-10);
  }
}

TEST_CASE("resolvent coordinate at I_s has a single pole of order at most s - m + 1") {
  Rng rng(91);
  const AlgebraSpec spec = random_n6_algebra(2024);
  const SpanBasis b = random_basis(spec, 3, rng);
  const SpanPoint x = random_point(3, rng);
  const Spectrum sp = spectrum(x, b);
  for (int s = spec.m(); s < spec.n(); ++s) {
    const int order = s - spec.m() + 2;  // s - m + 1 in one-based s
    const cplx xi = sp.xi[static_cast<std::size_t>(spec.idempotent_of(s))];
    // (t - xi)^order R_s(t) must be a polynomial of degree < order: fit it on a circle.
    const int samples = order + 4;
    Eigen::MatrixXcd V(samples, order);
    Eigen::VectorXcd y(samples);
    for (int i = 0; i < samples; ++i) {
      const cplx t = xi + std::polar(0.5, 2.0 * 3.141592653589793 * i / samples);
      y(i) = std::pow(t - xi, order) * resolvent(t, x, b)[static_cast<std::size_t>(s)];
      for (int p = 0; p < order; ++p) V(i, p) = std::pow(t - xi, p);
    }
    const Eigen::VectorXcd coef = V.colPivHouseholderQr().solve(y);
    CHECK((V * coef - y).norm() <= 1e-10 * (1.0 + y.norm()));
  }
}

TEST_CASE("inverse examples") {
  const SpanBasis b = dual_basis();
  const Element inv = inverse({0.0, 1.0}, b);
  CHECK(std::abs(inv[0] - (-I)) < 1e-15);
  CHECK(std::abs(inv[1] - 1.0) < 1e-15);
  CHECK(inverse({1.0, 0.0}, b) == unit(b.algebra()));
  try {
    inverse({0.0, 0.0}, b);
    FAIL("expected singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("inverse_oracle examples") {
  const AlgebraSpec d = dual_algebra();
  CHECK(norm(inverse_oracle(unit(d), d) - unit(d)) < 1e-15);
  CHECK_THROWS_AS(inverse_oracle(basis_vector(d, 1), d), Error);
}

TEST_CASE("inverse formula agrees with the oracle") {
  Rng rng(101);
  const std::vector<AlgebraSpec> algebras{dual_algebra(), cc_algebra(), n4_algebra(), random_n6_algebra(2024)};
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraSpec& spec = algebras[static_cast<std::size_t>(trial) % algebras.size()];
    const int k = 2 + static_cast<int>(rng() % 3);
    const SpanBasis b = random_basis(spec, k, rng);
    const SpanPoint x = random_point(static_cast<std::size_t>(k), rng);
    const Element inv = inverse(x, b);
    CHECK(norm(mul(embed(x, b), inv, spec) - unit(spec)) <= 1e-10 * std::max(1.0, norm(inv)));
    CHECK(norm(inv - inverse_oracle(embed(x, b), spec)) <= 1e-10 * std::max(1.0, norm(inv)));
  }
}
