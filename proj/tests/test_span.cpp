#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace cartan;
using namespace cartan::testing;

namespace {

const cplx I{0.0, 1.0};

SpanBasis dual_basis(cplx a21 = I) { return SpanBasis(dual_algebra(), {{1.0, 0.0}, {a21, 1.0}}); }

SpanBasis cc_basis3() { return SpanBasis(cc_algebra(), {{1.0, 1.0}, {I, I}, {1.0, 2.0}}); }

}  // namespace

TEST_CASE("SpanBasis construction checks") {
  const AlgebraSpec d = dual_algebra();
  CHECK_THROWS_AS(SpanBasis(d, {{1.0, 0.0}}), Error);                           // k < 2
  CHECK_THROWS_AS(SpanBasis(d, {{1.0, 1.0}, {I, 1.0}}), Error);                 // row 1 is not the unit
  CHECK_THROWS_AS(SpanBasis(d, {{1.0, 0.0}, {2.0, 0.0}}), Error);               // dependent over R
  CHECK_THROWS_AS(SpanBasis(d, {{1.0, 0.0}, {I, 1.0}, {I, 2.0}, {0.0, I}, {1.0, 1.0}}), Error);  // k > 2n
  CHECK_NOTHROW(SpanBasis(d, {{1.0, 0.0}, {I, 0.0}, {0.0, 1.0}, {0.0, I}}));   // k = 2n
}

TEST_CASE("embed examples") {
  const SpanBasis b = dual_basis();
  CHECK(embed({1.0, 0.0}, b) == unit(b.algebra()));
  CHECK(embed({0.0, 1.0}, b) == Element({I, 1.0}));
  CHECK(embed({2.0, 3.0}, b) == Element({cplx(2, 3), 3.0}));
  CHECK_THROWS_AS(embed({1.0}, b), Error);
}

TEST_CASE("spectrum examples") {
  const SpanBasis b = dual_basis();
  CHECK(spectrum({2.0, 3.0}, b).xi[0] == cplx(2, 3));
  CHECK(spectrum({0.0, 0.0}, b).xi[0] == cplx(0.0));
}

TEST_CASE("span condition") {
  CHECK(check_span_condition(dual_basis()) == std::vector<bool>{true});
  CHECK(check_span_condition(dual_basis(1.0)) == std::vector<bool>{false});
  CHECK(check_span_condition(SpanBasis(cc_algebra(), {{1.0, 1.0}, {I, I}})) == std::vector<bool>{true, true});
  CHECK(check_span_condition(SpanBasis(cc_algebra(), {{1.0, 1.0}, {I, 2.0}})) == std::vector<bool>{true, false});
}

TEST_CASE("noninvertible subspace examples") {
  CHECK(noninvertible_subspace(0, dual_basis()).empty());

  // x_1 + x_3 = 0, x_2 = 0  =>  (1, 0, -1) / sqrt 2
  const auto m1 = noninvertible_subspace(0, cc_basis3());
  REQUIRE(m1.size() == 1);
  CHECK(std::abs(m1[0][0] - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(m1[0][1]) < 1e-14);
  CHECK(std::abs(m1[0][2] + 1.0 / std::sqrt(2.0)) < 1e-14);

  CHECK_THROWS_AS(noninvertible_subspace(0, dual_basis(1.0)), Error);
  try {
    noninvertible_subspace(0, dual_basis(1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::span_condition);
  }
}

TEST_CASE("is_invertible examples") {
  const SpanBasis b = dual_basis();
  CHECK(is_invertible({1.0, 0.0}, b));
  CHECK(is_invertible({0.0, 1.0}, b));
  CHECK_FALSE(is_invertible({0.0, 0.0}, b));
  const SpanBasis c = cc_basis3();
  const auto m1 = noninvertible_subspace(0, c);
  CHECK_FALSE(is_invertible(3.0 * m1[0], c));
}

TEST_CASE("span properties on random bases") {
  Rng rng(17);
  const std::vector<AlgebraSpec> algebras{dual_algebra(), cc_algebra(), n4_algebra(), random_n6_algebra(2024)};
  for (const auto& spec : algebras) {
    for (int k = 2; k <= std::min(2 * spec.n(), 5); ++k) {
      const SpanBasis b = random_basis(spec, k, rng);
      for (int trial = 0; trial < 100; ++trial) {
        const SpanPoint x = random_point(static_cast<std::size_t>(k), rng), y = random_point(static_cast<std::size_t>(k), rng);
        const double alpha = uniform(rng, -2, 2), beta = uniform(rng, -2, 2);
        CHECK(norm(embed(alpha * x + beta * y, b) - (alpha * embed(x, b) + beta * embed(y, b))) <= 1e-14);
        const Spectrum sp = spectrum(x, b);
        for (int u = 0; u < spec.m(); ++u)
          CHECK(std::abs(sp.xi[static_cast<std::size_t>(u)] - functional(embed(x, b), u, spec)) <= 1e-14);
      }
      for (int u = 0; u < spec.m(); ++u) {
        const auto mu = noninvertible_subspace(u, b);
        CHECK(static_cast<int>(mu.size()) == k - 2);
        for (const auto& d : mu) {
          CHECK(std::abs(euclidean_norm(d) - 1.0) < 1e-14);
          CHECK(std::abs(spectrum(d, b).xi[static_cast<std::size_t>(u)]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("is_invertible agrees with the linear-solve oracle") {
  Rng rng(23);
  const std::vector<AlgebraSpec> algebras{dual_algebra(), cc_algebra(), n4_algebra(), random_n6_algebra(2024)};
  int random_points = 0, constructed = 0;
  for (const auto& spec : algebras) {
    const SpanBasis b = random_basis(spec, 3, rng);
    auto oracle_ok = [&](const SpanPoint& x) {
      try {
        inverse_oracle(embed(x, b), spec);
        return true;
      } catch (const Error&) {
        return false;
      }
    };
    for (int t = 0; t < 50; ++t, ++random_points) {
      const SpanPoint x = random_point(3, rng);
      CHECK(oracle_ok(x) == is_invertible(x, b));
    }
    for (int t = 0; t < 5; ++t, ++constructed) {
      const int u = static_cast<int>(rng() % static_cast<unsigned>(spec.m()));
      const SpanPoint x = uniform(rng, -1, 1) * noninvertible_subspace(u, b)[0];
      CHECK_FALSE(is_invertible(x, b));
      CHECK_FALSE(oracle_ok(x));
    }
  }
  CHECK(random_points == 200);
  CHECK(constructed == 20);
}
