#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsr/linear_operator.hpp"
#include "gsr/random.hpp"
#include "gsr/signal.hpp"

#include "oracle.hpp"

using namespace gsr;

TEST_CASE("inner product basics") {
  const Signal a = Signal::flat({1, 2, 3});
  CHECK(inner_product(a, a) == doctest::Approx(14.0));

  const Signal z = Signal::flat({0, 0, 0});
  CHECK(inner_product(a, z) == 0.0);

  const double s = 1.0 / std::sqrt(3.0);
  const Signal x = Signal::flat({1, 2, 0});
  const Signal y = Signal::flat({s, s, s});
  CHECK(inner_product(x, y) == doctest::Approx(std::sqrt(3.0)));

  CHECK(inner_product(a, Signal::flat({3, 2, 1})) ==
        inner_product(Signal::flat({3, 2, 1}), a));

  CHECK_THROWS_AS(inner_product(a, Signal::flat({1, 2})), dimension_error);
}

TEST_CASE("signal invariants") {
  CHECK_THROWS_AS(Signal({1, 2, 3}, Shape{2, 2}), dimension_error);
  CHECK_THROWS_AS(Signal::flat({1.0, std::nan("")}), numerical_error);
  CHECK_THROWS_AS(Signal::flat({1.0, HUGE_VAL}), numerical_error);
}

TEST_CASE("complement_apply") {
  const auto I = LinearOperator::identity(3);
  const auto Z = LinearOperator::zero(3);
  const Signal x = Signal::flat({1, 2, 3});

  CHECK(norm(complement_apply(I, x)) == 0.0);
  CHECK(distance(complement_apply(Z, x), x) == 0.0);

  // Coordinate projector keeping the first two entries of R^3.
  const LinearOperator P(
      [](const Signal& v) {
        Signal out = v;
        out[2] = 0.0;
        return out;
      },
      3, "P12");
  const Signal r = complement_apply(P, x);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == 3.0);
}

TEST_CASE("verify_projector") {
  SUBCASE("identity is exact") {
    const auto rep = verify_projector(LinearOperator::identity(8), 10, 42);
    CHECK(rep.max_idempotency_residual == 0.0);
    CHECK(rep.max_self_adjoint_residual == 0.0);
    CHECK(rep.probes == 10);
  }

  SUBCASE("coordinate projector") {
    const LinearOperator P(
        [](const Signal& v) {
          Signal out = v;
          for (std::size_t i = 3; i < out.size(); ++i) out[i] = 0.0;
          return out;
        },
        8, "P");
    const auto rep = verify_projector(P, 20, 7);
    CHECK(rep.max_idempotency_residual <= 1e-12);
    CHECK(rep.max_self_adjoint_residual <= 1e-12);
  }

  SUBCASE("shear map is flagged") {
    // [[1,1],[0,0]] is idempotent but not self-adjoint.
    const LinearOperator shear(
        [](const Signal& v) {
          return Signal::flat({v[0] + v[1], 0.0});
        },
        2, "shear");
    const auto rep = verify_projector(shear, 20, 3);
    CHECK(rep.max_self_adjoint_residual > 0.1);
  }

  CHECK_THROWS_AS(verify_projector(LinearOperator::identity(2), 0, 1),
                  config_error);
}

TEST_CASE("projector properties on random subspaces") {
  Rng rng(11);
  const auto [P_mat, Q] = oracle::random_projector(12, 5, rng);
  const auto P = oracle::from_matrix(P_mat, "P");

  auto rep = verify_projector(P, 20, 99);
  CHECK(rep.max_idempotency_residual <= 1e-10);
  CHECK(rep.max_self_adjoint_residual <= 1e-10);

  const auto Pc = complement(P);
  rep = verify_projector(Pc, 20, 100);
  CHECK(rep.max_idempotency_residual <= 1e-10);
  CHECK(rep.max_self_adjoint_residual <= 1e-10);

  // Pythagoras split.
  for (int trial = 0; trial < 20; ++trial) {
    const Signal x = rng.gaussian_signal(Shape{1, 12});
    const Signal px = P(x);
    const Signal cx = complement_apply(P, x);
    const double lhs = inner_product(x, x);
    const double rhs = inner_product(px, px) + inner_product(cx, cx);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("operator linearity probes") {
  Rng rng(5);
  const auto [P_mat, Q] = oracle::random_projector(10, 4, rng);
  const auto P = oracle::from_matrix(P_mat, "P");
  for (int trial = 0; trial < 10; ++trial) {
    const Signal x = rng.gaussian_signal(Shape{1, 10});
    const Signal y = rng.gaussian_signal(Shape{1, 10});
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    Signal combo = x;
    combo.scale(a).axpy(b, y);
    Signal expect = P(x);
    expect.scale(a).axpy(b, P(y));
    CHECK(distance(P(combo), expect) <= 1e-10 * (1.0 + norm(expect)));
  }
}
