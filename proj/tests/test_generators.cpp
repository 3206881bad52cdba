#include <catch2/catch_amalgamated.hpp>

#include "chshlab/extraction.hpp"
#include "chshlab/generators.hpp"

using namespace chshlab;

TEST_CASE("canonical strategy", "[generators]") {
  const CHSHStrategy s = canonical_strategy();
  REQUIRE(s.dim_a() == 2);
  REQUIRE(s.dim_b() == 2);
  REQUIRE(bias(s) == Catch::Approx(2.0 * sqrt2()).margin(1e-12));
  REQUIRE(epsilon_deficit(s) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("rotated strategies", "[generators]") {
  SECTION("zero angles reproduce the canonical strategy") {
    const CHSHStrategy r = rotated_strategy(0.0, 0.0);
    const CHSHStrategy c = canonical_strategy();
    REQUIRE(max_abs_diff(r.a0().matrix(), c.a0().matrix()) < 1e-12);
    REQUIRE(max_abs_diff(r.b1().matrix(), c.b1().matrix()) < 1e-12);
    REQUIRE(max_abs_diff(r.psi(), c.psi()) == 0.0);
  }
  SECTION("conjugation preserves validity and continuity in theta") {
    for (double theta = 0.0; theta <= 0.2 + 1e-12; theta += 0.01) {
      const CHSHStrategy s = rotated_strategy(theta, theta);
      REQUIRE(s.a0().report().valid);
      REQUIRE(epsilon_deficit(s) <= 10.0 * theta * theta + 1e-12);
    }
  }
  SECTION("asymmetric angles open a genuine deficit") {
    // Misalignment delta between the parties costs 2 sqrt(2)(1 - cos delta).
    const double deficit = epsilon_deficit(rotated_strategy(0.05, -0.03));
    REQUIRE(deficit == Catch::Approx(2.0 * sqrt2() * (1.0 - std::cos(0.08))).margin(1e-12));
    REQUIRE(verify_theorem(rotated_strategy(0.05, -0.03)).all_satisfied());
  }
  SECTION("deficit shrinks monotonically to zero as theta does") {
    double previous = epsilon_deficit(rotated_strategy(0.2, 0.0));
    for (double theta = 0.19; theta >= -1e-12; theta -= 0.01) {
      const double current = epsilon_deficit(rotated_strategy(theta, 0.0));
      REQUIRE(current <= previous + 1e-12);
      previous = current;
    }
    REQUIRE(previous == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("random strategies", "[generators]") {
  SECTION("identical seeds give bit-identical strategies") {
    const auto s1 = random_strategy(3, 2, 99);
    const auto s2 = random_strategy(3, 2, 99);
    REQUIRE(max_abs_diff(s1.psi(), s2.psi()) == 0.0);
    for (auto accessor : {&CHSHStrategy::a0, &CHSHStrategy::a1})
      REQUIRE(max_abs_diff((s1.*accessor)().matrix(), (s2.*accessor)().matrix()) == 0.0);
    for (auto accessor : {&CHSHStrategy::b0, &CHSHStrategy::b1})
      REQUIRE(max_abs_diff((s1.*accessor)().matrix(), (s2.*accessor)().matrix()) == 0.0);
  }
  SECTION("every output validates") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto s = random_strategy(2 + seed % 3, 2 + (seed / 3) % 3, seed);
      REQUIRE(s.a0().report().valid);
      REQUIRE(s.a1().report().valid);
      REQUIRE(s.b0().report().valid);
      REQUIRE(s.b1().report().valid);
      REQUIRE(vec_norm(s.psi()) == Catch::Approx(1.0).margin(1e-10));
    }
  }
  SECTION("dims below 2 are rejected") {
    REQUIRE_THROWS_AS(random_strategy(1, 2, 0), std::invalid_argument);
  }
}

TEST_CASE("noisy strategies", "[generators]") {
  SECTION("zero magnitude reproduces the canonical strategy") {
    const auto s = noisy_strategy(5, 0.0);
    REQUIRE(max_abs_diff(s.a0().matrix(), pauli_z()) < 1e-10);
    REQUIRE(max_abs_diff(s.psi(), bell_state(BellKind::PhiPlus)) < 1e-12);
  }
  SECTION("outputs validate and are deterministic per seed") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s1 = noisy_strategy(seed, 0.2);
      const auto s2 = noisy_strategy(seed, 0.2);
      REQUIRE(s1.a0().report().valid);
      REQUIRE(max_abs_diff(s1.psi(), s2.psi()) == 0.0);
      REQUIRE(max_abs_diff(s1.b1().matrix(), s2.b1().matrix()) == 0.0);
    }
  }
}

TEST_CASE("degenerate strategies", "[generators]") {
  REQUIRE(bias(degenerate_strategy("psi-minus")) ==
          Catch::Approx(-2.0 * sqrt2()).margin(1e-12));
  REQUIRE(bias(degenerate_strategy("classical")) == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(bias(degenerate_strategy("bob-collapsed")) == Catch::Approx(2.0).margin(1e-12));
  REQUIRE_THROWS_AS(degenerate_strategy("nope"), std::invalid_argument);
}

TEST_CASE("see-saw at the canonical fixed point", "[generators]") {
  const SeesawTrace trace = seesaw_optimize(canonical_strategy());
  REQUIRE(trace.converged);
  REQUIRE(trace.iterations.size() == 2);  // start plus one confirming round
  for (double b : trace.iterations)
    REQUIRE(b == Catch::Approx(2.0 * sqrt2()).margin(1e-10));
}

TEST_CASE("see-saw reaches the quantum bound from random starts", "[generators]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SeesawTrace trace = seesaw_optimize(random_strategy(2, 2, seed), 50);
    INFO("seed " << seed);
    REQUIRE(trace.converged);
    REQUIRE(trace.iterations.back() >= 2.0 * sqrt2() - 1e-6);
    for (std::size_t i = 1; i < trace.iterations.size(); ++i)
      REQUIRE(trace.iterations[i] >= trace.iterations[i - 1] - 1e-12);
    REQUIRE(bias(trace.final) == Catch::Approx(trace.iterations.back()).margin(1e-12));
  }
}

TEST_CASE("see-saw from a classical deterministic strategy never regresses",
          "[generators]") {
  const SeesawTrace trace = seesaw_optimize(degenerate_strategy("classical"));
  REQUIRE(trace.iterations.front() == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(trace.iterations.back() >= 2.0 - 1e-12);
  for (std::size_t i = 1; i < trace.iterations.size(); ++i)
    REQUIRE(trace.iterations[i] >= trace.iterations[i - 1] - 1e-12);
}

TEST_CASE("see-saw trace is deterministic", "[generators]") {
  const SeesawTrace t1 = seesaw_optimize(random_strategy(2, 2, 12));
  const SeesawTrace t2 = seesaw_optimize(random_strategy(2, 2, 12));
  REQUIRE(t1.iterations == t2.iterations);
  REQUIRE(max_abs_diff(t1.final.psi(), t2.final.psi()) == 0.0);
}
