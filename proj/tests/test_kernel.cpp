#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavemem/kernel.hpp"

using namespace wavemem;

TEST_CASE("kernel construction enforces 0 <= beta < eta") {
  CHECK_NOTHROW(ExpKernel(0.5, 1.0));
  CHECK_NOTHROW(ExpKernel(0.0, 1.0));  // degenerate no-memory limit
  CHECK_THROWS_AS(ExpKernel(1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(ExpKernel(1.5, 1.0), InvalidInput);
  CHECK_THROWS_AS(ExpKernel(-0.1, 1.0), InvalidInput);
  CHECK_THROWS_AS(ExpKernel(0.5, 0.0), InvalidInput);
}

TEST_CASE("resolvent kernel solves rho - k*rho = k") {
  const ExpKernel k(0.5, 1.0);
  const ResolventKernel rho = resolvent_kernel(k);
  CHECK(rho.amplitude == 0.5);
  CHECK(rho.rate == -0.5);
  CHECK(resolvent_identity_residual(k, 7.0) < 1e-10);
}

TEST_CASE("resolvent identity residual across parameter draws") {
  for (auto [b, e] : {std::pair{0.1, 0.3}, {0.9, 1.0}, {0.25, 2.0}}) {
    CHECK(resolvent_identity_residual(ExpKernel(b, e), 5.0, 8001) < 1e-10);
  }
}

TEST_CASE("backward Volterra solve inverts the backward map") {
  const ExpKernel k(0.5, 1.0);
  const double T = 7.0;
  const std::size_t n = 4001;
  const double h = T / static_cast<double>(n - 1);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::stream(99, static_cast<std::uint64_t>(trial));
    std::vector<double> vals(n, 0.0);
    for (int j = 1; j <= 4; ++j) {
      const double cs = rng.normal(), cc = rng.normal();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = h * static_cast<double>(i);
        vals[i] += cs * std::sin(PI * j * t / T) + cc * std::cos(PI * j * t / T);
      }
    }
    const SampledFunction psi(0.0, h, vals);
    const SampledFunction phi = solve_backward_volterra(psi, k);
    const SampledFunction back = apply_backward_map(phi, k);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(back.values[i] - psi.values[i]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("backward map of a constant matches the closed form") {
  const ExpKernel k(0.5, 1.0);
  const double T = 4.0;
  const std::size_t n = 4001;
  const double h = T / static_cast<double>(n - 1);
  const SampledFunction phi(0.0, h, std::vector<double>(n, 1.0));
  const SampledFunction psi = apply_backward_map(phi, k);
  for (std::size_t i = 0; i < n; i += 400) {
    const double t = phi.time(i);
    const double expect =
        1.0 - k.beta / k.eta * (1.0 - std::exp(-k.eta * (T - t)));
    CHECK(std::abs(psi.values[i] - expect) < 1e-10);
  }
}

TEST_CASE("norm equivalence constants are a positive bounded interval") {
  const ExpKernel k(0.5, 1.0);
  const NormEquivalence ne = norm_equivalence_constants(k, 7.0, 50, 1234);
  CHECK(ne.c1_hat > 0.0);
  CHECK(ne.c2_hat >= ne.c1_hat);
  CHECK(std::isfinite(ne.c2_hat));
  // Deterministic under the same seed.
  const NormEquivalence ne2 = norm_equivalence_constants(k, 7.0, 50, 1234);
  CHECK(ne.c1_hat == ne2.c1_hat);
  CHECK(ne.c2_hat == ne2.c2_hat);
}

TEST_CASE("zero kernel leaves the norm untouched") {
  const ExpKernel k(0.0, 1.0);
  const NormEquivalence ne = norm_equivalence_constants(k, 7.0, 10, 5);
  CHECK(std::abs(ne.c1_hat - 1.0) < 1e-12);
  CHECK(std::abs(ne.c2_hat - 1.0) < 1e-12);
}

TEST_CASE("sampled function validation") {
  CHECK_THROWS_AS(SampledFunction(0.0, 0.1, {1.0}), InvalidInput);
  CHECK_THROWS_AS(SampledFunction(0.0, -0.1, {1.0, 2.0}), InvalidInput);
}
