#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavemem/spectrum.hpp"

using namespace wavemem;

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.beta = p.eta;  // degenerate kernel, rejected upstream of any spectral work
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = ModelParams{};
  p.A = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  CHECK_NOTHROW(p.validate(/*decoupled_ok=*/true));
  p = ModelParams{};
  p.beta = 0.8;  // eta = 1 < 3 beta / 2
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(p.validate(false, /*reachability=*/true), InvalidInput);
}

TEST_CASE("quintic coefficients at n=1 with unit couplings") {
  ModelParams p;
  const QuinticCoeffs q = quintic_coeffs(p, 1);
  // lambda = 1: c4 = eta, c3 = 2, c2 = eta + (eta - beta), c1 = 1 - AB,
  // c0 = (eta - beta) - eta AB.
  CHECK(q.c[0] == doctest::Approx(1.0));
  CHECK(q.c[1] == doctest::Approx(2.0));
  CHECK(q.c[2] == doctest::Approx(1.5));
  CHECK(q.c[3] == doctest::Approx(1.0 - 0.01));
  CHECK(q.c[4] == doctest::Approx(0.5 - 0.01));
}

TEST_CASE("all residuals below 1e-9 for n = 1..64") {
  ModelParams p;
  p.N = 64;
  for (int n = 1; n <= p.N; ++n) {
    const SpectralBranch br = solve_branch(p, n);
    const QuinticCoeffs q = quintic_coeffs(p, n);
    for (const cplx& root : br.roots()) CHECK(q.relative_residual(root) < 1e-9);
  }
}

TEST_CASE("roots are closed under conjugation and pairwise distinct") {
  ModelParams p;
  const SpectralBranch br = solve_branch(p, 3);
  const auto roots = br.roots();
  CHECK(std::abs(roots[1] - std::conj(roots[2])) < 1e-12);
  CHECK(std::abs(roots[3] - std::conj(roots[4])) < 1e-12);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j)
      CHECK(std::abs(roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)]) > 1e-6);
  }
}

TEST_CASE("asymptotic predictions converge to computed roots") {
  ModelParams p;
  for (int n : {16, 32, 64}) {
    const SpectralBranch br = solve_branch(p, n);
    const auto pred = asymptotic_roots(p, n);
    // Real root: agreement improves like 1/lambda^2 beyond the included term.
    CHECK(std::abs(br.r - pred[0].real()) < 10.0 / std::pow(br.lambda, 2));
    CHECK(std::abs(cplx(0.0, 1.0) * br.omega - pred[1]) < 10.0 / br.lambda);
  }
}

TEST_CASE("lambda4 deviation magnitudes follow AB/(2 lambda^3)") {
  ModelParams p;
  for (int n : {4, 8, 16, 32, 64}) {
    const SpectralBranch br = solve_branch(p, n);
    const double scaled = std::pow(br.lambda, 3) * std::abs(br.dev4);
    CHECK(scaled > 0.004);
    CHECK(scaled < 0.006);
  }
}

TEST_CASE("decoupled limit gives p_n = lambda exactly") {
  ModelParams p;
  p.A = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const SpectralBranch br = solve_branch(p, n);
    CHECK(std::abs(br.p - cplx(p.lambda(n), 0.0)) < 1e-10 * p.lambda(n));
    CHECK(br.dev4 == cplx(0.0, 0.0));
  }
}

TEST_CASE("hypothesis report at default parameters") {
  ModelParams p;
  const auto branches = solve_branches(p);
  const HypothesisReport rep = validate_hypotheses(branches, p);
  CHECK(rep.all_pass);
  CHECK(rep.gaps_increasing);
  CHECK(rep.im_p_vanishing);
  CHECK(rep.gamma_hat > 0.9);   // wave gaps approach 1
  CHECK(rep.gamma_hat < 1.1);
  CHECK(rep.alpha_hat > 0.0);   // Im omega_n -> beta/2
  CHECK(rep.n_prime >= 1);
  CHECK(rep.distinct);
  CHECK(rep.a0_hat > 0.0);
  // T = 7 > 2 pi / gamma_hat, the sharp observability threshold.
  CHECK(p.T > 2.0 * PI / rep.gamma_hat);
}

TEST_CASE("hypothesis validation needs at least 4 modes") {
  ModelParams p;
  p.N = 2;
  const auto branches = solve_branches(p);
  CHECK_THROWS_AS(validate_hypotheses(branches, p), InvalidInput);
}

TEST_CASE("branch ordering |Im Lambda_2| < |Im Lambda_4|") {
  ModelParams p;
  p.N = 16;
  for (const SpectralBranch& br : solve_branches(p)) {
    CHECK(br.omega.real() > 0.0);
    CHECK(br.p.real() > 0.0);
    CHECK(br.omega.real() < br.p.real());
  }
}
