#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavemem/ingham.hpp"

using namespace wavemem;

TEST_CASE("sine window transform identities") {
  const WindowSine w(7.0);
  // At u = 0 the windowed integral is 2T/pi.
  CHECK(std::abs(w.transform(cplx(0.0, 0.0)) - cplx(2.0 * 7.0 / PI, 0.0)) <
        1e-12);
  // Conjugate symmetry of the kernel modulus.
  const cplx u(1.3, 0.4);
  CHECK(std::abs(w.K(u)) == doctest::Approx(std::abs(w.K(std::conj(u)))));
  // Quadrature cross-check at generic complex arguments.
  for (cplx arg : {cplx(2.1, 0.0), cplx(0.7, 0.3), cplx(-3.2, -0.2)})
    CHECK(window_transform_identity_check(w, arg) < 1e-10);
  // Pole guard.
  CHECK_THROWS_AS(w.K(cplx(PI / 7.0, 0.0)), InvalidInput);
}

TEST_CASE("cosine window transform identities") {
  const WindowCosine w(7.0);
  // At u = 0: int_{-T}^{T} cos(pi t / 2T) = 4T/pi.
  CHECK(std::abs(w.transform(cplx(0.0, 0.0)) - cplx(4.0 * 7.0 / PI, 0.0)) <
        1e-12);
  for (cplx arg : {cplx(1.4, 0.0), cplx(0.4, 0.2), cplx(-2.6, -0.1)})
    CHECK(window_transform_identity_check(w, arg) < 1e-10);
  CHECK_THROWS_AS(w.K(cplx(PI / 14.0, 0.0)), InvalidInput);
}

TEST_CASE("kernel sum bounds hold for the default configuration") {
  ModelParams params;
  params.N = 16;
  const auto branches = solve_branches(params);
  const HypothesisReport hyp = validate_hypotheses(branches, params);
  const BoundReport rep =
      kernel_sum_bounds(branches, params.T, 0.1, hyp.gamma_hat);
  CHECK(rep.holds);
  CHECK(rep.n0_hat >= 1);
  CHECK(rep.margin1 > 0.0);
  CHECK(rep.margin2 > 0.0);
  // M below the admissible threshold is rejected.
  CHECK_THROWS_AS(kernel_sum_bounds(branches, params.T, 0.1, 0.5), InvalidInput);
  CHECK_THROWS_AS(kernel_sum_bounds(branches, params.T, 1.5, hyp.gamma_hat),
                  InvalidInput);
}

TEST_CASE("annihilator kills its target exponential exactly") {
  const double delta = 0.2;
  const cplx z(3.0, 0.1);
  const Annihilator op(delta, z);
  const cplx i(0.0, 1.0);
  ExpSum f = ExpSum::single(cplx(2.0, -1.0), i * z);
  CHECK(op.apply(f).empty());
  CHECK(op.factor(i * z) == cplx(0.0, 0.0));
}

TEST_CASE("annihilator matches its integral definition on generic sums") {
  const double delta = 0.17;
  const cplx z(2.0, -0.3);
  const Annihilator op(delta, z);
  ExpSum f;
  f.add_term(cplx(1.0, 0.5), cplx(-0.2, 4.0));
  f.add_term(cplx(0.3, -0.7), cplx(0.0, 0.0));  // constant term
  const ExpSum g = op.apply(f);
  const cplx i(0.0, 1.0);
  for (double t : {0.0, 1.1, 2.8}) {
    const cplx direct =
        f.evaluate(t) -
        gauss_integrate(
            [&](double s) { return f.evaluate(t + s) * std::exp(-i * z * s); },
            0.0, delta, 16) /
            delta;
    CHECK(std::abs(g.evaluate(t) - direct) < 1e-12);
  }
}

TEST_CASE("annihilators commute") {
  const Annihilator a(0.2, cplx(1.0, 0.0));
  const Annihilator b(0.3, cplx(-2.0, 0.5));
  ExpSum f;
  f.add_term(cplx(1.0, 1.0), cplx(-0.1, 2.0));
  f.add_term(cplx(0.5, -0.2), cplx(0.05, -3.0));
  const ExpSum ab = a.apply(b.apply(f));
  const ExpSum ba = b.apply(a.apply(f));
  for (double t : {0.4, 1.9})
    CHECK(std::abs(ab.evaluate(t) - ba.evaluate(t)) < 1e-13);
}

TEST_CASE("composed mode annihilator removes one mode, keeps the rest") {
  ModelParams params;
  params.N = 4;
  const auto branches = solve_branches(params);
  Rng rng(5);
  const InghamDraw draw = random_draw(branches, params, rng);
  const ExpSum u1 = build_u1(draw, branches);
  const double delta =
      select_delta(branches, 2, 0.1, 2.0 * PI, params.eta);
  const ComposedAnnihilator op(delta, branches[0].r, branches[0].omega,
                               branches[0].p);
  const ExpSum filtered = op.apply(u1);
  // Mode-1 exponents are gone.
  for (const cplx& mu : detail::u1_exponents({branches[0]}))
    CHECK(filtered.amplitude_at(mu) == cplx(0.0, 0.0));
  // Surviving terms carry exactly the product factor.
  const cplx i(0.0, 1.0);
  const cplx mu2 = i * branches[1].omega;
  const cplx expect = draw.C[1] * op.survival_factor(mu2);
  CHECK(std::abs(filtered.amplitude_at(mu2) - expect) < 1e-13 * std::abs(expect));
}

TEST_CASE("select_delta keeps every surviving factor away from zero") {
  ModelParams params;
  const auto branches = solve_branches(params);
  const int n0 = 4;
  const double delta = select_delta(branches, n0, 0.1, 2.0 * PI, params.eta);
  CHECK(delta > 0.0);
  const auto ops = mode_annihilators(branches, n0 - 1, delta);
  for (std::size_t k = static_cast<std::size_t>(n0 - 1); k < branches.size();
       ++k) {
    for (const cplx& mu : branches[k].roots()) {
      cplx prod = 1.0;
      for (const auto& op : ops) prod *= op.survival_factor(mu);
      CHECK(std::abs(prod) > 1e-12);
    }
  }
}

TEST_CASE("estimators are deterministic and ordered") {
  ModelParams params;
  const auto branches = solve_branches(params);
  const HypothesisReport hyp = validate_hypotheses(branches, params);
  const EstimateResult inv = estimate_inverse_constant(
      branches, params, 100, params.T, 321, hyp.gamma_hat);
  const EstimateResult inv2 = estimate_inverse_constant(
      branches, params, 100, params.T, 321, hyp.gamma_hat);
  CHECK(inv.value == inv2.value);
  CHECK(inv.ratios == inv2.ratios);
  CHECK(inv.value > 0.0);
  for (double r : inv.ratios) CHECK(r >= inv.value);

  const EstimateResult dir = estimate_direct_constant(
      branches, params, 100, params.T, 321, hyp.gamma_hat);
  CHECK(dir.value > 0.0);
  for (double r : dir.ratios) CHECK(r <= dir.value);
  // The sandwich: every observed inverse ratio sits below every direct-style
  // upper envelope value for the same ensemble.
  CHECK(inv.value < dir.value);

  CHECK_THROWS_AS(estimate_inverse_constant(branches, params, 50, params.T, 321,
                                            hyp.gamma_hat),
                  InvalidInput);
  CHECK_THROWS_AS(estimate_inverse_constant(branches, params, 100, 5.0, 321,
                                            hyp.gamma_hat),
                  InvalidInput);
}

TEST_CASE("finite-deficiency bounds on tail draws") {
  ModelParams params;
  params.N = 12;
  const auto branches = solve_branches(params);
  const HypothesisReport hyp = validate_hypotheses(branches, params);
  const int n0 = 3;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::stream(777, trial);
    InghamDraw draw = random_draw(branches, params, rng);
    for (int k = 0; k < n0 - 1; ++k) {
      const size_t i = static_cast<size_t>(k);
      draw.R[i] = 0.0;
      draw.C[i] = cplx(0.0, 0.0);
      draw.D[i] = cplx(0.0, 0.0);
    }
    draw.calD = compute_calD(draw.D, branches, params);
    const DeficiencyReport rep = finite_deficiency_inverse(
        branches, params, draw, n0, params.T, 0.1, hyp.gamma_hat, hyp.alpha_hat);
    CHECK(rep.m1 > 0.0);
    CHECK(rep.cpos_holds);
    CHECK(rep.bound_b_holds);
    CHECK(rep.bound_a_positive);
    CHECK(rep.bound_c_positive);
  }
}

TEST_CASE("finite-deficiency degenerate draws") {
  ModelParams params;
  params.N = 12;
  const auto branches = solve_branches(params);
  const HypothesisReport hyp = validate_hypotheses(branches, params);
  Rng rng(88);
  // D identically zero: second-component bounds are trivially tight at zero.
  InghamDraw d1 = random_draw(branches, params, rng);
  for (auto& v : d1.D) v = cplx(0.0, 0.0);
  d1.calD = compute_calD(d1.D, branches, params);
  CHECK(d1.calD == 0.0);
  const DeficiencyReport r1 = finite_deficiency_inverse(
      branches, params, d1, 1, params.T, 0.1, hyp.gamma_hat, hyp.alpha_hat);
  CHECK(r1.lhs_dsum < 1e-12);
  CHECK(r1.rhs_dsum < 1e-12);
  CHECK(r1.bound_b_holds);
  // C and R identically zero: bound (a) vacuous but still reported positive.
  InghamDraw d2 = random_draw(branches, params, rng);
  for (std::size_t k = 0; k < d2.C.size(); ++k) {
    d2.C[k] = cplx(0.0, 0.0);
    d2.R[k] = 0.0;
  }
  const DeficiencyReport r2 = finite_deficiency_inverse(
      branches, params, d2, 1, params.T, 0.1, hyp.gamma_hat, hyp.alpha_hat);
  CHECK(r2.c_sum < 1e-12);
  CHECK(r2.bound_a_positive);
}

TEST_CASE("finite-deficiency preconditions") {
  ModelParams params;
  params.N = 6;
  const auto branches = solve_branches(params);
  const HypothesisReport hyp = validate_hypotheses(branches, params);
  Rng rng(9);
  const InghamDraw draw = random_draw(branches, params, rng);
  // Nonzero low modes rejected for n0 = 2.
  CHECK_THROWS_AS(finite_deficiency_inverse(branches, params, draw, 2, params.T,
                                            0.1, hyp.gamma_hat, hyp.alpha_hat),
                  InvalidInput);
  // Time horizon below the threshold rejected.
  CHECK_THROWS_AS(finite_deficiency_inverse(branches, params, draw, 1, 5.0, 0.1,
                                            hyp.gamma_hat, hyp.alpha_hat),
                  InvalidInput);
}
