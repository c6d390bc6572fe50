#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavemem/hum.hpp"
#include "wavemem/quadrature.hpp"
#include "wavemem/sim.hpp"

using namespace wavemem;

TEST_CASE("zero final data produces zero traces") {
  ModelParams params;
  params.N = 2;
  const auto branches = solve_branches(params);
  const TracePair tp = adjoint_traces(FinalData(2), params, branches);
  CHECK(tp.w.empty());
  CHECK(tp.v.empty());
}

TEST_CASE("adjoint traces are real-valued") {
  ModelParams params;
  params.N = 3;
  const auto branches = solve_branches(params);
  FinalData data(3);
  data.alpha1[0] = 0.4;
  data.rho1[1] = -0.3;
  data.alpha2[2] = 0.2;
  data.rho2[0] = 0.1;
  const TracePair tp = adjoint_traces(data, params, branches);
  for (double t : {0.0, 2.5, 7.0}) {
    CHECK(std::abs(tp.w.evaluate(t).imag()) < 1e-10);
    CHECK(std::abs(tp.v.evaluate(t).imag()) < 1e-10);
  }
}

TEST_CASE("modified trace matches the quadrature convolution") {
  ModelParams params;
  params.N = 2;
  const auto branches = solve_branches(params);
  FinalData data(2);
  data.alpha1[0] = 1.0;
  data.rho2[1] = 0.5;
  const SynthesisResult syn = synthesize_solutions(
      [&] {
        FinalData rev = data;
        for (double& v : rev.rho1) v = -v;
        for (double& v : rev.rho2) v = -v;
        return rev;
      }(),
      branches, params.adjoint());
  const ExpSum z1x = syn.solution.u1_trace.time_reversed(params.T);
  const ExpSum z2x = syn.solution.u2_trace.time_reversed(params.T);
  const TracePair tp = adjoint_traces(data, params, branches);
  for (double t : {0.0, 3.0, 6.9}) {
    const cplx conv = gauss_integrate(
        [&](double s) {
          return std::exp(-params.eta * (s - t)) * z1x.evaluate(s);
        },
        t, params.T, 48);
    CHECK(std::abs(tp.w.evaluate(t) - (z1x.evaluate(t) - params.beta * conv)) <
          1e-9);
    CHECK(std::abs(tp.v.evaluate(t) - z2x.evaluate(t)) < 1e-11);
  }
}

TEST_CASE("gram matrix is symmetric and matches quadrature") {
  ModelParams params;
  params.N = 2;
  const auto branches = solve_branches(params);
  const GramSystem sys = assemble_gram(2, params.T, params, branches);
  CHECK(sys.G.rows() == 8);
  CHECK((sys.G - sys.G.transpose()).norm() == 0.0);
  CHECK(sys.min_eigenvalue > 0.0);
  CHECK(sys.max_eigenvalue >= sys.min_eigenvalue);
  // Diagonal entries are trace energies; cross-check two entries numerically.
  for (auto [a, b] : {std::pair{0, 0}, {3, 1}}) {
    const TracePair& ta = sys.basis[static_cast<size_t>(a)];
    const TracePair& tb = sys.basis[static_cast<size_t>(b)];
    const double quad = gauss_integrate(
                            [&](double t) {
                              return ta.w.evaluate_real(t) * tb.w.evaluate_real(t) +
                                     ta.v.evaluate_real(t) * tb.v.evaluate_real(t);
                            },
                            0.0, params.T, 96)
                            .real();
    CHECK(sys.G(a, b) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("controllability horizon is enforced") {
  ModelParams params;
  params.N = 2;
  const auto branches = solve_branches(params);
  CHECK_THROWS_AS(assemble_gram(2, 5.0, params, branches), InvalidInput);
  CHECK_THROWS_AS(assemble_gram(3, params.T, params, branches), InvalidInput);
}

TEST_CASE("rhs pairing signs") {
  FinalData target(2);
  target.alpha1[0] = 2.0;  // position target pairs with the rho1 slot
  target.rho1[0] = 3.0;    // velocity target pairs with the alpha1 slot
  const Eigen::VectorXd b = rhs_vector(target, 2);
  CHECK(b(0) == doctest::Approx(-(PI / 2.0) * 3.0));
  CHECK(b(1) == doctest::Approx((PI / 2.0) * 2.0));
  for (int k = 2; k < 8; ++k) CHECK(b(k) == 0.0);
}

TEST_CASE("zero target yields zero controls") {
  ModelParams params;
  params.N = 2;
  const auto branches = solve_branches(params);
  const Controls ctl = hum_controls(FinalData(2), params, branches);
  CHECK(ctl.g1_norm_sq == 0.0);
  CHECK(ctl.g2_norm_sq == 0.0);
}

TEST_CASE("lift coefficients match quadrature") {
  const LiftCoeffs lc = lift_controls(4);
  for (int n = 1; n <= 4; ++n) {
    const double q1 = gauss_integrate(
                          [&](double x) {
                            return 2.0 / PI * (x / PI) * std::sin(n * x);
                          },
                          0.0, PI, 16)
                          .real();
    const double q2 =
        gauss_integrate(
            [&](double x) {
              return 2.0 / PI * (x * x * x - PI * PI * x) / (6.0 * PI) *
                     std::sin(n * x);
            },
            0.0, PI, 16)
            .real();
    CHECK(lc.q1[static_cast<size_t>(n - 1)] == doctest::Approx(q1).epsilon(1e-10));
    CHECK(lc.q2[static_cast<size_t>(n - 1)] == doctest::Approx(q2).epsilon(1e-10));
  }
}

TEST_CASE("zero controls keep the state at rest") {
  ModelParams params;
  const SimResult sim = run_to_T(ExpSum(), ExpSum(), params, 4, params.T / 700.0);
  for (double v : sim.u1) CHECK(v == 0.0);
  for (double v : sim.u2) CHECK(v == 0.0);
}

TEST_CASE("dt must divide the horizon") {
  ModelParams params;
  CHECK_THROWS_AS(run_to_T(ExpSum(), ExpSum(), params, 2, 0.003), InvalidInput);
}

TEST_CASE("uncontrolled integration converges at fourth order") {
  ModelParams params;
  FinalData init(1);
  init.alpha1[0] = 1.0;
  init.rho1[0] = -0.5;
  init.alpha2[0] = 0.3;
  init.rho2[0] = 0.2;
  const auto branches = solve_branches(params);
  const SynthesisResult syn = synthesize_solutions(init, branches, params);
  const double t_end = 2.0;
  const double exact = syn.solution.f1[0].evaluate_real(t_end);
  std::vector<double> errs;
  for (int steps : {50, 100, 200}) {
    const SimResult sim =
        run_uncontrolled(init, params, t_end, t_end / steps);
    errs.push_back(std::abs(sim.u1[0] - exact));
  }
  const double slope1 = std::log2(errs[0] / errs[1]);
  const double slope2 = std::log2(errs[1] / errs[2]);
  CHECK(slope1 > 3.7);
  CHECK(slope1 < 4.3);
  CHECK(slope2 > 3.7);
  CHECK(slope2 < 4.3);
}

TEST_CASE("memory variable tracks the exponential convolution") {
  ModelParams params;
  FinalData init(2);
  init.alpha1[0] = 0.7;
  init.rho1[1] = 0.4;
  init.alpha2[0] = -0.2;
  const auto branches = solve_branches(params);
  const SynthesisResult syn = synthesize_solutions(init, branches, params);
  const double t_end = 3.0;
  const SimResult sim =
      run_uncontrolled(init, params, t_end, t_end / 6000.0, 600);
  for (std::size_t j = 0; j < sim.sample_times.size(); ++j) {
    const double t = sim.sample_times[j];
    for (int k = 0; k < 2; ++k) {
      const cplx mem =
          syn.solution.f1[static_cast<size_t>(k)].forward_memory(params.eta)
              .evaluate(t);
      CHECK(std::abs(sim.sample_m[j][static_cast<size_t>(k)] - mem) < 1e-7);
    }
  }
}

TEST_CASE("uncontrolled final state matches the analytic synthesis") {
  ModelParams params;
  FinalData init(3);
  init.alpha1 = {0.5, -0.2, 0.1};
  init.rho1 = {0.1, 0.3, -0.1};
  init.alpha2 = {-0.3, 0.2, 0.05};
  init.rho2 = {0.2, -0.1, 0.15};
  const auto branches = solve_branches(params);
  const SynthesisResult syn = synthesize_solutions(init, branches, params);
  const double t_end = 4.0;
  const SimResult sim = run_uncontrolled(init, params, t_end, t_end / 8000.0);
  for (int k = 0; k < 3; ++k) {
    const size_t i = static_cast<size_t>(k);
    CHECK(std::abs(sim.u1[i] - syn.solution.f1[i].evaluate_real(t_end)) < 1e-6);
    CHECK(std::abs(sim.u2[i] - syn.solution.f2[i].evaluate_real(t_end)) < 1e-6);
  }
}

TEST_CASE("forward map is linear in the controls") {
  ModelParams params;
  const double dt = params.T / 1400.0;
  const ExpSum ga = ExpSum::single(cplx(0.3, 0.0), cplx(0.0, 1.0)) +
                    ExpSum::single(cplx(0.3, 0.0), cplx(0.0, -1.0));
  const ExpSum gb = ExpSum::single(cplx(0.0, -0.2), cplx(0.0, 2.0)) +
                    ExpSum::single(cplx(0.0, 0.2), cplx(0.0, -2.0));
  const SimResult sa = run_to_T(ga, ExpSum(), params, 3, dt);
  const SimResult sb = run_to_T(ExpSum(), gb, params, 3, dt);
  const SimResult sab = run_to_T(ga, gb, params, 3, dt);
  for (int k = 0; k < 3; ++k) {
    const size_t i = static_cast<size_t>(k);
    CHECK(std::abs(sab.u1[i] - sa.u1[i] - sb.u1[i]) < 1e-9);
    CHECK(std::abs(sab.u2[i] - sa.u2[i] - sb.u2[i]) < 1e-9);
  }
}

TEST_CASE("small HUM round trip steers to the target") {
  ModelParams params;
  params.N = 4;
  const auto branches = solve_branches(params);
  FinalData target(2);
  target.alpha1 = {0.3, -0.1};
  target.rho1 = {0.1, 0.2};
  target.alpha2 = {-0.2, 0.1};
  target.rho2 = {0.05, -0.1};
  const Controls ctl = hum_controls(target, params, branches);
  CHECK(ctl.g1_norm_sq > 0.0);
  const SimResult sim = run_to_T(ctl.g1, ctl.g2, params, 4, params.T / 10000.0);
  const ErrorReport rep = error_report(sim, target);
  CHECK(rep.combined < 1e-3);
  CHECK(rep.err_u1 < 1e-2);
  CHECK(rep.err_u2 < 1e-2);
  CHECK(rep.spillover_relative >= 0.0);
  CHECK(std::isfinite(rep.spillover));
}

TEST_CASE("error report requires enough simulated modes") {
  ModelParams params;
  const SimResult sim = run_to_T(ExpSum(), ExpSum(), params, 2, params.T / 700.0);
  CHECK_THROWS_AS(error_report(sim, FinalData(4)), InvalidInput);
}
