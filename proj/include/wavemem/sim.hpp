#pragma once

// Spectral-Galerkin forward integration of the controlled system with
// boundary lifting and an auxiliary memory variable per mode.
//
// Lifting:  u1 = v1 + (x/pi) g1(t),  u2 = v2 + ((x^3 - pi^2 x)/(6 pi)) g2(t),
// which homogenizes the boundary data (the beam lifting satisfies
// l2(0) = l2''(0) = l2(pi) = 0, l2''(pi) = g2).  Per mode n (lambda = n^2):
//   a'' = -lambda a + lambda beta m - A b - q1 g1'' - A q2 g2,
//   m'  = -eta m + a,
//   b'' = -lambda^2 b - B a - q2 g2'' - B q1 g1,
// where q1, q2 are the sine coefficients of the lifting shapes.  Null initial
// data for u requires a(0) = -q1 g1(0), a'(0) = -q1 g1'(0) and likewise for b
// (the modal variables describe v = u - lifting).

#include <cmath>
#include <vector>

#include "wavemem/common.hpp"
#include "wavemem/expsum.hpp"
#include "wavemem/modal.hpp"
#include "wavemem/spectrum.hpp"

namespace wavemem {

struct LiftCoeffs {
  std::vector<double> q1;  // sine coefficients of x/pi
  std::vector<double> q2;  // sine coefficients of (x^3 - pi^2 x)/(6 pi)
};

// (2/pi) int_0^pi (x/pi) sin(nx) dx = 2 (-1)^{n+1} / (n pi);
// (2/pi) int_0^pi ((x^3 - pi^2 x)/(6 pi)) sin(nx) dx = 2 (-1)^n / (pi n^3).
inline LiftCoeffs lift_controls(int modes) {
  if (modes < 1) throw InvalidInput("lift_controls: modes >= 1");
  LiftCoeffs lc;
  for (int n = 1; n <= modes; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    lc.q1.push_back(-sign * 2.0 / (n * PI));
    lc.q2.push_back(sign * 2.0 / (PI * n * n * n));
  }
  return lc;
}

// Per-mode state (a, a', m, b, b') stacked over modes, plus current time.
struct SimState {
  double t = 0.0;
  std::vector<double> a, ap, m, b, bp;

  explicit SimState(int modes)
      : a(static_cast<size_t>(modes), 0.0),
        ap(static_cast<size_t>(modes), 0.0),
        m(static_cast<size_t>(modes), 0.0),
        b(static_cast<size_t>(modes), 0.0),
        bp(static_cast<size_t>(modes), 0.0) {}

  int modes() const { return static_cast<int>(a.size()); }
};

// Control forcing samples at one time instant.
struct Forcing {
  double g1 = 0.0, g1dd = 0.0, g2 = 0.0, g2dd = 0.0;
};

namespace detail {

struct SimDeriv {
  std::vector<double> da, dap, dm, db, dbp;
  explicit SimDeriv(int modes)
      : da(static_cast<size_t>(modes)),
        dap(static_cast<size_t>(modes)),
        dm(static_cast<size_t>(modes)),
        db(static_cast<size_t>(modes)),
        dbp(static_cast<size_t>(modes)) {}
};

inline void eval_deriv(const SimState& s, const ModelParams& params,
                       const LiftCoeffs& lift, const Forcing& f, SimDeriv& d) {
  const int M = s.modes();
  for (int k = 0; k < M; ++k) {
    const size_t i = static_cast<size_t>(k);
    const double lambda = static_cast<double>(k + 1) * (k + 1);
    d.da[i] = s.ap[i];
    d.dap[i] = -lambda * s.a[i] + lambda * params.beta * s.m[i] -
               params.A * s.b[i] - lift.q1[i] * f.g1dd -
               params.A * lift.q2[i] * f.g2;
    d.dm[i] = -params.eta * s.m[i] + s.a[i];
    d.db[i] = s.bp[i];
    d.dbp[i] = -lambda * lambda * s.b[i] - params.B * s.a[i] -
               lift.q2[i] * f.g2dd - params.B * lift.q1[i] * f.g1;
  }
}

inline void axpy(SimState& out, const SimState& s, const SimDeriv& d,
                 double h) {
  const int M = s.modes();
  for (int k = 0; k < M; ++k) {
    const size_t i = static_cast<size_t>(k);
    out.a[i] = s.a[i] + h * d.da[i];
    out.ap[i] = s.ap[i] + h * d.dap[i];
    out.m[i] = s.m[i] + h * d.dm[i];
    out.b[i] = s.b[i] + h * d.db[i];
    out.bp[i] = s.bp[i] + h * d.dbp[i];
  }
}

}  // namespace detail

// One classical RK4 step; forcing sampled at t, t + dt/2, t + dt.
inline void rk4_step(SimState& s, const ModelParams& params,
                     const LiftCoeffs& lift, const Forcing& f0,
                     const Forcing& fh, const Forcing& f1, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("rk4_step: dt > 0 required");
  const int M = s.modes();
  detail::SimDeriv k1(M), k2(M), k3(M), k4(M);
  SimState tmp = s;
  detail::eval_deriv(s, params, lift, f0, k1);
  detail::axpy(tmp, s, k1, dt / 2.0);
  detail::eval_deriv(tmp, params, lift, fh, k2);
  detail::axpy(tmp, s, k2, dt / 2.0);
  detail::eval_deriv(tmp, params, lift, fh, k3);
  detail::axpy(tmp, s, k3, dt);
  detail::eval_deriv(tmp, params, lift, f1, k4);
  for (int k = 0; k < M; ++k) {
    const size_t i = static_cast<size_t>(k);
    s.a[i] += dt / 6.0 * (k1.da[i] + 2.0 * k2.da[i] + 2.0 * k3.da[i] + k4.da[i]);
    s.ap[i] +=
        dt / 6.0 * (k1.dap[i] + 2.0 * k2.dap[i] + 2.0 * k3.dap[i] + k4.dap[i]);
    s.m[i] += dt / 6.0 * (k1.dm[i] + 2.0 * k2.dm[i] + 2.0 * k3.dm[i] + k4.dm[i]);
    s.b[i] += dt / 6.0 * (k1.db[i] + 2.0 * k2.db[i] + 2.0 * k3.db[i] + k4.db[i]);
    s.bp[i] +=
        dt / 6.0 * (k1.dbp[i] + 2.0 * k2.dbp[i] + 2.0 * k3.dbp[i] + k4.dbp[i]);
  }
  s.t += dt;
  for (int k = 0; k < M; ++k) {
    const size_t i = static_cast<size_t>(k);
    if (!std::isfinite(s.a[i]) || !std::isfinite(s.b[i]))
      throw ConvergenceError("rk4_step: state diverged (nonfinite values)");
  }
}

struct SimResult {
  SimState state;              // modal variables of the lifted system at T
  std::vector<double> u1, u1t, u2, u2t;  // physical modal values at T
  // Optional sampled history (every `stride` steps) for diagnostics.
  std::vector<double> sample_times;
  std::vector<std::vector<double>> sample_a;  // sample_a[j][mode]
  std::vector<std::vector<double>> sample_m;

  explicit SimResult(int modes) : state(modes) {}
};

// Integrate the controlled system on [0, T] from null physical initial data.
// `sim_modes` may exceed the number of controlled modes to expose spillover.
inline SimResult run_to_T(const ExpSum& g1, const ExpSum& g2,
                          const ModelParams& params, int sim_modes, double dt,
                          int sample_stride = 0) {
  if (!(dt > 0.0)) throw InvalidInput("run_to_T: dt > 0 required");
  const double T = params.T;
  const int steps = static_cast<int>(std::lround(T / dt));
  if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * T)
    throw InvalidInput("run_to_T: dt must divide T");
  const LiftCoeffs lift = lift_controls(sim_modes);
  const ExpSum g1dd = g1.derivative(2);
  const ExpSum g2dd = g2.derivative(2);

  // Forcing on the half-step grid: index j corresponds to t = j dt / 2.
  std::vector<Forcing> grid(static_cast<size_t>(2 * steps + 1));
  for (int j = 0; j <= 2 * steps; ++j) {
    const double t = 0.5 * dt * j;
    Forcing& f = grid[static_cast<size_t>(j)];
    f.g1 = g1.evaluate_real(t);
    f.g1dd = g1dd.evaluate_real(t);
    f.g2 = g2.evaluate_real(t);
    f.g2dd = g2dd.evaluate_real(t);
  }

  SimResult out(sim_modes);
  SimState& s = out.state;
  const ExpSum g1d = g1.derivative(1);
  const ExpSum g2d = g2.derivative(1);
  for (int k = 0; k < sim_modes; ++k) {
    const size_t i = static_cast<size_t>(k);
    s.a[i] = -lift.q1[i] * grid[0].g1;
    s.ap[i] = -lift.q1[i] * g1d.evaluate_real(0.0);
    s.b[i] = -lift.q2[i] * grid[0].g2;
    s.bp[i] = -lift.q2[i] * g2d.evaluate_real(0.0);
  }

  for (int step = 0; step < steps; ++step) {
    if (sample_stride > 0 && step % sample_stride == 0) {
      out.sample_times.push_back(s.t);
      out.sample_a.push_back(s.a);
      out.sample_m.push_back(s.m);
    }
    rk4_step(s, params, lift, grid[static_cast<size_t>(2 * step)],
             grid[static_cast<size_t>(2 * step + 1)],
             grid[static_cast<size_t>(2 * step + 2)], dt);
  }
  if (sample_stride > 0) {
    out.sample_times.push_back(s.t);
    out.sample_a.push_back(s.a);
    out.sample_m.push_back(s.m);
  }

  const double g1T = g1.evaluate_real(T);
  const double g1dT = g1d.evaluate_real(T);
  const double g2T = g2.evaluate_real(T);
  const double g2dT = g2d.evaluate_real(T);
  for (int k = 0; k < sim_modes; ++k) {
    const size_t i = static_cast<size_t>(k);
    out.u1.push_back(s.a[i] + lift.q1[i] * g1T);
    out.u1t.push_back(s.ap[i] + lift.q1[i] * g1dT);
    out.u2.push_back(s.b[i] + lift.q2[i] * g2T);
    out.u2t.push_back(s.bp[i] + lift.q2[i] * g2dT);
  }
  return out;
}

// Uncontrolled evolution from prescribed modal Cauchy data (m(0) = 0):
// the analytic oracle for this problem is the exponential-sum synthesis.
inline SimResult run_uncontrolled(const FinalData& init,
                                  const ModelParams& params, double t_end,
                                  double dt, int sample_stride = 0) {
  ModelParams p = params;
  p.T = t_end;
  const int M = init.modes();
  const int steps = static_cast<int>(std::lround(t_end / dt));
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * t_end)
    throw InvalidInput("run_uncontrolled: dt must divide t_end");
  const LiftCoeffs lift = lift_controls(M);
  const Forcing zero;
  SimResult out(M);
  SimState& s = out.state;
  for (int k = 0; k < M; ++k) {
    const size_t i = static_cast<size_t>(k);
    s.a[i] = init.alpha1[i];
    s.ap[i] = init.rho1[i];
    s.b[i] = init.alpha2[i];
    s.bp[i] = init.rho2[i];
  }
  for (int step = 0; step < steps; ++step) {
    if (sample_stride > 0 && step % sample_stride == 0) {
      out.sample_times.push_back(s.t);
      out.sample_a.push_back(s.a);
      out.sample_m.push_back(s.m);
    }
    rk4_step(s, p, lift, zero, zero, zero, dt);
  }
  if (sample_stride > 0) {
    out.sample_times.push_back(s.t);
    out.sample_a.push_back(s.a);
    out.sample_m.push_back(s.m);
  }
  out.u1 = s.a;
  out.u1t = s.ap;
  out.u2 = s.b;
  out.u2t = s.bp;
  return out;
}

// Relative final-state errors in the verification norms:
// u1(T) in L^2, u1t(T) in H^-1, u2(T) in H^1_0, u2t(T) in H^-1.
struct ErrorReport {
  double err_u1 = 0.0, err_u1t = 0.0, err_u2 = 0.0, err_u2t = 0.0;
  double combined = 0.0;       // combined relative error in the summed norms
  double spillover = 0.0;      // same norm combination over modes > N, absolute
  double spillover_relative = 0.0;  // relative to the target norm
};

inline ErrorReport error_report(const SimResult& sim, const FinalData& target) {
  const int N = target.modes();
  const int M = static_cast<int>(sim.u1.size());
  if (M < N) throw InvalidInput("error_report: simulation has fewer modes than target");
  double d1 = 0.0, d1t = 0.0, d2 = 0.0, d2t = 0.0;
  double t1 = 0.0, t1t = 0.0, t2 = 0.0, t2t = 0.0;
  for (int n = 1; n <= N; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const double nn = static_cast<double>(n) * n;
    const double e1 = sim.u1[i] - target.alpha1[i];
    const double e1t = sim.u1t[i] - target.rho1[i];
    const double e2 = sim.u2[i] - target.alpha2[i];
    const double e2t = sim.u2t[i] - target.rho2[i];
    d1 += e1 * e1;
    d1t += e1t * e1t / nn;
    d2 += e2 * e2 * nn;
    d2t += e2t * e2t / nn;
    t1 += target.alpha1[i] * target.alpha1[i];
    t1t += target.rho1[i] * target.rho1[i] / nn;
    t2 += target.alpha2[i] * target.alpha2[i] * nn;
    t2t += target.rho2[i] * target.rho2[i] / nn;
  }
  double spill = 0.0;
  for (int n = N + 1; n <= M; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const double nn = static_cast<double>(n) * n;
    spill += sim.u1[i] * sim.u1[i] + sim.u1t[i] * sim.u1t[i] / nn +
             sim.u2[i] * sim.u2[i] * nn + sim.u2t[i] * sim.u2t[i] / nn;
  }
  ErrorReport rep;
  const auto rel = [](double num, double den) {
    return std::sqrt(num) / std::sqrt(den > 0.0 ? den : 1.0);
  };
  rep.err_u1 = rel(d1, t1);
  rep.err_u1t = rel(d1t, t1t);
  rep.err_u2 = rel(d2, t2);
  rep.err_u2t = rel(d2t, t2t);
  const double total_target = t1 + t1t + t2 + t2t;
  rep.combined = rel(d1 + d1t + d2 + d2t, total_target);
  rep.spillover = std::sqrt(spill);
  rep.spillover_relative = rel(spill, total_target);
  return rep;
}

}  // namespace wavemem
