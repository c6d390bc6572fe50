#pragma once

// Exponential-kernel Volterra algebra: resolvent kernel, backward
// variation-of-constants solver on sampled grids, and the empirical L^2 norm
// equivalence between phi and psi = phi - beta int_t^T e^{-eta(s-t)} phi ds.

#include <cmath>
#include <cstdint>
#include <vector>

#include "wavemem/common.hpp"
#include "wavemem/expsum.hpp"
#include "wavemem/quadrature.hpp"
#include "wavemem/rng.hpp"

namespace wavemem {

// Memory kernel k(t) = beta e^{-eta t} with 0 <= beta < eta.  beta = 0 is the
// degenerate no-memory limit (zero kernel); beta > 0 requires beta < eta.
struct ExpKernel {
  double beta;
  double eta;

  ExpKernel(double beta_, double eta_) : beta(beta_), eta(eta_) {
    if (!(eta > 0.0)) throw InvalidInput("ExpKernel: eta must be positive");
    if (beta < 0.0 || beta >= eta)
      throw InvalidInput("ExpKernel: requires 0 <= beta < eta");
  }

  double operator()(double t) const { return beta * std::exp(-eta * t); }
};

// Resolvent kernel rho(t) = amplitude * e^{rate * t} solving rho - k*rho = k.
struct ResolventKernel {
  double amplitude;  // beta
  double rate;       // beta - eta (negative)

  double operator()(double t) const { return amplitude * std::exp(rate * t); }
};

inline ResolventKernel resolvent_kernel(const ExpKernel& k) {
  return ResolventKernel{k.beta, k.beta - k.eta};
}

// Real samples on a uniform grid over [0, T].
struct SampledFunction {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;

  SampledFunction() = default;
  SampledFunction(double t0_, double dt_, std::vector<double> values_)
      : t0(t0_), dt(dt_), values(std::move(values_)) {
    if (values.size() < 2)
      throw InvalidInput("SampledFunction: need at least 2 samples");
    if (!(dt > 0.0)) throw InvalidInput("SampledFunction: dt must be positive");
  }

  std::size_t size() const { return values.size(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  double t_end() const { return time(values.size() - 1); }
};

// phi(t) = psi(t) + beta int_t^T e^{(beta-eta)(s-t)} psi(s) ds  (backward
// variation of constants via the resolvent kernel), composite Simpson on the
// sample grid with a trapezoid panel when the remaining interval count is odd.
inline SampledFunction solve_backward_volterra(const SampledFunction& psi,
                                               const ExpKernel& k) {
  const std::size_t n = psi.size();
  const double rate = k.beta - k.eta;
  // Weight once: h(s) = e^{rate*s} psi(s); then
  // phi(t_i) = psi(t_i) + beta e^{-rate t_i} int_{t_i}^{T} h(s) ds.
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i)
    weighted[i] = std::exp(rate * psi.time(i)) * psi.values[i];

  SampledFunction phi = psi;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<double> tail(weighted.begin() + static_cast<std::ptrdiff_t>(i),
                             weighted.end());
    const double integral = simpson(tail, psi.dt);
    phi.values[i] = psi.values[i] +
                    k.beta * std::exp(-rate * psi.time(i)) * integral;
  }
  return phi;
}

// The forward map psi(t) = phi(t) - beta int_t^T e^{-eta(s-t)} phi(s) ds,
// used to verify that the backward solver inverts it.
inline SampledFunction apply_backward_map(const SampledFunction& phi,
                                          const ExpKernel& k) {
  const std::size_t n = phi.size();
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i)
    weighted[i] = std::exp(-k.eta * phi.time(i)) * phi.values[i];

  SampledFunction psi = phi;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<double> tail(weighted.begin() + static_cast<std::ptrdiff_t>(i),
                             weighted.end());
    const double integral = simpson(tail, phi.dt);
    psi.values[i] = phi.values[i] -
                    k.beta * std::exp(k.eta * phi.time(i)) * integral;
  }
  return psi;
}

// Max-norm residual of the defining resolvent identity rho - k*rho = k on a
// grid over [0, T] (convolution by composite Simpson).
inline double resolvent_identity_residual(const ExpKernel& k, double T,
                                          std::size_t samples = 4001) {
  const ResolventKernel rho = resolvent_kernel(k);
  const double h = T / static_cast<double>(samples - 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = h * static_cast<double>(i);
    // (k * rho)(t) = int_0^t k(t - s) rho(s) ds.
    const std::size_t m = i + 1;
    double conv = 0.0;
    if (m >= 2) {
      std::vector<double> integrand(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double s = h * static_cast<double>(j);
        integrand[j] = k(t - s) * rho(s);
      }
      conv = simpson(integrand, h);
    }
    worst = std::max(worst, std::abs(rho(t) - conv - k(t)));
  }
  return worst;
}

struct NormEquivalence {
  double c1_hat;  // min over trials of int|psi|^2 / int|phi|^2
  double c2_hat;  // max over trials
};

// Random band-limited phi: real trigonometric polynomials with <= 16 terms
// and standard normal coefficients; psi and both integrals in closed form on
// the exponential-sum representation.
inline NormEquivalence norm_equivalence_constants(const ExpKernel& k, double T,
                                                  int trials,
                                                  std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("norm_equivalence_constants: trials >= 1");
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    ExpSum phi;
    int attempts = 0;
    for (;;) {
      phi = ExpSum();
      for (int j = 1; j <= 16; ++j) {
        const double cs = rng.normal();
        const double cc = rng.normal();
        const cplx iw(0.0, PI * j / T);
        // cs*sin + cc*cos as a conjugate-closed pair of exponentials.
        phi.add_term(cplx(cc / 2.0, -cs / 2.0), iw);
        phi.add_term(cplx(cc / 2.0, cs / 2.0), -iw);
      }
      if (phi.l2_norm_sq(0.0, T) > 1e-12) break;
      if (++attempts > 16)
        throw ConvergenceError("norm_equivalence_constants: degenerate draws");
    }
    const ExpSum psi = phi - phi.backward_memory(k.beta, k.eta, T);
    const double ratio = psi.l2_norm_sq(0.0, T) / phi.l2_norm_sq(0.0, T);
    if (first || ratio < lo) lo = ratio;
    if (first || ratio > hi) hi = ratio;
    first = false;
  }
  return NormEquivalence{lo, hi};
}

}  // namespace wavemem
