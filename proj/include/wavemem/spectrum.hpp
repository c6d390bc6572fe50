#pragma once

// Per-mode characteristic quintic
//   L^5 + eta L^4 + (l^2+l) L^3 + (eta l^2 + l(eta-beta)) L^2
//       + (l^3 - AB) L + l^3(eta-beta) - eta AB = 0,     l = n^2,
// root solving (Aberth-Ehrlich seeded by the asymptotic expansions, Newton
// polish), branch classification into (r_n, omega_n, p_n), and numerical
// validation of the standing hypotheses used by the Ingham machinery.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "wavemem/common.hpp"

namespace wavemem {

struct ModelParams {
  double beta = 0.5;
  double eta = 1.0;
  double A = 0.1;
  double B = 0.1;
  int N = 8;
  double T = 7.0;

  // decoupled=true allows A=B=0 (self-test path); reachability=true also
  // enforces eta > 3 beta / 2.
  void validate(bool decoupled_ok = false, bool reachability = false) const {
    if (!(beta > 0.0 && beta < eta))
      throw InvalidInput("ModelParams: requires 0 < beta < eta");
    if (!decoupled_ok && (A == 0.0 || B == 0.0))
      throw InvalidInput("ModelParams: coupled branch requires A != 0, B != 0");
    if (reachability && !(eta > 1.5 * beta))
      throw InvalidInput("ModelParams: reachability requires eta > 3 beta / 2");
    if (N < 1) throw InvalidInput("ModelParams: N >= 1");
    if (!(T > 0.0)) throw InvalidInput("ModelParams: T > 0");
  }

  // Coupling constants of the adjoint system are swapped (the z1 equation
  // carries B, the z2 equation carries A).
  ModelParams adjoint() const {
    ModelParams p = *this;
    p.A = B;
    p.B = A;
    return p;
  }

  double lambda(int n) const { return static_cast<double>(n) * n; }
};

// Monic quintic coefficients c4..c0 (of L^4..L^0).
struct QuinticCoeffs {
  double lambda = 0.0;
  std::array<double, 5> c{};  // c[0]=c4, ..., c[4]=c0

  cplx eval(cplx z) const {
    cplx v = 1.0;
    for (double ci : c) v = v * z + ci;
    return v;
  }

  cplx eval_derivative(cplx z) const {
    cplx v = 5.0;
    for (int i = 0; i < 4; ++i) v = v * z + (4.0 - i) * c[static_cast<size_t>(i)];
    return v;
  }

  double max_coeff() const {
    double m = 1.0;
    for (double ci : c) m = std::max(m, std::abs(ci));
    return m;
  }

  // Backward-error style relative residual: |q(z)| / max_i |c_i z^i|, i.e.
  // the residual of the polynomial rescaled so its largest term at z has unit
  // magnitude (coefficients grow like lambda^3, so raw residuals are
  // meaningless across modes).
  double relative_residual(cplx z) const {
    const double az = std::abs(z);
    double scale = std::max(std::pow(az, 5), 1.0);
    double zi = 1.0;
    for (int i = 4; i >= 0; --i) {
      scale = std::max(scale, std::abs(c[static_cast<size_t>(i)]) * zi);
      zi *= az;
    }
    return std::abs(eval(z)) / scale;
  }
};

inline QuinticCoeffs quintic_coeffs(const ModelParams& params, int n) {
  if (n < 1) throw InvalidInput("quintic_coeffs: n >= 1");
  QuinticCoeffs q;
  const double l = params.lambda(n);
  const double AB = params.A * params.B;
  q.lambda = l;
  q.c = {params.eta, l * l + l, params.eta * l * l + l * (params.eta - params.beta),
         l * l * l - AB, l * l * l * (params.eta - params.beta) - params.eta * AB};
  return q;
}

// Asymptotic predictions Lambda_1..Lambda_5 (seeds and order checks).
inline std::array<cplx, 5> asymptotic_roots(const ModelParams& params, int n) {
  const double l = params.lambda(n);
  const double b = params.beta, e = params.eta;
  const double AB = params.A * params.B;
  const double sql = std::sqrt(l);
  const cplx L1(b - e - b * (b - e) * (b - e) / l, 0.0);
  const cplx L2(-b / 2.0 + b * (b - e) * (b - e) / (2.0 * l),
                sql + (b / 2.0) * (0.75 * b - e) / sql);
  const cplx L4(-b * AB / (2.0 * std::pow(l, 5)),
                l + AB / (2.0 * l * l * l) + AB / (2.0 * std::pow(l, 4)) +
                    AB / (2.0 * std::pow(l, 5)));
  return {L1, L2, std::conj(L2), L4, std::conj(L4)};
}

struct SpectralBranch {
  int n = 0;
  double lambda = 0.0;
  double r = 0.0;   // the unique real root Lambda_1
  cplx omega;       // Lambda_2 = i omega, Re omega ~ sqrt(lambda)
  cplx p;           // Lambda_4 = i p,     Re p ~ lambda
  // High-accuracy deviation Lambda_4 - i lambda, computed by a shifted Newton
  // iteration on the stable factored evaluation; |dev4| falls below
  // eps*lambda for large n, so it cannot be recovered from the rounded root.
  cplx dev4;
  std::array<double, 3> residuals{};  // scaled residuals at r, i omega, i p

  std::array<cplx, 5> roots() const {
    const cplx i(0.0, 1.0);
    return {cplx(r, 0.0), i * omega, -i * std::conj(omega), i * p,
            -i * std::conj(p)};
  }
};

namespace detail {

// cubic(L) = L^3 + eta L^2 + lambda L + lambda (eta - beta)
//          = (L + eta)(L^2 + lambda) - lambda beta.
inline cplx cubic_factor(cplx L, double lambda, double beta, double eta) {
  return (L + eta) * (L * L + lambda) - lambda * beta;
}

// Stable evaluation of q(i lambda + s) exploiting the exact factorization
//   q(L) = (L^2 + lambda^2) cubic(L) - AB (L + eta):
// near L = i lambda, L^2 + lambda^2 = s (2 i lambda + s) with no cancellation.
inline cplx quintic_shifted(cplx s, double lambda, double beta, double eta,
                            double AB) {
  const cplx L = cplx(0.0, lambda) + s;
  const cplx two_il(0.0, 2.0 * lambda);
  // cubic via (L+eta)(L^2+lambda) - lambda beta with L^2+lambda =
  // (lambda - lambda^2) + s(2 i lambda + s), again cancellation-free.
  const cplx L2pl = cplx(lambda - lambda * lambda, 0.0) + s * (two_il + s);
  const cplx cub = (L + eta) * L2pl - lambda * beta;
  return s * (two_il + s) * cub - AB * (L + eta);
}

// dev4 = Lambda_4 - i lambda by Newton in the shifted variable.
inline cplx lambda4_deviation(double lambda, double beta, double eta,
                              double AB) {
  if (AB == 0.0) return cplx(0.0, 0.0);  // decoupled: Lambda_4 = i lambda exactly
  const cplx il(0.0, lambda);
  // First-order seed: q(i lambda) = -AB (i lambda + eta) exactly, and
  // q'(i lambda) ~ 2 i lambda cubic(i lambda) - AB.
  cplx s = AB * (il + eta) /
           (2.0 * il * cubic_factor(il, lambda, beta, eta) - AB);
  for (int iter = 0; iter < 60; ++iter) {
    const double h = 1e-7 * std::max(std::abs(s), 1e-300);
    const cplx q0 = quintic_shifted(s, lambda, beta, eta, AB);
    const cplx qp = (quintic_shifted(s + h, lambda, beta, eta, AB) -
                     quintic_shifted(s - h, lambda, beta, eta, AB)) /
                    (2.0 * h);
    const cplx step = q0 / qp;
    s -= step;
    if (std::abs(step) <= 1e-15 * std::abs(s)) break;
  }
  return s;
}

}  // namespace detail

inline SpectralBranch solve_branch(const ModelParams& params, int n) {
  const QuinticCoeffs q = quintic_coeffs(params, n);
  const double l = q.lambda;
  std::array<cplx, 5> z = asymptotic_roots(params, n);
  // Tiny deterministic perturbation so no two seeds coincide (Aberth-Ehrlich
  // requires distinct iterates).
  for (int i = 0; i < 5; ++i) z[static_cast<size_t>(i)] += cplx(0.0, 1e-3 * (i + 1) / l);

  // Work in the scaled variable w = z / s0 to keep magnitudes O(1).
  const double s0 = std::max(std::abs(z[3]), 1.0);
  std::array<double, 6> sc{1.0, q.c[0] / s0, q.c[1] / (s0 * s0),
                           q.c[2] / (s0 * s0 * s0), q.c[3] / std::pow(s0, 4),
                           q.c[4] / std::pow(s0, 5)};
  auto eval_scaled = [&](cplx w) {
    cplx v = sc[0];
    for (int i = 1; i < 6; ++i) v = v * w + sc[static_cast<size_t>(i)];
    return v;
  };
  auto eval_scaled_deriv = [&](cplx w) {
    cplx v = 5.0 * sc[0];
    for (int i = 1; i < 5; ++i) v = v * w + (5.0 - i) * sc[static_cast<size_t>(i)];
    return v;
  };

  std::array<cplx, 5> w;
  for (int i = 0; i < 5; ++i) w[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] / s0;
  bool converged = false;
  double last_update = 0.0;
  for (int sweep = 0; sweep < 200 && !converged; ++sweep) {
    last_update = 0.0;
    for (int i = 0; i < 5; ++i) {
      const cplx wi = w[static_cast<size_t>(i)];
      const cplx num = eval_scaled(wi) / eval_scaled_deriv(wi);
      cplx sum{};
      for (int j = 0; j < 5; ++j) {
        if (j != i) sum += 1.0 / (wi - w[static_cast<size_t>(j)]);
      }
      const cplx corr = num / (1.0 - num * sum);
      w[static_cast<size_t>(i)] -= corr;
      last_update = std::max(last_update, std::abs(corr));
    }
    converged = last_update < 1e-14;
  }
  if (!converged && last_update > 1e-12)
    throw ConvergenceError("solve_branch: Aberth-Ehrlich did not converge for n=" +
                           std::to_string(n));
  // Newton polish in the scaled variable.
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 3; ++k) {
      auto& wi = w[static_cast<size_t>(i)];
      wi -= eval_scaled(wi) / eval_scaled_deriv(wi);
    }
    z[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] * s0;
  }

  // Classification: unique real root, then the conjugate pair nearest the
  // Lambda_2 prediction; the remaining pair is the p branch.
  const std::array<cplx, 5> pred = asymptotic_roots(params, n);
  std::vector<cplx> reals, uppers;
  for (const cplx& root : z) {
    if (std::abs(root.imag()) < 1e-8 * std::max(1.0, std::abs(root)))
      reals.push_back(root);
    else if (root.imag() > 0.0)
      uppers.push_back(root);
  }
  if (reals.size() != 1 || uppers.size() != 2)
    throw ClassificationError(
        "solve_branch: expected one real root and two conjugate pairs at n=" +
        std::to_string(n) + "; change parameters");
  const double d0 = std::abs(uppers[0] - pred[1]);
  const double d1 = std::abs(uppers[1] - pred[1]);
  if (std::abs(d0 - d1) < 1e-6 * std::max(1.0, std::max(d0, d1)))
    throw ClassificationError(
        "solve_branch: branch classification margin below 1e-6 at n=" +
        std::to_string(n) + "; change parameters");
  cplx L2 = d0 < d1 ? uppers[0] : uppers[1];
  cplx L4 = d0 < d1 ? uppers[1] : uppers[0];
  if (!(std::abs(L2.imag()) < std::abs(L4.imag())))
    throw ClassificationError(
        "solve_branch: |Im Lambda_2| < |Im Lambda_4| ordering violated at n=" +
        std::to_string(n));

  SpectralBranch br;
  br.n = n;
  br.lambda = l;
  br.r = reals[0].real();
  const cplx mi(0.0, -1.0);
  br.omega = mi * L2;  // L2 = i omega
  br.dev4 = detail::lambda4_deviation(l, params.beta, params.eta,
                                      params.A * params.B);
  // Recombine so p is as accurate as double permits.
  br.p = mi * (cplx(0.0, l) + br.dev4);
  br.residuals = {q.relative_residual(cplx(br.r, 0.0)),
                  q.relative_residual(L2), q.relative_residual(cplx(0.0, 1.0) * br.p)};
  for (double res : br.residuals) {
    if (!(res < 1e-9))
      throw ConvergenceError("solve_branch: residual above 1e-9 at n=" +
                             std::to_string(n));
  }
  if (!(br.omega.real() > 0.0 && br.p.real() > 0.0))
    throw ClassificationError("solve_branch: positive-frequency convention violated");
  if (std::abs(br.p) == 0.0 || std::abs(br.r + params.eta) < 1e-9)
    throw ClassificationError("solve_branch: p_n = 0 or r_n = -eta exclusion violated");
  return br;
}

inline std::vector<SpectralBranch> solve_branches(const ModelParams& params) {
  std::vector<SpectralBranch> out;
  out.reserve(static_cast<size_t>(params.N));
  for (int n = 1; n <= params.N; ++n) out.push_back(solve_branch(params, n));
  return out;
}

struct HypothesisReport {
  bool gaps_increasing = false;   // Re p_{n+1} - Re p_n increasing
  bool im_p_vanishing = false;    // |Im p_n| decreasing toward 0 on the tail
  double gamma_hat = 0.0;         // min over tail half of Re omega_{n+1}-Re omega_n
  double alpha_hat = 0.0;         // min over tail half of Im omega_n
  int n_prime = -1;               // smallest n with r_m <= -Im omega_m for m >= n
  bool distinct = false;          // pairwise distinctness + exclusions
  double min_pair_distance = 0.0;
  double a0_hat = 0.0;            // min |p_n|
  bool all_pass = false;
};

inline HypothesisReport validate_hypotheses(
    const std::vector<SpectralBranch>& branches, const ModelParams& params) {
  if (branches.size() < 4)
    throw InvalidInput("validate_hypotheses: need branches for N >= 4");
  HypothesisReport rep;
  const std::size_t N = branches.size();
  const std::size_t tail = N / 2;

  rep.gaps_increasing = true;
  for (std::size_t i = 0; i + 2 < N; ++i) {
    const double g0 = branches[i + 1].p.real() - branches[i].p.real();
    const double g1 = branches[i + 2].p.real() - branches[i + 1].p.real();
    if (!(g1 > g0)) rep.gaps_increasing = false;
  }

  rep.im_p_vanishing =
      std::abs(branches[N - 1].p.imag()) <= std::abs(branches[tail].p.imag()) + 1e-15;

  rep.gamma_hat = 1e300;
  rep.alpha_hat = 1e300;
  for (std::size_t i = tail; i < N; ++i) {
    if (i + 1 < N)
      rep.gamma_hat = std::min(
          rep.gamma_hat, branches[i + 1].omega.real() - branches[i].omega.real());
    rep.alpha_hat = std::min(rep.alpha_hat, branches[i].omega.imag());
  }

  rep.n_prime = -1;
  for (std::size_t i = 0; i < N; ++i) {
    bool holds_from_here = true;
    for (std::size_t j = i; j < N; ++j) {
      if (!(branches[j].r <= -branches[j].omega.imag())) holds_from_here = false;
    }
    if (holds_from_here) {
      rep.n_prime = branches[i].n;
      break;
    }
  }

  rep.min_pair_distance = 1e300;
  rep.distinct = true;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const double d_op = std::abs(branches[i].omega - branches[j].p);
      rep.min_pair_distance = std::min(rep.min_pair_distance, d_op);
      if (i != j) {
        rep.min_pair_distance = std::min(
            {rep.min_pair_distance, std::abs(branches[i].omega - branches[j].omega),
             std::abs(branches[i].p - branches[j].p),
             std::abs(cplx(branches[i].r, 0.0) - cplx(branches[j].r, 0.0))});
      }
    }
    if (std::abs(branches[i].r + params.eta) < 1e-9 || std::abs(branches[i].p) < 1e-12)
      rep.distinct = false;
  }
  if (rep.min_pair_distance < 1e-9) rep.distinct = false;

  rep.a0_hat = 1e300;
  for (const auto& br : branches) rep.a0_hat = std::min(rep.a0_hat, std::abs(br.p));

  rep.all_pass = rep.gaps_increasing && rep.im_p_vanishing && rep.gamma_hat > 0.0 &&
                 rep.n_prime >= 1 && rep.distinct && rep.a0_hat > 0.0;
  return rep;
}

}  // namespace wavemem
