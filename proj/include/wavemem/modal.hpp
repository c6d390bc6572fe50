#pragma once

// Modal coefficient reconstruction and synthesis:
//   - fifth-order Cauchy data from final data (per-mode),
//   - 5x5 Vandermonde solve in the characteristic roots (scaled elimination
//     with iterative refinement),
//   - the exact second-component formula via variation of constants,
//   - d_n, the scalar calD, and exponential-sum synthesis of (f1, f2) and of
//     the boundary traces at x = pi.

#include <array>
#include <cmath>
#include <vector>

#include "wavemem/common.hpp"
#include "wavemem/expsum.hpp"
#include "wavemem/spectrum.hpp"

namespace wavemem {

// Fourier sine coefficients of the four final-data components.
struct FinalData {
  std::vector<double> alpha1, rho1, alpha2, rho2;

  explicit FinalData(int N)
      : alpha1(static_cast<size_t>(N), 0.0),
        rho1(static_cast<size_t>(N), 0.0),
        alpha2(static_cast<size_t>(N), 0.0),
        rho2(static_cast<size_t>(N), 0.0) {
    if (N < 1) throw InvalidInput("FinalData: N >= 1");
  }

  int modes() const { return static_cast<int>(alpha1.size()); }

  // ||z10||^2_{H^1_0} + ||z11||^2 + ||z20||^2_{H^1_0} + ||z21||^2_{H^-1}.
  double sobolev_norm_sq() const {
    double s = 0.0;
    for (int n = 1; n <= modes(); ++n) {
      const double nn = static_cast<double>(n) * n;
      const size_t i = static_cast<size_t>(n - 1);
      s += alpha1[i] * alpha1[i] * nn + rho1[i] * rho1[i] +
           alpha2[i] * alpha2[i] * nn + rho2[i] * rho2[i] / nn;
    }
    return s;
  }
};

// (f(0), f'(0), f''(0), f'''(0), f''''(0)) for the fifth-order scalar Cauchy
// problem equivalent to the per-mode coupled system.
inline std::array<double, 5> cauchy_init_vector(double alpha1, double rho1,
                                                double alpha2, double rho2,
                                                const ModelParams& params,
                                                int n) {
  const double l = params.lambda(n);
  const double A = params.A, B = params.B;
  const double beta = params.beta, eta = params.eta;
  return {alpha1, rho1, -l * alpha1 - A * alpha2,
          -A * rho2 - l * rho1 + l * beta * alpha1,
          (l * l + l) * (l * alpha1 + A * alpha2) + l * beta * rho1 -
              l * eta * beta * alpha1 - (l * l * l - A * B) * alpha1};
}

inline std::array<double, 5> cauchy_init_vector(const FinalData& data,
                                                const ModelParams& params,
                                                int n) {
  if (n > data.modes()) throw InvalidInput("cauchy_init_vector: n <= N");
  const size_t i = static_cast<size_t>(n - 1);
  return cauchy_init_vector(data.alpha1[i], data.rho1[i], data.alpha2[i],
                            data.rho2[i], params, n);
}

namespace detail {

// Dense complex 5x5 solve with partial pivoting.
inline std::array<cplx, 5> solve5(std::array<std::array<cplx, 5>, 5> M,
                                  std::array<cplx, 5> rhs) {
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int row = col + 1; row < 5; ++row) {
      if (std::abs(M[static_cast<size_t>(row)][static_cast<size_t>(col)]) >
          std::abs(M[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
        piv = row;
    }
    if (std::abs(M[static_cast<size_t>(piv)][static_cast<size_t>(col)]) < 1e-14)
      throw ConditioningError("solve_vandermonde: pivot below tolerance");
    std::swap(M[static_cast<size_t>(col)], M[static_cast<size_t>(piv)]);
    std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(piv)]);
    for (int row = col + 1; row < 5; ++row) {
      const cplx f = M[static_cast<size_t>(row)][static_cast<size_t>(col)] /
                     M[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int k = col; k < 5; ++k)
        M[static_cast<size_t>(row)][static_cast<size_t>(k)] -=
            f * M[static_cast<size_t>(col)][static_cast<size_t>(k)];
      rhs[static_cast<size_t>(row)] -= f * rhs[static_cast<size_t>(col)];
    }
  }
  std::array<cplx, 5> x{};
  for (int row = 4; row >= 0; --row) {
    cplx s = rhs[static_cast<size_t>(row)];
    for (int k = row + 1; k < 5; ++k)
      s -= M[static_cast<size_t>(row)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
    x[static_cast<size_t>(row)] = s / M[static_cast<size_t>(row)][static_cast<size_t>(row)];
  }
  return x;
}

}  // namespace detail

// Solve sum_i C_i Lambda_i^k = init_k (k = 0..4).  Roots are scaled by their
// maximum modulus before elimination (raw Vandermonde in roots of magnitude
// n^2 is catastrophically ill-conditioned past n ~ 30) and the solution is
// improved by two passes of iterative refinement.
inline std::array<cplx, 5> solve_vandermonde(const SpectralBranch& branch,
                                             const std::array<double, 5>& init) {
  const std::array<cplx, 5> roots = branch.roots();
  double s0 = 0.0;
  for (const cplx& z : roots) s0 = std::max(s0, std::abs(z));
  if (s0 == 0.0) throw ConditioningError("solve_vandermonde: zero root set");
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      if (std::abs(roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)]) <
          1e-9 * s0)
        throw ConditioningError("solve_vandermonde: roots not pairwise distinct");
    }
  }

  std::array<std::array<cplx, 5>, 5> V{};
  std::array<cplx, 5> y{};
  double sk = 1.0;
  for (int k = 0; k < 5; ++k) {
    for (int i = 0; i < 5; ++i) {
      V[static_cast<size_t>(k)][static_cast<size_t>(i)] =
          std::pow(roots[static_cast<size_t>(i)] / s0, k);
    }
    y[static_cast<size_t>(k)] = init[static_cast<size_t>(k)] / sk;
    sk *= s0;
  }

  std::array<cplx, 5> c = detail::solve5(V, y);
  for (int pass = 0; pass < 2; ++pass) {
    std::array<cplx, 5> res = y;
    for (int k = 0; k < 5; ++k) {
      for (int i = 0; i < 5; ++i)
        res[static_cast<size_t>(k)] -=
            V[static_cast<size_t>(k)][static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
    }
    const std::array<cplx, 5> dc = detail::solve5(V, res);
    for (int i = 0; i < 5; ++i) c[static_cast<size_t>(i)] += dc[static_cast<size_t>(i)];
  }
  return c;
}

// Relative reconstruction residual max_k |sum_i C_i Lambda_i^k - init_k| / ||init||.
inline double vandermonde_residual(const SpectralBranch& branch,
                                   const std::array<cplx, 5>& c,
                                   const std::array<double, 5>& init) {
  const std::array<cplx, 5> roots = branch.roots();
  double norm = 0.0;
  for (double v : init) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) norm = 1.0;
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    cplx rec{};
    for (int i = 0; i < 5; ++i)
      rec += c[static_cast<size_t>(i)] * std::pow(roots[static_cast<size_t>(i)], k);
    worst = std::max(worst, std::abs(rec - init[static_cast<size_t>(k)]));
  }
  return worst / norm;
}

// Per-mode coefficients: C1..C5 = (R_n, C_n, conj C_n, D_n, conj D_n).
struct ModeCoefficients {
  std::array<cplx, 5> C{};
  cplx d_n;

  cplx R() const { return C[0]; }
  cplx Cn() const { return C[1]; }
  cplx Dn() const { return C[3]; }
};

struct ModalCoefficients {
  std::vector<ModeCoefficients> modes;
  double calD = 0.0;
};

// Reference formula d_n = (1/A)(p_n^2 - Re p_n + beta Re p_n / (eta + i p_n)).
// This is the asymptotic version of the exact e^{i p_n t} coefficient of the
// second component (Re p_n stands in for lambda_n); the synthesis below uses
// the exact coefficient instead.
inline cplx compute_dn(const SpectralBranch& branch, const ModelParams& params) {
  if (params.A == 0.0) throw InvalidInput("compute_dn: A != 0 required");
  if (std::abs(branch.p) == 0.0) throw InvalidInput("compute_dn: p_n != 0 required");
  const cplx p = branch.p;
  const cplx i(0.0, 1.0);
  return (p * p - p.real() + params.beta * p.real() / (params.eta + i * p)) /
         params.A;
}

// calD = -(beta/A) sum_n Re p_n (D_n/(eta + i p_n) + conj D_n/(eta - i conj p_n)).
// The two summands are exact conjugates, so the sum is real by construction
// (the printed formula's eta - i p_n denominator is the same up to the
// vanishing Im p_n).
inline double compute_calD(const std::vector<cplx>& D,
                           const std::vector<SpectralBranch>& branches,
                           const ModelParams& params) {
  if (D.size() > branches.size())
    throw InvalidInput("compute_calD: more coefficients than branches");
  double total = 0.0;
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < D.size(); ++k) {
    const cplx term = D[k] / (params.eta + i * branches[k].p);
    total += branches[k].p.real() * 2.0 * term.real();
  }
  return -(params.beta / params.A) * total;
}

// One synthesized mode: first and second components as exponential sums.
struct ModalSolution {
  std::vector<ExpSum> f1;  // per mode
  std::vector<ExpSum> f2;
  ExpSum u1_trace;  // sum_n (-1)^n n f1_n : x-derivative trace at x = pi
  ExpSum u2_trace;

  double evaluate_u1(double t, double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < f1.size(); ++k)
      v += f1[k].evaluate_real(t) * std::sin(static_cast<double>(k + 1) * x);
    return v;
  }
  double evaluate_u2(double t, double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < f2.size(); ++k)
      v += f2[k].evaluate_real(t) * std::sin(static_cast<double>(k + 1) * x);
    return v;
  }
};

// Exact coefficient multiplying C e^{Lambda t} in the second component:
//   -(1/A) (Lambda^2 + lambda - beta lambda / (Lambda + eta)).
// At the exact roots this equals -B/(Lambda^2 + lambda^2) by the quintic
// factorization q = (L^2 + l^2) cubic - AB(L + eta).
inline cplx f2_coefficient_direct(cplx Lambda, double lambda,
                                  const ModelParams& params) {
  return -(Lambda * Lambda + lambda -
           params.beta * lambda / (Lambda + params.eta)) /
         params.A;
}

// Same coefficient via the factorization, using the stable shifted value of
// Lambda^2 + lambda^2 for the p pair (cross-check oracle).
inline cplx f2_coefficient_factored(const SpectralBranch& branch, int root_index,
                                    const ModelParams& params) {
  const std::array<cplx, 5> roots = branch.roots();
  const cplx L = roots[static_cast<size_t>(root_index)];
  const double l = branch.lambda;
  cplx l2_plus;  // Lambda^2 + lambda^2
  if (root_index == 3)
    l2_plus = branch.dev4 * (cplx(0.0, 2.0 * l) + branch.dev4);
  else if (root_index == 4)
    l2_plus = std::conj(branch.dev4 * (cplx(0.0, 2.0 * l) + branch.dev4));
  else
    l2_plus = L * L + l * l;
  return -params.B / l2_plus;
}

// Build (f1, f2) per mode from the Vandermonde coefficients.
//   f1 = sum_i C_i e^{Lambda_i t}
//   f2 = sum_i C_i kappa(Lambda_i) e^{Lambda_i t}
//        - (beta lambda / A) (sum_i C_i/(Lambda_i + eta)) e^{-eta t}.
inline void synthesize_mode(const SpectralBranch& branch,
                            const std::array<cplx, 5>& C,
                            const ModelParams& params, ExpSum& f1, ExpSum& f2) {
  const std::array<cplx, 5> roots = branch.roots();
  const double l = branch.lambda;
  f1 = ExpSum();
  f2 = ExpSum();
  cplx memory_amp{};
  for (int i = 0; i < 5; ++i) {
    const cplx Ci = C[static_cast<size_t>(i)];
    const cplx L = roots[static_cast<size_t>(i)];
    f1.add_term(Ci, L);
    f2.add_term(Ci * f2_coefficient_direct(L, l, params), L);
    memory_amp += Ci / (L + params.eta);
  }
  f2.add_term(-(params.beta * l / params.A) * memory_amp, cplx(-params.eta, 0.0));
}

struct SynthesisResult {
  ModalCoefficients coeffs;
  ModalSolution solution;
};

// Full pipeline for given final data: Cauchy vectors -> Vandermonde ->
// exponential sums and traces.  Throws on the first failing mode.
inline SynthesisResult synthesize_solutions(const FinalData& data,
                                            const std::vector<SpectralBranch>& branches,
                                            const ModelParams& params) {
  if (static_cast<int>(branches.size()) < data.modes())
    throw InvalidInput("synthesize_solutions: missing spectral branches");
  SynthesisResult out;
  std::vector<cplx> D;
  for (int n = 1; n <= data.modes(); ++n) {
    const SpectralBranch& br = branches[static_cast<size_t>(n - 1)];
    const std::array<double, 5> init = cauchy_init_vector(data, params, n);
    ModeCoefficients mc;
    mc.C = solve_vandermonde(br, init);
    mc.d_n = compute_dn(br, params);
    D.push_back(mc.C[3]);
    ExpSum f1, f2;
    synthesize_mode(br, mc.C, params, f1, f2);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.solution.u1_trace = out.solution.u1_trace + f1.scaled(sign * n);
    out.solution.u2_trace = out.solution.u2_trace + f2.scaled(sign * n);
    out.solution.f1.push_back(std::move(f1));
    out.solution.f2.push_back(std::move(f2));
    out.coeffs.modes.push_back(mc);
  }
  out.coeffs.calD = compute_calD(D, branches, params);
  return out;
}

struct EstimateReport {
  // (i) lambda |C2|^2 / (alpha1^2 lambda + rho1^2)  -> 1/4
  double ratio1_min = 0.0, ratio1_max = 0.0, ratio1_tail = 0.0;
  bool branch1_vacuous = true;
  // (ii) |C1|/|C2| * sqrt(lambda) bounded
  double ratio2_max = 0.0;
  bool branch2_vacuous = true;
  // (iii) lambda^5 |C4|^2 / (alpha2^2 lambda + rho2^2/lambda) -> A^2/4
  double ratio3_min = 0.0, ratio3_max = 0.0, ratio3_tail = 0.0;
  bool branch3_vacuous = true;
};

inline EstimateReport coefficient_estimates(const ModalCoefficients& coeffs,
                                            const FinalData& data) {
  if (coeffs.modes.size() < 8)
    throw InvalidInput("coefficient_estimates: need >= 8 modes");
  EstimateReport rep;
  rep.ratio1_min = rep.ratio3_min = 1e300;
  const int N = static_cast<int>(coeffs.modes.size());
  for (int n = 1; n <= N; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const double l = static_cast<double>(n) * n;
    const double denom1 =
        data.alpha1[i] * data.alpha1[i] * l + data.rho1[i] * data.rho1[i];
    if (denom1 > 1e-14) {
      const double c2sq = std::norm(coeffs.modes[i].C[1]);
      const double r1 = l * c2sq / denom1;
      rep.branch1_vacuous = false;
      rep.ratio1_min = std::min(rep.ratio1_min, r1);
      rep.ratio1_max = std::max(rep.ratio1_max, r1);
      if (n == N) rep.ratio1_tail = r1;
      const double c2 = std::abs(coeffs.modes[i].C[1]);
      if (c2 > 1e-14) {
        rep.branch2_vacuous = false;
        rep.ratio2_max = std::max(
            rep.ratio2_max, std::abs(coeffs.modes[i].C[0]) / c2 * std::sqrt(l));
      }
    }
    const double denom3 =
        data.alpha2[i] * data.alpha2[i] * l + data.rho2[i] * data.rho2[i] / l;
    if (denom3 > 1e-14) {
      const double c4sq = std::norm(coeffs.modes[i].C[3]);
      const double r3 = std::pow(l, 5) * c4sq / denom3;
      rep.branch3_vacuous = false;
      rep.ratio3_min = std::min(rep.ratio3_min, r3);
      rep.ratio3_max = std::max(rep.ratio3_max, r3);
      if (n == N) rep.ratio3_tail = r3;
    }
  }
  return rep;
}

}  // namespace wavemem
