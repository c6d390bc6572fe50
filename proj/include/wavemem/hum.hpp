#pragma once

// Finite-modal Hilbert Uniqueness Method: adjoint boundary traces, Gram
// system assembly from closed-form L^2(0,T) inner products, and control
// extraction.
//
// The adjoint problem swaps the coupling constants (A~ = B, B~ = A) and runs
// backward in time; its characteristic roots coincide with the forward ones
// because the quintic depends on the couplings only through the product AB.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "wavemem/common.hpp"
#include "wavemem/expsum.hpp"
#include "wavemem/modal.hpp"
#include "wavemem/spectrum.hpp"

namespace wavemem {

// Boundary trace pair of one adjoint solution:
//   w(t) = z1x(t,pi) - beta int_t^T e^{-eta(s-t)} z1x(s,pi) ds,
//   v(t) = z2x(t,pi).
struct TracePair {
  ExpSum w;
  ExpSum v;
};

// Build the adjoint solution with final data `data` (position/velocity pairs
// for both components) and return its modified boundary traces.  The solution
// depends on T - t: we synthesize in reversed time tau = T - t with Cauchy
// data (alpha1, -rho1, alpha2, -rho2) (velocities flip sign under reversal)
// and map back.
inline TracePair adjoint_traces(const FinalData& data, const ModelParams& params,
                                const std::vector<SpectralBranch>& branches) {
  const ModelParams adj = params.adjoint();
  FinalData reversed = data;
  for (double& v : reversed.rho1) v = -v;
  for (double& v : reversed.rho2) v = -v;
  const SynthesisResult syn = synthesize_solutions(reversed, branches, adj);

  const ExpSum z1x = syn.solution.u1_trace.time_reversed(params.T);
  const ExpSum z2x = syn.solution.u2_trace.time_reversed(params.T);

  TracePair out;
  out.w = z1x - z1x.backward_memory(params.beta, params.eta, params.T);
  out.v = z2x;
  if (!out.w.is_real() || !out.v.is_real())
    throw ConvergenceError("adjoint_traces: trace failed realness check");
  return out;
}

// Basis ordering: mode n contributes four consecutive slots
// (alpha1_n, rho1_n, alpha2_n, rho2_n) at offset 4(n-1).
inline FinalData basis_element(int N, int index) {
  FinalData e(N);
  const int n = index / 4;
  const int slot = index % 4;
  const size_t i = static_cast<size_t>(n);
  if (slot == 0)
    e.alpha1[i] = 1.0;
  else if (slot == 1)
    e.rho1[i] = 1.0;
  else if (slot == 2)
    e.alpha2[i] = 1.0;
  else
    e.rho2[i] = 1.0;
  return e;
}

// Sobolev diagonal scaling per slot: (n, 1, n, 1/n).  Used to precondition
// the Gram solve; raw entries span many orders of magnitude in n.
inline double sobolev_weight(int index) {
  const int n = index / 4 + 1;
  const int slot = index % 4;
  if (slot == 0 || slot == 2) return static_cast<double>(n);
  if (slot == 1) return 1.0;
  return 1.0 / static_cast<double>(n);
}

struct GramSystem {
  int N = 0;
  double T = 0.0;
  std::vector<TracePair> basis;  // 4N trace pairs, basis order
  Eigen::MatrixXd G;             // G_ab = int_0^T (w_a w_b + v_a v_b) dt
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  double min_eigenvalue = 0.0;   // of the Sobolev-scaled Gram matrix
  double max_eigenvalue = 0.0;
  double solve_residual = 0.0;   // ||G c - b|| / ||b||
};

// Assemble the 4N x 4N Gram matrix of adjoint trace inner products.
inline GramSystem assemble_gram(int N, double T, const ModelParams& params,
                                const std::vector<SpectralBranch>& branches) {
  if (!(T > 2.0 * PI))
    throw InvalidInput("assemble_gram: controllability requires T > 2*pi");
  if (N < 1 || N > static_cast<int>(branches.size()))
    throw InvalidInput("assemble_gram: N out of range of computed branches");
  ModelParams p = params;
  p.T = T;
  GramSystem sys;
  sys.N = N;
  sys.T = T;
  const int dim = 4 * N;
  for (int a = 0; a < dim; ++a)
    sys.basis.push_back(adjoint_traces(basis_element(N, a), p, branches));

  sys.G = Eigen::MatrixXd(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int bcol = 0; bcol <= a; ++bcol) {
      const double val =
          sys.basis[static_cast<size_t>(a)].w
              .inner(sys.basis[static_cast<size_t>(bcol)].w, 0.0, T).real() +
          sys.basis[static_cast<size_t>(a)].v
              .inner(sys.basis[static_cast<size_t>(bcol)].v, 0.0, T).real();
      sys.G(a, bcol) = val;
      sys.G(bcol, a) = val;
    }
  }

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) S(a, a) = 1.0 / sobolev_weight(a);
  const Eigen::MatrixXd Gs = S * sys.G * S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gs);
  sys.min_eigenvalue = es.eigenvalues().minCoeff();
  sys.max_eigenvalue = es.eigenvalues().maxCoeff();
  if (!(sys.min_eigenvalue > 1e-12 * sys.max_eigenvalue))
    throw ControllabilityError(
        "assemble_gram: Gram matrix numerically singular or indefinite");
  return sys;
}

// Pairing of the target state with the basis final data:
//   b_a = (pi/2) (-u11 alpha1 + u10 rho1 - u21 alpha2 + u20 rho2)
// where the target FinalData carries (u10, u11, u20, u21) in its
// (alpha1, rho1, alpha2, rho2) fields.
inline Eigen::VectorXd rhs_vector(const FinalData& target, int N) {
  if (target.modes() < N) throw InvalidInput("rhs_vector: target has too few modes");
  Eigen::VectorXd b(4 * N);
  for (int n = 1; n <= N; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const int off = 4 * (n - 1);
    b(off + 0) = -(PI / 2.0) * target.rho1[i];    // pairs with alpha1 slot
    b(off + 1) = (PI / 2.0) * target.alpha1[i];   // pairs with rho1 slot
    b(off + 2) = -(PI / 2.0) * target.rho2[i];
    b(off + 3) = (PI / 2.0) * target.alpha2[i];
  }
  return b;
}

// Solve G c = b with Sobolev pre-scaling and store the solution in place.
inline void solve_gram(GramSystem& sys, const Eigen::VectorXd& b) {
  const int dim = 4 * sys.N;
  if (b.size() != dim) throw InvalidInput("solve_gram: rhs size mismatch");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) S(a, a) = 1.0 / sobolev_weight(a);
  const Eigen::MatrixXd Gs = S * sys.G * S;
  const Eigen::VectorXd y = Gs.ldlt().solve(S * b);
  sys.b = b;
  sys.c = S * y;
  const double bn = b.norm();
  sys.solve_residual = (sys.G * sys.c - b).norm() / (bn > 0.0 ? bn : 1.0);
}

struct Controls {
  ExpSum g1;  // acts on u1(t, pi)
  ExpSum g2;  // acts on u2xx(t, pi)
  double g1_norm_sq = 0.0;
  double g2_norm_sq = 0.0;
};

// g1 = w[c], g2 = -v[c] for the optimal adjoint data sum_a c_a e_a.
inline Controls synthesize_controls(const GramSystem& sys) {
  if (sys.c.size() != 4 * sys.N)
    throw InvalidInput("synthesize_controls: system not solved");
  if (sys.b.norm() > 0.0 && sys.solve_residual > 1e-8)
    throw ControllabilityError("synthesize_controls: Gram solve residual too large");
  Controls out;
  for (int a = 0; a < 4 * sys.N; ++a) {
    const double ca = sys.c(a);
    if (ca == 0.0) continue;
    out.g1 = out.g1 + sys.basis[static_cast<size_t>(a)].w.scaled(ca);
    out.g2 = out.g2 - sys.basis[static_cast<size_t>(a)].v.scaled(ca);
  }
  out.g1_norm_sq = out.g1.l2_norm_sq(0.0, sys.T);
  out.g2_norm_sq = out.g2.l2_norm_sq(0.0, sys.T);
  return out;
}

// End-to-end convenience: controls steering zero initial data to `target`.
inline Controls hum_controls(const FinalData& target, const ModelParams& params,
                             const std::vector<SpectralBranch>& branches) {
  GramSystem sys = assemble_gram(target.modes(), params.T, params, branches);
  solve_gram(sys, rhs_vector(target, target.modes()));
  return synthesize_controls(sys);
}

}  // namespace wavemem
