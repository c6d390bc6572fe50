#pragma once

// Ingham-type machinery: window functions and their transforms, kernel-sum
// tail bounds, Monte-Carlo estimation of the inverse/direct observability
// constants, exact annihilation-operator algebra, and the finite-deficiency
// lower-bound report.

#include <cmath>
#include <cstdint>
#include <vector>

#include "wavemem/common.hpp"
#include "wavemem/expsum.hpp"
#include "wavemem/modal.hpp"
#include "wavemem/quadrature.hpp"
#include "wavemem/rng.hpp"
#include "wavemem/spectrum.hpp"

namespace wavemem {

// k(t) = sin(pi t / T) on [0, T], 0 elsewhere; transform K(u) = pi T / (pi^2 - T^2 u^2),
// with  int_0^T k(t) e^{iut} dt = (1 + e^{iuT}) K(u).
struct WindowSine {
  double T;

  explicit WindowSine(double T_) : T(T_) {
    if (!(T > 0.0)) throw InvalidInput("WindowSine: T > 0 required");
  }

  double k(double t) const {
    if (t < 0.0 || t > T) return 0.0;
    return std::sin(PI * t / T);
  }

  cplx K(cplx u) const {
    const cplx denom = PI * PI - T * T * u * u;
    if (std::abs(denom) < 1e-12)
      throw InvalidInput("WindowSine::K: u too close to the window pole");
    return PI * T / denom;
  }

  cplx transform(cplx u) const {
    const cplx i(0.0, 1.0);
    return (1.0 + std::exp(i * u * T)) * K(u);
  }
};

// k*(t) = cos(pi t / (2T)) on [-T, T], 0 elsewhere; K*(u) = 4 T pi / (pi^2 - 4 T^2 u^2),
// with  int_{-T}^{T} k*(t) e^{iut} dt = cos(uT) K*(u).
struct WindowCosine {
  double T;

  explicit WindowCosine(double T_) : T(T_) {
    if (!(T > 0.0)) throw InvalidInput("WindowCosine: T > 0 required");
  }

  double k(double t) const {
    if (t < -T || t > T) return 0.0;
    return std::cos(PI * t / (2.0 * T));
  }

  cplx K(cplx u) const {
    const cplx denom = PI * PI - 4.0 * T * T * u * u;
    if (std::abs(denom) < 1e-12)
      throw InvalidInput("WindowCosine::K: u too close to the window pole");
    return 4.0 * T * PI / denom;
  }

  cplx transform(cplx u) const { return std::cos(u * T) * K(u); }
};

// Absolute residual between high-order quadrature of the windowed transform
// and its closed form.
inline double window_transform_identity_check(const WindowSine& w, cplx u) {
  const cplx i(0.0, 1.0);
  const cplx quad = gauss_integrate(
      [&](double t) { return w.k(t) * std::exp(i * u * t); }, 0.0, w.T, 64);
  return std::abs(quad - w.transform(u));
}

inline double window_transform_identity_check(const WindowCosine& w, cplx u) {
  const cplx i(0.0, 1.0);
  const cplx quad = gauss_integrate(
      [&](double t) { return w.k(t) * std::exp(i * u * t); }, -w.T, w.T, 128);
  return std::abs(quad - w.transform(u));
}

// Tail bounds on the off-diagonal kernel sums:
//   S1(n) = sum_{m != n} |K(p_n - conj p_m)|  <=  2 pi / (T M^2),
//   S2(n) = sum_m       |K(p_n + p_m)|        <=  (4 pi / (T M^2)) * (1/2),
// over the computed modes, holding for every n >= n0_hat.
struct BoundReport {
  int n0_hat = -1;        // smallest index where both bounds hold for all n >= it
  double bound1 = 0.0;    // 2 pi / (T M^2)
  double bound2 = 0.0;    // (4 pi / (T M^2)) * sum 1/(4m^2-1) = 2 pi / (T M^2)
  double margin1 = 0.0;   // min over reported n of bound1 - S1(n)
  double margin2 = 0.0;
  bool holds = false;
};

inline BoundReport kernel_sum_bounds(const std::vector<SpectralBranch>& branches,
                                     double T, double epsilon, double M) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidInput("kernel_sum_bounds: epsilon in (0,1)");
  if (!(M > 2.0 * PI / (T * (1.0 - epsilon))))
    throw InvalidInput("kernel_sum_bounds: M must exceed 2*pi/(T(1-epsilon))");
  const int N = static_cast<int>(branches.size());
  const WindowSine w(T);
  BoundReport rep;
  rep.bound1 = 2.0 * PI / (T * M * M);
  rep.bound2 = (4.0 * PI / (T * M * M)) * 0.5;

  std::vector<double> s1(static_cast<size_t>(N)), s2(static_cast<size_t>(N));
  for (int n = 0; n < N; ++n) {
    double a = 0.0, b = 0.0;
    for (int m = 0; m < N; ++m) {
      const cplx pn = branches[static_cast<size_t>(n)].p;
      const cplx pm = branches[static_cast<size_t>(m)].p;
      if (m != n) a += std::abs(w.K(pn - std::conj(pm)));
      b += std::abs(w.K(pn + pm));
    }
    s1[static_cast<size_t>(n)] = a;
    s2[static_cast<size_t>(n)] = b;
  }
  // Smallest n0 such that both bounds hold for every n >= n0.
  int n0 = N + 1;
  for (int n = N; n >= 1; --n) {
    const size_t i = static_cast<size_t>(n - 1);
    if (s1[i] <= rep.bound1 && s2[i] <= rep.bound2)
      n0 = n;
    else
      break;
  }
  if (n0 <= N) {
    rep.n0_hat = n0;
    rep.holds = true;
    rep.margin1 = 1e300;
    rep.margin2 = 1e300;
    for (int n = n0; n <= N; ++n) {
      const size_t i = static_cast<size_t>(n - 1);
      rep.margin1 = std::min(rep.margin1, rep.bound1 - s1[i]);
      rep.margin2 = std::min(rep.margin2, rep.bound2 - s2[i]);
    }
  }
  return rep;
}

// A draw of modal coefficients for the exponential-sum pair (u1, u2):
//   u1 = sum_n R_n e^{r_n t} + C_n e^{i w_n t} + cc + D_n e^{i p_n t} + cc,
//   u2 = sum_n d_n D_n e^{i p_n t} + cc + calD e^{-eta t}.
struct InghamDraw {
  std::vector<double> R;
  std::vector<cplx> C;
  std::vector<cplx> D;
  double calD = 0.0;
};

inline InghamDraw random_draw(const std::vector<SpectralBranch>& branches,
                              const ModelParams& params, Rng& rng) {
  InghamDraw d;
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const cplx C = rng.normal_complex();
    const cplx D = rng.normal_complex();
    d.C.push_back(C);
    // Amplitude ratio hypothesis with mu = 1, nu = 1.
    d.R.push_back(std::abs(C) / static_cast<double>(k + 1));
    d.D.push_back(D);
  }
  d.calD = compute_calD(d.D, branches, params);
  return d;
}

inline ExpSum build_u1(const InghamDraw& d,
                       const std::vector<SpectralBranch>& branches) {
  const cplx i(0.0, 1.0);
  ExpSum u1;
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const SpectralBranch& br = branches[k];
    u1.add_term(d.R[k], br.r);
    u1.add_term(d.C[k], i * br.omega);
    u1.add_term(std::conj(d.C[k]), -i * std::conj(br.omega));
    u1.add_term(d.D[k], i * br.p);
    u1.add_term(std::conj(d.D[k]), -i * std::conj(br.p));
  }
  return u1;
}

inline ExpSum build_u2(const InghamDraw& d,
                       const std::vector<SpectralBranch>& branches,
                       const ModelParams& params) {
  const cplx i(0.0, 1.0);
  ExpSum u2;
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const cplx dn = compute_dn(branches[k], params);
    u2.add_term(dn * d.D[k], i * branches[k].p);
    u2.add_term(std::conj(dn * d.D[k]), -i * std::conj(branches[k].p));
  }
  u2.add_term(d.calD, cplx(-params.eta, 0.0));
  return u2;
}

namespace detail {

// Precomputed Gram of a fixed exponent basis on [t0, t1]:
// int |sum_k a_k e^{mu_k t}|^2 = a^H G a evaluated without per-draw exp calls.
class BasisGram {
 public:
  BasisGram(std::vector<cplx> exponents, double t0, double t1)
      : exps_(std::move(exponents)), n_(exps_.size()), g_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        g_[i * n_ + j] =
            ExpSum::integral_exp(exps_[i] + std::conj(exps_[j]), t0, t1);
      }
    }
  }

  double norm_sq(const std::vector<cplx>& a) const {
    if (a.size() != n_) throw InvalidInput("BasisGram: amplitude count mismatch");
    cplx total{};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        total += a[i] * std::conj(a[j]) * g_[i * n_ + j];
      }
    }
    return total.real();
  }

 private:
  std::vector<cplx> exps_;
  std::size_t n_;
  std::vector<cplx> g_;
};

inline std::vector<cplx> u1_exponents(const std::vector<SpectralBranch>& branches) {
  const cplx i(0.0, 1.0);
  std::vector<cplx> e;
  for (const SpectralBranch& br : branches) {
    e.push_back(br.r);
    e.push_back(i * br.omega);
    e.push_back(-i * std::conj(br.omega));
    e.push_back(i * br.p);
    e.push_back(-i * std::conj(br.p));
  }
  return e;
}

inline std::vector<cplx> u2_exponents(const std::vector<SpectralBranch>& branches,
                                      const ModelParams& params) {
  const cplx i(0.0, 1.0);
  std::vector<cplx> e;
  for (const SpectralBranch& br : branches) {
    e.push_back(i * br.p);
    e.push_back(-i * std::conj(br.p));
  }
  e.push_back(cplx(-params.eta, 0.0));
  return e;
}

inline void fill_u1_amplitudes(const InghamDraw& d, std::vector<cplx>& a) {
  a.clear();
  for (std::size_t k = 0; k < d.C.size(); ++k) {
    a.push_back(d.R[k]);
    a.push_back(d.C[k]);
    a.push_back(std::conj(d.C[k]));
    a.push_back(d.D[k]);
    a.push_back(std::conj(d.D[k]));
  }
}

inline void fill_u2_amplitudes(const InghamDraw& d, const std::vector<cplx>& dn,
                               std::vector<cplx>& a) {
  a.clear();
  for (std::size_t k = 0; k < d.D.size(); ++k) {
    a.push_back(dn[k] * d.D[k]);
    a.push_back(std::conj(dn[k] * d.D[k]));
  }
  a.push_back(d.calD);
}

}  // namespace detail

struct EstimateResult {
  double value = 0.0;              // c1_hat (min ratio) or c2_hat (max ratio)
  std::vector<double> ratios;     // per-draw ratios, draw order
};

// Inverse constant: minimum over random draws of
//   int_0^T (|u1|^2 + |u2|^2) / (sum |C|^2 + sum |D|^2 |p|^4 + calD^2).
inline EstimateResult estimate_inverse_constant(
    const std::vector<SpectralBranch>& branches, const ModelParams& params,
    int draws, double T, std::uint64_t seed, double gamma_hat) {
  if (draws < 100) throw InvalidInput("estimate_inverse_constant: draws >= 100");
  if (!(T > 2.0 * PI / gamma_hat))
    throw InvalidInput("estimate_inverse_constant: requires T > 2*pi/gamma_hat");
  const detail::BasisGram G1(detail::u1_exponents(branches), 0.0, T);
  const detail::BasisGram G2(detail::u2_exponents(branches, params), 0.0, T);
  std::vector<cplx> dn;
  for (const SpectralBranch& br : branches) dn.push_back(compute_dn(br, params));

  EstimateResult out;
  std::vector<cplx> a1, a2;
  for (int trial = 0; trial < draws; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    const InghamDraw d = random_draw(branches, params, rng);
    double denom = d.calD * d.calD;
    for (std::size_t k = 0; k < branches.size(); ++k) {
      denom += std::norm(d.C[k]) +
               std::norm(d.D[k]) * std::pow(std::abs(branches[k].p), 4);
    }
    if (denom < 1e-14) continue;  // degenerate draw, measure zero
    detail::fill_u1_amplitudes(d, a1);
    detail::fill_u2_amplitudes(d, dn, a2);
    out.ratios.push_back((G1.norm_sq(a1) + G2.norm_sq(a2)) / denom);
  }
  if (out.ratios.empty())
    throw ConvergenceError("estimate_inverse_constant: all draws degenerate");
  out.value = out.ratios[0];
  for (double r : out.ratios) out.value = std::min(out.value, r);
  return out;
}

// Direct constant: maximum over draws of
//   int_{-T}^{T} (|u1|^2 + |u2|^2) / (sum |C|^2 + sum |D|^2 |p|^4).
inline EstimateResult estimate_direct_constant(
    const std::vector<SpectralBranch>& branches, const ModelParams& params,
    int draws, double T, std::uint64_t seed, double gamma_hat) {
  if (draws < 100) throw InvalidInput("estimate_direct_constant: draws >= 100");
  if (!(T > PI / gamma_hat))
    throw InvalidInput("estimate_direct_constant: requires T > pi/gamma_hat");
  const detail::BasisGram G1(detail::u1_exponents(branches), -T, T);
  const detail::BasisGram G2(detail::u2_exponents(branches, params), -T, T);
  std::vector<cplx> dn;
  for (const SpectralBranch& br : branches) dn.push_back(compute_dn(br, params));

  EstimateResult out;
  std::vector<cplx> a1, a2;
  for (int trial = 0; trial < draws; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    const InghamDraw d = random_draw(branches, params, rng);
    double denom = 0.0;
    for (std::size_t k = 0; k < branches.size(); ++k) {
      denom += std::norm(d.C[k]) +
               std::norm(d.D[k]) * std::pow(std::abs(branches[k].p), 4);
    }
    if (denom < 1e-14) continue;
    detail::fill_u1_amplitudes(d, a1);
    detail::fill_u2_amplitudes(d, dn, a2);
    out.ratios.push_back((G1.norm_sq(a1) + G2.norm_sq(a2)) / denom);
  }
  if (out.ratios.empty())
    throw ConvergenceError("estimate_direct_constant: all draws degenerate");
  out.value = out.ratios[0];
  for (double r : out.ratios) out.value = std::max(out.value, r);
  return out;
}

// Averaging annihilator I_{delta,z} f(t) = f(t) - (1/delta) int_0^delta f(t+s) ds
// rescaled so that e^{izt} is killed exactly.  On a term a e^{mu t}:
//   factor(mu) = 1 - (e^{(mu - iz) delta} - 1) / ((mu - iz) delta),
// with the term deleted when mu = iz (within merge tolerance).
struct Annihilator {
  double delta;
  cplx z;

  Annihilator(double delta_, cplx z_) : delta(delta_), z(z_) {
    if (!(delta > 0.0)) throw InvalidInput("Annihilator: delta > 0 required");
  }

  cplx factor(cplx mu) const {
    const cplx i(0.0, 1.0);
    const cplx w = (mu - i * z) * delta;
    if (std::abs(w) < TOL_MERGE) return cplx(0.0, 0.0);
    return 1.0 - (std::exp(w) - 1.0) / w;
  }

  ExpSum apply(const ExpSum& f) const {
    const cplx i(0.0, 1.0);
    ExpSum out;
    for (const ExpTerm& t : f.terms()) {
      if (std::abs(t.exponent - i * z) < TOL_MERGE) continue;
      out.add_term(t.amplitude * factor(t.exponent), t.exponent);
    }
    return out;
  }
};

// I_{delta,-ir} . I_{delta,omega} . I_{delta,-conj omega} . I_{delta,p} . I_{delta,-conj p}:
// kills all five exponentials of one spectral mode.
struct ComposedAnnihilator {
  std::vector<Annihilator> ops;

  ComposedAnnihilator() = default;
  ComposedAnnihilator(double delta, double r, cplx omega, cplx p) {
    const cplx i(0.0, 1.0);
    ops.emplace_back(delta, -i * r);
    ops.emplace_back(delta, omega);
    ops.emplace_back(delta, -std::conj(omega));
    ops.emplace_back(delta, p);
    ops.emplace_back(delta, -std::conj(p));
  }

  explicit ComposedAnnihilator(std::vector<Annihilator> ops_) : ops(std::move(ops_)) {}

  ExpSum apply(const ExpSum& f) const {
    ExpSum out = f;
    for (const Annihilator& op : ops) out = op.apply(out);
    return out;
  }

  // Product factor a surviving exponent picks up.
  cplx survival_factor(cplx mu) const {
    cplx prod = 1.0;
    for (const Annihilator& op : ops) prod *= op.factor(mu);
    return prod;
  }
};

// Stack of per-mode composed annihilators for modes 1..m.
inline std::vector<ComposedAnnihilator> mode_annihilators(
    const std::vector<SpectralBranch>& branches, int modes, double delta) {
  if (modes > static_cast<int>(branches.size()))
    throw InvalidInput("mode_annihilators: not enough branches");
  std::vector<ComposedAnnihilator> ops;
  for (int n = 1; n <= modes; ++n) {
    const SpectralBranch& br = branches[static_cast<size_t>(n - 1)];
    ops.emplace_back(delta, br.r, br.omega, br.p);
  }
  return ops;
}

// delta = min(epsilon/(5 n0), T0/8), bumped by 1e-3 until every surviving
// exponent of modes >= n0 + the memory exponent keeps a product factor above
// 1e-12 in modulus (the degenerate deltas form a countable set).
inline double select_delta(const std::vector<SpectralBranch>& branches, int n0,
                           double epsilon, double T0, double eta) {
  if (n0 < 1 || n0 > static_cast<int>(branches.size()) + 1)
    throw InvalidInput("select_delta: n0 out of range");
  double delta = std::min(epsilon / (5.0 * n0), T0 / 8.0);
  const cplx i(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::vector<ComposedAnnihilator> ops =
        mode_annihilators(branches, n0 - 1, delta);
    bool ok = true;
    for (std::size_t k = static_cast<std::size_t>(n0 - 1);
         k < branches.size() && ok; ++k) {
      const std::array<cplx, 5> roots = branches[k].roots();
      for (const cplx& mu : roots) {
        cplx prod = 1.0;
        for (const ComposedAnnihilator& op : ops) prod *= op.survival_factor(mu);
        if (std::abs(prod) < 1e-12) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      cplx prod = 1.0;
      for (const ComposedAnnihilator& op : ops)
        prod *= op.survival_factor(cplx(-eta, 0.0));
      if (std::abs(prod) < 1e-12) ok = false;
    }
    if (ok) return delta;
    delta += 1e-3;
  }
  throw ConvergenceError("select_delta: no admissible delta found");
}

// Slack report for the three finite-deficiency lower bounds on a tail draw.
struct DeficiencyReport {
  int n0 = 1;
  double gamma = 0.0;      // M used in the D-sum bounds
  double m1 = 0.0;         // min |d_n| / |p_n|^2 over computed modes

  // Bound (a): int_0^T |u1_tail|^2 >= c * C_sum - D_term.
  double lhs_u1 = 0.0;
  double c_sum = 0.0;
  double d_term = 0.0;
  double c_hat = 0.0;      // (lhs + D_term) / C_sum, must be > 0
  bool bound_a_positive = false;

  // Bound (b): int_0^T |e^{eta t} (u2 - calD e^{-eta t})|^2 >= explicit RHS.
  double lhs_dsum = 0.0;
  double rhs_dsum = 0.0;
  bool bound_b_holds = false;
  double cpos_min = 0.0;   // min over tail of the positivity guard
  bool cpos_holds = false;

  // Bound (c): with the constant calD restored, via the Haraux shift.
  double delta = 0.0;
  double C0 = 0.0;
  double lhs_dD = 0.0;
  double rhs_dD_sum = 0.0;  // pi C0 T * weighted D-sum
  double cT_hat = 0.0;      // (lhs - rhs_sum) / calD^2 when calD != 0
  bool bound_c_positive = false;
};

// Evaluate the three lower bounds on a draw whose first n0-1 modes vanish.
inline DeficiencyReport finite_deficiency_inverse(
    const std::vector<SpectralBranch>& branches, const ModelParams& params,
    const InghamDraw& draw, int n0, double T, double epsilon, double gamma_hat,
    double alpha_hat) {
  const int N = static_cast<int>(branches.size());
  if (static_cast<int>(draw.C.size()) != N)
    throw InvalidInput("finite_deficiency_inverse: draw/branch size mismatch");
  for (int k = 0; k < n0 - 1; ++k) {
    const size_t i = static_cast<size_t>(k);
    if (draw.R[i] != 0.0 || draw.C[i] != cplx(0.0, 0.0) ||
        draw.D[i] != cplx(0.0, 0.0))
      throw InvalidInput("finite_deficiency_inverse: low modes must be zero");
  }
  if (!(T > 2.0 * PI / (gamma_hat * (1.0 - epsilon))))
    throw InvalidInput(
        "finite_deficiency_inverse: requires T > 2*pi/(gamma*(1-epsilon))");

  DeficiencyReport rep;
  rep.n0 = n0;
  rep.gamma = gamma_hat;
  rep.m1 = 1e300;
  for (const SpectralBranch& br : branches) {
    const double ratio = std::abs(compute_dn(br, params)) / std::norm(br.p);
    rep.m1 = std::min(rep.m1, ratio);
  }

  const cplx i(0.0, 1.0);

  // (a) full first component of the tail.
  const ExpSum u1 = build_u1(draw, branches);
  rep.lhs_u1 = u1.l2_norm_sq(0.0, T);
  for (int n = n0; n <= N; ++n) {
    const size_t k = static_cast<size_t>(n - 1);
    const SpectralBranch& br = branches[k];
    rep.c_sum += (1.0 + std::exp(-2.0 * (br.omega.imag() - alpha_hat) * T)) *
                 std::norm(draw.C[k]);
    rep.d_term += (1.0 / (PI * PI + 4.0 * T * T * br.p.imag() * br.p.imag()) +
                   2.0 / (T * T * gamma_hat * gamma_hat)) *
                  (1.0 + std::exp(-2.0 * br.p.imag() * T)) * std::norm(draw.D[k]);
  }
  rep.d_term *= 2.0 * PI * T;
  rep.c_hat = (rep.c_sum > 1e-14) ? (rep.lhs_u1 + rep.d_term) / rep.c_sum : 0.0;
  rep.bound_a_positive = (rep.c_sum <= 1e-14) || rep.c_hat > 0.0;

  // (b) weighted second-component sum, constant removed; the e^{eta t} weight
  // shifts every exponent by +eta.
  ExpSum G;
  for (int n = n0; n <= N; ++n) {
    const size_t k = static_cast<size_t>(n - 1);
    const SpectralBranch& br = branches[k];
    const cplx dn = compute_dn(br, params);
    G.add_term(dn * draw.D[k], params.eta + i * br.p);
    G.add_term(std::conj(dn * draw.D[k]), params.eta - i * std::conj(br.p));
  }
  rep.lhs_dsum = G.l2_norm_sq(0.0, T);
  rep.cpos_min = 1e300;
  double dsum = 0.0;
  for (int n = n0; n <= N; ++n) {
    const size_t k = static_cast<size_t>(n - 1);
    const SpectralBranch& br = branches[k];
    const double guard =
        1.0 / (PI * PI + 4.0 * T * T * br.p.imag() * br.p.imag()) -
        2.0 / (T * T * gamma_hat * gamma_hat);
    rep.cpos_min = std::min(rep.cpos_min, guard);
    dsum += guard * (1.0 + std::exp(-2.0 * br.p.imag() * T)) *
            std::norm(draw.D[k]) * std::pow(std::abs(br.p), 4);
  }
  rep.cpos_holds = rep.cpos_min > 0.0;
  rep.rhs_dsum = 2.0 * PI * T * rep.m1 * rep.m1 * dsum;
  rep.bound_b_holds = rep.lhs_dsum >= rep.rhs_dsum * (1.0 - 1e-10);

  // (c) constant restored, lower bound via the Haraux shift with
  // T0 = 2*pi/gamma, delta in (T0/4, T0/2).
  const double T0 = 2.0 * PI / gamma_hat;
  if (!(T > T0))
    throw InvalidInput("finite_deficiency_inverse: requires T > 2*pi/gamma_hat");
  rep.delta = 0.375 * T0;
  double sup_imp = 0.0;
  for (const SpectralBranch& br : branches)
    sup_imp = std::max(sup_imp, std::abs(br.p.imag()));
  rep.C0 = (rep.delta - T0 / 4.0) * (rep.delta - T0 / 4.0) /
           (8.0 * rep.delta * rep.delta) * std::exp(-T0 * sup_imp) * rep.m1 *
           rep.m1;
  ExpSum G1 = G;
  G1.add_term(draw.calD, cplx(0.0, 0.0));
  rep.lhs_dD = G1.l2_norm_sq(0.0, T);
  rep.rhs_dD_sum = PI * rep.C0 * T * dsum;
  const double slack = rep.lhs_dD - rep.rhs_dD_sum;
  rep.bound_c_positive = slack > 0.0;
  rep.cT_hat =
      (std::abs(draw.calD) > 1e-14) ? slack / (draw.calD * draw.calD) : 0.0;
  return rep;
}

}  // namespace wavemem
