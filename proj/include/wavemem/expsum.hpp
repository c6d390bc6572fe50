#pragma once

// Exact finite sums of complex exponentials  f(t) = sum_k a_k e^{mu_k t}.
// This is the canonical function representation of the whole pipeline:
// solutions, boundary traces, windows applied to traces, and controls are all
// exponential sums, so convolutions with e^{-eta t} and L^2 inner products
// are closed-form and carry no quadrature error.
//
// Representation invariants:
//   - exponents are pairwise distinct; amplitudes are merged on collision
//     within 1e-12,
//   - terms are kept sorted by exponent so that equal sums have identical
//     term order (deterministic serialization).

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavemem/common.hpp"

namespace wavemem {

struct ExpTerm {
  cplx amplitude;
  cplx exponent;
};

class ExpSum {
 public:
  ExpSum() = default;

  explicit ExpSum(std::vector<ExpTerm> terms) {
    for (const auto& t : terms) add_term(t.amplitude, t.exponent);
  }

  static ExpSum single(cplx amplitude, cplx exponent) {
    ExpSum f;
    f.add_term(amplitude, exponent);
    return f;
  }

  void add_term(cplx amplitude, cplx exponent) {
    if (amplitude == cplx(0.0, 0.0)) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (std::abs(it->exponent - exponent) < TOL_MERGE) {
        it->amplitude += amplitude;
        if (it->amplitude == cplx(0.0, 0.0)) terms_.erase(it);
        return;
      }
    }
    ExpTerm nt{amplitude, exponent};
    auto pos = std::lower_bound(
        terms_.begin(), terms_.end(), nt, [](const ExpTerm& x, const ExpTerm& y) {
          if (x.exponent.real() != y.exponent.real())
            return x.exponent.real() < y.exponent.real();
          return x.exponent.imag() < y.exponent.imag();
        });
    terms_.insert(pos, nt);
  }

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  cplx evaluate(double t) const {
    cplx v{};
    for (const auto& term : terms_) v += term.amplitude * std::exp(term.exponent * t);
    return v;
  }

  double evaluate_real(double t) const { return evaluate(t).real(); }

  // Largest |amplitude| over all terms (0 for the empty sum).
  double max_amplitude() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.amplitude));
    return m;
  }

  // Amplitude attached to the exponent nearest `exponent` within `tol`
  // (0 if no term matches): used to measure leakage after annihilation.
  cplx amplitude_at(cplx exponent, double tol = 1e-9) const {
    for (const auto& t : terms_) {
      if (std::abs(t.exponent - exponent) < tol) return t.amplitude;
    }
    return cplx(0.0, 0.0);
  }

  // Closed under conjugation (real-valued on the real line) to tolerance,
  // relative to the largest amplitude.
  bool is_real(double tol = TOL_CLOSED_FORM) const {
    const double scale = std::max(max_amplitude(), 1e-300);
    for (const auto& t : terms_) {
      cplx want_amp = std::conj(t.amplitude);
      cplx want_exp = std::conj(t.exponent);
      cplx got = amplitude_at(want_exp, 1e-9);
      if (std::abs(got - want_amp) > tol * scale) return false;
    }
    return true;
  }

  ExpSum operator+(const ExpSum& other) const {
    ExpSum out = *this;
    for (const auto& t : other.terms_) out.add_term(t.amplitude, t.exponent);
    return out;
  }

  ExpSum operator-(const ExpSum& other) const {
    ExpSum out = *this;
    for (const auto& t : other.terms_) out.add_term(-t.amplitude, t.exponent);
    return out;
  }

  ExpSum scaled(cplx c) const {
    ExpSum out;
    for (const auto& t : terms_) out.add_term(c * t.amplitude, t.exponent);
    return out;
  }

  ExpSum conjugated() const {
    ExpSum out;
    for (const auto& t : terms_)
      out.add_term(std::conj(t.amplitude), std::conj(t.exponent));
    return out;
  }

  // k-th derivative, exact.
  ExpSum derivative(int k = 1) const {
    ExpSum out;
    for (const auto& t : terms_) {
      cplx factor = 1.0;
      for (int i = 0; i < k; ++i) factor *= t.exponent;
      out.add_term(factor * t.amplitude, t.exponent);
    }
    return out;
  }

  // g(t) = f(T - t): amplitude a e^{mu T} with exponent -mu.
  ExpSum time_reversed(double T) const {
    ExpSum out;
    for (const auto& t : terms_)
      out.add_term(t.amplitude * std::exp(t.exponent * T), -t.exponent);
    return out;
  }

  // Forward memory convolution  (f * e^{-eta .})(t) = int_0^t e^{-eta(t-s)} f(s) ds.
  // Requires |mu + eta| above merge tolerance for every exponent (otherwise
  // the result leaves the exponential-sum class).
  ExpSum forward_memory(double eta) const {
    ExpSum out;
    for (const auto& t : terms_) {
      const cplx d = t.exponent + eta;
      if (std::abs(d) < TOL_MERGE)
        throw InvalidInput("forward_memory: exponent collides with -eta");
      out.add_term(t.amplitude / d, t.exponent);
      out.add_term(-t.amplitude / d, cplx(-eta, 0.0));
    }
    return out;
  }

  // Backward memory convolution  beta * int_t^T e^{-eta(s-t)} f(s) ds
  // (Prop. form used by the modified wave trace).  For a term a e^{mu s}:
  //   beta * (e^{(mu-eta)T} e^{eta t} - e^{mu t}) / (mu - eta).
  ExpSum backward_memory(double beta, double eta, double T) const {
    ExpSum out;
    for (const auto& t : terms_) {
      const cplx d = t.exponent - eta;
      if (std::abs(d) < TOL_MERGE)
        throw InvalidInput("backward_memory: exponent collides with eta");
      out.add_term(beta * t.amplitude * std::exp(d * T) / d, cplx(eta, 0.0));
      out.add_term(-beta * t.amplitude / d, t.exponent);
    }
    return out;
  }

  // int_{t0}^{t1} e^{z t} dt with the removable singularity evaluated as the
  // interval length when |z| < 1e-12.
  static cplx integral_exp(cplx z, double t0, double t1) {
    if (std::abs(z) < TOL_MERGE) return cplx(t1 - t0, 0.0);
    return (std::exp(z * t1) - std::exp(z * t0)) / z;
  }

  // int_{t0}^{t1} f(t) conj(g(t)) dt, closed form.
  cplx inner(const ExpSum& other, double t0, double t1) const {
    cplx total{};
    for (const auto& a : terms_) {
      for (const auto& b : other.terms_) {
        total += a.amplitude * std::conj(b.amplitude) *
                 integral_exp(a.exponent + std::conj(b.exponent), t0, t1);
      }
    }
    return total;
  }

  // int_{t0}^{t1} |f|^2 dt; the closed form is real up to rounding.
  double l2_norm_sq(double t0, double t1) const {
    return inner(*this, t0, t1).real();
  }

 private:
  std::vector<ExpTerm> terms_;
};

}  // namespace wavemem
