#pragma once

// Closed-form right-hand sides, evaluated as products of gamma functions in
// log space.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "selberg/combinat.hpp"

namespace selberg {

using ComplexF = std::complex<double>;

/// Raised when a gamma argument lies on (or within 1e-9 of) a pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws std::invalid_argument if z has a NaN or infinite component.
void require_finite(const ComplexF& z, const char* what);

/// log Γ(z) on the principal branch of the analytic continuation from the
/// positive real axis. Stirling series with upward recurrence, reflection
/// for Re z < 1/2.
ComplexF log_gamma(ComplexF z);

/// (−t)^s = t^s·e^{iπs} for negative bases; ordinary power otherwise.
/// Zero base gives 0 for Re s > 0 and 1 for s = 0.
ComplexF branch_pow(double base, ComplexF exponent);

/// log of a real base on the same branch (argument 0 or π).
ComplexF branch_log(double base);

/// prefactor · exp(Σ ±logΓ(argᵢ) + Σ extra logs).
class GammaProduct {
 public:
  GammaProduct& numerator(ComplexF z);
  GammaProduct& denominator(ComplexF z);
  GammaProduct& log_factor(ComplexF log_value);
  GammaProduct& scale(ComplexF factor);

  ComplexF log_value() const { return log_sum_; }
  ComplexF evaluate() const;

 private:
  ComplexF prefactor_{1.0, 0.0};
  ComplexF log_sum_{0.0, 0.0};
};

ComplexF euler_beta(ComplexF a, ComplexF b);

/// det(a_ij) closed form for ordered real x and exponents α (length n).
ComplexF theorem1_rhs(std::span<const double> x, std::span<const ComplexF> alpha, int r);

/// Generalised Selberg integral over [0,1]^n with f_r(x;γ) inserted.
ComplexF rz_rhs(int n, int r, ComplexF alpha, ComplexF beta, ComplexF gamma);

/// (1/n!)·∫ P_λ^{(1/γ)} × Selberg density, ℓ(λ) ≤ n.
ComplexF kadell_rhs(int n, const Partition& lambda, ComplexF alpha, ComplexF beta, ComplexF gamma);

/// Interlacing integral with exponents α over y ≺ x.
ComplexF dixon_anderson_rhs(std::span<const double> x, std::span<const ComplexF> alpha);

/// Prefactor of the interlacing representation of P_λ^{(1/γ)}, ℓ(λ) ≤ n−1.
ComplexF oo_prefactor(const Partition& lambda, int n, ComplexF gamma);

/// Closed form of the inner x-integral for 0 < y₁ < ⋯ < y_{n−1} < 1.
ComplexF jn_closed(std::span<const double> y, ComplexF alpha, ComplexF beta, ComplexF gamma);

/// Factor relating the ordered-region Jack averages in n and n−1
/// variables: Γ(α)Γ(β)/Γ(α+β+(n−1)γ) · Π_{i<n} Γ(λᵢ+(n−i+1)γ)/Γ(λᵢ+(n−i)γ).
ComplexF kadell_step_factor(int n, const Partition& lambda, ComplexF alpha, ComplexF beta, ComplexF gamma);

}  // namespace selberg
