#pragma once

// Numerical left-hand sides: Gauss–Jacobi rules on (0,1), beta-type matrix
// entries, interlacing-box integrals, and Selberg-density integrals by nested
// quadrature (n ≤ 3) or Monte Carlo.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "selberg/gammakit.hpp"

namespace selberg {

/// Gauss rule for ∫₀¹ g(t) t^a (1−t)^b dt.
struct JacobiRule {
  int m = 0;
  double a_exp = 0.0;
  double b_exp = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  auto apply(F&& g) const {
    decltype(g(0.0)) sum{};
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * g(nodes[k]);
    return sum;
  }
};

/// Golub–Welsch on the shifted Jacobi recurrence. Throws std::invalid_argument
/// for m < 1 or an exponent ≤ −1.
JacobiRule jacobi_rule(int m, double a_exp, double b_exp);

inline constexpr int kDefaultNodes = 64;
inline constexpr std::int64_t kDefaultMcSamples = 2'000'000;

/// a_ij = ∫_{xᵢ}^{xᵢ₊₁} y^{j+r} Π_ℓ (y − x_ℓ)^{α_ℓ−1} dy with 0-based i, j in
/// [0, n−2]. Negative bases take argument π.
ComplexF matrix_entry(std::size_t i, std::size_t j, std::span<const double> x, std::span<const ComplexF> alpha,
                      int r, int m = kDefaultNodes);

using RealIntegrand = std::function<double(std::span<const double>)>;

/// ∫_{y≺x} f(y) Π_{i,j} |yᵢ − xⱼ|^{exps_j − 1} dy over the box
/// yᵢ ∈ (xᵢ, xᵢ₊₁), by a tensor product of per-coordinate Jacobi rules.
ComplexF integrate_interlacing(const RealIntegrand& f, std::span<const double> x, std::span<const double> exps,
                               int m = kDefaultNodes);

struct NestedOptions {
  int m = kDefaultNodes;
  // Each level uses t = w^grading so corner couplings become smooth in w.
  int grading = 3;
};

inline constexpr int kMaxNestedDimension = 3;

/// ∫_{[0,1]^n} f(x) Π_{i<j}|xᵢ−xⱼ|^{2γ} Π xᵢ^{α−1}(1−xᵢ)^{β−1} dx for a
/// symmetric f, computed as n! times the ordered-simplex integral.
ComplexF integrate_selberg_nested(const RealIntegrand& f, int n, double alpha, double beta, double gamma,
                                  NestedOptions options = {});

struct McEstimate {
  ComplexF value;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Same integral with independent Beta(α, β) proposals per coordinate.
/// Bit-reproducible for a given seed.
McEstimate integrate_selberg_mc(const RealIntegrand& f, int n, double alpha, double beta, double gamma,
                                std::int64_t n_samples = kDefaultMcSamples, std::uint64_t seed = 0x5e1be79);

}  // namespace selberg
