#pragma once

// Exact sparse (Laurent) polynomials over the rationals, the monomial
// symmetric basis, Jack polynomials at a fixed rational parameter, and the
// f_r / g_r families.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "selberg/combinat.hpp"

namespace selberg {

using Exponent = std::vector<int>;

class SparsePoly {
 public:
  using TermMap = std::map<Exponent, BigRational>;

  explicit SparsePoly(std::size_t n_vars);

  static SparsePoly constant(std::size_t n_vars, const BigRational& c);
  static SparsePoly monomial(Exponent exp, const BigRational& c = 1);

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c·x^exp; drops the term if the coefficient cancels to zero.
  void add_term(const Exponent& exp, const BigRational& c);
  BigRational coefficient(const Exponent& exp) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const BigRational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const BigRational& c) { return a *= c; }
  friend SparsePoly operator*(const BigRational& c, SparsePoly a) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  /// Multiplies every term by x^shift.
  SparsePoly shifted(const Exponent& shift) const;

  /// Sets the last variable to zero and drops it.
  SparsePoly drop_last_variable() const;

  bool is_symmetric() const;
  bool is_homogeneous(int degree) const;
  bool has_negative_exponents() const;

  BigRational eval(std::span<const BigRational> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;
  double eval(std::span<const double> point) const;

  /// Coefficients in the monomial symmetric basis, keyed by partition.
  /// Throws std::invalid_argument if the polynomial is not symmetric.
  std::map<Partition, BigRational> monomial_expansion() const;

  /// Human-readable monomial-basis form, e.g. "m[2] + 2/3*m[1,1]". Terms are
  /// ordered by dominance (higher first) then reverse lex.
  std::string to_pretty() const;
  /// Inverse of to_pretty for a symmetric polynomial in n_vars variables.
  static SparsePoly parse_pretty(const std::string& text, std::size_t n_vars);

 private:
  std::size_t n_vars_;
  TermMap terms_;
};

void to_json(nlohmann::json& j, const SparsePoly& p);
SparsePoly sparse_poly_from_json(const nlohmann::json& j);

/// Double-precision copy of a polynomial for repeated evaluation at
/// quadrature nodes.
class NumericPoly {
 public:
  explicit NumericPoly(const SparsePoly& p);
  double operator()(std::span<const double> point) const;
  std::size_t n_vars() const { return n_vars_; }

 private:
  std::size_t n_vars_;
  int max_exp_ = 0;
  std::vector<int> exps_;  // row-major, n_vars_ per term
  std::vector<double> coeffs_;
};

/// Jack parameter α > 0 (exact). γ = 1/α in the Selberg setting.
class JackParam {
 public:
  explicit JackParam(BigRational alpha);
  static JackParam from_gamma(const BigRational& gamma) { return JackParam(BigRational(1) / gamma); }
  const BigRational& alpha() const { return alpha_; }

 private:
  BigRational alpha_;
};

SparsePoly monomial_sym(const Partition& lambda, std::size_t n);

/// Coefficients u_{λμ} of P_λ in the monomial basis (μ ≤ λ in dominance,
/// ℓ(μ) ≤ n); u_{λλ} = 1.
std::map<Partition, BigRational> jack_monomial_coefficients(const Partition& lambda, const JackParam& p,
                                                           std::size_t n);

/// Monic Jack polynomial P_λ^{(α)} in n variables.
SparsePoly jack_P(const Partition& lambda, const JackParam& p, std::size_t n);

/// Σ_{|ν|=r} (r choose ν)·(γ)_{ν₁}⋯(γ)_{νₙ}·x^{r−ν}.
SparsePoly f_r(int r, std::size_t n, const BigRational& gamma);

/// Coefficients g_0 … g_order of t^k in Π_i (1 − t xᵢ)^{−1/α}.
std::vector<SparsePoly> g_series(std::size_t n, const JackParam& p, int order);

/// (x₁⋯xₙ)^r · P(x⁻¹). Requires every exponent of P in [0, r].
SparsePoly laurent_invert(const SparsePoly& poly, int r);

}  // namespace selberg
