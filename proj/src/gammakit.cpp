#include "selberg/gammakit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace selberg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleDistance = 1e-9;
constexpr double kStirlingThreshold = 15.0;

// B_{2k} / (2k(2k−1)), k = 1..10
constexpr std::array<double, 10> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

void check_pole(const ComplexF& z) {
  const double k = std::round(z.real());
  if (k <= 0.0 && std::abs(z - ComplexF(k, 0.0)) < kPoleDistance) {
    throw PoleError("gamma pole at argument (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  }
}

// log sin(πz) modulo 2πi, without overflow for large |Im z|.
ComplexF log_sin_pi(const ComplexF& z) {
  const ComplexF i(0.0, 1.0);
  // sin(πz) = (i/2)·e^{−iπz}·(1 − e^{2iπz}) = (−i/2)·e^{iπz}·(1 − e^{−2iπz})
  if (z.imag() > 5.0) {
    return std::log(0.5 * i) - i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z));
  }
  if (z.imag() < -5.0) {
    return std::log(-0.5 * i) + i * kPi * z + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
  }
  return std::log(std::sin(kPi * z));
}

ComplexF log_gamma_right(ComplexF z) {
  ComplexF shift_sum(0.0, 0.0);
  while (std::abs(z) < kStirlingThreshold) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const ComplexF inv = 1.0 / z;
  const ComplexF inv2 = inv * inv;
  ComplexF series(0.0, 0.0);
  ComplexF power = inv;
  for (double c : kStirlingCoefficients) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift_sum;
}

}  // namespace

void require_finite(const ComplexF& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

ComplexF log_gamma(ComplexF z) {
  require_finite(z, "log_gamma");
  check_pole(z);
  if (z.imag() == 0.0 && z.real() > 0.0) return {std::lgamma(z.real()), 0.0};
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

ComplexF branch_log(double base) {
  if (base > 0.0) return {std::log(base), 0.0};
  if (base < 0.0) return {std::log(-base), kPi};
  throw std::domain_error("branch_log: zero base");
}

ComplexF branch_pow(double base, ComplexF exponent) {
  if (base == 0.0) {
    if (exponent == ComplexF(0.0, 0.0)) return {1.0, 0.0};
    if (exponent.real() > 0.0) return {0.0, 0.0};
    throw std::domain_error("branch_pow: zero base with exponent of nonpositive real part");
  }
  return std::exp(exponent * branch_log(base));
}

GammaProduct& GammaProduct::numerator(ComplexF z) {
  log_sum_ += log_gamma(z);
  return *this;
}

GammaProduct& GammaProduct::denominator(ComplexF z) {
  log_sum_ -= log_gamma(z);
  return *this;
}

GammaProduct& GammaProduct::log_factor(ComplexF log_value) {
  log_sum_ += log_value;
  return *this;
}

GammaProduct& GammaProduct::scale(ComplexF factor) {
  prefactor_ *= factor;
  return *this;
}

ComplexF GammaProduct::evaluate() const { return prefactor_ * std::exp(log_sum_); }

ComplexF euler_beta(ComplexF a, ComplexF b) {
  return GammaProduct().numerator(a).numerator(b).denominator(a + b).evaluate();
}

namespace {

void require_increasing(std::span<const double> x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw std::invalid_argument(std::string(what) + ": non-finite point");
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": points must be strictly increasing");
    }
  }
}

}  // namespace

ComplexF theorem1_rhs(std::span<const double> x, std::span<const ComplexF> alpha, int r) {
  const std::size_t n = x.size();
  if (n < 2 || alpha.size() != n) throw std::invalid_argument("theorem1_rhs: need n >= 2 points and n exponents");
  if (r < 0) throw std::invalid_argument("theorem1_rhs: r must be nonnegative");
  require_increasing(x, "theorem1_rhs");
  for (const auto& a : alpha) require_finite(a, "theorem1_rhs");

  GammaProduct prefactor;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) prefactor.log_factor(std::log(x[j] - x[i]));
      prefactor.log_factor((alpha[i] - 1.0) * branch_log(x[j] - x[i]));
    }
  }

  ComplexF alpha_sum(0.0, 0.0);
  for (const auto& a : alpha) alpha_sum += a;
  const ComplexF log_denominator = log_gamma(alpha_sum + static_cast<double>(r));

  ComplexF sum(0.0, 0.0);
  for (const Composition& nu : compositions_of(r, static_cast<int>(n))) {
    ComplexF log_term = -log_denominator;
    double monomial = multinomial(r, nu).get_d();
    for (std::size_t i = 0; i < n; ++i) {
      log_term += log_gamma(alpha[i] + static_cast<double>(nu[i]));
      monomial *= std::pow(x[i], r - nu[i]);
    }
    if (monomial != 0.0) sum += monomial * std::exp(log_term);
  }
  return prefactor.evaluate() * sum;
}

ComplexF rz_rhs(int n, int r, ComplexF alpha, ComplexF beta, ComplexF gamma) {
  if (n < 1 || r < 0) throw std::invalid_argument("rz_rhs: need n >= 1 and r >= 0");
  const double nd = n;
  const double rd = r;
  GammaProduct gp;
  gp.numerator(alpha).numerator(alpha + beta + (nd - 1.0) * gamma + rd);
  gp.denominator(alpha + rd).denominator(alpha + beta + (nd - 1.0) * gamma);
  for (int i = 1; i <= n; ++i) {
    const double id = i;
    gp.numerator(alpha + (id - 1.0) * gamma + rd)
        .numerator(beta + (id - 1.0) * gamma)
        .numerator(id * gamma + 1.0)
        .denominator(alpha + beta + (id + nd - 2.0) * gamma + rd)
        .denominator(gamma + 1.0);
  }
  // (nγ)_r: needed for agreement with direct integration and with
  // n!(γ)_r × Jack average at λ = (r^{n−1}); vanishes at γ = 0 for r ≥ 1.
  gp.scale(pochhammer(nd * gamma, static_cast<unsigned>(r)));
  return gp.evaluate();
}

ComplexF kadell_rhs(int n, const Partition& lambda, ComplexF alpha, ComplexF beta, ComplexF gamma) {
  if (n < 1) throw std::invalid_argument("kadell_rhs: need n >= 1");
  const std::vector<int> parts = lambda.padded(static_cast<std::size_t>(n));
  GammaProduct gp;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double diff = parts[i - 1] - parts[j - 1];
      gp.numerator(static_cast<double>(j - i + 1) * gamma + diff);
      gp.denominator(static_cast<double>(j - i) * gamma + diff);
    }
  }
  for (int i = 1; i <= n; ++i) {
    const double li = parts[i - 1];
    gp.numerator(alpha + static_cast<double>(n - i) * gamma + li)
        .numerator(beta + static_cast<double>(i - 1) * gamma)
        .denominator(alpha + beta + static_cast<double>(2 * n - i - 1) * gamma + li);
  }
  return gp.evaluate();
}

ComplexF dixon_anderson_rhs(std::span<const double> x, std::span<const ComplexF> alpha) {
  const std::size_t n = x.size();
  if (n < 1 || alpha.size() != n) throw std::invalid_argument("dixon_anderson_rhs: need n points and n exponents");
  require_increasing(x, "dixon_anderson_rhs");
  GammaProduct gp;
  ComplexF alpha_sum(0.0, 0.0);
  for (const auto& a : alpha) {
    gp.numerator(a);
    alpha_sum += a;
  }
  gp.denominator(alpha_sum);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) gp.log_factor((alpha[i] + alpha[j] - 1.0) * std::log(x[j] - x[i]));
  }
  return gp.evaluate();
}

ComplexF oo_prefactor(const Partition& lambda, int n, ComplexF gamma) {
  if (n < 1) throw std::invalid_argument("oo_prefactor: need n >= 1");
  const std::vector<int> parts = lambda.padded(static_cast<std::size_t>(n - 1));
  GammaProduct gp;
  for (int i = 1; i <= n - 1; ++i) {
    const double li = parts[i - 1];
    gp.numerator(li + static_cast<double>(n - i + 1) * gamma)
        .denominator(li + static_cast<double>(n - i) * gamma)
        .denominator(gamma);
  }
  return gp.evaluate();
}

ComplexF jn_closed(std::span<const double> y, ComplexF alpha, ComplexF beta, ComplexF gamma) {
  require_increasing(y, "jn_closed");
  for (double v : y) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("jn_closed: points must lie in (0, 1)");
  }
  const double m = static_cast<double>(y.size());  // n − 1
  GammaProduct gp;
  for (std::size_t k = 0; k < y.size(); ++k) gp.numerator(gamma);
  gp.numerator(alpha).numerator(beta).denominator(alpha + beta + m * gamma);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) gp.log_factor((2.0 * gamma - 1.0) * std::log(y[j] - y[i]));
    gp.log_factor((alpha + gamma - 1.0) * std::log(y[i]));
    gp.log_factor((beta + gamma - 1.0) * std::log1p(-y[i]));
  }
  return gp.evaluate();
}

ComplexF kadell_step_factor(int n, const Partition& lambda, ComplexF alpha, ComplexF beta, ComplexF gamma) {
  if (n < 2) throw std::invalid_argument("kadell_step_factor: need n >= 2");
  const std::vector<int> parts = lambda.padded(static_cast<std::size_t>(n - 1));
  GammaProduct gp;
  gp.numerator(alpha).numerator(beta).denominator(alpha + beta + static_cast<double>(n - 1) * gamma);
  for (int i = 1; i <= n - 1; ++i) {
    const double li = parts[i - 1];
    gp.numerator(li + static_cast<double>(n - i + 1) * gamma).denominator(li + static_cast<double>(n - i) * gamma);
  }
  return gp.evaluate();
}

}  // namespace selberg
