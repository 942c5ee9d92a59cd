#include "selberg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

#include "selberg/symfunc.hpp"

namespace selberg {

namespace {

double to_d(const BigRational& q) { return q.to_double(); }

std::vector<double> to_doubles(const std::vector<BigRational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.to_double());
  return out;
}

std::vector<ComplexF> to_complex(const std::vector<BigRational>& v) {
  std::vector<ComplexF> out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q.to_double(), 0.0);
  return out;
}

double factorial_d(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

void require_increasing(const std::vector<BigRational>& pts, const char* what) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i] > pts[i - 1])) reject(std::string(what) + ": points must be strictly increasing");
  }
}

// Lower bound on γ from the Selberg convergence condition:
// γ > −min{1/n, (α+λᵢ)/(n−i) for i < n, β/(n−1)}.
BigRational selberg_gamma_bound(int n, const BigRational& alpha, const BigRational& beta,
                                const std::vector<int>& lambda) {
  BigRational least = BigRational(1) / BigRational(n);
  if (n > 1) {
    least = std::min(least, beta / BigRational(n - 1));
    for (int i = 1; i < n; ++i) {
      least = std::min(least, (alpha + BigRational(lambda[static_cast<std::size_t>(i - 1)])) / BigRational(n - i));
    }
  }
  return -least;
}

void require_numeric_method(const IntegralSpec& spec, bool allow_mc) {
  if (spec.method == Method::Exact) reject(std::string(to_string(spec.theorem)) + " needs a numeric method");
  if (spec.method == Method::MonteCarlo && !allow_mc) {
    reject(std::string(to_string(spec.theorem)) + " supports only nested quadrature");
  }
  if (spec.method == Method::Nested && spec.m < 1) reject("node count m must be positive");
  if (spec.method == Method::MonteCarlo && spec.n_samples < 1000) reject("Monte Carlo needs at least 1000 samples");
}

void validate_selberg(const IntegralSpec& spec, const std::vector<int>& lambda) {
  if (spec.n < 1) reject("n must be positive");
  if (spec.beta.sign() <= 0) reject("need Re(beta) > 0");
  const BigRational bound = selberg_gamma_bound(spec.n, spec.alpha, spec.beta, lambda);
  if (!(spec.gamma > bound)) reject("gamma must exceed " + bound.to_string() + " for convergence");
  require_numeric_method(spec, true);
  if (spec.gamma.sign() <= 0) reject("numeric verification needs gamma > 0");
  if (spec.method == Method::Nested && spec.n > kMaxNestedDimension) {
    reject("nested quadrature supports n <= 3; use method mc");
  }
}

}  // namespace

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::T1: return "T1";
    case Theorem::T2: return "T2";
    case Theorem::T3: return "T3";
    case Theorem::T4: return "T4";
    case Theorem::DixonAnderson: return "DixonAnderson";
    case Theorem::Jn: return "Jn";
    case Theorem::Recursion: return "Recursion";
    case Theorem::IdentityChain: return "IdentityChain";
    case Theorem::Reduction: return "Reduction";
    case Theorem::CrossT2T3: return "CrossT2T3";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Nested: return "nested";
    case Method::MonteCarlo: return "mc";
    case Method::Exact: return "exact";
  }
  return "?";
}

Theorem theorem_from_string(std::string_view s) {
  for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::DixonAnderson, Theorem::Jn,
                    Theorem::Recursion, Theorem::IdentityChain, Theorem::Reduction, Theorem::CrossT2T3}) {
    if (to_string(t) == s) return t;
  }
  reject("unknown theorem '" + std::string(s) + "'");
}

Method method_from_string(std::string_view s) {
  for (Method m : {Method::Nested, Method::MonteCarlo, Method::Exact}) {
    if (to_string(m) == s) return m;
  }
  reject("unknown method '" + std::string(s) + "'");
}

void validate(const IntegralSpec& spec) {
  switch (spec.theorem) {
    case Theorem::T1: {
      if (spec.points.size() < 2) reject("T1 needs at least two x points");
      if (spec.alphas.size() != spec.points.size()) reject("T1 needs one exponent per x point");
      if (spec.n != static_cast<int>(spec.points.size())) reject("T1: n must equal the number of x points");
      if (spec.r < 0) reject("r must be nonnegative");
      require_increasing(spec.points, "T1");
      for (const auto& a : spec.alphas) {
        if (a.sign() <= 0) reject("T1 needs Re(alpha_i) > 0");
      }
      require_numeric_method(spec, false);
      break;
    }
    case Theorem::T2:
    case Theorem::CrossT2T3: {
      if (spec.r < 0) reject("r must be nonnegative");
      if (spec.alpha.sign() <= 0) reject("need Re(alpha) > 0");
      validate_selberg(spec, std::vector<int>(static_cast<std::size_t>(spec.n), spec.r));
      if (spec.theorem == Theorem::CrossT2T3 && spec.n < 2) reject("CrossT2T3 needs n >= 2");
      break;
    }
    case Theorem::T3: {
      if (spec.n < 1) reject("n must be positive");
      const std::vector<int> parts = spec.lambda.padded(static_cast<std::size_t>(spec.n));
      if (!(spec.alpha > BigRational(-parts.back()))) reject("need Re(alpha) > -lambda_n");
      validate_selberg(spec, parts);
      break;
    }
    case Theorem::T4: {
      if (spec.n < 2) reject("T4 needs n >= 2");
      if (spec.lambda.length() > static_cast<std::size_t>(spec.n - 1)) reject("T4 needs at most n-1 parts");
      if (spec.gamma.sign() <= 0) reject("T4 numeric verification needs gamma > 0");
      if (!spec.points.empty()) {
        if (spec.points.size() != static_cast<std::size_t>(spec.n)) reject("T4 needs n x points");
        require_increasing(spec.points, "T4");
      }
      require_numeric_method(spec, false);
      break;
    }
    case Theorem::DixonAnderson: {
      if (spec.points.size() < 2) reject("DixonAnderson needs at least two x points");
      if (spec.alphas.size() != spec.points.size()) reject("DixonAnderson needs one exponent per x point");
      if (spec.n != static_cast<int>(spec.points.size())) reject("DixonAnderson: n must equal the number of x points");
      require_increasing(spec.points, "DixonAnderson");
      for (const auto& a : spec.alphas) {
        if (a.sign() <= 0) reject("DixonAnderson needs Re(alpha_j) > 0");
      }
      require_numeric_method(spec, false);
      break;
    }
    case Theorem::Jn: {
      if (spec.n < 1) reject("n must be positive");
      if (spec.points.size() != static_cast<std::size_t>(spec.n - 1)) reject("Jn needs n-1 interior y points");
      require_increasing(spec.points, "Jn");
      for (const auto& y : spec.points) {
        if (!(y.sign() > 0 && y < BigRational(1))) reject("Jn points must lie in (0, 1)");
      }
      if (spec.alpha.sign() <= 0 || spec.beta.sign() <= 0 || spec.gamma.sign() <= 0) {
        reject("Jn needs positive alpha, beta, gamma");
      }
      require_numeric_method(spec, false);
      break;
    }
    case Theorem::Recursion: {
      if (spec.n < 2) reject("Recursion needs n >= 2");
      if (spec.lambda.length() > static_cast<std::size_t>(spec.n - 1)) reject("Recursion needs at most n-1 parts");
      break;
    }
    case Theorem::IdentityChain: {
      if (spec.n < 2) reject("IdentityChain needs n >= 2");
      if (spec.r < 0) reject("r must be nonnegative");
      if (spec.gamma.sign() <= 0) reject("IdentityChain needs gamma > 0");
      break;
    }
    case Theorem::Reduction: {
      if (spec.n < 1) reject("n must be positive");
      if (spec.lambda.length() != static_cast<std::size_t>(spec.n)) reject("Reduction needs exactly n nonzero parts");
      if (spec.gamma.sign() <= 0) reject("Reduction needs gamma > 0");
      break;
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

VerificationReport start_report(const IntegralSpec& spec, std::string method_detail) {
  VerificationReport rep;
  rep.spec = spec;
  rep.method_detail = std::move(method_detail);
  return rep;
}

void settle(VerificationReport& rep, ComplexF lhs, ComplexF rhs, double tolerance) {
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.abs_residual = std::abs(lhs - rhs);
  rep.rel_residual = rep.abs_residual / std::max(std::abs(rhs), 1e-300);
  rep.tolerance = tolerance;
  rep.passed = std::isfinite(rep.rel_residual) && rep.rel_residual <= tolerance;
}

void settle_mc(VerificationReport& rep, ComplexF lhs, ComplexF rhs, double std_error) {
  settle(rep, lhs, rhs, 0.0);
  rep.std_error = std_error;
  rep.tolerance = kMcSigmas * std_error;
  rep.passed = std::isfinite(rep.abs_residual) && rep.abs_residual <= rep.tolerance;
}

std::string nested_detail(int m) { return "nested gauss-jacobi m=" + std::to_string(m); }

std::string mc_detail(const IntegralSpec& spec) {
  return "mc beta-proposal samples=" + std::to_string(spec.n_samples) + " seed=" + std::to_string(spec.seed);
}

struct SelbergValue {
  ComplexF value;
  std::optional<double> std_error;
};

// ∫_{[0,1]^n} poly(x) × Selberg density, by the requested method.
SelbergValue selberg_integral(const SparsePoly& poly, const IntegralSpec& spec, double alpha) {
  const NumericPoly numeric(poly);
  const RealIntegrand f = [&numeric](std::span<const double> x) { return numeric(x); };
  const double beta = to_d(spec.beta);
  const double gamma = to_d(spec.gamma);
  if (spec.method == Method::MonteCarlo) {
    const McEstimate est = integrate_selberg_mc(f, spec.n, alpha, beta, gamma, spec.n_samples, spec.seed);
    return {est.value, est.std_error};
  }
  NestedOptions options;
  options.m = spec.m;
  return {integrate_selberg_nested(f, spec.n, alpha, beta, gamma, options), std::nullopt};
}

// Jack-average integrand P_λ with α; when α ≤ 0 < α + λₙ the common factor
// (x₁⋯xₙ)^{λₙ} moves into the weight so the quadrature sees α + λₙ > 0.
std::pair<SparsePoly, BigRational> kadell_integrand(const IntegralSpec& spec) {
  const JackParam param = JackParam::from_gamma(spec.gamma);
  const std::size_t n = static_cast<std::size_t>(spec.n);
  if (spec.alpha.sign() > 0) return {jack_P(spec.lambda, param, n), spec.alpha};
  std::vector<int> parts = spec.lambda.padded(n);
  const int last = parts.back();
  for (int& p : parts) p -= last;
  return {jack_P(Partition(parts), param, n), spec.alpha + BigRational(last)};
}

double vandermonde_value(std::span<const double> y) {
  double v = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) v *= y[j] - y[i];
  }
  return v;
}

}  // namespace

VerificationReport verify_theorem1(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep = start_report(spec, nested_detail(spec.m));
  const std::vector<double> x = to_doubles(spec.points);
  const std::vector<ComplexF> alpha = to_complex(spec.alphas);
  const std::size_t dim = x.size() - 1;
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = matrix_entry(i, j, x, alpha, spec.r, spec.m);
    }
  }
  const ComplexF lhs = a.partialPivLu().determinant();
  const ComplexF rhs = theorem1_rhs(x, alpha, spec.r);
  settle(rep, lhs, rhs, spec.tolerance.value_or(kNestedTolerance));
  return rep;
}

VerificationReport verify_rz(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep =
      start_report(spec, spec.method == Method::MonteCarlo ? mc_detail(spec) : nested_detail(spec.m));
  const SparsePoly f = f_r(spec.r, static_cast<std::size_t>(spec.n), spec.gamma);
  const SelbergValue lhs = selberg_integral(f, spec, to_d(spec.alpha));
  const ComplexF rhs = rz_rhs(spec.n, spec.r, to_d(spec.alpha), to_d(spec.beta), to_d(spec.gamma));
  if (lhs.std_error) {
    settle_mc(rep, lhs.value, rhs, *lhs.std_error);
  } else {
    settle(rep, lhs.value, rhs, spec.tolerance.value_or(kNestedTolerance));
  }
  return rep;
}

VerificationReport verify_kadell(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep =
      start_report(spec, spec.method == Method::MonteCarlo ? mc_detail(spec) : nested_detail(spec.m));
  const auto [poly, alpha] = kadell_integrand(spec);
  const SelbergValue integral = selberg_integral(poly, spec, to_d(alpha));
  const double norm = factorial_d(spec.n);
  const ComplexF lhs = integral.value / norm;
  const ComplexF rhs = kadell_rhs(spec.n, spec.lambda, to_d(spec.alpha), to_d(spec.beta), to_d(spec.gamma));
  if (integral.std_error) {
    settle_mc(rep, lhs, rhs, *integral.std_error / norm);
  } else {
    settle(rep, lhs, rhs, spec.tolerance.value_or(kNestedTolerance));
  }
  return rep;
}

VerificationReport verify_okounkov(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep = start_report(spec, nested_detail(spec.m));
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const JackParam param = JackParam::from_gamma(spec.gamma);
  const SparsePoly p_x = jack_P(spec.lambda, param, n);
  const NumericPoly p_y(jack_P(spec.lambda, param, n - 1));
  const double gamma = to_d(spec.gamma);
  const ComplexF prefactor = oo_prefactor(spec.lambda, spec.n, gamma);
  const RealIntegrand f = [&p_y](std::span<const double> y) { return p_y(y) * vandermonde_value(y); };
  const std::vector<double> exps(n, gamma);

  std::vector<std::vector<BigRational>> draws;
  if (spec.points.empty()) {
    for (int d = 0; d < kInterlacingDraws; ++d) draws.push_back(random_ordered_points(n, spec.seed + static_cast<std::uint64_t>(d)));
  } else {
    draws.push_back(spec.points);
  }

  std::ostringstream notes;
  bool first = true;
  for (const auto& pts : draws) {
    const std::vector<double> x = to_doubles(pts);
    double gaps = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) gaps *= std::pow(x[j] - x[i], 1.0 - 2.0 * gamma);
    }
    const ComplexF lhs = prefactor * gaps * integrate_interlacing(f, x, exps, spec.m);
    const ComplexF rhs(p_x.eval(std::span<const BigRational>(pts)).to_double(), 0.0);
    VerificationReport candidate = rep;
    settle(candidate, lhs, rhs, spec.tolerance.value_or(kNestedTolerance));
    notes << (first ? "" : "; ") << "x=(";
    for (std::size_t i = 0; i < pts.size(); ++i) notes << (i ? "," : "") << pts[i];
    notes << ") rel=" << candidate.rel_residual;
    if (first || candidate.rel_residual > rep.rel_residual || !std::isfinite(candidate.rel_residual)) {
      candidate.message = rep.message;
      rep = candidate;
      rep.spec.points = pts;
      if (spec.points.empty()) rep.spec.points.clear();
    }
    first = false;
  }
  rep.message = notes.str();
  return rep;
}

VerificationReport verify_dixon_anderson(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep = start_report(spec, nested_detail(spec.m));
  const std::vector<double> x = to_doubles(spec.points);
  const std::vector<double> exps = to_doubles(spec.alphas);
  const RealIntegrand f = [](std::span<const double> y) { return vandermonde_value(y); };
  const ComplexF lhs = integrate_interlacing(f, x, exps, spec.m);
  const ComplexF rhs = dixon_anderson_rhs(x, to_complex(spec.alphas));
  settle(rep, lhs, rhs, spec.tolerance.value_or(kNestedTolerance));
  return rep;
}

VerificationReport verify_jn(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep = start_report(spec, nested_detail(spec.m));
  const std::vector<double> y = to_doubles(spec.points);
  // The x-integral is the interlacing integral over the points (0, y, 1)
  // with exponents (α, γ, …, γ, β).
  std::vector<double> outer{0.0};
  outer.insert(outer.end(), y.begin(), y.end());
  outer.push_back(1.0);
  std::vector<double> exps(outer.size(), to_d(spec.gamma));
  exps.front() = to_d(spec.alpha);
  exps.back() = to_d(spec.beta);
  const RealIntegrand f = [](std::span<const double> x) { return vandermonde_value(x); };
  const ComplexF lhs = integrate_interlacing(f, outer, exps, spec.m);
  const ComplexF rhs = jn_closed(y, to_d(spec.alpha), to_d(spec.beta), to_d(spec.gamma));
  settle(rep, lhs, rhs, spec.tolerance.value_or(kNestedTolerance));
  return rep;
}

VerificationReport verify_identity_chain(int n, int r, const BigRational& gamma) {
  IntegralSpec spec;
  spec.theorem = Theorem::IdentityChain;
  spec.n = n;
  spec.r = r;
  spec.gamma = gamma;
  spec.method = Method::Exact;
  validate(spec);
  VerificationReport rep = start_report(spec, "exact rational coefficient comparison");

  const std::size_t nv = static_cast<std::size_t>(n);
  const JackParam param = JackParam::from_gamma(gamma);
  const BigRational r_factorial(factorial(static_cast<unsigned>(r)));
  const SparsePoly f = f_r(r, nv, gamma);
  const SparsePoly g = g_series(nv, param, r).back();

  std::vector<std::string> failures;
  // f_r = r!·(x₁⋯xₙ)^r·g_r^{(1/γ)}(x⁻¹)
  if (f != laurent_invert(g, r) * r_factorial) failures.emplace_back("f_r vs inverted g_r");
  // P_(r) = r!·g_r/(1/α)_r
  const BigRational one_over_alpha = BigRational(1) / param.alpha();
  const SparsePoly one_row = jack_P(Partition{r}, param, nv);
  if (one_row != g * (r_factorial / pochhammer(one_over_alpha, static_cast<unsigned>(r)))) {
    failures.emplace_back("P_(r) vs g_r");
  }
  // P_(r^k)(x) = (x₁⋯xₙ)^r P_(r^{n−k})(x⁻¹), 1 ≤ k ≤ n
  for (std::size_t k = 1; k <= nv; ++k) {
    const SparsePoly lhs = jack_P(Partition::rectangle(r, k), param, nv);
    const SparsePoly rhs = laurent_invert(jack_P(Partition::rectangle(r, nv - k), param, nv), r);
    if (lhs != rhs) failures.push_back("rectangle inversion k=" + std::to_string(k));
  }
  // f_r = (γ)_r P_(r^{n−1})
  const SparsePoly target = jack_P(Partition::rectangle(r, nv - 1), param, nv) *
                            pochhammer(gamma, static_cast<unsigned>(r));
  if (f != target) failures.emplace_back("f_r vs (gamma)_r P_(r^(n-1))");

  std::vector<BigRational> point;
  for (std::size_t i = 0; i < nv; ++i) point.emplace_back(BigInt(1), BigInt(static_cast<long>(i) + 2));
  const ComplexF lhs(f.eval(std::span<const BigRational>(point)).to_double(), 0.0);
  const ComplexF rhs(target.eval(std::span<const BigRational>(point)).to_double(), 0.0);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.tolerance = 0.0;
  rep.passed = failures.empty();
  rep.abs_residual = rep.rel_residual = rep.passed ? 0.0 : 1.0;
  if (rep.passed) {
    rep.message = "all " + std::to_string(nv + 3) + " identities hold exactly";
  } else {
    std::ostringstream os;
    os << "failed:";
    for (const auto& s : failures) os << ' ' << s << ';';
    rep.message = os.str();
  }
  return rep;
}

VerificationReport verify_reduction(int n, const Partition& lambda, const BigRational& alpha, const BigRational& beta,
                                    const BigRational& gamma) {
  IntegralSpec spec;
  spec.theorem = Theorem::Reduction;
  spec.n = n;
  spec.lambda = lambda;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.gamma = gamma;
  spec.method = Method::Exact;
  validate(spec);
  VerificationReport rep = start_report(spec, "exact polynomial identity + closed forms");

  const std::size_t nv = static_cast<std::size_t>(n);
  const JackParam param = JackParam::from_gamma(gamma);
  std::vector<int> parts = lambda.padded(nv);
  const int last = parts.back();
  for (int& p : parts) p -= last;
  const Partition mu(parts);
  const bool exact_ok = jack_P(lambda, param, nv) == jack_P(mu, param, nv).shifted(Exponent(nv, last));

  const ComplexF lhs = kadell_rhs(n, lambda, to_d(alpha), to_d(beta), to_d(gamma));
  const ComplexF rhs = kadell_rhs(n, mu, to_d(alpha) + last, to_d(beta), to_d(gamma));
  settle(rep, lhs, rhs, kReductionTolerance);
  if (!exact_ok) {
    rep.passed = false;
    rep.rel_residual = 1.0;
    rep.message = "P_lambda != (x1...xn)^lambda_n P_mu";
  } else {
    rep.message = "exact identity holds; mu=" + mu.to_string();
  }
  return rep;
}

VerificationReport verify_recursion(int n, const Partition& lambda, const BigRational& alpha,
                                    const BigRational& beta, const BigRational& gamma) {
  IntegralSpec spec;
  spec.theorem = Theorem::Recursion;
  spec.n = n;
  spec.lambda = lambda;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.gamma = gamma;
  spec.method = Method::Exact;
  validate(spec);
  VerificationReport rep = start_report(spec, "closed-form gamma products");

  const double a = to_d(alpha);
  const double b = to_d(beta);
  const double g = to_d(gamma);
  const double nf = factorial_d(n);
  // Full-cube normalisation: n! × ordered-region integral.
  const ComplexF lhs = nf * kadell_rhs(n, lambda, a, b, g);
  const ComplexF rhs = nf * kadell_rhs(n - 1, lambda, a + g, b + g, g) * kadell_step_factor(n, lambda, a, b, g);

  // The unrolled product after one induction step.
  const std::vector<int> parts = lambda.padded(static_cast<std::size_t>(n - 1));
  GammaProduct expanded;
  expanded.numerator(a).numerator(b).denominator(a + b + (n - 1) * g);
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = i + 1; j <= n - 1; ++j) {
      const double diff = parts[static_cast<std::size_t>(i - 1)] - parts[static_cast<std::size_t>(j - 1)];
      expanded.numerator((j - i + 1) * g + diff).denominator((j - i) * g + diff);
    }
    const double li = parts[static_cast<std::size_t>(i - 1)];
    expanded.numerator(a + (n - i) * g + li)
        .numerator(b + i * g)
        .denominator(a + b + (2 * n - i - 1) * g + li)
        .numerator(li + (n - i + 1) * g)
        .denominator(li + (n - i) * g);
  }
  const ComplexF unrolled = nf * expanded.evaluate();

  settle(rep, lhs, rhs, kClosedFormTolerance);
  const double unrolled_rel = std::abs(unrolled - lhs) / std::max(std::abs(lhs), 1e-300);
  rep.rel_residual = std::max(rep.rel_residual, unrolled_rel);
  rep.passed = rep.passed && unrolled_rel <= kClosedFormTolerance;
  std::ostringstream os;
  os << "unrolled product rel=" << unrolled_rel;
  rep.message = os.str();
  return rep;
}

VerificationReport verify_cross(const IntegralSpec& spec) {
  validate(spec);
  VerificationReport rep =
      start_report(spec, spec.method == Method::MonteCarlo ? mc_detail(spec) : nested_detail(spec.m));
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const SelbergValue t2 = selberg_integral(f_r(spec.r, n, spec.gamma), spec, to_d(spec.alpha));
  const SparsePoly jack = jack_P(Partition::rectangle(spec.r, n - 1), JackParam::from_gamma(spec.gamma), n);
  const SelbergValue t3 = selberg_integral(jack, spec, to_d(spec.alpha));  // = n! × ordered-region lhs
  const double scale = pochhammer(spec.gamma, static_cast<unsigned>(spec.r)).to_double();
  const ComplexF rhs = scale * t3.value;
  if (t2.std_error && t3.std_error) {
    settle_mc(rep, t2.value, rhs, std::hypot(*t2.std_error, scale * *t3.std_error));
  } else {
    settle(rep, t2.value, rhs, spec.tolerance.value_or(2.0 * kNestedTolerance));
  }
  return rep;
}

VerificationReport verify(const IntegralSpec& spec) {
  const auto start = Clock::now();
  VerificationReport rep;
  try {
    switch (spec.theorem) {
      case Theorem::T1: rep = verify_theorem1(spec); break;
      case Theorem::T2: rep = verify_rz(spec); break;
      case Theorem::T3: rep = verify_kadell(spec); break;
      case Theorem::T4: rep = verify_okounkov(spec); break;
      case Theorem::DixonAnderson: rep = verify_dixon_anderson(spec); break;
      case Theorem::Jn: rep = verify_jn(spec); break;
      case Theorem::Recursion: rep = verify_recursion(spec.n, spec.lambda, spec.alpha, spec.beta, spec.gamma); break;
      case Theorem::IdentityChain: rep = verify_identity_chain(spec.n, spec.r, spec.gamma); break;
      case Theorem::Reduction: rep = verify_reduction(spec.n, spec.lambda, spec.alpha, spec.beta, spec.gamma); break;
      case Theorem::CrossT2T3: rep = verify_cross(spec); break;
    }
    rep.spec.label = spec.label;
    rep.spec.seed = spec.seed;
  } catch (const std::exception& e) {
    rep = VerificationReport{};
    rep.spec = spec;
    rep.passed = false;
    rep.abs_residual = rep.rel_residual = std::numeric_limits<double>::infinity();
    rep.method_detail = std::string(to_string(spec.method));
    rep.message = std::string("error: ") + e.what();
  }
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

std::vector<VerificationReport> run_suite(const std::vector<IntegralSpec>& specs, SuiteOptions options) {
  std::vector<VerificationReport> out(specs.size());
  if (!options.parallel) {
    for (std::size_t i = 0; i < specs.size(); ++i) out[i] = verify(specs[i]);
    return out;
  }
  std::vector<std::future<VerificationReport>> futures;
  futures.reserve(specs.size());
  for (const auto& spec : specs) futures.push_back(std::async(std::launch::async, [&spec] { return verify(spec); }));
  for (std::size_t i = 0; i < specs.size(); ++i) out[i] = futures[i].get();
  return out;
}

std::vector<BigRational> random_ordered_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<int> eighths(0, 32);
  std::set<int> picked;
  while (picked.size() < count) picked.insert(eighths(engine));
  std::vector<BigRational> out;
  for (int k : picked) out.emplace_back(BigInt(k), BigInt(8));
  return out;
}

namespace {

BigRational q(const char* s) { return BigRational::parse(s); }

std::vector<BigRational> qs(std::initializer_list<const char*> items) {
  std::vector<BigRational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

const char* const kGammas[] = {"1/2", "1", "2", "1/3"};
const char* const kAlphaBeta[] = {"1/2", "1", "2", "5/2"};

// (α, β) pairs that together visit every grid value on both sides.
std::vector<std::pair<BigRational, BigRational>> rotated_pairs(std::size_t offset) {
  std::vector<std::pair<BigRational, BigRational>> out;
  for (std::size_t k = 0; k < 4; ++k) out.emplace_back(q(kAlphaBeta[k]), q(kAlphaBeta[(k + offset) % 4]));
  return out;
}

std::vector<Partition> partitions_up_to(int max_weight, std::size_t max_parts) {
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    for (auto& p : partitions_of(w, max_parts)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<IntegralSpec> default_suite() {
  std::vector<IntegralSpec> suite;
  auto add = [&suite](IntegralSpec spec, std::string label) {
    spec.label = std::move(label);
    suite.push_back(std::move(spec));
  };

  // Exact identity chain.
  for (int n : {2, 3, 4}) {
    for (int r = 0; r <= 4; ++r) {
      for (const char* g : {"1/3", "1/2", "1", "2", "3"}) {
        IntegralSpec s;
        s.theorem = Theorem::IdentityChain;
        s.method = Method::Exact;
        s.n = n;
        s.r = r;
        s.gamma = q(g);
        add(s, "chain");
      }
    }
  }

  // Determinant of beta-type integrals.
  const std::vector<std::vector<BigRational>> t1_points = {qs({"0", "1"}), qs({"0", "1", "2"}), qs({"0", "1/2", "2"})};
  const std::vector<std::vector<BigRational>> t1_alphas = {qs({"1", "1", "1"}), qs({"1/2", "1", "3/2"}),
                                                           qs({"2", "1", "1"})};
  for (const auto& x : t1_points) {
    for (const auto& a : t1_alphas) {
      for (int r = 0; r <= 2; ++r) {
        IntegralSpec s;
        s.theorem = Theorem::T1;
        s.n = static_cast<int>(x.size());
        s.points = x;
        s.alphas.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(x.size()));
        s.r = r;
        add(s, "grid");
      }
    }
  }

  // Generalised Selberg integral, nested.
  for (int n = 1; n <= 3; ++n) {
    for (int r = 0; r <= 3; ++r) {
      for (std::size_t gi = 0; gi < 4; ++gi) {
        for (const auto& [a, b] : rotated_pairs(gi + static_cast<std::size_t>(r))) {
          IntegralSpec s;
          s.theorem = Theorem::T2;
          s.n = n;
          s.r = r;
          s.alpha = a;
          s.beta = b;
          s.gamma = q(kGammas[gi]);
          add(s, "grid");
        }
      }
    }
  }
  // Generalised Selberg integral, Monte Carlo.
  {
    std::uint64_t seed = 1000;
    for (int n : {4, 5}) {
      for (int r : {0, 1, 2}) {
        IntegralSpec s;
        s.theorem = Theorem::T2;
        s.method = Method::MonteCarlo;
        s.n = n;
        s.r = r;
        s.alpha = q(kAlphaBeta[static_cast<std::size_t>(r + n) % 4]);
        s.beta = q(kAlphaBeta[static_cast<std::size_t>(r + 1) % 4]);
        s.gamma = q(kGammas[static_cast<std::size_t>(r + n) % 4]);
        s.seed = seed++;
        add(s, "grid-mc");
      }
    }
  }

  // Jack averages, nested, |λ| ≤ 6.
  for (int n = 1; n <= 3; ++n) {
    for (const Partition& lambda : partitions_up_to(6, static_cast<std::size_t>(n))) {
      for (std::size_t gi = 0; gi < 4; ++gi) {
        for (const auto& [a, b] : rotated_pairs(gi + static_cast<std::size_t>(lambda.weight()))) {
          IntegralSpec s;
          s.theorem = Theorem::T3;
          s.n = n;
          s.lambda = lambda;
          s.alpha = a;
          s.beta = b;
          s.gamma = q(kGammas[gi]);
          add(s, "grid");
        }
      }
    }
  }

  // Interlacing representation of Jack polynomials.
  {
    std::uint64_t seed = 2000;
    for (int n : {2, 3}) {
      for (const Partition& lambda : partitions_up_to(4, static_cast<std::size_t>(n - 1))) {
        for (const char* g : {"1/2", "1", "2"}) {
          IntegralSpec s;
          s.theorem = Theorem::T4;
          s.n = n;
          s.lambda = lambda;
          s.gamma = q(g);
          s.seed = seed;
          seed += kInterlacingDraws;
          add(s, "grid");
        }
      }
    }
  }

  // product interlacing integral (λ = 0).
  {
    const std::vector<std::vector<BigRational>> xs = {qs({"0", "1"}), qs({"0", "1", "2"}), qs({"0", "1", "3"}),
                                                      qs({"0", "1/2", "2"}), qs({"-1", "0", "1", "3"})};
    const std::vector<std::vector<BigRational>> as = {qs({"1", "1", "1", "1"}), qs({"1/2", "1", "3/2", "2"}),
                                                      qs({"2", "1/2", "1", "1/3"}), qs({"5/2", "1/3", "2", "1/2"})};
    for (const auto& x : xs) {
      for (const auto& a : as) {
        IntegralSpec s;
        s.theorem = Theorem::DixonAnderson;
        s.n = static_cast<int>(x.size());
        s.points = x;
        s.alphas.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(x.size()));
        add(s, "grid");
      }
    }
  }

  // Inner x-integral of the induction step.
  {
    const std::vector<std::vector<BigRational>> ys = {{}, qs({"1/2"}), qs({"1/3"}), qs({"1/4", "2/3"}),
                                                      qs({"1/3", "1/2"})};
    for (const auto& y : ys) {
      for (std::size_t gi = 0; gi < 4; ++gi) {
        for (const auto& [a, b] : rotated_pairs(gi + y.size())) {
          IntegralSpec s;
          s.theorem = Theorem::Jn;
          s.n = static_cast<int>(y.size()) + 1;
          s.points = y;
          s.alpha = a;
          s.beta = b;
          s.gamma = q(kGammas[gi]);
          add(s, "grid");
        }
      }
    }
  }

  // Induction step and λₙ reduction on closed forms.
  for (int n = 2; n <= 5; ++n) {
    for (const Partition& lambda : partitions_up_to(4, static_cast<std::size_t>(n - 1))) {
      for (std::size_t gi = 0; gi < 4; ++gi) {
        const auto [a, b] = rotated_pairs(gi)[static_cast<std::size_t>(lambda.weight() + n) % 4];
        IntegralSpec s;
        s.theorem = Theorem::Recursion;
        s.method = Method::Exact;
        s.n = n;
        s.lambda = lambda;
        s.alpha = a;
        s.beta = b;
        s.gamma = q(kGammas[gi]);
        add(s, "grid");
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (const Partition& lambda : partitions_up_to(6, static_cast<std::size_t>(n))) {
      if (lambda.length() != static_cast<std::size_t>(n)) continue;
      for (std::size_t gi = 0; gi < 4; ++gi) {
        const auto [a, b] = rotated_pairs(gi)[static_cast<std::size_t>(lambda.weight()) % 4];
        IntegralSpec s;
        s.theorem = Theorem::Reduction;
        s.method = Method::Exact;
        s.n = n;
        s.lambda = lambda;
        s.alpha = a;
        s.beta = b;
        s.gamma = q(kGammas[gi]);
        add(s, "grid");
      }
    }
  }

  // End-to-end reduction of the generalised Selberg integral to the Jack average.
  for (int n : {2, 3}) {
    for (int r = 0; r <= 3; ++r) {
      const auto [a, b] = rotated_pairs(static_cast<std::size_t>(r))[static_cast<std::size_t>(n)];
      IntegralSpec s;
      s.theorem = Theorem::CrossT2T3;
      s.n = n;
      s.r = r;
      s.alpha = a;
      s.beta = b;
      s.gamma = q(kGammas[static_cast<std::size_t>(r + n) % 4]);
      add(s, "grid");
    }
  }
  return suite;
}

}  // namespace selberg
