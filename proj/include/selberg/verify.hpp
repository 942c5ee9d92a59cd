#pragma once

// Verification cases: each binds a numeric or exact left-hand side to its
// closed form and records residuals and a pass/fail verdict.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "selberg/combinat.hpp"
#include "selberg/gammakit.hpp"
#include "selberg/quadrature.hpp"

namespace selberg {

enum class Theorem {
  T1,             // determinant of beta-type integrals
  T2,             // generalised Selberg integral with f_r
  T3,             // Selberg average of a Jack polynomial
  T4,             // interlacing integral representation of P_λ
  DixonAnderson,  // interlacing integral with product closed form
  Jn,             // inner x-integral of the induction step
  Recursion,      // n → n−1 step on closed forms
  IdentityChain,  // f_r = (γ)_r P_{(r^{n−1})} and its intermediate steps
  Reduction,      // removal of the common λₙ columns
  CrossT2T3,      // numeric T2 integral against n!(γ)_r × numeric T3 integral
};

enum class Method { Nested, MonteCarlo, Exact };

std::string_view to_string(Theorem t);
std::string_view to_string(Method m);
Theorem theorem_from_string(std::string_view s);
Method method_from_string(std::string_view s);

inline constexpr double kNestedTolerance = 1e-8;
inline constexpr double kClosedFormTolerance = 1e-10;
inline constexpr double kReductionTolerance = 1e-11;
inline constexpr double kMcSigmas = 4.0;
inline constexpr int kInterlacingDraws = 3;

/// One verifiable instance. Parameters are exact rationals and become
/// doubles only at the quadrature / gamma boundary.
struct IntegralSpec {
  Theorem theorem = Theorem::T2;
  int n = 2;
  int r = 0;
  Partition lambda;
  BigRational alpha{1};
  BigRational beta{1};
  BigRational gamma{1};
  std::vector<BigRational> alphas;  // T1, DixonAnderson
  std::vector<BigRational> points;  // x for T1/T4/DixonAnderson, y for Jn
  Method method = Method::Nested;
  int m = kDefaultNodes;
  std::int64_t n_samples = kDefaultMcSamples;
  std::uint64_t seed = 20070101;
  std::optional<double> tolerance;
  std::string label;
};

struct VerificationReport {
  IntegralSpec spec;
  ComplexF lhs{0.0, 0.0};
  ComplexF rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::optional<double> std_error;
  double tolerance = 0.0;
  bool passed = false;
  double wall_time_ms = 0.0;
  std::string method_detail;
  std::string message;  // failure reason or per-step notes
};

/// Throws std::invalid_argument when the parameters violate the theorem's
/// hypotheses or the chosen method cannot handle them.
void validate(const IntegralSpec& spec);

/// Dispatches on spec.theorem. Errors raised while evaluating become a
/// failed report carrying the reason.
VerificationReport verify(const IntegralSpec& spec);

VerificationReport verify_theorem1(const IntegralSpec& spec);
VerificationReport verify_rz(const IntegralSpec& spec);
VerificationReport verify_kadell(const IntegralSpec& spec);
VerificationReport verify_okounkov(const IntegralSpec& spec);
VerificationReport verify_dixon_anderson(const IntegralSpec& spec);
VerificationReport verify_jn(const IntegralSpec& spec);
VerificationReport verify_identity_chain(int n, int r, const BigRational& gamma);
VerificationReport verify_reduction(int n, const Partition& lambda, const BigRational& alpha, const BigRational& beta,
                                    const BigRational& gamma);
VerificationReport verify_recursion(int n, const Partition& lambda, const BigRational& alpha,
                                    const BigRational& beta, const BigRational& gamma);
VerificationReport verify_cross(const IntegralSpec& spec);

struct SuiteOptions {
  bool parallel = false;
};

/// Runs every spec; the output order matches the input order.
std::vector<VerificationReport> run_suite(const std::vector<IntegralSpec>& specs, SuiteOptions options = {});

/// The built-in grid covering every theorem and proof step.
std::vector<IntegralSpec> default_suite();

/// Ordered points drawn as multiples of 1/8 in [0, 4], reproducible from seed.
std::vector<BigRational> random_ordered_points(std::size_t count, std::uint64_t seed);

// Serialization (report_io.cpp).
nlohmann::json spec_to_json(const IntegralSpec& spec);
/// Parses one spec; errors name the offending field under `where`.
IntegralSpec spec_from_json(const nlohmann::json& j, const std::string& where = "spec");
/// Parses a JSON array of specs.
std::vector<IntegralSpec> suite_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string params_digest(const IntegralSpec& spec);
void print_pretty(std::ostream& os, const VerificationReport& report);

}  // namespace selberg
