#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "support.hpp"
#include "selberg/verify.hpp"

using namespace selberg;
using nlohmann::json;
using testing_support::to_oracle;

namespace {

BigRational q(const char* s) { return BigRational::parse(s); }

std::vector<BigRational> qs(std::initializer_list<const char*> items) {
  std::vector<BigRational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

IntegralSpec make(Theorem t, int n) {
  IntegralSpec s;
  s.theorem = t;
  s.n = n;
  return s;
}

double rel(ComplexF a, ComplexF b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(VerifyTheorem1, Examples) {
  IntegralSpec s = make(Theorem::T1, 2);
  s.points = qs({"0", "1"});
  s.alphas = qs({"1", "2"});
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed) << rep.message;
  EXPECT_LT(rel(rep.lhs, -0.5), 1e-12);
  EXPECT_LT(rel(rep.rhs, -0.5), 1e-12);

  s.alphas = qs({"1", "1"});
  s.r = 1;
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 0.5), 1e-12);

  IntegralSpec s3 = make(Theorem::T1, 3);
  s3.points = qs({"0", "1", "2"});
  s3.alphas = qs({"1", "1", "1"});
  rep = verify(s3);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-8);
}

TEST(VerifyTheorem1, ExactDeterminantForIntegerExponents) {
  // With integer exponents every entry is a polynomial moment.
  const std::vector<std::vector<int>> exps = {{1, 1, 1}, {2, 1, 1}, {1, 3, 2}, {2, 2, 2}};
  const std::vector<std::vector<const char*>> pts = {{"0", "1", "2"}, {"0", "1/2", "2"}, {"-1", "1/3", "3"}};
  for (const auto& e : exps) {
    for (const auto& p : pts) {
      for (int r = 0; r <= 2; ++r) {
        std::vector<oracle::Q> x;
        for (const char* s : p) x.push_back(q(s).value());
        std::vector<std::vector<oracle::Q>> a(2, std::vector<oracle::Q>(2));
        for (std::size_t i = 0; i < 2; ++i) {
          oracle::Poly integrand = oracle::constant(1, 1);
          for (std::size_t l = 0; l < 3; ++l) integrand = oracle::mul(integrand, oracle::power(oracle::linear(1, 0, -x[l], 1), e[l] - 1));
          for (std::size_t j = 0; j < 2; ++j) {
            oracle::Poly mono;
            mono[{static_cast<int>(j) + r}] = 1;
            a[i][j] = oracle::integrate_box(oracle::mul(integrand, mono), {x[i]}, {x[i + 1]});
          }
        }
        IntegralSpec s = make(Theorem::T1, 3);
        for (const char* c : p) s.points.push_back(q(c));
        for (int v : e) s.alphas.emplace_back(v);
        s.r = r;
        const auto rep = verify(s);
        const double exact = oracle::determinant(a).get_d();
        EXPECT_TRUE(rep.passed) << rep.message;
        EXPECT_LT(rel(rep.lhs, exact), 1e-10);
        EXPECT_LT(rel(rep.rhs, exact), 1e-10);
      }
    }
  }
}

TEST(VerifyRz, Examples) {
  IntegralSpec s = make(Theorem::T2, 2);
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 1.0 / 6.0), 1e-10);
  s.r = 1;
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 1.0 / 6.0), 1e-10);
  EXPECT_LT(rel(rep.rhs, 1.0 / 6.0), 1e-12);

  IntegralSpec mc = make(Theorem::T2, 3);
  mc.r = 1;
  mc.gamma = q("1/2");
  mc.method = Method::MonteCarlo;
  mc.n_samples = 400'000;
  rep = verify(mc);
  EXPECT_TRUE(rep.passed) << rep.abs_residual << " vs " << rep.tolerance;
  ASSERT_TRUE(rep.std_error.has_value());
  EXPECT_DOUBLE_EQ(rep.tolerance, 4.0 * *rep.std_error);
}

TEST(VerifyRz, ExactPolynomialOracle) {
  for (int n = 1; n <= 3; ++n) {
    for (int r = 0; r <= 3; ++r) {
      for (int a : {1, 2}) {
        IntegralSpec s = make(Theorem::T2, n);
        s.r = r;
        s.alpha = a;
        s.beta = 2;
        s.gamma = 1;
        const auto rep = verify(s);
        const double exact =
            oracle::selberg_cube(oracle::f_r(r, static_cast<std::size_t>(n), 1), static_cast<std::size_t>(n), a, 2, 1).get_d();
        EXPECT_TRUE(rep.passed);
        EXPECT_LT(rel(rep.rhs, exact), 1e-12) << "n=" << n << " r=" << r;
        EXPECT_LT(rel(rep.lhs, exact), 1e-10);
      }
    }
  }
}

TEST(VerifyJackAverage, Examples) {
  IntegralSpec s = make(Theorem::T3, 2);
  s.lambda = Partition{1};
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 1.0 / 12.0), 1e-10);
  EXPECT_LT(rel(rep.rhs, 1.0 / 12.0), 1e-12);

  IntegralSpec s0 = make(Theorem::T3, 2);
  s0.alpha = q("5/2");
  s0.beta = q("1/2");
  s0.gamma = q("1/3");
  rep = verify(s0);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, rz_rhs(2, 0, 2.5, 0.5, 1.0 / 3.0) / 2.0), 1e-10);

  IntegralSpec s3 = make(Theorem::T3, 3);
  s3.lambda = Partition{2, 1};
  rep = verify(s3);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-8);
}

TEST(VerifyJackAverage, ExactPolynomialOracleAtGammaOne) {
  // γ = 1: P_λ is the Schur function and the density is polynomial.
  for (int n = 1; n <= 3; ++n) {
    for (int w = 0; w <= 4; ++w) {
      for (const Partition& lambda : partitions_of(w, static_cast<std::size_t>(n))) {
        IntegralSpec s = make(Theorem::T3, n);
        s.lambda = lambda;
        s.alpha = 2;
        const auto rep = verify(s);
        const auto P = to_oracle(jack_P(lambda, JackParam(1), static_cast<std::size_t>(n)));
        const double exact = oracle::Q(oracle::selberg_cube(P, static_cast<std::size_t>(n), 2, 1, 1) / oracle::fact(n)).get_d();
        EXPECT_TRUE(rep.passed);
        EXPECT_LT(rel(rep.rhs, exact), 1e-12) << lambda;
      }
    }
  }
}

TEST(VerifyJackAverage, NonPositiveAlphaUsesReduction) {
  IntegralSpec s = make(Theorem::T3, 2);
  s.lambda = Partition{2, 1};
  s.alpha = q("-1/2");
  const auto rep = verify(s);
  EXPECT_TRUE(rep.passed) << rep.message;
  s.alpha = q("-1");
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(VerifyInterlacing, Examples) {
  IntegralSpec s = make(Theorem::T4, 2);
  s.lambda = Partition{1};
  s.points = qs({"1", "3"});
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 4.0), 1e-12);
  EXPECT_LT(rel(rep.rhs, 4.0), 1e-15);

  IntegralSpec da = make(Theorem::T4, 3);
  da.gamma = q("1/2");
  da.points = qs({"0", "1", "2"});
  rep = verify(da);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.rhs, 1.0), 1e-15);

  IntegralSpec s3 = make(Theorem::T4, 3);
  s3.lambda = Partition{2, 1};
  s3.gamma = 2;
  s3.points = qs({"0", "1/2", "2"});
  rep = verify(s3);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-8);
}

TEST(VerifyInterlacing, SchurValuesAtGammaOne) {
  for (int n : {2, 3}) {
    for (int w = 0; w <= 4; ++w) {
      for (const Partition& lambda : partitions_of(w, static_cast<std::size_t>(n - 1))) {
        IntegralSpec s = make(Theorem::T4, n);
        s.lambda = lambda;
        s.seed = 900 + static_cast<std::uint64_t>(w);
        for (int d = 0; d < 3; ++d) {
          s.points = random_ordered_points(static_cast<std::size_t>(n), s.seed + static_cast<std::uint64_t>(d));
          const auto rep = verify(s);
          std::vector<oracle::Q> x;
          for (const auto& p : s.points) x.push_back(p.value());
          const double schur = oracle::schur(lambda.parts(), x).get_d();
          EXPECT_LT(std::abs(rep.rhs - schur), 1e-10 * std::max(1.0, std::abs(schur))) << lambda;
          EXPECT_LT(std::abs(rep.lhs - schur), 1e-10 * std::max(1.0, std::abs(schur))) << lambda;
        }
      }
    }
  }
}

TEST(VerifyInterlacing, RandomDrawsAreReproducibleAndOrdered) {
  const auto a = random_ordered_points(4, 12);
  EXPECT_EQ(a, random_ordered_points(4, 12));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(a[i], BigRational(0));
    EXPECT_LE(a[i], BigRational(4));
    EXPECT_EQ((a[i] * BigRational(8)).denominator(), 1);
    if (i > 0) EXPECT_GT(a[i], a[i - 1]);
  }
}

TEST(VerifyDixonAnderson, Examples) {
  IntegralSpec s = make(Theorem::DixonAnderson, 2);
  s.points = qs({"0", "1"});
  s.alphas = qs({"3/2", "1/3"});
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.rhs, euler_beta(1.5, 1.0 / 3.0)), 1e-13);

  s = make(Theorem::DixonAnderson, 3);
  s.points = qs({"0", "1", "2"});
  s.alphas = qs({"1", "1", "1"});
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 1.0), 1e-12);

  s.points = qs({"0", "1", "3"});
  s.alphas = qs({"1/2", "1", "3/2"});
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-8);
}

TEST(VerifyJn, Examples) {
  IntegralSpec s = make(Theorem::Jn, 1);
  s.alpha = q("3/2");
  s.beta = q("5/2");
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, euler_beta(1.5, 2.5)), 1e-12);

  s = make(Theorem::Jn, 2);
  s.points = qs({"1/2"});
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 0.125), 1e-12);

  // ∫₀^{1/3} ∫_{1/3}^1 (x₂−x₁) x₁ x₂ dx₂ dx₁
  s.points = qs({"1/3"});
  s.alpha = 2;
  oracle::Poly f = oracle::mul(oracle::difference(2, 1, 0), oracle::monomial_symmetric({1, 1}, 2));
  const double exact = oracle::integrate_box(f, {0, oracle::Q(1, 3)}, {oracle::Q(1, 3), 1}).get_d();
  rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, exact), 1e-9);
  EXPECT_LT(rel(rep.rhs, exact), 1e-12);
}

TEST(VerifyIdentityChain, Examples) {
  auto rep = verify_identity_chain(2, 0, q("5/7"));
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.rel_residual, 0.0);
  rep = verify_identity_chain(2, 1, 1);
  EXPECT_TRUE(rep.passed);
  rep = verify_identity_chain(3, 2, q("1/2"));
  EXPECT_TRUE(rep.passed) << rep.message;
  EXPECT_EQ(rep.spec.method, Method::Exact);
  // the same f_2 from the brute-force binomial expansion of Π(1 − t x_i)^{−1/2}
  const auto g = oracle::binomial_series_coefficient(3, oracle::Q(1, 2), 2);
  oracle::Poly inverted;
  for (const auto& [e, c] : g) inverted[{2 - e[0], 2 - e[1], 2 - e[2]}] = 2 * c;
  EXPECT_EQ(to_oracle(f_r(2, 3, q("1/2"))), inverted);
  const SparsePoly chain = jack_P(Partition{2, 2}, JackParam(2), 3) * pochhammer(q("1/2"), 2);
  EXPECT_EQ(to_oracle(chain), inverted);
}

TEST(VerifyIdentityChain, RejectsBadParameters) {
  EXPECT_EQ(verify(make(Theorem::IdentityChain, 1)).passed, false);
  EXPECT_THROW(verify_identity_chain(2, 1, 0), std::invalid_argument);
  EXPECT_THROW(verify_identity_chain(2, -1, 1), std::invalid_argument);
}

TEST(VerifyReduction, Examples) {
  auto rep = verify_reduction(2, Partition{1, 1}, 1, 1, 1);
  EXPECT_TRUE(rep.passed);
  rep = verify_reduction(2, Partition{2, 1}, 1, 1, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-11);
  rep = verify_reduction(3, Partition{3, 2, 1}, 1, 1, q("1/2"));
  EXPECT_TRUE(rep.passed) << rep.message;
  EXPECT_THROW(verify_reduction(3, Partition{2, 1}, 1, 1, 1), std::invalid_argument);
}

TEST(VerifyRecursion, Examples) {
  auto rep = verify_recursion(2, Partition{}, 1, 1, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rel(rep.lhs, 1.0 / 6.0), 1e-14);
  EXPECT_LT(rel(rep.rhs, 1.0 / 6.0), 1e-14);
  rep = verify_recursion(3, Partition{1}, 1, 1, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 1e-11);
  rep = verify_recursion(4, Partition{2, 1}, q("1/2"), q("3/2"), q("1/2"));
  EXPECT_TRUE(rep.passed);
  EXPECT_THROW(verify_recursion(2, Partition{1, 1}, 1, 1, 1), std::invalid_argument);
}

TEST(VerifyRecursion, PoleBecomesFailedReport) {
  IntegralSpec s = make(Theorem::Recursion, 2);
  s.method = Method::Exact;
  s.gamma = -1;
  const auto rep = verify(s);
  EXPECT_FALSE(rep.passed);
  EXPECT_NE(rep.message.find("pole"), std::string::npos) << rep.message;
}

TEST(VerifyCross, NestedAndMonteCarlo) {
  IntegralSpec s = make(Theorem::CrossT2T3, 3);
  s.r = 2;
  s.alpha = q("1/2");
  s.beta = 2;
  s.gamma = q("1/3");
  auto rep = verify(s);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_residual, 2e-8);
  s.method = Method::MonteCarlo;
  s.n = 4;
  s.n_samples = 200'000;
  rep = verify(s);
  EXPECT_TRUE(rep.passed) << rep.abs_residual << " " << rep.tolerance;
}

TEST(Validate, RejectsOutOfScopeParameters) {
  IntegralSpec s = make(Theorem::T2, 4);
  EXPECT_THROW(validate(s), std::invalid_argument);  // nested needs n <= 3
  s.method = Method::MonteCarlo;
  EXPECT_NO_THROW(validate(s));
  s.gamma = q("-1/10");
  EXPECT_THROW(validate(s), std::invalid_argument);  // convergent but not numerically verified
  s.gamma = q("-1/2");
  EXPECT_THROW(validate(s), std::invalid_argument);  // divergent
  s = make(Theorem::T2, 2);
  s.method = Method::Exact;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = make(Theorem::T1, 2);
  s.points = qs({"1", "0"});
  s.alphas = qs({"1", "1"});
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = make(Theorem::T4, 2);
  s.lambda = Partition{1, 1};
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = make(Theorem::Jn, 2);
  s.points = qs({"1"});
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(Report, InvalidSpecBecomesFailedWithReason) {
  IntegralSpec s = make(Theorem::T2, 2);
  s.beta = 0;
  const auto rep = verify(s);
  EXPECT_FALSE(rep.passed);
  EXPECT_NE(rep.message.find("beta"), std::string::npos);
  EXPECT_GE(rep.wall_time_ms, 0.0);
}

TEST(Report, ResidualSemantics) {
  IntegralSpec s = make(Theorem::T3, 2);
  s.lambda = Partition{3};
  s.gamma = q("1/2");
  const auto rep = verify(s);
  EXPECT_DOUBLE_EQ(rep.abs_residual, std::abs(rep.lhs - rep.rhs));
  EXPECT_DOUBLE_EQ(rep.rel_residual, rep.abs_residual / std::abs(rep.rhs));
  EXPECT_EQ(rep.passed, rep.rel_residual <= rep.tolerance);
  EXPECT_DOUBLE_EQ(rep.tolerance, kNestedTolerance);
  s.tolerance = 1e-20;
  EXPECT_DOUBLE_EQ(verify(s).tolerance, 1e-20);
}

TEST(Report, DeterministicForNestedAndExact) {
  IntegralSpec s = make(Theorem::T3, 3);
  s.lambda = Partition{2, 2, 1};
  s.gamma = q("1/3");
  const auto a = verify(s);
  const auto b = verify(s);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
}

TEST(Suite, EmptyAndOrdering) {
  EXPECT_TRUE(run_suite({}).empty());
  std::vector<IntegralSpec> specs;
  for (int r = 0; r <= 3; ++r) {
    IntegralSpec s = make(Theorem::IdentityChain, 3);
    s.method = Method::Exact;
    s.r = r;
    s.label = "case" + std::to_string(r);
    specs.push_back(s);
  }
  specs.push_back(make(Theorem::T2, 2));
  const auto serial = run_suite(specs);
  const auto parallel = run_suite(specs, SuiteOptions{true});
  ASSERT_EQ(parallel.size(), specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(parallel[i].spec.label, specs[i].label);
    EXPECT_EQ(parallel[i].spec.r, specs[i].r);
    EXPECT_EQ(parallel[i].lhs, serial[i].lhs);
    EXPECT_TRUE(parallel[i].passed);
  }
}

TEST(Suite, DefaultGridCoversEveryKind) {
  const auto suite = default_suite();
  std::map<Theorem, int> counts;
  for (const auto& s : suite) {
    ++counts[s.theorem];
    EXPECT_NO_THROW(validate(s)) << params_digest(s);
  }
  for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::DixonAnderson, Theorem::Jn,
                    Theorem::Recursion, Theorem::IdentityChain, Theorem::Reduction, Theorem::CrossT2T3}) {
    EXPECT_GT(counts[t], 0) << to_string(t);
  }
  EXPECT_EQ(counts[Theorem::IdentityChain], 3 * 5 * 5);
}

TEST(Serialization, SpecJsonRoundTrip) {
  IntegralSpec s = make(Theorem::T1, 3);
  s.points = qs({"0", "1/2", "2"});
  s.alphas = qs({"1/2", "1", "3/2"});
  s.r = 2;
  s.tolerance = 1e-9;
  s.label = "x";
  const IntegralSpec back = spec_from_json(spec_to_json(s));
  EXPECT_EQ(spec_to_json(back), spec_to_json(s));
  EXPECT_EQ(back.points, s.points);
  EXPECT_EQ(back.tolerance, s.tolerance);
}

TEST(Serialization, ConfigErrorsNameTheLocation) {
  const json cfg = json::parse(R"([
    {"theorem": "T2", "n": 2},
    {"theorem": "T3", "n": 2, "lambda": [1]},
    {"theorem": "T2"},
    {"theorem": "T2", "gamma": "1/x"}
  ])");
  try {
    suite_from_json(cfg);
    FAIL() << "expected a parse error";
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()).rfind("config[3].gamma", 0), 0u) << e.what();
  }
  const auto where = [](const char* text) {
    try {
      suite_from_json(json::parse(text));
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(where(R"([{"theorem": "T9"}])").rfind("config[0].theorem", 0), 0u);
  EXPECT_EQ(where(R"([{"theorem": "T3", "lambda": [1, 2]}])").rfind("config[0].lambda", 0), 0u);
  EXPECT_EQ(where(R"([{"theorem": "T1", "points": ["0", 0.5]}])").rfind("config[0].points[1]", 0), 0u);
  EXPECT_EQ(where(R"([{"theorem": "T2", "bogus": 1}])").rfind("config[0].bogus", 0), 0u);
  EXPECT_EQ(where(R"({"theorem": "T2"})").rfind("config", 0), 0u);
  EXPECT_TRUE(suite_from_json(json::array()).empty());
}

TEST(Serialization, ReportsAsJsonArrayAndCsv) {
  IntegralSpec a = make(Theorem::T2, 2);
  IntegralSpec b = make(Theorem::T3, 2);
  b.lambda = Partition{2, 1};
  const auto reports = run_suite({a, b});
  const json j = reports_to_json(reports);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["spec"]["theorem"], "T3");
  EXPECT_EQ(j[0]["passed"], true);
  EXPECT_TRUE(j[0]["lhs"].contains("re"));
  EXPECT_TRUE(j[0]["std_error"].is_null());

  const std::string csv = reports_to_csv(reports);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theorem,params,lhs,rhs,residual,pass");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("T2,n=2 r=0 alpha=1 beta=1 gamma=1", 0), 0u) << line;
  EXPECT_EQ(line.substr(line.size() - 5), ",true");

  std::ostringstream pretty;
  print_pretty(pretty, reports[1]);
  EXPECT_EQ(pretty.str().rfind("PASS T3 n=2 lambda=(2,1)", 0), 0u) << pretty.str();
}
