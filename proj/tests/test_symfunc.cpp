#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "support.hpp"

using namespace selberg;
using testing_support::from_q;
using testing_support::to_oracle;

namespace {

BigRational q(const char* s) { return BigRational::parse(s); }

SparsePoly x(std::size_t n, std::size_t i) {
  Exponent e(n, 0);
  e[i] = 1;
  return SparsePoly::monomial(e);
}

const char* const kAlphas[] = {"1/3", "1/2", "1", "2", "3", "7/5"};

}  // namespace

TEST(SparsePoly, Arithmetic) {
  const SparsePoly a = x(2, 0) + x(2, 1);
  const SparsePoly b = x(2, 0) - x(2, 1);
  const SparsePoly prod = a * b;
  EXPECT_EQ(prod.coefficient({2, 0}), BigRational(1));
  EXPECT_EQ(prod.coefficient({0, 2}), BigRational(-1));
  EXPECT_EQ(prod.coefficient({1, 1}), BigRational(0));
  EXPECT_EQ(prod.terms().size(), 2u);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((a * BigRational(0)).is_zero());
  EXPECT_TRUE(prod.is_homogeneous(2));
  EXPECT_FALSE(prod.is_symmetric());
}

TEST(SparsePoly, Evaluation) {
  const SparsePoly a = x(2, 0) + x(2, 1);
  const std::vector<BigRational> ones{1, 1};
  EXPECT_EQ(a.eval(std::span<const BigRational>(ones)), BigRational(2));
  const std::vector<BigRational> pt{1, 2};
  EXPECT_EQ(monomial_sym(Partition{2, 1}, 2).eval(std::span<const BigRational>(pt)), BigRational(6));
  const std::vector<BigRational> third{q("1/2"), q("1/3")};
  EXPECT_EQ(f_r(1, 2, 1).eval(std::span<const BigRational>(third)), q("5/6"));
  const std::vector<double> dpt{0.5, 1.0 / 3.0};
  EXPECT_NEAR(f_r(1, 2, 1).eval(std::span<const double>(dpt)), 5.0 / 6.0, 1e-15);
}

TEST(SparsePoly, LaurentEvaluationAtZeroThrows) {
  const SparsePoly p = SparsePoly::monomial({-1, 0});
  const std::vector<BigRational> zero{0, 1};
  EXPECT_THROW(p.eval(std::span<const BigRational>(zero)), std::domain_error);
  const std::vector<BigRational> ok{2, 1};
  EXPECT_EQ(p.eval(std::span<const BigRational>(ok)), q("1/2"));
  EXPECT_TRUE(p.has_negative_exponents());
  EXPECT_THROW(NumericPoly{p}, std::invalid_argument);
}

TEST(SparsePoly, JsonRoundTrip) {
  const SparsePoly p = jack_P(Partition{2, 1}, JackParam(q("2/3")), 3);
  const nlohmann::json j = p;
  EXPECT_EQ(j["n_vars"], 3);
  EXPECT_TRUE(j["terms"][0]["coeff"].is_string());
  EXPECT_EQ(sparse_poly_from_json(j), p);
}

TEST(MonomialSym, Examples) {
  EXPECT_EQ(monomial_sym(Partition{1}, 2), x(2, 0) + x(2, 1));
  EXPECT_EQ(monomial_sym(Partition{2, 1}, 2), SparsePoly::monomial({2, 1}) + SparsePoly::monomial({1, 2}));
  EXPECT_EQ(monomial_sym(Partition{1, 1}, 3),
            SparsePoly::monomial({1, 1, 0}) + SparsePoly::monomial({1, 0, 1}) + SparsePoly::monomial({0, 1, 1}));
  EXPECT_EQ(monomial_sym(Partition{}, 2), SparsePoly::constant(2, 1));
  EXPECT_THROW(monomial_sym(Partition{1, 1, 1}, 2), std::invalid_argument);
}

TEST(Jack, SmallExamples) {
  for (const char* a : kAlphas) {
    const JackParam p(q(a));
    EXPECT_EQ(jack_P(Partition{1}, p, 2), x(2, 0) + x(2, 1));
    EXPECT_EQ(jack_P(Partition{1, 1}, p, 2), SparsePoly::monomial({1, 1}));
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_EQ(to_oracle(jack_P(Partition{2}, p, n)), oracle::jack_2(q(a).value(), n)) << a << " n=" << n;
      if (n >= 2) EXPECT_EQ(to_oracle(jack_P(Partition{2, 1}, p, n)), oracle::jack_21(q(a).value(), n)) << a << " n=" << n;
      EXPECT_EQ(to_oracle(jack_P(Partition{3}, p, n)), oracle::jack_3(q(a).value(), n)) << a << " n=" << n;
    }
  }
  EXPECT_THROW(jack_P(Partition{1, 1, 1}, JackParam(1), 2), std::invalid_argument);
  EXPECT_THROW(JackParam(0), std::invalid_argument);
  EXPECT_THROW(JackParam(q("-1/2")), std::invalid_argument);
}

TEST(Jack, SymmetricMonicTriangular) {
  for (const char* a : {"1/2", "2", "3/7"}) {
    const JackParam p(q(a));
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int w = 0; w <= 6; ++w) {
        for (const Partition& lambda : partitions_of(w, n)) {
          const SparsePoly P = jack_P(lambda, p, n);
          EXPECT_TRUE(P.is_symmetric()) << lambda;
          EXPECT_TRUE(P.is_homogeneous(w));
          const auto expansion = P.monomial_expansion();
          ASSERT_TRUE(expansion.count(lambda));
          EXPECT_EQ(expansion.at(lambda), BigRational(1));
          for (const auto& [mu, c] : expansion) {
            if (mu != lambda) EXPECT_TRUE(dominance_less(mu, lambda)) << mu << " in P" << lambda;
          }
        }
      }
    }
  }
}

TEST(Jack, StableUnderDroppingAVariable) {
  for (const char* a : {"1/3", "1", "5/2"}) {
    const JackParam p(q(a));
    for (std::size_t n = 2; n <= 4; ++n) {
      for (int w = 0; w <= 5; ++w) {
        for (const Partition& lambda : partitions_of(w, n - 1)) {
          EXPECT_EQ(jack_P(lambda, p, n).drop_last_variable(), jack_P(lambda, p, n - 1)) << lambda << " n=" << n;
        }
      }
    }
  }
}

TEST(Jack, SchurBialternantAtAlphaOne) {
  std::mt19937_64 rng(2024);
  const JackParam one(1);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int w = 0; w <= 5; ++w) {
      for (const Partition& lambda : partitions_of(w, n)) {
        const SparsePoly P = jack_P(lambda, one, n);
        for (int draw = 0; draw < 3; ++draw) {
          std::vector<oracle::Q> pt;
          // distinct coordinates keep the Vandermonde denominator nonzero
          while (pt.size() < n) {
            const auto cand = oracle::random_rationals(rng, 1).front();
            if (std::find(pt.begin(), pt.end(), cand) == pt.end()) pt.push_back(cand);
          }
          const auto bq = from_q(pt);
          EXPECT_EQ(P.eval(std::span<const BigRational>(bq)).value(), oracle::schur(lambda.parts(), pt))
              << lambda << " n=" << n;
        }
      }
    }
  }
}

TEST(Jack, OneRowFromBinomialSeries) {
  for (const char* a : kAlphas) {
    const BigRational alpha = q(a);
    const JackParam p(alpha);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto series = g_series(n, p, 5);
      for (int r = 0; r <= 5; ++r) {
        const oracle::Poly g = oracle::binomial_series_coefficient(n, (BigRational(1) / alpha).value(), r);
        EXPECT_EQ(to_oracle(series[static_cast<std::size_t>(r)]), g);
        const oracle::Q scale = oracle::fact(r) / oracle::rising((BigRational(1) / alpha).value(), r);
        EXPECT_EQ(to_oracle(jack_P(Partition{r}, p, n)), oracle::scaled(g, scale)) << a << " r=" << r;
      }
    }
  }
}

TEST(GSeries, Examples) {
  const JackParam p(q("2/5"));
  const auto s = g_series(3, p, 4);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0], SparsePoly::constant(3, 1));
  EXPECT_EQ(s[1], (x(3, 0) + x(3, 1) + x(3, 2)) * q("5/2"));
  EXPECT_EQ(g_series(2, p, 0).size(), 1u);
  // α = 1: complete homogeneous h_r = Σ_{|μ|=r} m_μ
  const auto h = g_series(3, JackParam(1), 4);
  for (int r = 0; r <= 4; ++r) {
    SparsePoly expected(3);
    for (const Partition& mu : partitions_of(r, 3)) expected += monomial_sym(mu, 3);
    EXPECT_EQ(h[static_cast<std::size_t>(r)], expected);
  }
}

TEST(Fr, ExamplesAndDefinition) {
  EXPECT_EQ(f_r(0, 3, q("1/2")), SparsePoly::constant(3, 1));
  const BigRational g = q("3/4");
  EXPECT_EQ(f_r(1, 2, g), (x(2, 0) + x(2, 1)) * g);
  EXPECT_EQ(f_r(1, 3, g), monomial_sym(Partition{1, 1}, 3) * g);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int r = 0; r <= 4; ++r) {
      for (const char* gs : {"1/3", "1", "5/2"}) {
        const SparsePoly f = f_r(r, n, q(gs));
        EXPECT_EQ(to_oracle(f), oracle::f_r(r, n, q(gs).value()));
        EXPECT_TRUE(f.is_symmetric());
        EXPECT_TRUE(f.is_homogeneous(r * static_cast<int>(n - 1)));
      }
    }
  }
}

TEST(LaurentInvert, Examples) {
  EXPECT_EQ(laurent_invert(SparsePoly::monomial({1, 1}), 1), SparsePoly::constant(2, 1));
  EXPECT_EQ(laurent_invert(x(2, 0) + x(2, 1), 1), x(2, 1) + x(2, 0));
  EXPECT_THROW(laurent_invert(SparsePoly::monomial({2, 0}), 1), std::invalid_argument);
  for (const char* a : {"1/2", "1", "2"}) {
    const JackParam p(q(a));
    EXPECT_EQ(laurent_invert(jack_P(Partition{2}, p, 2), 2), jack_P(Partition{2}, p, 2));
    EXPECT_EQ(laurent_invert(jack_P(Partition{2, 2}, p, 3), 2), jack_P(Partition{2}, p, 3));
  }
}

TEST(LaurentInvert, Involution) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> ex(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    SparsePoly p(3);
    for (const auto& c : oracle::random_rationals(rng, 5)) p.add_term({ex(rng), ex(rng), ex(rng)}, BigRational(c));
    EXPECT_EQ(laurent_invert(laurent_invert(p, 3), 3), p);
  }
}

TEST(Pretty, RoundTrip) {
  EXPECT_EQ(SparsePoly(2).to_pretty(), "0");
  EXPECT_EQ(jack_P(Partition{2}, JackParam(1), 2).to_pretty(), "m[2] + m[1,1]");
  for (const char* a : {"1/3", "2", "7/5"}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int w = 0; w <= 5; ++w) {
        for (const Partition& lambda : partitions_of(w, n)) {
          const SparsePoly P = jack_P(lambda, JackParam(q(a)), n);
          EXPECT_EQ(SparsePoly::parse_pretty(P.to_pretty(), n), P) << P.to_pretty();
          const SparsePoly neg = P * q("-3/2");
          EXPECT_EQ(SparsePoly::parse_pretty(neg.to_pretty(), n), neg) << neg.to_pretty();
        }
      }
    }
  }
  EXPECT_THROW(SparsePoly::parse_pretty("m[2", 2), std::invalid_argument);
}

TEST(Symmetry, AllProducedFamilies) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int w = 0; w <= 6; ++w) {
      for (const Partition& lambda : partitions_of(w, n)) {
        EXPECT_TRUE(monomial_sym(lambda, n).is_symmetric());
        EXPECT_TRUE(jack_P(lambda, JackParam(q("3/2")), n).is_symmetric());
      }
    }
    for (const auto& g : g_series(n, JackParam(q("1/2")), 6)) EXPECT_TRUE(g.is_symmetric());
  }
}
