#include "selberg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

namespace selberg {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Recurrence t·p_k = sub_k p_{k+1} + diag_k p_k + sub_{k−1} p_{k−1} for the
// orthonormal polynomials of t^a (1−t)^b on (0, 1), k = 0..m.
struct JacobiRecurrence {
  std::vector<double> diag;
  std::vector<double> sub;
};

JacobiRecurrence jacobi_recurrence(int m, double a_exp, double b_exp) {
  // Monic Jacobi recurrence on [−1, 1] for (1−x)^A (1+x)^B; t = (1+x)/2
  // puts t^a at x = −1, so B = a and A = b.
  const double A = b_exp;
  const double B = a_exp;
  const double s = A + B;
  JacobiRecurrence rec;
  for (int k = 0; k <= m; ++k) {
    const double kk = k;
    const double d = k == 0 ? (B - A) / (s + 2.0) : (B * B - A * A) / ((2.0 * kk + s) * (2.0 * kk + s + 2.0));
    rec.diag.push_back(0.5 * (d + 1.0));
    const double j = k + 1.0;
    double beta_j = 0.0;
    if (k == 0) {
      beta_j = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    } else {
      const double c = 2.0 * j + s;
      beta_j = 4.0 * j * (j + A) * (j + B) * (j + s) / (c * c * (c + 1.0) * (c - 1.0));
    }
    rec.sub.push_back(0.5 * std::sqrt(beta_j));
  }
  return rec;
}

// Evaluates p_m(t) and p_m'(t) (unnormalised) and Σ_{k<m} p_k(t)² with
// p_0 = 1.
struct RecurrenceValues {
  double value;
  double derivative;
  double christoffel_sum;
};

RecurrenceValues evaluate_recurrence(const JacobiRecurrence& rec, int m, double t) {
  double p_prev = 0.0;
  double p = 1.0;
  double dp_prev = 0.0;
  double dp = 0.0;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    sum += p * p;
    const double sub_prev = k == 0 ? 0.0 : rec.sub[static_cast<std::size_t>(k - 1)];
    const double sub_k = rec.sub[static_cast<std::size_t>(k)];
    const double diag_k = rec.diag[static_cast<std::size_t>(k)];
    const double p_next = ((t - diag_k) * p - sub_prev * p_prev) / sub_k;
    const double dp_next = (p + (t - diag_k) * dp - sub_prev * dp_prev) / sub_k;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp, sum};
}

}  // namespace

JacobiRule jacobi_rule(int m, double a_exp, double b_exp) {
  if (m < 1) throw std::invalid_argument("jacobi_rule: need at least one node");
  if (!(a_exp > -1.0) || !(b_exp > -1.0)) {
    throw std::invalid_argument("jacobi_rule: exponents must exceed -1 (got " + std::to_string(a_exp) + ", " +
                                std::to_string(b_exp) + ")");
  }
  const JacobiRecurrence rec = jacobi_recurrence(m, a_exp, b_exp);
  JacobiRule rule;
  rule.m = m;
  rule.a_exp = a_exp;
  rule.b_exp = b_exp;
  const double mass = std::exp(log_beta(a_exp + 1.0, b_exp + 1.0));
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  if (m == 1) {
    rule.nodes[0] = rec.diag[0];
  } else {
    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(m - 1);
    for (int k = 0; k < m; ++k) diag[k] = rec.diag[static_cast<std::size_t>(k)];
    for (int k = 0; k + 1 < m; ++k) sub[k] = rec.sub[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("jacobi_rule: eigensolver failed");
    for (int k = 0; k < m; ++k) rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()[k];
  }
  // Newton polish on p_m, then Christoffel numbers 1/Σ p̂_k² (orthonormal).
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    double t = rule.nodes[k];
    for (int iter = 0; iter < 3; ++iter) {
      const RecurrenceValues v = evaluate_recurrence(rec, m, t);
      if (v.derivative == 0.0) break;
      const double step = v.value / v.derivative;
      t -= step;
      if (std::abs(step) < 1e-17) break;
    }
    rule.nodes[k] = t;
    rule.weights[k] = mass / evaluate_recurrence(rec, m, t).christoffel_sum;
  }
  return rule;
}

namespace {

void require_increasing(std::span<const double> x, const char* what) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw std::invalid_argument(std::string(what) + ": points must be strictly increasing");
  }
}

}  // namespace

ComplexF matrix_entry(std::size_t i, std::size_t j, std::span<const double> x, std::span<const ComplexF> alpha,
                      int r, int m) {
  const std::size_t n = x.size();
  if (n < 2 || alpha.size() != n) throw std::invalid_argument("matrix_entry: need n >= 2 points and n exponents");
  if (i + 1 >= n || j + 1 >= n) throw std::invalid_argument("matrix_entry: index out of range");
  if (r < 0) throw std::invalid_argument("matrix_entry: r must be nonnegative");
  require_increasing(x, "matrix_entry");
  for (const auto& a : alpha) {
    require_finite(a, "matrix_entry");
    if (!(a.real() > 0.0)) throw std::invalid_argument("matrix_entry: exponents need Re(alpha) > 0");
  }
  const double h = x[i + 1] - x[i];
  const ComplexF left = alpha[i] - 1.0;
  const ComplexF right = alpha[i + 1] - 1.0;
  const JacobiRule rule = jacobi_rule(m, left.real(), right.real());

  // (y − xᵢ)^{left} (y − xᵢ₊₁)^{right} dy = h^{left+right+1} e^{iπ·right} t^{left} (1−t)^{right} dt
  const ComplexF scale = std::exp((left + right + 1.0) * std::log(h)) * branch_pow(-1.0, right);
  const int power = static_cast<int>(j) + r;
  ComplexF sum(0.0, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double y = x[i] + h * t;
    ComplexF value(std::pow(y, power), 0.0);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == i || l == i + 1) continue;
      value *= branch_pow(y - x[l], alpha[l] - 1.0);
    }
    if (left.imag() != 0.0) value *= std::exp(ComplexF(0.0, left.imag() * std::log(t)));
    if (right.imag() != 0.0) value *= std::exp(ComplexF(0.0, right.imag() * std::log1p(-t)));
    sum += rule.weights[q] * value;
  }
  return scale * sum;
}

ComplexF integrate_interlacing(const RealIntegrand& f, std::span<const double> x, std::span<const double> exps,
                               int m) {
  const std::size_t n = x.size();
  if (n < 2 || exps.size() != n) throw std::invalid_argument("integrate_interlacing: need n >= 2 points and n exponents");
  require_increasing(x, "integrate_interlacing");
  for (double e : exps) {
    if (!(e > 0.0)) throw std::invalid_argument("integrate_interlacing: exponents must be positive");
  }
  const std::size_t dims = n - 1;

  // Per-coordinate nodes and weights with the non-adjacent factors folded in.
  std::vector<std::vector<double>> nodes(dims);
  std::vector<std::vector<double>> weights(dims);
  double scale = 1.0;
  for (std::size_t k = 0; k < dims; ++k) {
    const double h = x[k + 1] - x[k];
    const JacobiRule rule = jacobi_rule(m, exps[k] - 1.0, exps[k + 1] - 1.0);
    scale *= std::pow(h, exps[k] + exps[k + 1] - 1.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double y = x[k] + h * rule.nodes[q];
      double w = rule.weights[q];
      for (std::size_t l = 0; l < n; ++l) {
        if (l == k || l == k + 1) continue;
        w *= std::pow(std::abs(y - x[l]), exps[l] - 1.0);
      }
      nodes[k].push_back(y);
      weights[k].push_back(w);
    }
  }

  std::vector<std::size_t> index(dims, 0);
  std::vector<double> point(dims);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < dims; ++k) {
      point[k] = nodes[k][index[k]];
      w *= weights[k][index[k]];
    }
    sum += w * f(point);
    std::size_t k = dims;
    while (k > 0) {
      --k;
      if (++index[k] < nodes[k].size()) break;
      index[k] = 0;
      if (k == 0) return {scale * sum, 0.0};
    }
  }
}

namespace {

struct GradedLevel {
  std::vector<double> t;
  std::vector<double> one_minus_t;
  std::vector<double> w;
};

// Rule for ∫₀¹ g(t) t^a (1−t)^b dt after t = u^p: the weight becomes
// p u^{p(a+1)−1} (1−u)^b · S(u)^b with S(u) = (1−u^p)/(1−u).
GradedLevel graded_level(int m, int p, double a, double b) {
  const JacobiRule rule = jacobi_rule(m, p * (a + 1.0) - 1.0, b);
  GradedLevel level;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double u = rule.nodes[q];
    double geometric = 0.0;
    double power = 1.0;
    for (int k = 0; k < p; ++k) {
      geometric += power;
      power *= u;
    }
    level.t.push_back(power);
    level.one_minus_t.push_back((1.0 - u) * geometric);
    level.w.push_back(rule.weights[q] * p * std::pow(geometric, b));
  }
  return level;
}

}  // namespace

ComplexF integrate_selberg_nested(const RealIntegrand& f, int n, double alpha, double beta, double gamma,
                                  NestedOptions options) {
  if (n < 1 || n > kMaxNestedDimension) {
    throw std::invalid_argument("integrate_selberg_nested: n must be in [1, 3]; use Monte Carlo for larger n");
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("integrate_selberg_nested: need alpha, beta > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("integrate_selberg_nested: need gamma > 0");
  if (options.grading < 1) throw std::invalid_argument("integrate_selberg_nested: grading must be >= 1");

  // Coordinates: x₁ = t₁, x_k = x_{k−1} + (1 − x_{k−1}) t_k. Then
  // 1 − x_k = Π_{l≤k}(1 − t_l) and x_k − x_{k−1} = t_k (1 − x_{k−1}), so
  // every factor vanishing on a face of the simplex is a power of some t_l
  // or (1 − t_l).
  std::vector<GradedLevel> levels;
  for (int l = 1; l <= n; ++l) {
    const double a = l == 1 ? alpha - 1.0 : 2.0 * gamma;
    const double tail = n - l;
    const double b = (tail + 1.0) * (beta - 1.0) + gamma * tail * (tail + 1.0) + tail;
    levels.push_back(graded_level(options.m, options.grading, a, b));
  }

  double factorial_n = 1.0;
  for (int k = 2; k <= n; ++k) factorial_n *= k;

  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::size_t> index(nn, 0);
  std::vector<double> x(nn);
  std::vector<double> t(nn);
  std::vector<double> s(nn);  // 1 − t
  const double two_gamma = 2.0 * gamma;
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < nn; ++k) {
      const GradedLevel& level = levels[k];
      t[k] = level.t[index[k]];
      s[k] = level.one_minus_t[index[k]];
      w *= level.w[index[k]];
      x[k] = k == 0 ? t[0] : x[k - 1] + (1.0 - x[k - 1]) * t[k];
    }
    double smooth = f(x);
    if (alpha != 1.0) {
      for (std::size_t k = 1; k < nn; ++k) smooth *= std::pow(x[k], alpha - 1.0);
    }
    // Non-adjacent gaps: x_j − x_i = (1 − x_i)·[1 − Π_{i<l≤j}(1 − t_l)].
    for (std::size_t i = 0; i + 2 < nn; ++i) {
      double bracket = t[i + 1];
      for (std::size_t j = i + 2; j < nn; ++j) {
        bracket += (1.0 - bracket) * t[j];
        smooth *= std::pow(bracket, two_gamma);
      }
    }
    sum += w * smooth;

    std::size_t k = nn;
    while (k > 0) {
      --k;
      if (++index[k] < levels[k].t.size()) break;
      index[k] = 0;
      if (k == 0) return {factorial_n * sum, 0.0};
    }
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

struct ChunkStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

constexpr std::int64_t kChunkSize = 1 << 16;

ChunkStats run_chunk(const RealIntegrand& f, int n, double alpha, double beta, double gamma, std::int64_t count,
                     std::uint64_t chunk_seed, double scale) {
  std::mt19937_64 engine(chunk_seed);
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  ChunkStats stats;
  for (std::int64_t s = 0; s < count; ++s) {
    for (auto& v : x) {
      const double u = ga(engine);
      const double v2 = gb(engine);
      v = u / (u + v2);
    }
    double value = scale * f(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) value *= std::pow(std::abs(x[i] - x[j]), 2.0 * gamma);
    }
    ++stats.count;
    const double delta = value - stats.mean;
    stats.mean += delta / static_cast<double>(stats.count);
    stats.m2 += delta * (value - stats.mean);
  }
  return stats;
}

}  // namespace

McEstimate integrate_selberg_mc(const RealIntegrand& f, int n, double alpha, double beta, double gamma,
                                std::int64_t n_samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("integrate_selberg_mc: n must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("integrate_selberg_mc: need alpha, beta > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("integrate_selberg_mc: need gamma > 0");
  if (n_samples < 1000) throw std::invalid_argument("integrate_selberg_mc: need at least 1000 samples");

  const double scale = std::exp(n * log_beta(alpha, beta));
  const std::int64_t chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::future<ChunkStats>> pending;
  std::vector<ChunkStats> results(static_cast<std::size_t>(chunks));
  const unsigned workers = std::max(1U, std::thread::hardware_concurrency());

  // Chunk c always uses seed splitmix64(seed + c) and its stats are merged
  // in chunk order, so the result does not depend on the thread count.
  for (std::int64_t c = 0; c < chunks; c += workers) {
    pending.clear();
    const std::int64_t last = std::min<std::int64_t>(chunks, c + workers);
    for (std::int64_t k = c; k < last; ++k) {
      const std::int64_t count = std::min(kChunkSize, n_samples - k * kChunkSize);
      const std::uint64_t chunk_seed = splitmix64(seed + static_cast<std::uint64_t>(k));
      pending.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, run_chunk,
                                   std::cref(f), n, alpha, beta, gamma, count, chunk_seed, scale));
    }
    for (std::int64_t k = c; k < last; ++k) results[static_cast<std::size_t>(k)] = pending[static_cast<std::size_t>(k - c)].get();
  }

  ChunkStats total;
  for (const ChunkStats& chunk : results) {
    const std::int64_t combined = total.count + chunk.count;
    const double delta = chunk.mean - total.mean;
    total.mean += delta * static_cast<double>(chunk.count) / static_cast<double>(combined);
    total.m2 += chunk.m2 + delta * delta * static_cast<double>(total.count) * static_cast<double>(chunk.count) /
                               static_cast<double>(combined);
    total.count = combined;
  }
  McEstimate estimate;
  estimate.value = {total.mean, 0.0};
  estimate.std_error = std::sqrt(total.m2 / static_cast<double>(total.count - 1) / static_cast<double>(total.count));
  estimate.n_samples = total.count;
  estimate.seed = seed;
  return estimate;
}

}  // namespace selberg
