#include "selberg/symfunc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace selberg {

SparsePoly::SparsePoly(std::size_t n_vars) : n_vars_(n_vars) {
  if (n_vars == 0) throw std::invalid_argument("SparsePoly: need at least one variable");
}

SparsePoly SparsePoly::constant(std::size_t n_vars, const BigRational& c) {
  SparsePoly p(n_vars);
  p.add_term(Exponent(n_vars, 0), c);
  return p;
}

SparsePoly SparsePoly::monomial(Exponent exp, const BigRational& c) {
  SparsePoly p(exp.size());
  p.add_term(exp, c);
  return p;
}

void SparsePoly::add_term(const Exponent& exp, const BigRational& c) {
  if (exp.size() != n_vars_) throw std::invalid_argument("SparsePoly: exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BigRational SparsePoly::coefficient(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? BigRational(0) : it->second;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (o.n_vars_ != n_vars_) throw std::invalid_argument("SparsePoly: variable count mismatch");
  for (const auto& [exp, c] : o.terms_) add_term(exp, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (o.n_vars_ != n_vars_) throw std::invalid_argument("SparsePoly: variable count mismatch");
  for (const auto& [exp, c] : o.terms_) add_term(exp, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const BigRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [exp, coeff] : terms_) coeff *= c;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.n_vars_ != b.n_vars_) throw std::invalid_argument("SparsePoly: variable count mismatch");
  SparsePoly out(a.n_vars_);
  Exponent exp(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < exp.size(); ++k) exp[k] = ea[k] + eb[k];
      out.add_term(exp, ca * cb);
    }
  }
  return out;
}

SparsePoly SparsePoly::shifted(const Exponent& shift) const {
  if (shift.size() != n_vars_) throw std::invalid_argument("SparsePoly: shift length mismatch");
  SparsePoly out(n_vars_);
  for (const auto& [exp, c] : terms_) {
    Exponent e = exp;
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += shift[k];
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

SparsePoly SparsePoly::drop_last_variable() const {
  if (n_vars_ < 2) throw std::invalid_argument("drop_last_variable: need at least two variables");
  SparsePoly out(n_vars_ - 1);
  for (const auto& [exp, c] : terms_) {
    if (exp.back() < 0) throw std::domain_error("drop_last_variable: negative exponent in last variable");
    if (exp.back() == 0) out.add_term(Exponent(exp.begin(), exp.end() - 1), c);
  }
  return out;
}

bool SparsePoly::is_symmetric() const {
  for (const auto& [exp, c] : terms_) {
    for (std::size_t k = 0; k + 1 < n_vars_; ++k) {
      if (exp[k] == exp[k + 1]) continue;
      Exponent swapped = exp;
      std::swap(swapped[k], swapped[k + 1]);
      auto it = terms_.find(swapped);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

bool SparsePoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [degree](const auto& term) {
    int d = 0;
    for (int e : term.first) d += e;
    return d == degree;
  });
}

bool SparsePoly::has_negative_exponents() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& term) {
    return std::any_of(term.first.begin(), term.first.end(), [](int e) { return e < 0; });
  });
}

namespace {

template <typename Scalar>
Scalar integer_power(const Scalar& base, int e) {
  Scalar result(1);
  Scalar b = base;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  while (k) {
    if (k & 1U) result *= b;
    b *= b;
    k >>= 1U;
  }
  if (e < 0) result = Scalar(1) / result;
  return result;
}

template <typename Scalar, typename ToScalar>
Scalar eval_terms(const SparsePoly::TermMap& terms, std::size_t n_vars, std::span<const Scalar> point,
                  ToScalar&& to_scalar) {
  if (point.size() != n_vars) throw std::invalid_argument("eval: point has wrong dimension");
  Scalar sum(0);
  for (const auto& [exp, c] : terms) {
    Scalar term = to_scalar(c);
    for (std::size_t k = 0; k < n_vars; ++k) {
      if (exp[k] == 0) continue;
      if (exp[k] < 0 && point[k] == Scalar(0)) {
        throw std::domain_error("eval: zero coordinate with negative exponent");
      }
      term *= integer_power(point[k], exp[k]);
    }
    sum += term;
  }
  return sum;
}

}  // namespace

BigRational SparsePoly::eval(std::span<const BigRational> point) const {
  return eval_terms(terms_, n_vars_, point, [](const BigRational& c) { return c; });
}

std::complex<double> SparsePoly::eval(std::span<const std::complex<double>> point) const {
  return eval_terms(terms_, n_vars_, point, [](const BigRational& c) { return std::complex<double>(c.to_double()); });
}

double SparsePoly::eval(std::span<const double> point) const {
  return eval_terms(terms_, n_vars_, point, [](const BigRational& c) { return c.to_double(); });
}

std::map<Partition, BigRational> SparsePoly::monomial_expansion() const {
  if (!is_symmetric()) throw std::invalid_argument("monomial_expansion: polynomial is not symmetric");
  if (has_negative_exponents()) throw std::invalid_argument("monomial_expansion: Laurent terms present");
  std::map<Partition, BigRational> out;
  for (const auto& [exp, c] : terms_) {
    if (std::is_sorted(exp.begin(), exp.end(), std::greater<>())) out.emplace(Partition(exp), c);
  }
  return out;
}

namespace {

// Reverse lexicographic order on partitions: a linear extension of
// dominance with larger partitions first.
std::vector<std::pair<Partition, BigRational>> dominance_sorted(const std::map<Partition, BigRational>& expansion) {
  std::vector<std::pair<Partition, BigRational>> items(expansion.begin(), expansion.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.weight() != b.first.weight()) return a.first.weight() > b.first.weight();
    return a.first.parts() > b.first.parts();
  });
  return items;
}

}  // namespace

std::string SparsePoly::to_pretty() const {
  const auto items = dominance_sorted(monomial_expansion());
  if (items.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [lambda, c] : items) {
    BigRational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (lambda.empty()) {
      os << mag;
      continue;
    }
    if (mag != BigRational(1)) os << mag << '*';
    os << "m[";
    for (std::size_t i = 0; i < lambda.length(); ++i) os << (i ? "," : "") << lambda[i];
    os << ']';
  }
  return os.str();
}

namespace {

class PrettyParser {
 public:
  explicit PrettyParser(const std::string& text) : text_(text) {}

  std::map<Partition, BigRational> parse() {
    std::map<Partition, BigRational> out;
    skip_space();
    if (text_.substr(pos_) == "0") return out;
    bool first = true;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        if (first) fail("empty expression");
        break;
      }
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      BigRational coeff(1);
      Partition lambda;
      if (peek() == 'm') {
        lambda = parse_partition();
      } else {
        coeff = parse_rational();
        skip_space();
        if (peek() == '*') {
          ++pos_;
          skip_space();
          lambda = parse_partition();
        }
      }
      if (sign < 0) coeff = -coeff;
      auto [it, inserted] = out.try_emplace(lambda, coeff);
      if (!inserted) it->second += coeff;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_pretty: " + what + " at offset " + std::to_string(pos_));
  }
  BigRational parse_rational() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected coefficient");
    return BigRational::parse(std::string_view(text_).substr(start, pos_ - start));
  }
  Partition parse_partition() {
    if (text_.compare(pos_, 2, "m[") != 0) fail("expected 'm['");
    pos_ += 2;
    std::vector<int> parts;
    skip_space();
    while (peek() != ']') {
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected part");
      parts.push_back(std::stoi(text_.substr(start, pos_ - start)));
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
      } else if (peek() != ']') {
        fail("expected ',' or ']'");
      }
    }
    ++pos_;
    return Partition(parts);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly SparsePoly::parse_pretty(const std::string& text, std::size_t n_vars) {
  SparsePoly out(n_vars);
  for (const auto& [lambda, c] : PrettyParser(text).parse()) out += monomial_sym(lambda, n_vars) * c;
  return out;
}

void to_json(nlohmann::json& j, const SparsePoly& p) {
  auto terms = nlohmann::json::array();
  for (const auto& [exp, c] : p.terms()) terms.push_back({{"exp", exp}, {"coeff", c.to_string()}});
  j = {{"n_vars", p.n_vars()}, {"terms", std::move(terms)}};
}

SparsePoly sparse_poly_from_json(const nlohmann::json& j) {
  SparsePoly p(j.at("n_vars").get<std::size_t>());
  for (const auto& term : j.at("terms")) {
    p.add_term(term.at("exp").get<Exponent>(), BigRational::parse(term.at("coeff").get<std::string>()));
  }
  return p;
}

NumericPoly::NumericPoly(const SparsePoly& p) : n_vars_(p.n_vars()) {
  exps_.reserve(p.terms().size() * n_vars_);
  coeffs_.reserve(p.terms().size());
  for (const auto& [exp, c] : p.terms()) {
    for (int e : exp) {
      if (e < 0) throw std::invalid_argument("NumericPoly: Laurent terms not supported");
      max_exp_ = std::max(max_exp_, e);
    }
    exps_.insert(exps_.end(), exp.begin(), exp.end());
    coeffs_.push_back(c.to_double());
  }
}

double NumericPoly::operator()(std::span<const double> point) const {
  if (point.size() != n_vars_) throw std::invalid_argument("NumericPoly: point has wrong dimension");
  const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
  // Small fixed-size power table on the stack for the common case.
  constexpr std::size_t kStackSize = 256;
  double stack_table[kStackSize];
  std::vector<double> heap_table;
  double* table = stack_table;
  if (stride * n_vars_ > kStackSize) {
    heap_table.resize(stride * n_vars_);
    table = heap_table.data();
  }
  for (std::size_t k = 0; k < n_vars_; ++k) {
    double* row = table + k * stride;
    row[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * point[k];
  }
  double sum = 0.0;
  const int* exp = exps_.data();
  for (double c : coeffs_) {
    double term = c;
    for (std::size_t k = 0; k < n_vars_; ++k) term *= table[k * stride + static_cast<std::size_t>(exp[k])];
    sum += term;
    exp += n_vars_;
  }
  return sum;
}

JackParam::JackParam(BigRational alpha) : alpha_(std::move(alpha)) {
  if (alpha_.sign() <= 0) throw std::invalid_argument("JackParam: alpha must be positive");
}

SparsePoly monomial_sym(const Partition& lambda, std::size_t n) {
  std::vector<int> exp = lambda.padded(n);
  std::sort(exp.begin(), exp.end());
  SparsePoly out(n);
  do {
    out.add_term(exp, 1);
  } while (std::next_permutation(exp.begin(), exp.end()));
  return out;
}

namespace {

// Σ μᵢ(μᵢ − 1) − (2/α) Σ (i−1) μᵢ: eigenvalue of the rescaled
// Laplace–Beltrami operator on P_μ, up to an additive constant per weight.
BigRational jack_eigenvalue(const Partition& mu, const BigRational& two_over_alpha) {
  BigRational quadratic(0);
  BigRational linear(0);
  for (std::size_t i = 0; i < mu.length(); ++i) {
    quadratic += BigRational(static_cast<long>(mu[i]) * (mu[i] - 1));
    linear += BigRational(static_cast<long>(i) * mu[i]);
  }
  return quadratic - two_over_alpha * linear;
}

}  // namespace

std::map<Partition, BigRational> jack_monomial_coefficients(const Partition& lambda, const JackParam& p,
                                                           std::size_t n) {
  if (lambda.length() > n) {
    throw std::invalid_argument("jack_P: partition " + lambda.to_string() + " has more than " + std::to_string(n) +
                                " parts");
  }
  const BigRational two_over_alpha = BigRational(2) / p.alpha();
  const BigRational e_lambda = jack_eigenvalue(lambda, two_over_alpha);

  std::map<Partition, BigRational> coeffs;
  for (const Partition& mu : partitions_of(lambda.weight(), n)) {
    if (mu == lambda) {
      coeffs.emplace(mu, 1);
      continue;
    }
    if (!dominance_less(mu, lambda)) continue;
    // D m_ν contains m_μ for every ν obtained from μ by moving t units from
    // a smaller part μⱼ to a larger-or-equal part μᵢ (i < j), with
    // multiplicity μᵢ − μⱼ + 2t.
    BigRational sum(0);
    const std::vector<int>& parts = mu.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        for (int t = 1; t <= parts[j]; ++t) {
          std::vector<int> raised = parts;
          raised[i] += t;
          raised[j] -= t;
          std::sort(raised.begin(), raised.end(), std::greater<>());
          auto it = coeffs.find(Partition(raised));
          if (it == coeffs.end()) continue;
          sum += BigRational(parts[i] - parts[j] + 2 * t) * it->second;
        }
      }
    }
    if (sum.is_zero()) continue;
    const BigRational gap = e_lambda - jack_eigenvalue(mu, two_over_alpha);
    coeffs.emplace(mu, two_over_alpha * sum / gap);
  }
  return coeffs;
}

SparsePoly jack_P(const Partition& lambda, const JackParam& p, std::size_t n) {
  SparsePoly out(n);
  for (const auto& [mu, c] : jack_monomial_coefficients(lambda, p, n)) out += monomial_sym(mu, n) * c;
  return out;
}

SparsePoly f_r(int r, std::size_t n, const BigRational& gamma) {
  if (r < 0) throw std::invalid_argument("f_r: r must be nonnegative");
  SparsePoly out(n);
  Exponent exp(n);
  for (const Composition& nu : compositions_of(r, static_cast<int>(n))) {
    BigRational c(multinomial(r, nu));
    for (std::size_t k = 0; k < n; ++k) {
      c *= pochhammer(gamma, static_cast<unsigned>(nu[k]));
      exp[k] = r - nu[k];
    }
    out.add_term(exp, c);
  }
  return out;
}

std::vector<SparsePoly> g_series(std::size_t n, const JackParam& p, int order) {
  if (order < 0) throw std::invalid_argument("g_series: negative order");
  const BigRational a = BigRational(1) / p.alpha();
  // (1 − t x)^{−a} = Σ_k (a)_k / k! · (t x)^k
  std::vector<BigRational> binomial_series;
  for (int k = 0; k <= order; ++k) {
    binomial_series.push_back(pochhammer(a, static_cast<unsigned>(k)) / BigRational(factorial(static_cast<unsigned>(k))));
  }
  std::vector<SparsePoly> series(static_cast<std::size_t>(order) + 1, SparsePoly(n));
  series[0] = SparsePoly::constant(n, 1);
  for (std::size_t var = 0; var < n; ++var) {
    std::vector<SparsePoly> next(series.size(), SparsePoly(n));
    for (int r = 0; r <= order; ++r) {
      for (int k = 0; k <= r; ++k) {
        Exponent shift(n, 0);
        shift[var] = k;
        next[static_cast<std::size_t>(r)] +=
            series[static_cast<std::size_t>(r - k)].shifted(shift) * binomial_series[static_cast<std::size_t>(k)];
      }
    }
    series = std::move(next);
  }
  return series;
}

SparsePoly laurent_invert(const SparsePoly& poly, int r) {
  if (r < 0) throw std::invalid_argument("laurent_invert: r must be nonnegative");
  SparsePoly out(poly.n_vars());
  for (const auto& [exp, c] : poly.terms()) {
    Exponent flipped(exp.size());
    for (std::size_t k = 0; k < exp.size(); ++k) {
      if (exp[k] < 0 || exp[k] > r) {
        throw std::invalid_argument("laurent_invert: exponent " + std::to_string(exp[k]) + " outside [0, " +
                                    std::to_string(r) + "]");
      }
      flipped[k] = r - exp[k];
    }
    out.add_term(flipped, c);
  }
  return out;
}

}  // namespace selberg
