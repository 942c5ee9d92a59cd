#include "selberg/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace selberg {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("BigRational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational::BigRational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_mpz = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "' (expected p/q)");
  }
  return BigRational(to_mpz(num), to_mpz(den));
}

std::string BigRational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.to_string(); }

BigRational pow(const BigRational& base, unsigned exponent) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
  return BigRational(num, den);
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::vector<int> Partition::padded(std::size_t n) const {
  if (parts_.size() > n) {
    throw std::invalid_argument("partition " + to_string() + " has more than " + std::to_string(n) + " parts");
  }
  std::vector<int> out(parts_);
  out.resize(n, 0);
  return out;
}

Partition Partition::rectangle(int r, std::size_t k) {
  if (r < 0) throw std::invalid_argument("Partition::rectangle: negative part");
  return Partition(std::vector<int>(k, r));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

Compositions::Compositions(int r, int n) : r_(r), n_(n) {
  if (n < 1) throw std::invalid_argument("compositions_of: n must be positive");
  if (r < 0) throw std::invalid_argument("compositions_of: r must be nonnegative");
}

Compositions::iterator::iterator(int r, int n) : current_(static_cast<std::size_t>(n), 0), done_(false) {
  current_[0] = r;
}

Compositions::iterator& Compositions::iterator::operator++() {
  const auto n = current_.size();
  // Rightmost nonzero entry strictly before the last slot gives one unit to
  // its right neighbour, which also collects everything further right.
  std::size_t i = n - 1;
  while (i > 0 && current_[i - 1] == 0) --i;
  if (i == 0) {
    done_ = true;
    return *this;
  }
  --i;
  int tail = 0;
  for (std::size_t k = i + 1; k < n; ++k) {
    tail += current_[k];
    current_[k] = 0;
  }
  --current_[i];
  current_[i + 1] = tail + 1;
  return *this;
}

namespace {

void partitions_rec(int remaining, int max_part, std::size_t slots, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (slots == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_rec(remaining - part, part, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int weight, std::size_t max_parts) {
  if (weight < 0) throw std::invalid_argument("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> prefix;
  partitions_rec(weight, weight, max_parts, prefix, out);
  return out;
}

BigInt factorial(unsigned k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt multinomial(int r, std::span<const int> nu) {
  int total = 0;
  for (int v : nu) {
    if (v < 0) throw std::invalid_argument("multinomial: negative part");
    total += v;
  }
  if (r < 0 || total != r) {
    throw std::invalid_argument("multinomial: parts sum to " + std::to_string(total) + ", expected " +
                                std::to_string(r));
  }
  BigInt out = factorial(static_cast<unsigned>(r));
  for (int v : nu) out /= factorial(static_cast<unsigned>(v));
  return out;
}

bool dominance_less(const Partition& mu, const Partition& lambda) {
  if (mu.weight() != lambda.weight()) {
    throw std::invalid_argument("dominance_less: partitions " + mu.to_string() + " and " + lambda.to_string() +
                                " have different weights");
  }
  if (mu == lambda) return false;
  const std::size_t len = std::max(mu.length(), lambda.length());
  int sum_mu = 0;
  int sum_lambda = 0;
  for (std::size_t i = 0; i < len; ++i) {
    sum_mu += mu[i];
    sum_lambda += lambda[i];
    if (sum_mu > sum_lambda) return false;
  }
  return true;
}

}  // namespace selberg
