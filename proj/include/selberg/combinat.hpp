#pragma once

// Exact combinatorics: rationals, partitions, compositions, dominance order,
// multinomials and rising factorials.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace selberg {

using BigInt = mpz_class;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator, so two equal values compare equal structurally.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den = 1);
  explicit BigRational(const mpq_class& q);

  /// Parses "p/q" or "p" (optional leading sign, decimal integers).
  static BigRational parse(std::string_view text);

  const mpq_class& value() const { return value_; }
  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const;

  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  BigRational operator-() const { return BigRational(mpq_class(-value_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return a.value_ >= b.value_; }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& q);

/// Integer power with a nonnegative exponent.
BigRational pow(const BigRational& base, unsigned exponent);

/// Weakly decreasing vector of nonnegative integers. Trailing zeros are
/// dropped on construction; indexing past the end yields 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  int weight() const;
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  /// Parts padded with zeros to length n; throws if length() > n.
  std::vector<int> padded(std::size_t n) const;

  /// The rectangle (r^k): k parts equal to r.
  static Partition rectangle(int r, std::size_t k);

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

using Composition = std::vector<int>;

/// Range over all compositions of r into n nonnegative parts, lexicographic
/// descending: (r,0,…,0) first, (0,…,0,r) last.
class Compositions {
 public:
  Compositions(int r, int n);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) { auto tmp = *this; ++*this; return tmp; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    friend class Compositions;
    iterator(int r, int n);
    Composition current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(r_, n_); }
  iterator end() const { return iterator(); }

 private:
  int r_;
  int n_;
};

inline Compositions compositions_of(int r, int n) { return Compositions(r, n); }

/// All partitions of `weight` with at most `max_parts` nonzero parts, in
/// reverse lexicographic order (largest first). Reverse lex is a linear
/// extension of dominance.
std::vector<Partition> partitions_of(int weight, std::size_t max_parts);

BigInt factorial(unsigned k);
BigInt binomial(unsigned n, unsigned k);

/// r! / (ν₁!⋯νₙ!). Throws std::invalid_argument unless |ν| = r.
BigInt multinomial(int r, std::span<const int> nu);

/// Rising factorial a(a+1)⋯(a+k−1); 1 when k = 0.
template <typename Scalar>
Scalar pochhammer(const Scalar& a, unsigned k) {
  Scalar result(1);
  for (unsigned i = 0; i < k; ++i) result *= a + Scalar(static_cast<long>(i));
  return result;
}

template <>
inline std::complex<double> pochhammer(const std::complex<double>& a, unsigned k) {
  std::complex<double> result(1.0);
  for (unsigned i = 0; i < k; ++i) result *= a + static_cast<double>(i);
  return result;
}

template <>
inline double pochhammer(const double& a, unsigned k) {
  double result = 1.0;
  for (unsigned i = 0; i < k; ++i) result *= a + static_cast<double>(i);
  return result;
}

/// Strict dominance μ < λ. Throws std::invalid_argument on unequal weights.
bool dominance_less(const Partition& mu, const Partition& lambda);

}  // namespace selberg
