#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace voa {

// Exact rational number backed by GMP. Always canonical: lowest terms,
// positive denominator. No floating point anywhere in the kernel.
class Scalar {
 public:
  Scalar() : v_(0) {}
  Scalar(long n) : v_(n) {}  // NOLINT: implicit on purpose, lets 2 * state read naturally
  Scalar(long num, long den);

  // Accepts "p" or "p/q", optional leading minus.
  static Scalar from_string(std::string_view s);
  static Scalar binomial(unsigned long n, unsigned long k);
  static Scalar factorial(unsigned long n);

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
  Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
  Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
  friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return v_ != o.v_; }
  bool operator<(const Scalar& o) const { return v_ < o.v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  Scalar inverse() const;

  bool is_integer() const { return v_.get_den() == 1; }
  // Numerator as a long; only meaningful when is_integer() and small.
  long to_long() const { return v_.get_num().get_si(); }

  // Canonical text form: "3", "-1/2".
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  mpq_class v_;
};

}  // namespace voa
