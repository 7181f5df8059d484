#include "voa/scalar.hpp"

#include <ostream>

#include "voa/errors.hpp"

namespace voa {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Scalar Scalar::from_string(std::string_view s) {
  if (s.empty()) throw StructuralError("empty rational literal");
  std::string buf(s);
  mpq_class q;
  if (q.set_str(buf, 10) != 0)
    throw StructuralError("bad rational literal: " + buf);
  if (sgn(q.get_den()) == 0)
    throw StructuralError("rational with zero denominator: " + buf);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::binomial(unsigned long n, unsigned long k) {
  if (k > n) return Scalar(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Scalar(mpq_class(z));
}

Scalar Scalar::factorial(unsigned long n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return Scalar(mpq_class(z));
}

Scalar Scalar::operator-() const {
  return Scalar(mpq_class(-v_));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw StructuralError("division by zero scalar");
  v_ /= o.v_;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw StructuralError("inverse of zero scalar");
  return Scalar(mpq_class(1) / v_);
}

std::string Scalar::str() const {
  return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.v_;
}

}  // namespace voa
