#include "shm/scalar.hpp"

namespace shm {

std::string rational_str(const Rational& q) { return q.get_str(); }

Scalar Scalar::i_pow(long k) {
  long r = ((k % 4) + 4) % 4;
  switch (r) {
    case 0: return Scalar(1);
    case 1: return Scalar::i();
    case 2: return Scalar(-1);
    default: return -Scalar::i();
  }
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero Scalar");
  Rational n = norm();
  return Scalar(re / n, -im / n);
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re) != 0) out += rational_str(re);
  if (sgn(im) != 0) {
    std::string istr;
    if (cmp(im, 1) == 0) {
      istr = "i";
    } else if (cmp(im, -1) == 0) {
      istr = "-i";
    } else {
      istr = rational_str(im) + "i";
    }
    if (!out.empty() && istr[0] != '-') out += "+";
    out += istr;
  }
  return out;
}

}  // namespace shm
