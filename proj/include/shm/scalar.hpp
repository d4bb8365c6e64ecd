#ifndef SHM_SCALAR_HPP
#define SHM_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace shm {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Lowest-terms decimal-free text, e.g. "-3/2", "7".
std::string rational_str(const Rational& q);

// Gaussian rational a + b*i, the exact coefficient field of the engine.
// All identity checks downstream are equalities in this field; there are
// no tolerances anywhere.
struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long v) : re(v), im(0) {}  // implicit: allows form * 2 etc.
  explicit Scalar(Rational r) : re(std::move(r)), im(0) {}
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar of(long num, long den) { return Scalar(make_rational(num, den)); }
  static Scalar gauss(long rn, long rd, long in, long id) {
    return Scalar(make_rational(rn, rd), make_rational(in, id));
  }
  // i^k for any integer k (negative allowed).
  static Scalar i_pow(long k);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Scalar conj() const { return Scalar(re, -im); }
  Rational norm() const { return re * re + im * im; }
  Scalar inverse() const;

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Canonical "a+bi" text, rationals in lowest terms: "0", "1/2", "-i", "1-2/3i".
  std::string str() const;
};

}  // namespace shm

#endif
