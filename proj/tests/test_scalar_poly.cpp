#include "doctest.h"
#include "shm/poly.hpp"

using namespace shm;

TEST_CASE("scalar field arithmetic is exact") {
  Scalar a = Scalar::gauss(1, 2, 3, 4);   // 1/2 + 3/4 i
  Scalar b = Scalar::gauss(-2, 3, 1, 6);  // -2/3 + 1/6 i
  CHECK(a + b == Scalar::gauss(-1, 6, 11, 12));
  CHECK(a * b == Scalar(make_rational(-11, 24), make_rational(-5, 12)));
  CHECK(a * a.inverse() == Scalar(1));
  CHECK((a / b) * b == a);
  CHECK(a.conj().conj() == a);
  CHECK((a * b).conj() == a.conj() * b.conj());
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(Scalar::i_pow(-1) == -Scalar::i());
  CHECK(Scalar::i_pow(6) == Scalar(-1));
}

TEST_CASE("scalar canonical text") {
  CHECK(Scalar().str() == "0");
  CHECK(Scalar::of(4, 8).str() == "1/2");
  CHECK(Scalar::i().str() == "i");
  CHECK((-Scalar::i()).str() == "-i");
  CHECK(Scalar::gauss(1, 1, -2, 3).str() == "1-2/3i");
  CHECK(Scalar::gauss(0, 1, 5, 1).str() == "5i");
}

TEST_CASE("poly arithmetic, cancellation and truncation") {
  Poly z1 = Poly::variable(slot_z(0));
  Poly zb1 = Poly::variable(slot_zbar(0));
  Poly t = Poly::variable(kSlotT);

  Poly p = z1 * zb1 + t * t;
  CHECK_FALSE(p.is_zero());
  CHECK((p - p).is_zero());

  // truncation: t^3 terms vanish silently under the default order 2
  Poly cube = t * t * t;
  CHECK(cube.is_zero());
  CHECK((t * (t * t)).is_zero());

  // truncation order is carried and lowered through mixed arithmetic
  Poly loose = Poly::variable(kSlotT, 4);
  Poly cubed_loose = loose * loose * loose;
  CHECK_FALSE(cubed_loose.is_zero());
  CHECK((cubed_loose * t).is_zero());  // min(4, 2) = 2 drops t^4

  CHECK(p.min_t_degree() == 0);
  CHECK((t * z1).min_t_degree() == 1);
  CHECK(Poly().min_t_degree() == kNoTDegree);
}

TEST_CASE("poly derivative and conjugation") {
  Poly z1 = Poly::variable(slot_z(0));
  Poly zb2 = Poly::variable(slot_zbar(1));
  Poly p = z1 * z1 * zb2 * Scalar::i();
  CHECK(p.derivative(slot_z(0)) == z1 * zb2 * Scalar::gauss(0, 1, 2, 1));
  CHECK(p.derivative(slot_zbar(1)) == z1 * z1 * Scalar::i());
  CHECK(p.derivative(slot_z(1)).is_zero());
  // conj swaps z and zbar and conjugates coefficients
  CHECK(p.conj() == Poly::variable(slot_zbar(0)) * Poly::variable(slot_zbar(0)) *
                        Poly::variable(slot_z(1)) * (-Scalar::i()));
  CHECK(p.conj().conj() == p);
  // t and N are real parameters
  Poly q = Poly::variable(kSlotT) * Poly::variable(kSlotN).times_var(kSlotN, 0);
  CHECK(q.conj() == q);
}

TEST_CASE("poly evaluation is a ring morphism with zbar forced conjugate") {
  Poly p = Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(0));  // |z1|^2
  std::vector<Scalar> at{Scalar::gauss(1, 1, 2, 1)};                  // z1 = 1 + 2i
  CHECK(p.eval(at) == Scalar(5));
  Poly q = Poly::variable(slot_z(0)) + Poly::constant(Scalar(3));
  CHECK((p * q).eval(at) == p.eval(at) * q.eval(at));
  // t evaluates to zero
  CHECK((p.times_var(kSlotT)).eval(at) == Scalar(0));
  // N needs a value
  Poly with_n = p.times_var(kSlotN);
  CHECK_THROWS_AS(with_n.eval(at), std::invalid_argument);
  CHECK(with_n.eval(at, make_rational(2)) == Scalar(10));
}

TEST_CASE("poly t and N coefficient extraction") {
  Poly z1 = Poly::variable(slot_z(0));
  Poly p = z1 + (z1 * z1).times_var(kSlotT) + Poly::constant(Scalar(7)).times_var(kSlotT, 2);
  CHECK(p.t_coefficient(0) == z1);
  CHECK(p.t_coefficient(1) == z1 * z1);
  CHECK(p.t_coefficient(2) == Poly::constant(Scalar(7)));
  CHECK(p.t_coefficient(3).is_zero());
  Poly q = z1.times_var(kSlotN, 2) + Poly::constant(Scalar(1));
  CHECK(q.n_coefficient(2) == z1);
  CHECK(q.n_coefficient(0) == Poly::constant(Scalar(1)));
}

TEST_CASE("poly substitution composes holomorphically") {
  // z1 <- w1, z2 <- w1*w2 on p = z2^2 + z1 zbar2
  Poly w1 = Poly::variable(slot_z(0));
  Poly w2 = Poly::variable(slot_z(1));
  std::vector<Poly> zi{w1, w1 * w2};
  std::vector<Poly> zbi{w1.conj(), (w1 * w2).conj()};
  Poly p = Poly::variable(slot_z(1)) * Poly::variable(slot_z(1)) +
           Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(1));
  Poly got = p.substitute(zi, zbi);
  Poly want = w1 * w2 * w1 * w2 + w1 * w1.conj() * w2.conj();
  CHECK(got == want);
}

TEST_CASE("poly canonical text") {
  Poly p = Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(1)) * Scalar::of(1, 2) +
           Poly::constant(Scalar(1));
  CHECK(p.str() == "1 + (1/2)*z1*zb2");
  CHECK(Poly().str() == "0");
  CHECK(Poly::variable(slot_z(0)).str("w") == "w1");
}
