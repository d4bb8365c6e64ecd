#include "doctest.h"
#include "shm/biform.hpp"

using namespace shm;

namespace {

BiForm dz(int n, int i) { return BiForm::coframe(n, {i}, {}); }
BiForm dzb(int n, int i) { return BiForm::coframe(n, {}, {i}); }

// standard Kahler form i * sum dz^i ∧ dzb^i
BiForm std_form(int n) {
  BiForm r(n);
  for (int i = 0; i < n; ++i) r += BiForm::coframe(n, {i}, {i}, Scalar::i());
  return r;
}

}  // namespace

TEST_CASE("wedge basics") {
  BiForm a = dz(2, 0);
  BiForm b = dzb(2, 0);
  CHECK(wedge(a, a).is_zero());
  CHECK(wedge(a, b) == -wedge(b, a));

  BiForm za = BiForm::monomial(2, FormMonomial{1u, 0}, Poly::variable(slot_z(0)));
  BiForm zb = BiForm::monomial(2, FormMonomial{0, 2u}, Poly::variable(slot_zbar(1)));
  BiForm w = wedge(za, zb);
  CHECK(w == BiForm::monomial(2, FormMonomial{1u, 2u},
                              Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(1))));

  CHECK_THROWS_AS(wedge(dz(2, 0), dz(3, 0)), std::invalid_argument);
}

TEST_CASE("wedge is graded commutative and associative on samples") {
  BiForm a = BiForm::coframe(3, {0}, {1});        // (1,1): even
  BiForm b = BiForm::coframe(3, {2}, {});         // (1,0): odd
  BiForm c = BiForm::coframe(3, {}, {0});         // (0,1): odd
  CHECK(wedge(a, b) == wedge(b, a));              // even * odd commutes
  CHECK(wedge(b, c) == -wedge(c, b));             // odd * odd anticommutes
  CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
}

TEST_CASE("dolbeault operators on explicit forms") {
  // d(z1 dz2) = dz1 ∧ dz2
  BiForm a = BiForm::monomial(2, FormMonomial{2u, 0}, Poly::variable(slot_z(0)));
  CHECK(exterior_d(a) == BiForm::coframe(2, {0, 1}, {}));

  // delbar(zb1 dz1) = dzb1 ∧ dz1 = -dz1 ∧ dzb1
  BiForm b = BiForm::monomial(2, FormMonomial{1u, 0}, Poly::variable(slot_zbar(0)));
  CHECK(delbar(b) == wedge(dzb(2, 0), dz(2, 0)));
  CHECK(delbar(b) == -BiForm::coframe(2, {0}, {0}));

  // del(delbar(z1 zb1 * i dz2 ∧ dzb2)) = i dz1∧dzb1∧dz2∧dzb2 (interleaved order)
  BiForm c = BiForm::monomial(
      2, FormMonomial{2u, 2u},
      Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(0)) * Scalar::i());
  BiForm want = wedge(wedge(BiForm::coframe(2, {0}, {0}, Scalar::i()), dz(2, 1)), dzb(2, 1));
  CHECK(del(delbar(c)) == want);

  CHECK(exterior_d(c) == del(c) + delbar(c));
}

TEST_CASE("conjugation") {
  BiForm om = BiForm::coframe(2, {0}, {0}, Scalar::i());
  CHECK(conj(om) == om);  // real (1,1) form

  BiForm a = BiForm::monomial(2, FormMonomial{1u, 0}, Poly::variable(slot_z(0)));
  BiForm want = BiForm::monomial(2, FormMonomial{0, 1u}, Poly::variable(slot_zbar(0)));
  CHECK(conj(a) == want);

  BiForm messy = BiForm::monomial(3, FormMonomial{0b011u, 0b100u},
                                  Poly::variable(slot_z(2)) * Scalar::gauss(1, 2, -3, 5)) +
                 BiForm::coframe(3, {1}, {0, 2}, Scalar::i());
  CHECK(conj(conj(messy)) == messy);
}

TEST_CASE("complex structure action on forms") {
  CHECK(j_action(dz(2, 0)) == dz(2, 0) * (-Scalar::i()));
  BiForm eleven = BiForm::coframe(2, {0}, {0});
  CHECK(j_action(eleven) == eleven);
  CHECK(j_action(j_action(dz(2, 0))) == -dz(2, 0));
}

TEST_CASE("pullback along sigma(u,v) = (u, uv)") {
  HoloMap sigma = make_holo_map(
      2, 2, {Poly::variable(slot_z(0)), Poly::variable(slot_z(0)) * Poly::variable(slot_z(1))});

  BiForm du = dz(2, 0), dv = dz(2, 1);
  Poly u = Poly::variable(slot_z(0)), v = Poly::variable(slot_z(1));

  CHECK(pullback(sigma, dz(2, 1)) == du * v + dv * u);
  CHECK(pullback(sigma, BiForm::coframe(2, {0}, {0}, Scalar::i())) ==
        BiForm::coframe(2, {0}, {0}, Scalar::i()));

  BiForm lhs = pullback(sigma, BiForm::coframe(2, {1}, {1}, Scalar::i()));
  BiForm rhs = wedge(du * v + dv * u, conj(du * v + dv * u)) * Scalar::i();
  CHECK(lhs == rhs);

  CHECK_THROWS_AS(pullback(sigma, dz(3, 0)), std::invalid_argument);
  // antiholomorphic component is rejected at construction
  CHECK_THROWS_AS(make_holo_map(2, 1, {Poly::variable(slot_zbar(0))}), std::invalid_argument);
}

TEST_CASE("powers of forms") {
  BiForm om = std_form(2);
  BiForm sq = power(om, 2);
  BiForm want = wedge(BiForm::coframe(2, {0}, {0}, Scalar::i()),
                      BiForm::coframe(2, {1}, {1}, Scalar::i())) *
                Scalar(2);
  CHECK(sq == want);
  CHECK(power(om, 1) == om);
  CHECK(power(BiForm::coframe(2, {0}, {0}), 2).is_zero());
  CHECK(power(om, 0) == BiForm::scalar(2, Poly::constant(Scalar(1))));
}

TEST_CASE("hermitian matrix extraction") {
  Point origin2{{Scalar(0), Scalar(0)}};
  auto g = hermitian_matrix_at(std_form(2), origin2);
  CHECK(g[0][0] == Scalar(1));
  CHECK(g[1][1] == Scalar(1));
  CHECK(g[0][1] == Scalar(0));

  // i (1 + z1 zb1) dz1∧dzb1 at z1 = 1 gives [2]
  BiForm a = BiForm::monomial(
      1, FormMonomial{1u, 1u},
      (Poly::constant(Scalar(1)) + Poly::variable(slot_z(0)) * Poly::variable(slot_zbar(0))) *
          Scalar::i());
  auto g1 = hermitian_matrix_at(a, Point{{Scalar(1)}});
  CHECK(g1[0][0] == Scalar(2));

  BiForm indef = BiForm::coframe(2, {0}, {0}, Scalar::i()) -
                 BiForm::coframe(2, {1}, {1}, Scalar::i());
  auto g2 = hermitian_matrix_at(indef, origin2);
  CHECK(g2[0][0] == Scalar(1));
  CHECK(g2[1][1] == Scalar(-1));
  CHECK_FALSE(is_positive_definite_at(indef, origin2));

  CHECK_THROWS_AS(hermitian_matrix_at(dz(2, 0), origin2), std::invalid_argument);
  CHECK_THROWS_AS(is_positive_definite_at(dz(2, 0) * Scalar::i(), origin2),
                  std::invalid_argument);
}

TEST_CASE("positivity of the blow-up chart pullback degenerates at the origin") {
  HoloMap sigma = make_holo_map(
      2, 2, {Poly::variable(slot_z(0)), Poly::variable(slot_z(0)) * Poly::variable(slot_z(1))});
  BiForm pulled = pullback(sigma, std_form(2));
  Point origin{{Scalar(0), Scalar(0)}};
  CHECK(is_positive_definite_at(std_form(2), origin));
  CHECK_FALSE(is_positive_definite_at(pulled, origin));
  // away from u = 0 the pullback is positive again
  CHECK(is_positive_definite_at(pulled, Point{{Scalar(1), Scalar(2)}}));
}

TEST_CASE("t-derivative at zero") {
  BiForm om = std_form(2);
  BiForm eta = BiForm::coframe(2, {0}, {1}, Scalar(3));
  BiForm family = om;
  for (const auto& [m, c] : eta.terms()) family.add_term(m, c.times_var(kSlotT));
  CHECK(t_derivative_at_zero(family) == eta);
  CHECK(t_derivative_at_zero(om).is_zero());
  BiForm second(2);
  for (const auto& [m, c] : eta.terms()) second.add_term(m, c.times_var(kSlotT, 2));
  CHECK(t_derivative_at_zero(second).is_zero());
}

TEST_CASE("relabeling and embedding") {
  BiForm a = BiForm::coframe(2, {0, 1}, {});
  CHECK(relabel(a, {1, 0}) == -a);  // swapping the coordinates resorts the frame

  BiForm za = BiForm::monomial(1, FormMonomial{1u, 0}, Poly::variable(slot_z(0)));
  BiForm emb = shift_embed(za, 3, 1);
  CHECK(emb == BiForm::monomial(3, FormMonomial{2u, 0}, Poly::variable(slot_z(1))));

  CHECK_THROWS_AS(BiForm::coframe(2, {0, 0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(BiForm::coframe(2, {2}, {}), std::invalid_argument);
}

TEST_CASE("bidegree bookkeeping") {
  BiForm zero(3);
  CHECK(zero.is_pure_bidegree(0, 0));
  CHECK(zero.is_pure_bidegree(2, 1));  // the zero form has every bidegree
  BiForm mixed = dz(3, 0) + dzb(3, 1);
  CHECK_FALSE(mixed.pure_bidegree().has_value());
  auto bd = BiForm::coframe(3, {0, 2}, {1}).pure_bidegree();
  REQUIRE(bd.has_value());
  CHECK(bd->first == 2);
  CHECK(bd->second == 1);
}
