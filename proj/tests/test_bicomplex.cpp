#include "doctest.h"
#include "jetreduce/random.hpp"
#include "support.hpp"

using namespace jrtest;

namespace {

BigradedForm G(const Generator& g) { return BigradedForm::gen(g); }
BigradedForm S(const ScalarExpr& e) { return BigradedForm::scalar(e); }
const Generator dt = Generator::dx(0);

JetVectorField translation(int i, const JetSpace& s) {
  std::vector<ScalarExpr> Q(3);
  Q[i] = ScalarExpr(1);
  return JetVectorField::vertical(Q, s);
}

int parity(const BigradedForm& f) { return f.degree() % 2; }

}  // namespace

TEST_CASE("wedge normal form") {
  JetSpace s = particle_space();
  CHECK(wedge(G(dq(0)), G(dq(0))).is_zero());
  CHECK(wedge(G(dt), G(dq(0))) == -wedge(G(dq(0)), G(dt)));
  BigradedForm f = wedge(S(q(0, 1)) * ScalarExpr(1), wedge(G(dq(0)), G(dt)));
  CHECK(wedge(wedge(S(q(0, 1)), G(dq(0))), G(dt)) == f);
  CHECK(f.bidegrees() == std::set<std::pair<int, int>>{{1, 1}});
  CHECK(to_text(f, s) == "q1_t*v(q1)^^d(t)");
}

TEST_CASE("vertical and horizontal differentials") {
  JetSpace s = particle_space();
  BigradedForm gamma;
  for (int i = 0; i < 3; ++i) gamma += wedge(S(q(i, 1)), G(dq(i)));
  BigradedForm expected;
  for (int i = 0; i < 3; ++i) expected += wedge(G(dq(i, 1)), G(dq(i)));
  CHECK(d_v(gamma, s) == expected);
  CHECK(to_text(d_v(gamma, s), s) == "v(q1_t)^^v(q1) + v(q2_t)^^v(q2) + v(q3_t)^^v(q3)");
  CHECK(d_h(S(q(0, 1)), s) == wedge(S(q(0, 2)), G(dt)));
  // Contact structure: d_h(delta q) = -delta qdot ^ dt.
  CHECK(d_h(G(dq(0)), s) == -wedge(G(dq(0, 1)), G(dt)));
}

TEST_CASE("contraction") {
  JetSpace s = particle_space();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(contract(translation(i, s), G(dq(j)), s) == S(ScalarExpr(i == j ? 1 : 0)));
  BigradedForm sum;
  for (int j = 0; j < 3; ++j) sum += wedge(G(dq(j, 1)), G(dq(j)));
  CHECK(contract(translation(0, s), sum, s) == -G(dq(0, 1)));
  JetVectorField cartan = JetVectorField::horizontal({ScalarExpr(1)}, s);
  CHECK(contract(cartan, G(dq(1)), s).is_zero());
  CHECK(contract(cartan, G(dt), s) == S(ScalarExpr(1)));
}

TEST_CASE("Lie derivative along translations") {
  JetSpace s = particle_space();
  BigradedForm gamma;
  for (int j = 0; j < 3; ++j) gamma += wedge(S(q(j, 1)), G(dq(j)));
  ScalarExpr dens = -ScalarExpr::function(0);
  for (int j = 0; j < 3; ++j) dens += make_rational(1, 2) * q(j, 1).pow(2);
  BigradedForm L = wedge(S(dens), G(dt));
  for (int i = 0; i < 3; ++i) {
    CHECK(lie_derivative(translation(i, s), gamma, s).is_zero());
    CHECK(lie_derivative(translation(i, s), L, s) == wedge(S(-ScalarExpr::function(0, mi({i}))), G(dt)));
    CHECK(lie_derivative(translation(i, s), L * ScalarExpr(make_rational(3, 7)), s) ==
          lie_derivative(translation(i, s), L, s) * ScalarExpr(make_rational(3, 7)));
  }
}

TEST_CASE("prolongation check labels") {
  JetSpace s = particle_space();
  auto r1 = prolongation_check(translation(0, s), s);
  CHECK(r1.label() == "strictly vertical");
  CHECK(r1.vertical_commutes_with_dh);
  auto r2 = prolongation_check(JetVectorField::horizontal({ScalarExpr(1)}, s), s);
  CHECK(r2.label() == "strictly horizontal");
  CHECK(r2.horizontal_commutes_with_dv);
  JetVectorField time = JetVectorField::zero(s);
  for (int i = 0; i < 3; ++i) time.Q[i] = -q(i, 1);
  time.v[0] = ScalarExpr(1);
  auto r3 = prolongation_check(time, s);
  CHECK(r3.label() == "vertical+horizontal");
  CHECK(r3.vertical_commutes_with_dh);
  CHECK(r3.horizontal_commutes_with_dv);
  CHECK(r3.test_set_size > 0);
  JetVectorField bad = JetVectorField::zero(s);
  bad.v[0] = q(0);
  CHECK_THROWS_AS(bad.validate(s), DomainError);
}

TEST_CASE("vector field brackets") {
  JetSpace s = particle_space();
  // Rotations about the axes: rho(e_k) = e_k x q.
  auto rot = [&](int k) {
    JetVectorField X = JetVectorField::zero(s);
    int i = (k + 1) % 3, j = (k + 2) % 3;
    X.Q[j] = q(i);
    X.Q[i] = -q(j);
    return X;
  };
  CHECK(bracket(rot(0), rot(1), s) == -rot(2));
  CHECK(bracket(rot(0), rot(0), s) == JetVectorField::zero(s));
}

TEST_CASE("bicomplex identities on random forms") {
  for (int dim : {1, 2}) {
    JetSpace s = dim == 1 ? particle_space(8) : JetSpace({"x", "y"}, {"u", "w"}, 8);
    RandomSource rnd(2024 + dim, s);
    for (int trial = 0; trial < 25; ++trial) {
      BigradedForm f = rnd.form();
      CHECK(d_h(d_h(f, s), s).is_zero());
      CHECK(d_v(d_v(f, s), s).is_zero());
      CHECK((d_h(d_v(f, s), s) + d_v(d_h(f, s), s)).is_zero());

      BigradedForm a = rnd.form(rnd.uniform(0, 1), rnd.uniform(0, dim));
      BigradedForm b = rnd.form(rnd.uniform(0, 1), rnd.uniform(0, dim));
      if (a.is_zero() || b.is_zero()) continue;
      int pa = parity(a), pb = parity(b);
      CHECK(wedge(a, b) == wedge(b, a) * ScalarExpr(pa * pb ? -1 : 1));
      BigradedForm c = rnd.form(1, 0, 2);
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));

      JetVectorField X = rnd.characteristic(1);
      X += rnd.horizontal();
      BigradedForm lhs = contract(X, wedge(a, b), s);
      BigradedForm rhs = wedge(contract(X, a, s), b) + wedge(a, contract(X, b, s)) * ScalarExpr(pa ? -1 : 1);
      CHECK(lhs == rhs);

      JetVectorField V = rnd.characteristic(1);
      CHECK((contract(V, d_h(a, s), s) + d_h(contract(V, a, s), s)).is_zero());

      CHECK(lie_derivative(X, d_total(a, s), s) == d_total(lie_derivative(X, a, s), s));
    }
  }
}
