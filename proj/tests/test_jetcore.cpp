#include "doctest.h"
#include "jetreduce/random.hpp"
#include "support.hpp"

using namespace jrtest;

TEST_CASE("normalize merges and cancels") {
  JetSpace s = particle_space();
  using Op = ExprNode::Op;
  auto qv = tree_var("q1"), qd = tree_var("q1_t");
  // qdot*q - q*qdot
  auto t1 = tree_binary(Op::Sub, tree_binary(Op::Mul, qd, qv), tree_binary(Op::Mul, qv, qd));
  CHECK(normalize(t1, s).is_zero());
  // (q + qdot)^2
  auto t2 = tree_binary(Op::Pow, tree_binary(Op::Add, qv, qd), tree_number(2));
  CHECK(normalize(t2, s) == q(0) * q(0) + ScalarExpr(2) * q(0) * q(0, 1) + q(0, 1) * q(0, 1));
  // 1/2 qdot^2 + 1/2 qdot^2
  auto half = tree_binary(Op::Mul, tree_number(make_rational(1, 2)), tree_binary(Op::Mul, qd, qd));
  CHECK(normalize(tree_binary(Op::Add, half, half), s) == q(0, 1).pow(2));
}

TEST_CASE("normalize reports bad input") {
  JetSpace s = particle_space();
  using Op = ExprNode::Op;
  CHECK_THROWS_AS(normalize(tree_var("p7"), s), DomainError);
  CHECK_THROWS_AS(normalize(tree_binary(Op::Pow, tree_var("q1"), tree_number(make_rational(1, 2))), s),
                  DomainError);
  CHECK_THROWS_AS(normalize(tree_var("q1_ttttt"), s), JetOrderOverflow);
}

TEST_CASE("partial derivatives") {
  JetSpace s = particle_space();
  ScalarExpr V = ScalarExpr::function(0);
  CHECK(partial(V, Atom::field(0), s) == ScalarExpr::function(0, mi({0})));
  CHECK(partial(q(0, 1) * q(0, 1), Atom::field(0, mi({0})), s) == ScalarExpr(2) * q(0, 1));
  CHECK(partial(q(0, 2), Atom::field(0, mi({0})), s).is_zero());
  CHECK(partial(q(1), Atom::field(0), s).is_zero());
}

TEST_CASE("total derivatives") {
  JetSpace s = particle_space();
  CHECK(total_derivative(q(0), 0, s) == q(0, 1));
  CHECK(total_derivative(q(0) * q(0, 1), 0, s) == q(0, 1) * q(0, 1) + q(0) * q(0, 2));
  // Chain rule oracle: expand V(q(t)) by hand, V_i qdot^i.
  ScalarExpr expected;
  for (int i = 0; i < 3; ++i) expected += ScalarExpr::function(0, mi({i})) * q(i, 1);
  CHECK(total_derivative(ScalarExpr::function(0), 0, s) == expected);
  CHECK_THROWS_AS(total_derivative(q(0, 4), 0, s), JetOrderOverflow);
}

TEST_CASE("substitute_jet along closed-form fields") {
  JetSpace s = particle_space();
  ScalarExpr t = ScalarExpr::base(0);
  std::vector<ScalarExpr> line{t, ScalarExpr(2) * t, ScalarExpr(3) * t};
  CHECK(substitute_jet(q(0, 1), line, s) == ScalarExpr(1));
  CHECK(substitute_jet(q(0, 2), line, s).is_zero());
  std::vector<ScalarExpr> para{t, t * t, ScalarExpr(0)};
  CHECK(substitute_jet(q(0) * q(1, 1), para, s) == ScalarExpr(2) * t * t);
  CHECK_THROWS_AS(substitute_jet(q(0), {t}, s), DomainError);
  CHECK_THROWS_AS(substitute_jet(ScalarExpr::function(0), line, s), DomainError);
}

TEST_CASE("transcendental atoms") {
  JetSpace s = particle_space();
  ScalarExpr c = ScalarExpr::cos(0, 1), sn = ScalarExpr::sin(0, 1);
  CHECK(total_derivative(c, 0, s) == -sn);
  CHECK(vanishes(c * c + sn * sn - ScalarExpr(1)));
  CHECK_FALSE(vanishes(c * c - sn * sn));
  CHECK(to_text(ScalarExpr::sin(0, 2), s) == "sin(2*t)");
}

TEST_CASE("printing is canonical") {
  JetSpace s = particle_space();
  ScalarExpr L = make_rational(1, 2) * q(0, 1).pow(2) - ScalarExpr::function(0);
  CHECK(to_text(L, s) == "1/2*q1_t^2 - V");
  CHECK(to_text(ScalarExpr::function(0, mi({0, 2})), s) == "V_13");
  CHECK(to_text(ScalarExpr(), s) == "0");
  JetSpace s2({"x", "y"}, {"A"}, 3);
  CHECK(to_text(ScalarExpr::field(0, mi({0, 1})), s2) == "A_d{x,y}");
  CHECK(s2.parse_atom("A_d{y,x}") == Atom::field(0, mi({0, 1})));
  CHECK(s.parse_atom("q2_tt") == Atom::field(1, mi({0, 0})));
}

TEST_CASE("jetcore properties on random inputs") {
  JetSpace s = particle_space(8);
  JetSpace s2({"x", "y"}, {"u", "w"}, 8);
  for (const JetSpace* sp : {&s, &s2}) {
    RandomSource rnd(11, *sp);
    for (int trial = 0; trial < 60; ++trial) {
      ExprTree t = rnd.tree(6);
      ScalarExpr e = normalize(t, *sp);
      CHECK(normalize(to_tree(e, *sp), *sp) == e);

      ScalarExpr a = rnd.scalar(), b = rnd.scalar();
      for (int mu = 0; mu < sp->base_dim(); ++mu)
        CHECK(total_derivative(a * b, mu, *sp) ==
              total_derivative(a, mu, *sp) * b + a * total_derivative(b, mu, *sp));
      if (sp->base_dim() == 2)
        CHECK(total_derivative(total_derivative(a, 0, *sp), 1, *sp) ==
              total_derivative(total_derivative(a, 1, *sp), 0, *sp));
    }
  }
}

TEST_CASE("prolongation is holonomic") {
  JetSpace s({"x", "y"}, {"u", "w"}, 8);
  RandomConfig cfg;
  cfg.use_functions = false;
  RandomSource rnd(5, s, cfg);
  ScalarExpr x = ScalarExpr::base(0), y = ScalarExpr::base(1);
  std::vector<ScalarExpr> phi{x * x * y + ScalarExpr(3) * y, x - y.pow(3)};
  auto base_partial = [&](const ScalarExpr& e, int mu) { return partial(e, Atom::base(mu), s); };
  for (int trial = 0; trial < 30; ++trial) {
    ScalarExpr e = rnd.scalar();
    for (int mu = 0; mu < 2; ++mu)
      CHECK(substitute_jet(total_derivative(e, mu, s), phi, s) == base_partial(substitute_jet(e, phi, s), mu));
  }
}
