#include "doctest.h"
#include "jetreduce/corpus.hpp"
#include "support.hpp"

using namespace jrtest;
namespace corpus = jetreduce::corpus;
using corpus::Potential;

namespace {

BigradedForm S(const ScalarExpr& e) { return BigradedForm::scalar(e); }

JetVectorField translation(int i, const JetSpace& s) {
  std::vector<ScalarExpr> Q(3);
  Q[i] = ScalarExpr(1);
  return JetVectorField::vertical(Q, s);
}

struct Mechanics {
  std::shared_ptr<Theory> theory;
  MultisymplecticData data;
  std::shared_ptr<MomentumMap> momap;
};

std::vector<Mechanics> mechanics_momaps() {
  std::vector<Mechanics> out;
  auto F = corpus::particle(Potential::Free);
  auto dF = premultisymplectic(*F);
  out.push_back({F, dF, corpus::translation_momap(corpus::translation_action(F))});
  out.push_back({F, dF, corpus::rotation_momap(corpus::rotation_action(F))});
  auto T = corpus::particle(Potential::General);
  out.push_back({T, premultisymplectic(*T), corpus::time_momap(corpus::time_action(T, Potential::General),
                                                               Potential::General)});
  return out;
}

}  // namespace

TEST_CASE("Lie algebra validation") {
  auto so3 = corpus::so3_standard();
  CHECK_NOTHROW(so3->validate());
  CHECK(so3->bracket(so3->basis(0), so3->basis(1)) == so3->basis(2));
  CHECK(so3->bracket(so3->basis(1), so3->basis(0)) == Element{0, 0, -1});
  CHECK(corpus::translations()->is_abelian());

  LieAlgebra bad("bad", {"e1", "e2", "e3"});
  bad.set_bracket(0, 1, {0, 0, 1});
  bad.set_bracket(0, 2, {1, 0, 0});
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(bad.set_bracket(1, 1, {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(bad.set_bracket(0, 1, {1, 0}), DomainError);
}

TEST_CASE("cochain tables alternate") {
  GCochain c = GCochain::table(2);
  c.set({1, 0}, S(q(0)));
  CHECK(c.at({0, 1}) == S(-q(0)));
  CHECK(c.at({1, 1}).is_zero());
  CHECK_THROWS_AS(c.set({2, 2}, S(q(1))), DomainError);
  JetSpace s = particle_space();
  // Bilinear expansion: c(2 e0 + e2, e1) = 2 c(e0, e1).
  Element a{2, 0, 1}, b{0, 1, 0};
  CHECK(c.evaluate({a, b}, s) == S(q(0) * ScalarExpr(-2)));
  CHECK(c.evaluate({a, a}, s).is_zero());
  CHECK_THROWS_AS(c.evaluate({a}, s), DomainError);
}

TEST_CASE("action homomorphism") {
  auto F = corpus::particle(Potential::Free);
  for (auto act : {corpus::translation_action(F), corpus::rotation_action(F)})
    for (const auto& bc : action_homomorphism_check(*act)) CHECK(bc.pass);
  // a x q with the standard so(3) bracket is an anti-homomorphism.
  auto wrong = std::make_shared<Action>(*corpus::rotation_action(F));
  wrong->algebra = corpus::so3_standard();
  bool all = true;
  for (const auto& bc : action_homomorphism_check(*wrong)) all = all && bc.pass;
  CHECK_FALSE(all);
  for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
    CHECK_NOTHROW(cs.gauge->validate());
    for (const auto& bc : action_homomorphism_check(*cs.gauge)) CHECK(bc.pass);
  }
  auto ps = corpus::phase_space_so3();
  for (const auto& bc : action_homomorphism_check(*ps.action)) CHECK(bc.pass);
}

TEST_CASE("Hamiltonian check") {
  auto F = corpus::particle(Potential::Free);
  const JetSpace& s = *F->space;
  auto d = premultisymplectic(*F);
  CHECK(hamiltonian_check(S(q(0, 1)), translation(0, s), d.omega, s).pass);
  CHECK(hamiltonian_check(BigradedForm{}, JetVectorField::zero(s), d.omega, s).pass);
  auto bad = hamiltonian_check(S(q(0)), translation(0, s), d.omega, s);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.residual.is_zero());
}

TEST_CASE("multibrackets") {
  auto F = corpus::particle(Potential::Free);
  const JetSpace& s = *F->space;
  auto d = premultisymplectic(*F);
  auto act = corpus::rotation_action(F);
  auto mu = corpus::rotation_momap(act);
  const auto& g = *act->algebra;
  auto pair = [&](int i) { return LInfElement{mu->mu(1).evaluate({g.basis(i)}, s), act->generic(i)}; };

  SUBCASE("l2 of rotation components") {
    // mu_1([e1, e2]) = -mu_1(e3) = -(q1 q2' - q2 q1')
    BigradedForm l2 = l_bracket({pair(0), pair(1)}, d.omega, 1, s);
    CHECK(l2 == S(q(1) * q(0, 1) - q(0) * q(1, 1)));
    CHECK(l_bracket({pair(1), pair(0)}, d.omega, 1, s) == -l2);
  }
  SUBCASE("degree bounds") {
    LInfElement zero{BigradedForm{}, JetVectorField::zero(s)};
    CHECK(l_bracket({pair(0), zero}, d.omega, 1, s).is_zero());
    CHECK(l_bracket({pair(0), pair(1), pair(2)}, d.omega, 1, s).is_zero());
    CHECK(l_bracket({pair(0)}, d.omega, 1, s).is_zero());
  }
  SUBCASE("l1 is d below degree zero") {
    auto cs = corpus::chern_simons_abelian(2, 2);
    const JetSpace& cs_space = *cs.theory->space;
    auto dc = premultisymplectic(*cs.theory);
    BigradedForm f = S(ScalarExpr::field(0) * ScalarExpr::field(4));
    CHECK(l_bracket({{f, std::nullopt}}, dc.omega, 3, cs_space) == d_total(f, cs_space));
    CHECK(l_bracket({{f, std::nullopt}, {f, std::nullopt}}, dc.omega, 3, cs_space).is_zero());
  }
  SUBCASE("validation") {
    LInfElement missing{S(q(0, 1)), std::nullopt};
    CHECK_THROWS_AS(l_bracket({missing, pair(0)}, d.omega, 1, s), DomainError);
    LInfElement wrong{S(q(0)), translation(0, s)};
    CHECK_THROWS_AS(l_bracket({wrong, pair(0)}, d.omega, 1, s), DomainError);
    LInfElement high{BigradedForm::gen(Generator::dx(0)), std::nullopt};
    CHECK_THROWS_AS(l_bracket({high}, d.omega, 1, s), DomainError);
  }
}

TEST_CASE("l2 does not depend on the Hamiltonian vector field") {
  // Degenerate omega = dq ^ dp on (q, p, z): d/dz lies in its kernel.
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{}, std::vector<std::string>{"q", "p", "z"}, 1);
  BigradedForm omega = BigradedForm::term(1, {Generator::delta(0), Generator::delta(1)});
  ScalarExpr Q = ScalarExpr::field(0), P = ScalarExpr::field(1), Z = ScalarExpr::field(2);
  // alpha = -q p with chi = (q, -p), alpha = -p^2/2 with chi = (p, 0).
  std::vector<LInfElement> a = {
      {S(-Q * P), JetVectorField::vertical({Q, -P, 0}, *s)},
      {S(-P.pow(2) * ScalarExpr(make_rational(1, 2))), JetVectorField::vertical({P, 0, 0}, *s)},
  };
  for (auto& x : a) REQUIRE(hamiltonian_check(x.form, *x.chi, omega, *s).pass);
  BigradedForm base = l_bracket(a, omega, 1, *s);
  CHECK_FALSE(base.is_zero());
  for (int k = 1; k <= 3; ++k) {
    auto b = a;
    b[0].chi->Q[2] = Z.pow(k) + Q;
    b[1].chi->Q[2] = ScalarExpr(k) * P;
    REQUIRE(hamiltonian_check(b[0].form, *b[0].chi, omega, *s).pass);
    CHECK(l_bracket(b, omega, 1, *s) == base);
  }
}

TEST_CASE("mechanics momentum maps") {
  for (const auto& m : mechanics_momaps()) {
    CAPTURE(m.momap->name);
    auto rep = verify_momap(*m.momap, m.data.omega);
    CHECK(rep.n == 1);
    CHECK(rep.pass());
    const Action& act = *m.momap->action;
    const JetSpace& s = *act.space;
    // The i = 1 relations are the Hamiltonian condition.
    for (int k = 0; k < act.algebra->dim(); ++k) {
      auto h = hamiltonian_check(m.momap->mu(1).evaluate({act.algebra->basis(k)}, s), act.generic(k), m.data.omega, s);
      CHECK(h.pass);
    }
    auto flipped = verify_momap(*corpus::sign_flipped(*m.momap), m.data.omega);
    CHECK_FALSE(flipped.pass());
    for (const auto& r : flipped.relations)
      if (!r.pass) CHECK_FALSE(form_vanishes(r.residual));
  }
}

TEST_CASE("mechanics momentum map values") {
  auto F = corpus::particle(Potential::Free);
  const JetSpace& s = *F->space;
  auto rot = corpus::rotation_momap(corpus::rotation_action(F));
  CHECK(to_text(rot->mu(1).at({2}), s) == "q1*q2_t - q1_t*q2");
  auto T = corpus::particle(Potential::General);
  auto time = corpus::time_momap(corpus::time_action(T, Potential::General), Potential::General);
  CHECK(to_text(time->mu(1).at({0}), *T->space) == "-1/2*q1_t^2 - 1/2*q2_t^2 - 1/2*q3_t^2 - V");
}

TEST_CASE("phase space angular momentum") {
  auto ps = corpus::phase_space_so3();
  auto d = premultisymplectic(*ps.theory);
  auto rep = verify_momap(*ps.momap, d.omega);
  CHECK(rep.n == 1);
  CHECK(rep.pass());
  // The action a -> (a x q, a x p) has the opposite Hamiltonian sign.
  auto flipped = std::make_shared<Action>(*ps.action);
  for (auto& X : flipped->basis_fields) X = -X;
  MomentumMap other = *ps.momap;
  other.action = flipped;
  auto r = verify_momap(other, d.omega);
  CHECK_FALSE(r.relations.at(0).pass);
  CHECK(form_vanishes(r.relations.at(0).residual - d_total(ps.momap->mu(1).at({0}), *ps.theory->space) * ScalarExpr(2)));
}

TEST_CASE("Chern-Simons momentum map") {
  for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
    CAPTURE(cs.theory->name);
    auto d = premultisymplectic(*cs.theory);
    auto rep = verify_momap(*cs.momap, d.omega);
    CHECK(rep.n == 3);
    CHECK(rep.relations.size() == 4);
    CHECK(rep.pass());
    for (int i = 1; i <= 3; ++i)
      if (!cs.momap->mu(i).is_zero())
        CHECK_FALSE(verify_momap(*corpus::sign_flipped(*cs.momap, i), d.omega).pass());
    CHECK(cs.momap->mu(3).is_zero() == cs.algebra->is_abelian());
  }
}

TEST_CASE("bracket defect vanishes for verified maps") {
  for (const auto& m : mechanics_momaps()) {
    const auto& g = *m.momap->action->algebra;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        CHECK(form_vanishes(bracket_defect(*m.momap, m.data.omega, g.basis(i), g.basis(j))));
  }
  auto F = corpus::particle(Potential::Free);
  auto dF = premultisymplectic(*F);
  auto rot = corpus::rotation_momap(corpus::rotation_action(F));
  CHECK(form_vanishes(bracket_defect(*rot, dF.omega, Element{1, 2, 0}, Element{0, make_rational(1, 2), -3})));
  auto flipped = corpus::sign_flipped(*rot);
  CHECK_THROWS_AS(bracket_defect(*flipped, dF.omega, Element{1, 0, 0}, Element{0, 1, 0}), DomainError);
  for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
    const JetSpace& s = *cs.gauge->space;
    auto d = premultisymplectic(*cs.theory);
    CHECK(form_vanishes(
        bracket_defect(*cs.momap, d.omega, cs.algebra->generic(0, s), cs.algebra->generic(1, s))));
  }
}

TEST_CASE("momentum map components alternate") {
  auto cs = corpus::chern_simons_so3(2);
  const JetSpace& s = *cs.gauge->space;
  Element X = cs.algebra->generic(0, s), Y = cs.algebra->generic(1, s), Z = cs.algebra->generic(2, s);
  CHECK(cs.momap->mu(2).evaluate({X, X}, s).is_zero());
  CHECK(cs.momap->mu(3).evaluate({X, Y, X}, s).is_zero());
  CHECK(cs.momap->mu(3).evaluate({Y, X, Z}, s) == -cs.momap->mu(3).evaluate({X, Y, Z}, s));
  auto F = corpus::particle(Potential::Free);
  auto rot = corpus::rotation_momap(corpus::rotation_action(F));
  GCochain two = GCochain::table(2);
  two.set({0, 1}, S(q(0)));
  CHECK(two.evaluate({corpus::rotations()->basis(1), corpus::rotations()->basis(1)}, *F->space).is_zero());
}

TEST_CASE("momentum map validation") {
  auto F = corpus::particle(Potential::Free);
  auto dF = premultisymplectic(*F);
  auto mu = *corpus::translation_momap(corpus::translation_action(F));
  mu.components[0].set({0}, BigradedForm::gen(Generator::dx(0)));
  CHECK_THROWS_AS(verify_momap(mu, dF.omega), DomainError);
  auto extra = *corpus::translation_momap(corpus::translation_action(F));
  extra.components.push_back(GCochain::table(2));
  extra.components.back().set({0, 1}, S(1));
  CHECK_THROWS_AS(verify_momap(extra, dF.omega), DomainError);
}
