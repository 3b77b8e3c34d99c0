#include "doctest.h"
#include "jetreduce/corpus.hpp"
#include "jetreduce/obstruction.hpp"
#include "jetreduce/random.hpp"
#include "support.hpp"

using namespace jrtest;
namespace corpus = jetreduce::corpus;
using corpus::Potential;

namespace {

BigradedForm S(const ScalarExpr& e) { return BigradedForm::scalar(e); }

GCochain random_cochain(RandomSource& rnd, int arity, int dim, int q) {
  GCochain c = GCochain::table(arity);
  std::vector<int> t(arity);
  for (int k = 0; k < 3; ++k) {
    for (auto& x : t) x = rnd.uniform(0, dim - 1);
    int p = rnd.uniform(0, std::min(q, 1));
    c.add(t, rnd.form(p, q - p, 2));
  }
  return c;
}

struct Case {
  std::shared_ptr<Action> action;
  MultisymplecticData data;
  std::shared_ptr<MomentumMap> momap;  // may be null
};

std::vector<Case> global_corpus() {
  std::vector<Case> out;
  auto F = corpus::particle(Potential::Free);
  auto dF = premultisymplectic(*F);
  auto tr = corpus::translation_action(F);
  auto rot = corpus::rotation_action(F);
  out.push_back({tr, dF, corpus::translation_momap(tr)});
  out.push_back({rot, dF, corpus::rotation_momap(rot)});
  auto T = corpus::particle(Potential::General);
  auto time = corpus::time_action(T, Potential::General);
  out.push_back({time, premultisymplectic(*T), corpus::time_momap(time, Potential::General)});
  auto H = corpus::particle(Potential::Harmonic);
  out.push_back({corpus::rotation_action(H), premultisymplectic(*H), nullptr});
  auto Qd = corpus::particle(Potential::Quadratic);
  out.push_back({corpus::translation_action(Qd), premultisymplectic(*Qd), nullptr});
  auto ps = corpus::phase_space_so3();
  out.push_back({ps.action, premultisymplectic(*ps.theory), ps.momap});
  return out;
}

}  // namespace

TEST_CASE("Chevalley-Eilenberg differential") {
  JetSpace s = particle_space();
  GCochain c = GCochain::table(1);
  for (int i = 0; i < 3; ++i) c.set({i}, S(q(i)));
  CHECK(d_g(c, *corpus::translations(), s).is_zero());
  auto so3 = corpus::so3_standard();
  GCochain dc = d_g(c, *so3, s);
  // delta_CE(e1 ^ e2) = -[e1, e2] = -e3
  CHECK(dc.at({0, 1}) == S(-q(2)));
  CHECK(dc.at({1, 2}) == S(-q(0)));
  CHECK(dc.at({0, 2}) == S(q(1)));
  CHECK(d_g(dc, *so3, s).is_zero());
}

TEST_CASE("de Rham differential on cochains") {
  JetSpace s = particle_space();
  GCochain c = GCochain::table(1);
  c.set({0}, S(q(0, 1)));
  BigradedForm expected = BigradedForm::gen(dq(0, 1)) + wedge(S(q(0, 2)), BigradedForm::gen(Generator::dx(0)));
  CHECK(d_X(c, s).at({0}) == -expected);
  GCochain k = GCochain::table(2);
  k.set({0, 1}, S(make_rational(3, 4)));
  CHECK(d_X(k, s).is_zero());
}

TEST_CASE("double complex identities on random cochains") {
  JetSpace s = particle_space(8);
  RandomConfig cfg;
  cfg.max_jet_order = 2;
  cfg.max_terms = 3;
  RandomSource rnd(99, s, cfg);
  for (auto g : {corpus::so3_standard(), corpus::translations(), corpus::rotations()}) {
    for (int trial = 0; trial < 8; ++trial) {
      int arity = rnd.uniform(1, 2);
      GCochain c = random_cochain(rnd, arity, g->dim(), rnd.uniform(0, 1));
      CHECK(d_g(d_g(c, *g, s), *g, s).is_zero());
      CHECK(d_X(d_X(c, s), s).is_zero());
      GCochain anti = d_g(d_X(c, s), *g, s) + d_X(d_g(c, *g, s), s);
      CHECK(anti.is_zero());
      CochainSum sum;
      sum.add(c);
      CHECK(d_bar(d_bar(sum, *g, s), *g, s).is_zero());
    }
  }
}

TEST_CASE("bar map components") {
  auto F = corpus::particle(Potential::Free);
  const JetSpace& s = *F->space;
  auto d = premultisymplectic(*F);
  auto rot = corpus::rotation_action(F);
  BarMap b = bar_map(d.omega, *rot);
  REQUIRE(b.components.size() == 2);
  for (int a = 0; a < 3; ++a) {
    CHECK(b.components[0].at({a}) == contract(rot->generic(a), d.omega, s));
    for (int c = 0; c < 3; ++c)
      CHECK(b.components[1].at({a, c}) ==
            contract(rot->generic(c), contract(rot->generic(a), d.omega, s), s));
  }
  CHECK(b.total.part(1) == b.components[0]);
  CHECK(b.total.part(2) == b.components[1] * Rational(-1));

  // Trivial action.
  auto trivial = std::make_shared<Action>(*rot);
  for (auto& X : trivial->basis_fields) X = JetVectorField::zero(s);
  CHECK(bar_map(d.omega, *trivial).total.is_zero());

  // Linearity in beta.
  BigradedForm other = wedge(BigradedForm::gen(dq(0)), BigradedForm::gen(dq(1))) * q(2, 1);
  CHECK(bar_map(d.omega + other * ScalarExpr(3), *rot).total ==
        bar_map(d.omega, *rot).total + bar_map(other, *rot).total * Rational(3));
}

TEST_CASE("momentum map assembly") {
  auto F = corpus::particle(Potential::Free);
  auto tr = corpus::translation_action(F);
  auto mu = corpus::translation_momap(tr);
  CochainSum bar = mu_bar(*mu);
  CHECK(bar.part(1) == mu->mu(1));
  CHECK(mu_bar(MomentumMap{"zero", tr, {}}).is_zero());

  // Signs (+, +, -, -) and the round trip through extraction.
  MomentumMap m{"four", tr, {}};
  for (int i = 1; i <= 4; ++i) {
    GCochain c = GCochain::table(i);
    std::vector<int> t(i);
    for (int k = 0; k < i; ++k) t[k] = k;
    if (i <= 3) c.set(t, S(q(0) + ScalarExpr(i)));
    m.components.push_back(c);
  }
  CochainSum mb = mu_bar(m);
  CHECK(mb.part(1) == m.mu(1));
  CHECK(mb.part(2) == m.mu(2));
  CHECK(mb.part(3) == m.mu(3) * Rational(-1));
  auto back = extract_momap(mb, tr, 4);
  for (int i = 1; i <= 4; ++i) CHECK(back->mu(i) == m.mu(i));
  CHECK_THROWS_AS(extract_momap(mb, tr, 2), DomainError);
}

TEST_CASE("closedness and primitivity on the corpus") {
  for (const auto& c : global_corpus()) {
    CAPTURE(c.action->name);
    CAPTURE(c.action->theory->name);
    DoubleComplexReport r = check_double_complex(*c.action, c.data.omega, c.momap.get());
    if (r.invariant) CHECK(r.closed);
    if (c.momap) {
      CHECK(r.primitive);
      CHECK(r.momap_relations);
      CHECK(r.agrees());
      auto flipped = corpus::sign_flipped(*c.momap);
      DoubleComplexReport rf = check_double_complex(*c.action, c.data.omega, flipped.get());
      CHECK_FALSE(rf.primitive);
      CHECK(rf.agrees());
    }
  }
}

TEST_CASE("non-invariant omega is not closed") {
  auto Q = corpus::particle(Potential::Quadratic);
  auto d = premultisymplectic(*Q);
  DoubleComplexReport r = check_double_complex(*corpus::translation_action(Q), d.omega);
  CHECK_FALSE(r.invariant);
  CHECK_FALSE(r.closed);
  CHECK_FALSE(r.d_omega_bar.is_zero());
}

TEST_CASE("local actions are outside the double complex check") {
  auto cs = corpus::chern_simons_abelian(2, 2);
  auto d = premultisymplectic(*cs.theory);
  CHECK_THROWS_AS(check_double_complex(*cs.gauge, d.omega), DomainError);
}
