#include "doctest.h"
#include "jetreduce/corpus.hpp"
#include "jetreduce/random.hpp"
#include "support.hpp"

using namespace jrtest;
namespace corpus = jetreduce::corpus;
using corpus::Potential;

namespace {

BigradedForm G(const Generator& g) { return BigradedForm::gen(g); }
BigradedForm S(const ScalarExpr& e) { return BigradedForm::scalar(e); }
const Generator dt = Generator::dx(0);

JetVectorField translation(int i, const JetSpace& s) {
  std::vector<ScalarExpr> Q(3);
  Q[i] = ScalarExpr(1);
  return JetVectorField::vertical(Q, s);
}

// delta A^alpha = sum_mu delta A^alpha_mu ^ dx^mu
BigradedForm deltaA(int alpha) {
  BigradedForm r;
  for (int mu = 0; mu < 3; ++mu) r += wedge(G(Generator::delta(alpha * 3 + mu)), G(Generator::dx(mu)));
  return r;
}

BigradedForm dX(int slot, int alpha, const JetSpace& s) {
  return horizontal_differential(ScalarExpr::param(s.param_index(slot, alpha)), s);
}

void check_variational_identity(const Theory& T) {
  const JetSpace& s = *T.space;
  auto d = premultisymplectic(T);
  CHECK(d_v(d.lagrangian, s) - d.el + d_h(d.gamma, s) == BigradedForm{});
  CHECK(d.omega == d.el + d_v(d.gamma, s));
  CHECK(d_total(d.omega, s).is_zero());
}

}  // namespace

TEST_CASE("particle Euler-Lagrange data") {
  auto T = corpus::particle();
  const JetSpace& s = *T->space;
  auto d = premultisymplectic(*T);
  CHECK(to_text(d.el, s) ==
        "-(q1_tt + V_1)*v(q1)^^d(t) - (q2_tt + V_2)*v(q2)^^d(t) - (q3_tt + V_3)*v(q3)^^d(t)");
  CHECK(to_text(d.gamma, s) == "q1_t*v(q1) + q2_t*v(q2) + q3_t*v(q3)");
  BigradedForm expected = d.el;
  for (int i = 0; i < 3; ++i) expected += wedge(G(dq(i, 1)), G(dq(i)));
  CHECK(d.omega == expected);
  CHECK(d.lepage == d.lagrangian + d.gamma);
}

TEST_CASE("degenerate densities") {
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{"t"}, std::vector<std::string>{"q"});
  Theory zero{"zero", s, ScalarExpr(), {}, {}};
  auto d = premultisymplectic(zero);
  CHECK(d.el.is_zero());
  CHECK(d.gamma.is_zero());
  CHECK(d.omega.is_zero());
  Theory constant{"constant", s, ScalarExpr(make_rational(7, 2)), {}, {}};
  CHECK(boundary_form(constant).is_zero());
  CHECK(euler_lagrange(constant).is_zero());
  Theory bare{"bare", s, std::nullopt, {}, {}};
  CHECK_THROWS_AS(bare.validate(), DomainError);
}

TEST_CASE("gamma override is verified") {
  auto T = corpus::particle(Potential::Free);
  auto good = *T;
  good.gamma_override = boundary_form(*T);
  CHECK(boundary_form(good) == *good.gamma_override);
  auto bad = *T;
  bad.gamma_override = -boundary_form(*T);
  CHECK_THROWS_AS(boundary_form(bad), VerificationError);
}

TEST_CASE("second order density") {
  // L = 1/2 u_xx^2 on a line: EL = u_xxxx du dx.
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{"x"}, std::vector<std::string>{"u"}, 5);
  Theory T{"beam", s, ScalarExpr::field(0, mi({0, 0})).pow(2) * ScalarExpr(make_rational(1, 2)), {}, {}};
  check_variational_identity(T);
  CHECK(euler_lagrange(T) == wedge(S(ScalarExpr::field(0, mi({0, 0, 0, 0}))), wedge(G(Generator::delta(0)), G(dt))));
}

TEST_CASE("Chern-Simons Euler-Lagrange data") {
  for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
    const JetSpace& s = *cs.theory->space;
    auto d = premultisymplectic(*cs.theory);
    BigradedForm el, gamma, dAdA;
    for (int a = 0; a < cs.algebra->dim(); ++a) {
      el += wedge(deltaA(a), cs.curvature(a)) * ScalarExpr(2);
      gamma += wedge(deltaA(a), cs.connection(a));
      dAdA += wedge(deltaA(a), deltaA(a));
    }
    CHECK(d.el == el);
    CHECK(d.gamma == gamma);
    CHECK(d.omega == el + dAdA);
    check_variational_identity(*cs.theory);
    CHECK(jet_order_of(d.omega) <= s.jet_order());
  }
}

TEST_CASE("variational identity on the corpus") {
  for (auto V : {Potential::General, Potential::Free, Potential::Harmonic, Potential::Quadratic})
    check_variational_identity(*corpus::particle(V));
}

TEST_CASE("Euler operator annihilates total divergences") {
  JetSpace line = particle_space(6);
  JetSpace plane({"x", "y"}, {"u", "w"}, 6);
  RandomConfig cfg;
  cfg.max_jet_order = 2;
  cfg.max_terms = 4;
  for (const JetSpace* s : {&line, &plane}) {
    RandomSource rng(17, *s, cfg);
    for (int k = 0; k < 25; ++k) {
      BigradedForm beta;
      for (int mu = 0; mu < s->base_dim(); ++mu)
        beta += wedge(S(rng.scalar()), volume_contraction(mu, *s));
      BigradedForm div = d_h(beta, *s);
      if (div.is_zero()) continue;
      ScalarExpr g = div.terms().begin()->second;
      CHECK(euler_lagrange_form(g, *s).is_zero());
    }
  }
}

TEST_CASE("Noether symmetries") {
  SUBCASE("translation of the free particle") {
    auto T = corpus::particle(Potential::Free);
    auto r = is_noether_symmetry(translation(0, *T->space), *T);
    CHECK(r.symmetry);
    REQUIRE(r.alpha);
    CHECK(r.alpha->is_zero());
  }
  SUBCASE("translation against a quadratic potential") {
    auto T = corpus::particle(Potential::Quadratic);
    auto r = is_noether_symmetry(translation(0, *T->space), *T);
    CHECK_FALSE(r.symmetry);
    CHECK_FALSE(r.alpha);
    // L_chi L = -2 q1 vol, Euler image -2 dq1 ^ dt.
    CHECK(r.euler_image == wedge(S(ScalarExpr(-2)), wedge(G(dq(0)), G(dt))));
  }
  SUBCASE("translation against a linear potential") {
    auto T = std::make_shared<Theory>(*corpus::particle(Potential::Free));
    *T->density -= q(0);
    auto r = is_noether_symmetry(translation(0, *T->space), *T);
    CHECK(r.symmetry);
    REQUIRE(r.alpha);
    CHECK(d_h(*r.alpha, *T->space) == -volume_form(*T->space));
  }
  SUBCASE("uninterpreted potential") {
    auto T = corpus::particle(Potential::General);
    auto r = is_noether_symmetry(translation(0, *T->space), *T);
    CHECK_FALSE(r.symmetry);
    CHECK_FALSE(r.euler_image.is_zero());
  }
  SUBCASE("Chern-Simons gauge symmetry") {
    for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
      const JetSpace& s = *cs.gauge->space;
      auto r = is_noether_symmetry(cs.gauge->generic(0), *cs.theory, &s);
      CHECK(r.symmetry);
      REQUIRE(r.alpha);
      BigradedForm expected;
      for (int a = 0; a < cs.algebra->dim(); ++a) expected += wedge(cs.connection(a), dX(0, a, s));
      CHECK(*r.alpha == expected);
    }
  }
  SUBCASE("horizontal fields are rejected") {
    auto T = corpus::particle(Potential::Free);
    CHECK_THROWS_AS(is_noether_symmetry(JetVectorField::horizontal({ScalarExpr(1)}, *T->space), *T),
                    PreconditionError);
  }
}

TEST_CASE("homotopy operator limits") {
  JetSpace s = particle_space();
  std::string why;
  CHECK_FALSE(horizontal_homotopy(ScalarExpr::function(0, mi({0})) * q(0, 1), s, &why));
  CHECK(why.find("functions") != std::string::npos);
  CHECK_FALSE(horizontal_homotopy(q(0).pow(-1) * q(0, 1), s, &why));
  auto a = horizontal_homotopy(q(0) * q(0, 1) + ScalarExpr::cos(0, make_rational(2, 1)), s, &why);
  REQUIRE(a);
  CHECK(d_h(*a, s) == wedge(S(q(0) * q(0, 1) + ScalarExpr::cos(0, make_rational(2, 1))), G(dt)));
}

TEST_CASE("Noether currents") {
  SUBCASE("translations") {
    auto T = corpus::particle(Potential::Free);
    const JetSpace& s = *T->space;
    auto d = premultisymplectic(*T);
    for (int i = 0; i < 3; ++i) {
      auto nc = noether_current(translation(i, s), BigradedForm{}, d, s);
      CHECK(nc.j == S(-q(i, 1)));
      CHECK(nc.conserved);
      CHECK(nc.minus.hamiltonian);
      CHECK_FALSE(nc.plus.hamiltonian);
    }
    auto zero = noether_current(JetVectorField::zero(s), BigradedForm{}, d, s);
    CHECK(zero.j.is_zero());
  }
  SUBCASE("Chern-Simons") {
    for (auto cs : {corpus::chern_simons_abelian(2, 2), corpus::chern_simons_so3(2)}) {
      const JetSpace& s = *cs.gauge->space;
      auto d = premultisymplectic(*cs.theory);
      JetVectorField rho = cs.gauge->generic(0);
      auto r = is_noether_symmetry(rho, *cs.theory, &s);
      REQUIRE(r.alpha);
      auto nc = noether_current(rho, *r.alpha, d, s);
      CHECK(nc.conserved);
      // j_X = 2 kappa(A ^ dX + A ^ A X), the negative of mu_1.
      BigradedForm expected;
      for (int a = 0; a < cs.algebra->dim(); ++a) expected += wedge(cs.connection(a), dX(0, a, s)) * ScalarExpr(2);
      const auto& g = *cs.algebra;
      for (int dd = 0; dd < g.dim(); ++dd)
        for (int a = 0; a < g.dim(); ++a)
          for (int b = 0; b < g.dim(); ++b)
            if (g.c(dd, a, b) != 0)
              expected += wedge(cs.connection(a), cs.connection(b)) *
                          (ScalarExpr::param(s.param_index(0, dd)) * ScalarExpr(g.c(dd, a, b)));
      CHECK(nc.j == expected);
      CHECK(nc.j == -cs.momap->mu(1).evaluate({g.generic(0, s)}, s));
    }
  }
}

TEST_CASE("manifest symmetries") {
  auto F = corpus::particle(Potential::Free);
  auto dF = premultisymplectic(*F);
  auto tr = is_manifest(translation(0, *F->space), dF, *F->space);
  CHECK(tr.manifest());
  CHECK(tr.omega_invariant);

  auto T = corpus::particle(Potential::General);
  auto d = premultisymplectic(*T);
  auto time = corpus::time_action(T, Potential::General);
  auto tm = is_manifest(time->basis_fields[0], d, *T->space);
  CHECK(tm.manifest());
  CHECK(tm.omega_invariant);

  auto cs = corpus::chern_simons_abelian(2, 2);
  auto dc = premultisymplectic(*cs.theory);
  auto gm = is_manifest(cs.gauge->generic(0), dc, *cs.gauge->space);
  CHECK_FALSE(gm.manifest());
  CHECK_FALSE(gm.lepage_residual.is_zero());
  CHECK(gm.omega_invariant);
}
