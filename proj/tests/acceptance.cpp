// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jetreduce/cli.hpp"
#include "jetreduce/corpus.hpp"
#include "jetreduce/dsl.hpp"
#include "jetreduce/obstruction.hpp"
#include "jetreduce/reduction.hpp"
#include "jetreduce/selftest.hpp"

using namespace jetreduce;
namespace corpus = jetreduce::corpus;
namespace fs = std::filesystem;
using corpus::Potential;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BigradedForm G(const Generator& g) { return BigradedForm::gen(g); }

MultiIndex along(int mu, int order = 1) {
  MultiIndex I;
  I.e[mu] = static_cast<std::uint8_t>(order);
  return I;
}

ScalarExpr t() { return ScalarExpr::base(0); }
ScalarExpr k(long v) { return ScalarExpr(v); }

FieldSample path(std::vector<ScalarExpr> c, std::string label) {
  FieldSample f;
  f.label = std::move(label);
  f.closed = std::move(c);
  return f;
}

struct Mech {
  std::string name;
  std::shared_ptr<Theory> theory;
  MultisymplecticData data;
  std::shared_ptr<Action> action;
  std::shared_ptr<MomentumMap> momap;
};

Mech mech(const std::string& which, Potential V) {
  auto T = corpus::particle(V);
  std::shared_ptr<Action> act;
  std::shared_ptr<MomentumMap> mu;
  if (which == "translation") {
    act = corpus::translation_action(T);
    mu = corpus::translation_momap(act);
  } else if (which == "rotation") {
    act = corpus::rotation_action(T);
    mu = corpus::rotation_momap(act);
  } else {
    act = corpus::time_action(T, V);
    mu = corpus::time_momap(act, V);
  }
  return {which + "/" + T->name, T, premultisymplectic(*T), act, mu};
}

// 1. Canonical EL, gamma, omega for the particle with a general potential.
Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto T = corpus::particle(Potential::General);
  std::vector<cli::Row> rows = cli::cmd_el(*T);
  double secs = seconds_since(t0);
  const cli::Row& r = rows.at(0);
  auto form = [&](const std::string& name) {
    for (const auto& f : r.forms)
      if (f.name == name) return f.text;
    return std::string("<missing>");
  };
  const std::string el = "-(q1_tt + V_1)*v(q1)^^d(t) - (q2_tt + V_2)*v(q2)^^d(t) - (q3_tt + V_3)*v(q3)^^d(t)";
  const std::string gamma = "q1_t*v(q1) + q2_t*v(q2) + q3_t*v(q3)";
  const std::string omega = el + " + v(q1_t)^^v(q1) + v(q2_t)^^v(q2) + v(q3_t)^^v(q3)";
  o.require(r.status == "pass", "delta L = EL - d gamma");
  o.require(form("EL") == el, "EL text: " + form("EL"));
  o.require(form("gamma") == gamma, "gamma text: " + form("gamma"));
  o.require(form("omega") == omega, "omega text: " + form("omega"));

  // Structural oracle built from generators.
  const JetSpace& s = *T->space;
  BigradedForm EL, gam, w;
  for (int i = 0; i < 3; ++i) {
    ScalarExpr coeff = -(ScalarExpr::field(i, along(0, 2)) + ScalarExpr::function(0, MultiIndex::from_sequence({i})));
    EL += wedge(G(Generator::delta(i)), G(Generator::dx(0))) * coeff;
    gam += G(Generator::delta(i)) * ScalarExpr::field(i, along(0));
    w += wedge(G(Generator::delta(i, along(0))), G(Generator::delta(i)));
  }
  auto d = premultisymplectic(*T);
  o.require(d.el == EL && d.gamma == gam && d.omega == EL + w, "structural comparison");
  o.require(secs < 1.0, "runtime " + fmt("%.3f s", secs));
  o.detail = "EL, gamma, omega canonical; " + fmt("%.3f s", secs) + " (limit 1 s)";
  (void)s;
  return o;
}

// 2. Chern-Simons: componentwise EL and gamma, momentum map relations.
Outcome criterion2() {
  Outcome o;
  std::string timing;
  for (auto make : {std::function<corpus::ChernSimons()>([] { return corpus::chern_simons_abelian(2, 2); }),
                    std::function<corpus::ChernSimons()>([] { return corpus::chern_simons_so3(2); })}) {
    auto t0 = std::chrono::steady_clock::now();
    corpus::ChernSimons cs = make();
    const LieAlgebra& g = *cs.algebra;
    auto d = premultisymplectic(*cs.theory);
    // A^a = A^a_mu dx^mu, F^a = dA^a + 1/2 f^a_bc A^b ^ A^c, delta A^a = delta A^a_mu ^ dx^mu.
    int dim = g.dim();
    std::vector<BigradedForm> A(dim), F(dim), dA(dim);
    for (int a = 0; a < dim; ++a)
      for (int mu = 0; mu < 3; ++mu) {
        int field = a * 3 + mu;
        A[a] += G(Generator::dx(mu)) * ScalarExpr::field(field, MultiIndex{});
        dA[a] += wedge(G(Generator::delta(field)), G(Generator::dx(mu)));
        for (int nu = 0; nu < 3; ++nu)
          F[a] += wedge(G(Generator::dx(nu)), G(Generator::dx(mu))) * ScalarExpr::field(field, along(nu));
      }
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          if (g.c(a, b, c) != 0)
            F[a] += wedge(A[b], A[c]) * ScalarExpr(Rational(g.c(a, b, c) / 2));
    BigradedForm el, gamma;
    for (int a = 0; a < dim; ++a) {
      el += wedge(dA[a], F[a]) * k(2);
      gamma += wedge(dA[a], A[a]);
    }
    o.require(d.el == el, g.name() + ": EL = 2 kappa(delta A ^ F)");
    o.require(d.gamma == gamma, g.name() + ": gamma = kappa(delta A ^ A)");
    MomapReport rep = verify_momap(*cs.momap, d.omega);
    o.require(rep.pass() && rep.relations.size() == 4, g.name() + ": momentum map relations");
    for (int i = 1; i <= 3; ++i) {
      if (cs.momap->mu(i).is_zero()) continue;  // mu_3 vanishes for abelian algebras
      MomapReport bad = verify_momap(*corpus::sign_flipped(*cs.momap, i), d.omega);
      o.require(!bad.pass(), g.name() + ": sign flip of mu_" + std::to_string(i) + " detected");
    }
    double secs = seconds_since(t0);
    o.require(secs < 30.0, g.name() + " runtime " + fmt("%.2f s", secs));
    timing += (timing.empty() ? "" : ", ") + g.name() + " dim " + std::to_string(dim) + " " + fmt("%.2f s", secs);
  }
  o.detail = "jet order 2; " + timing + " (limit 30 s each)";
  return o;
}

// 3. Mechanics momentum maps and their single-sign mutants.
Outcome criterion3() {
  Outcome o;
  std::vector<Mech> ms{mech("translation", Potential::Free), mech("rotation", Potential::Free),
                       mech("time", Potential::General)};
  int relations = 0;
  for (const Mech& m : ms) {
    MomapReport rep = verify_momap(*m.momap, m.data.omega);
    o.require(rep.pass(), m.name + " relations");
    relations += static_cast<int>(rep.relations.size());
    MomapReport bad = verify_momap(*corpus::sign_flipped(*m.momap, 1), m.data.omega);
    bool nonzero = false;
    for (const auto& r : bad.relations) nonzero |= !r.pass && !r.residual.is_zero();
    o.require(!bad.pass() && nonzero, m.name + " mutant");
  }
  // Values as stated: q_t^i, (q x q_t)_i, -(1/2 q_t^2 + V).
  const Mech& tr = ms[0];
  const JetSpace& s = *tr.theory->space;
  auto qt = [](int i) { return ScalarExpr::field(i, along(0)); };
  auto q = [](int i) { return ScalarExpr::field(i, MultiIndex{}); };
  const LieAlgebra& g3 = *tr.action->algebra;
  for (int i = 0; i < 3; ++i)
    o.require(tr.momap->mu(1).evaluate({g3.basis(i)}, s) == BigradedForm::scalar(qt(i)), "translation value");
  const Mech& rot = ms[1];
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, l = (i + 2) % 3;
    ScalarExpr cross = q(j) * qt(l) - q(l) * qt(j);
    o.require(rot.momap->mu(1).evaluate({rot.action->algebra->basis(i)}, s) == BigradedForm::scalar(cross),
              "rotation value");
  }
  const Mech& tm = ms[2];
  ScalarExpr energy = ScalarExpr::function(0, MultiIndex{});
  for (int i = 0; i < 3; ++i) energy += qt(i) * qt(i) * ScalarExpr(make_rational(1, 2));
  o.require(tm.momap->mu(1).evaluate({tm.action->algebra->basis(0)}, *tm.theory->space) ==
                BigradedForm::scalar(-energy),
            "time value");
  o.detail = "3 maps, " + std::to_string(relations) + " relations exact; 3 sign mutants fail with nonzero residual";
  return o;
}

// 4. Closedness and primitivity in the double complex; T*R^3 at n = 1.
Outcome criterion4() {
  Outcome o;
  struct Case {
    std::string name;
    std::shared_ptr<Action> action;
    MultisymplecticData data;
    std::shared_ptr<MomentumMap> momap;
  };
  std::vector<Case> cases;
  for (const auto& [which, V] : std::vector<std::pair<std::string, Potential>>{{"translation", Potential::Free},
                                                                               {"rotation", Potential::Free},
                                                                               {"time", Potential::General},
                                                                               {"rotation", Potential::Harmonic},
                                                                               {"time", Potential::Harmonic},
                                                                               {"translation", Potential::Quadratic},
                                                                               {"rotation", Potential::General}}) {
    Mech m = mech(which, V);
    cases.push_back({m.name, m.action, m.data, m.momap});
  }
  auto ps = corpus::phase_space_so3();
  cases.push_back({"angular momentum/T*R^3", ps.action, premultisymplectic(*ps.theory), ps.momap});

  int invariant = 0, primitive = 0;
  for (const Case& c : cases) {
    const JetSpace& s = *c.action->space;
    bool inv = true;
    for (int a = 0; a < c.action->algebra->dim(); ++a)
      inv &= lie_derivative(c.action->generic(a), c.data.omega, s).is_zero();
    bool verified = verify_momap(*c.momap, c.data.omega).pass();
    DoubleComplexReport t = check_double_complex(*c.action, c.data.omega, c.momap.get());
    if (inv) {
      ++invariant;
      o.require(t.closed, c.name + ": d_bar omega_bar = 0");
    }
    if (verified) {
      ++primitive;
      o.require(t.primitive, c.name + ": d_bar mu_bar = omega_bar");
    }
    o.require(t.agrees(), c.name + ": double complex agrees with relations");
  }
  const Case& tq = cases.back();
  o.require(plectic_degree(tq.data.omega) == 1, "T*R^3 is n = 1");
  o.require(verify_momap(*tq.momap, tq.data.omega).pass(), "T*R^3 momentum map");
  o.detail = std::to_string(cases.size()) + " actions, " + std::to_string(invariant) + " with L_rho omega = 0 closed, " +
             std::to_string(primitive) + " verified maps primitive; T*R^3 passes";
  return o;
}

// 5. Bicomplex property suite.
Outcome criterion5() {
  Outcome o;
  SelftestOptions opt;
  opt.seed = 0;
  opt.forms = 200;
  opt.characteristics = 20;
  opt.suites = {"bicomplex"};
  SelftestReport rep = run_selftest(opt);
  int forms = 0, fields = 0;
  for (const auto& id : rep.identities) {
    o.require(id.pass(), id.name + ": " + id.residual);
    if (id.name == "d_h^2") forms = id.cases;
    if (id.name == "[iota_prQ, d_h]") fields = id.cases / 3;
  }
  o.require(forms >= 200, "forms " + std::to_string(forms));
  o.require(fields >= 20, "characteristics " + std::to_string(fields));
  o.require(rep.seconds < 60.0, "runtime " + fmt("%.2f s", rep.seconds));
  o.detail = std::to_string(forms) + " forms, " + std::to_string(fields) + " characteristics, " +
             std::to_string(rep.identities.size()) + " identities exact, " + fmt("%.2f s", rep.seconds) +
             " (limit 60 s)";
  return o;
}

// 6. Zero-locus classification and agreement with the exactness oracle.
Outcome criterion6() {
  Outcome o;
  ScalarExpr c = ScalarExpr::cos(0, 1), sn = ScalarExpr::sin(0, 1);
  struct Expect {
    Mech m;
    FieldSample phi;
    bool i, ii;
  };
  Mech tr = mech("translation", Potential::Free), rot = mech("rotation", Potential::Free),
       tmf = mech("time", Potential::Free), tmh = mech("time", Potential::Harmonic);
  std::vector<Expect> cases{
      {tr, path({t() * k(2) + k(1), -t(), k(3)}, "linear"), true, true},
      {tr, path({k(4), t() * k(5), t() * k(-1)}, "linear 2"), true, true},
      {tr, path({t().pow(2), k(0), k(0)}, "(t^2, 0, 0)"), false, true},
      {rot, path({t(), t() * k(2), t() * k(3)}, "radial line"), true, true},
      {rot, path({sn, sn * k(2), sn * k(3)}, "radial sin"), true, true},
      {rot, path({c, sn, k(0)}, "circle"), true, false},
      {tmf, path({t() * k(3), k(1), -t()}, "uniform line"), true, true},
      {tmh, path({c, sn, k(0)}, "circle"), true, true},
      {tmh, path({c, sn * ScalarExpr(make_rational(3, 5)), sn * ScalarExpr(make_rational(4, 5))}, "tilted circle"),
       true, true},
      {tmh, path({c, ScalarExpr::sin(0, 2), k(0)}, "(cos t, sin 2t, 0)"), false, true},
  };
  int agree = 0;
  for (const auto& e : cases) {
    ZeroLocusReport z = zero_locus_check(e.phi, *e.m.momap, e.m.data.gamma);
    std::string who = e.m.name + " @ " + e.phi.label;
    o.require(z.pass_i() == e.i, who + ": condition (i)");
    o.require(z.pass_ii() == e.ii, who + ": condition (ii)");
    bool oracle = exactness_oracle_n1(*e.m.momap, e.phi);
    o.require(oracle == z.pass(), who + ": exactness oracle");
    agree += oracle == z.pass();
  }
  o.detail = std::to_string(cases.size()) + " classifications as expected, oracle agrees on " + std::to_string(agree) +
             "/" + std::to_string(cases.size());
  return o;
}

// 7. Infinitesimal invariance of the zero locus.
Outcome criterion7() {
  Outcome o;
  const double tol = 1e-6, lo = 3.2, hi = 4.8;
  ScalarExpr c = ScalarExpr::cos(0, 1), sn = ScalarExpr::sin(0, 1);
  std::vector<Mech> ms{mech("translation", Potential::Free), mech("rotation", Potential::Free),
                       mech("rotation", Potential::Harmonic), mech("time", Potential::Free),
                       mech("time", Potential::Harmonic)};
  std::vector<FieldSample> candidates{
      path({t() * k(2) + k(1), t() * k(-3), k(5)}, "line"),
      path({t(), t() * k(2), t() * k(3)}, "radial line"),
      path({sn, sn * k(2), sn * k(3)}, "radial sin"),
      path({c, sn, k(0)}, "circle"),
      path({c, sn * ScalarExpr(make_rational(3, 5)), sn * ScalarExpr(make_rational(4, 5))}, "tilted circle"),
  };
  int runs = 0, ratios = 0, exact = 0;
  double rmin = 1e9, rmax = 0, worst = 0;
  for (const Mech& m : ms) {
    int in_locus = 0, with_ratio = 0;
    bool nonpolynomial = false;
    for (const auto& phi : candidates) {
      if (!zero_locus_check(phi, *m.momap, m.data.gamma).pass()) continue;
      ++in_locus;
      bool poly = phi.label == "line" || phi.label == "radial line";
      nonpolynomial |= !poly;
      for (int a = 0; a < m.action->algebra->dim(); ++a) {
        InvarianceOptions opt;
        opt.tol = tol;
        InvarianceReport r = invariance_check(phi, m.action->algebra->basis(a), *m.momap, m.data.gamma, opt);
        std::string who = m.name + " @ " + phi.label + " [" + m.action->algebra->labels()[a] + "]";
        ++runs;
        o.require(r.symbolic_pass, who + ": symbolic derivative");
        o.require(r.residual_h < tol, who + ": residual " + fmt("%.3g", r.residual_h));
        worst = std::max(worst, r.residual_h);
        if (r.ratio) {
          ++ratios;
          ++with_ratio;
          rmin = std::min(rmin, *r.ratio);
          rmax = std::max(rmax, *r.ratio);
          o.require(*r.ratio >= lo && *r.ratio <= hi, who + ": ratio " + fmt("%.3f", *r.ratio));
        } else {
          ++exact;
          // Central differences are exact on polynomial data; anything else must show its order.
          o.require(poly, who + ": no Richardson ratio on non-polynomial data");
        }
      }
    }
    o.require(in_locus > 0, m.name + ": no in-locus path");
    if (nonpolynomial) o.require(with_ratio > 0, m.name + ": no measurable ratio");
  }
  o.detail = std::to_string(runs) + " runs, max residual " + fmt("%.2g", worst) + " (< 1e-6), " +
             std::to_string(ratios) + " ratios in [" + fmt("%.3f", rmin) + ", " + fmt("%.3f", rmax) + "] (window [3.2, 4.8]), " +
             std::to_string(exact) + " exact on polynomial paths (no ratio)";
  return o;
}

// 8. Charge conservation.
Outcome criterion8() {
  Outcome o;
  Mech tr = mech("translation", Potential::Free);
  const JetSpace& s = *tr.theory->space;
  const LieAlgebra& g = *tr.action->algebra;
  std::vector<FieldSample> lines{path({t() * k(2) + k(1), -t(), k(3)}, "line"),
                                 path({k(4), t() * ScalarExpr(make_rational(5, 3)), t() * k(-1) + k(2)}, "line 2")};
  for (int a = 0; a < 3; ++a) {
    BigradedForm j = tr.momap->mu(1).evaluate({g.basis(a)}, s);
    // Translations leave L invariant, so alpha = 0 and d_h j = iota_xi EL exactly.
    NoetherCurrent nc = noether_current(tr.action->generic(a), BigradedForm{}, tr.data, s);
    o.require(nc.conserved && nc.conservation_residual.is_zero(), "translation current conserved on shell");
    o.require(nc.j == j || nc.j == j * k(-1), "current matches the momentum map");
    for (const auto& phi : lines) {
      ScalarExpr q = charge_density(j, phi, 0, s);
      o.require(q.is_constant(), phi.label + ": charge density depends on the slice");
      double q0 = charge(j, phi, {0, -1.0, 1, {}, {}, {}}, s);
      double q1 = charge(j, phi, {0, 2.5, 1, {}, {}, {}}, s);
      o.require(q0 == q1, phi.label + ": slice values differ");
    }
  }
  // Sampled orbit of V = |q|^2 / 2.
  FieldSample orbit = corpus::harmonic_orbit({1, 0, 0.5}, {0, 1, 0}, 10.0, 1001);
  double drift = 0;
  int charges = 0;
  for (const Mech& m : {mech("rotation", Potential::Harmonic), mech("time", Potential::Harmonic)}) {
    const JetSpace& hs = *m.theory->space;
    for (int a = 0; a < m.action->algebra->dim(); ++a) {
      BigradedForm j = m.momap->mu(1).evaluate({m.action->algebra->basis(a)}, hs);
      std::vector<double> q;
      for (double t0 : {0.5, 2.0, 4.0, 6.5, 9.5}) q.push_back(charge(j, orbit, {0, t0, 1, {}, {}, {}}, hs));
      double ref = std::max(1.0, std::abs(q[0]));
      for (double v : q) drift = std::max(drift, std::abs(v - q[0]) / ref);
      ++charges;
    }
  }
  o.require(drift < 1e-4, "grid drift " + fmt("%.3g", drift));
  o.detail = "translation charges slice independent on 2 paths; " + std::to_string(charges) +
             " harmonic-orbit charges, max relative drift " + fmt("%.2g", drift) + " (limit 1e-4)";
  return o;
}

// 9. DSL round trips and diagnostics.
Outcome criterion9() {
  Outcome o;
  fs::path root(JETREDUCE_SOURCE_DIR);
  int fixtures = 0;
  for (const auto& e : fs::directory_iterator(root / "fixtures")) {
    if (e.path().extension() != ".jr") continue;
    std::string name = e.path().filename().string();
    dsl::ParseResult r = dsl::parse(read_file(e.path()));
    o.require(r.ok(), name + " parses");
    if (!r.ok()) continue;
    std::string printed = dsl::print(r.doc);
    dsl::ParseResult again = dsl::parse(printed);
    o.require(again.ok() && again.doc == r.doc && dsl::print(again.doc) == printed, name + " round trip");
    ++fixtures;
  }
  int fuzz = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    dsl::Document d = dsl::random_document(seed);
    dsl::ParseResult r = dsl::parse(dsl::print(d));
    bool ok = r.ok() && r.doc == d;
    o.require(ok, "fuzz seed " + std::to_string(seed));
    fuzz += ok;
  }
  int malformed = 0, spanned = 0;
  std::vector<fs::path> bad;
  for (const auto& e : fs::directory_iterator(root / "fixtures" / "malformed")) bad.push_back(e.path());
  std::sort(bad.begin(), bad.end());
  for (const auto& p : bad) {
    std::string text = read_file(p);
    std::string expect = text.substr(text.find(": ") + 2, text.find('\n') - text.find(": ") - 2);
    ++malformed;
    try {
      dsl::ParseResult r = dsl::parse(text);
      bool ok = !r.ok() && dsl::to_string(r.diagnostics[0].kind) == expect;
      for (const auto& d : r.diagnostics)
        ok &= d.span.offset + d.span.length <= text.size() && d.span.line >= 1 && d.span.col >= 1 &&
              !d.message.empty();
      o.require(ok, p.filename().string() + " diagnostic");
      spanned += ok;
    } catch (const std::exception& ex) {
      o.require(false, p.filename().string() + " threw: " + ex.what());
    }
  }
  o.require(fixtures >= 6, "fixture count");
  o.require(malformed >= 20, "malformed count");
  o.detail = std::to_string(fixtures) + " fixtures round-trip, " + std::to_string(fuzz) + "/100 fuzzed documents, " +
             std::to_string(spanned) + "/" + std::to_string(malformed) + " malformed documents with spanned diagnostics";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"mechanics golden (EL, gamma, omega)", criterion1},
      {"Chern-Simons golden and momentum map", criterion2},
      {"mechanics momentum maps and mutants", criterion3},
      {"double complex closedness and primitivity", criterion4},
      {"bicomplex property suite", criterion5},
      {"zero-locus classification", criterion6},
      {"infinitesimal invariance", criterion7},
      {"charge conservation", criterion8},
      {"DSL round trip and diagnostics", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
