#include "jetreduce/corpus.hpp"

#include <array>

namespace jetreduce::corpus {

namespace {

MultiIndex dt(int k) {
  MultiIndex I;
  I.e[0] = static_cast<std::uint8_t>(k);
  return I;
}

ScalarExpr qj(int i, int k = 0) { return ScalarExpr::field(i, dt(k)); }

// (a x b)_k
ScalarExpr cross(const std::array<ScalarExpr, 3>& a, const std::array<ScalarExpr, 3>& b, int k) {
  int i = (k + 1) % 3, j = (k + 2) % 3;
  return a[i] * b[j] - a[j] * b[i];
}

std::array<ScalarExpr, 3> unit(int i) {
  std::array<ScalarExpr, 3> e;
  e[i] = ScalarExpr(1);
  return e;
}

std::shared_ptr<LieAlgebra> cyclic_so3(const Rational& sign) {
  auto g = std::make_shared<LieAlgebra>("so3", std::vector<std::string>{"e1", "e2", "e3"});
  for (int k = 0; k < 3; ++k) {
    std::vector<Rational> r(3, Rational(0));
    r[(k + 2) % 3] = sign;
    g->set_bracket(k, (k + 1) % 3, r);
  }
  g->validate();
  return g;
}

BigradedForm scalar_form(const ScalarExpr& e) { return BigradedForm::scalar(e); }

}  // namespace

std::shared_ptr<Theory> particle(Potential V, int jet_order) {
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{"t"}, std::vector<std::string>{"q1", "q2", "q3"},
                                      jet_order);
  if (V == Potential::General) s->add_function("V", {Atom::field(0), Atom::field(1), Atom::field(2)});
  auto T = std::make_shared<Theory>();
  switch (V) {
    case Potential::General: T->name = "particle"; break;
    case Potential::Free: T->name = "free_particle"; break;
    case Potential::Harmonic: T->name = "harmonic_particle"; break;
    case Potential::Quadratic: T->name = "quadratic_particle"; break;
  }
  T->space = s;
  ScalarExpr kinetic;
  for (int i = 0; i < 3; ++i) kinetic += qj(i, 1).pow(2) * ScalarExpr(make_rational(1, 2));
  T->density = kinetic - potential(*T, V);
  return T;
}

ScalarExpr potential(const Theory& T, Potential V) {
  switch (V) {
    case Potential::General: return ScalarExpr::function(*T.space->function_index("V"));
    case Potential::Free: return ScalarExpr();
    case Potential::Harmonic: {
      ScalarExpr r;
      for (int i = 0; i < 3; ++i) r += qj(i).pow(2) * ScalarExpr(make_rational(1, 2));
      return r;
    }
    case Potential::Quadratic: return qj(0).pow(2);
  }
  return {};
}

std::shared_ptr<LieAlgebra> translations() {
  return std::make_shared<LieAlgebra>("translations", std::vector<std::string>{"e1", "e2", "e3"});
}

std::shared_ptr<LieAlgebra> rotations() {
  return cyclic_so3(Rational(-1));
}

std::shared_ptr<LieAlgebra> so3_standard() { return cyclic_so3(Rational(1)); }

std::shared_ptr<LieAlgebra> time_line() {
  return std::make_shared<LieAlgebra>("time", std::vector<std::string>{"e1"});
}

std::shared_ptr<Action> translation_action(const std::shared_ptr<Theory>& T) {
  auto act = std::make_shared<Action>();
  act->name = "translation";
  act->algebra = translations();
  act->theory = T;
  act->space = T->space;
  for (int i = 0; i < 3; ++i) {
    std::vector<ScalarExpr> Q(3);
    Q[i] = ScalarExpr(1);
    act->basis_fields.push_back(JetVectorField::vertical(Q, *T->space));
  }
  return act;
}

std::shared_ptr<Action> rotation_action(const std::shared_ptr<Theory>& T) {
  auto act = std::make_shared<Action>();
  act->name = "rotation";
  act->algebra = rotations();
  act->theory = T;
  act->space = T->space;
  std::array<ScalarExpr, 3> q{qj(0), qj(1), qj(2)};
  for (int i = 0; i < 3; ++i) {
    std::vector<ScalarExpr> Q(3);
    for (int k = 0; k < 3; ++k) Q[k] = cross(unit(i), q, k);
    act->basis_fields.push_back(JetVectorField::vertical(Q, *T->space));
  }
  return act;
}

std::shared_ptr<Action> time_action(const std::shared_ptr<Theory>& T, Potential) {
  auto act = std::make_shared<Action>();
  act->name = "time";
  act->algebra = time_line();
  act->theory = T;
  act->space = T->space;
  JetVectorField X = JetVectorField::zero(*T->space);
  for (int i = 0; i < 3; ++i) X.Q[i] = -qj(i, 1);
  X.v[0] = ScalarExpr(1);
  act->basis_fields.push_back(X);
  return act;
}

std::shared_ptr<MomentumMap> translation_momap(const std::shared_ptr<Action>& act) {
  auto mu = std::make_shared<MomentumMap>();
  mu->name = "translation_momap";
  mu->action = act;
  GCochain m1 = GCochain::table(1);
  for (int i = 0; i < 3; ++i) m1.set({i}, scalar_form(qj(i, 1)));
  mu->components.push_back(m1);
  return mu;
}

std::shared_ptr<MomentumMap> rotation_momap(const std::shared_ptr<Action>& act) {
  auto mu = std::make_shared<MomentumMap>();
  mu->name = "rotation_momap";
  mu->action = act;
  std::array<ScalarExpr, 3> q{qj(0), qj(1), qj(2)}, qd{qj(0, 1), qj(1, 1), qj(2, 1)};
  GCochain m1 = GCochain::table(1);
  for (int i = 0; i < 3; ++i) m1.set({i}, scalar_form(cross(q, qd, i)));
  mu->components.push_back(m1);
  return mu;
}

std::shared_ptr<MomentumMap> time_momap(const std::shared_ptr<Action>& act, Potential V) {
  auto mu = std::make_shared<MomentumMap>();
  mu->name = "time_momap";
  mu->action = act;
  ScalarExpr energy = potential(*act->theory, V);
  for (int i = 0; i < 3; ++i) energy += qj(i, 1).pow(2) * ScalarExpr(make_rational(1, 2));
  GCochain m1 = GCochain::table(1);
  m1.set({0}, scalar_form(-energy));
  mu->components.push_back(m1);
  return mu;
}

// ---- Chern-Simons ------------------------------------------------------------------

namespace {

const char* kCoords[3] = {"x", "y", "z"};

int cs_field(int alpha, int mu) { return alpha * 3 + mu; }

BigradedForm connection_form(int alpha) {
  BigradedForm A;
  for (int mu = 0; mu < 3; ++mu) A += BigradedForm::term(ScalarExpr::field(cs_field(alpha, mu)), {Generator::dx(mu)});
  return A;
}

ScalarExpr top(const BigradedForm& f) {
  GenList vol{Generator::dx(0), Generator::dx(1), Generator::dx(2)};
  return f.coefficient(vol);
}

}  // namespace

BigradedForm ChernSimons::connection(int alpha) const { return connection_form(alpha); }

BigradedForm ChernSimons::curvature(int alpha) const {
  const JetSpace& s = *theory->space;
  const LieAlgebra& g = *algebra;
  BigradedForm F = d_h(connection(alpha), s);
  for (int b = 0; b < g.dim(); ++b)
    for (int c = 0; c < g.dim(); ++c)
      if (g.c(alpha, b, c) != 0)
        F += wedge(connection(b), connection(c)) * ScalarExpr(g.c(alpha, b, c) / 2);
  return F;
}

ChernSimons chern_simons(std::shared_ptr<LieAlgebra> g, int jet_order) {
  ChernSimons cs;
  cs.algebra = g;
  int m = g->dim();
  std::vector<std::string> fields;
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < 3; ++mu) fields.push_back("A" + std::to_string(a + 1) + kCoords[mu]);
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{"x", "y", "z"}, fields, jet_order);
  auto T = std::make_shared<Theory>();
  T->name = g->is_abelian() ? "chern_simons_abelian" : "chern_simons_" + g->name();
  T->space = s;
  cs.theory = T;

  // kappa = identity: Tr(dA ^ A) + 2/3 Tr(A ^ A ^ A) componentwise.
  BigradedForm L;
  for (int a = 0; a < m; ++a) L += wedge(d_h(cs.connection(a), *s), cs.connection(a));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (g->c(a, b, c) != 0)
          L += wedge(wedge(cs.connection(a), cs.connection(b)), cs.connection(c)) *
               ScalarExpr(g->c(a, b, c) / 3);
  T->density = top(L);

  int n = 3;
  auto ext = extend_with_params(*s, *g, std::max(n + 1, 2));
  auto act = std::make_shared<Action>();
  act->name = "gauge";
  act->algebra = g;
  act->theory = T;
  act->space = ext;
  act->local_template = JetVectorField::zero(*ext);
  auto X = [&](int slot, int a) { return ScalarExpr::param(ext->param_index(slot, a)); };
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < 3; ++mu) {
      ScalarExpr q = total_derivative(X(0, a), mu, *ext);
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          if (g->c(a, b, c) != 0) q += ScalarExpr::field(cs_field(b, mu)) * X(0, c) * ScalarExpr(g->c(a, b, c));
      act->local_template.Q[cs_field(a, mu)] = q;
    }
  cs.gauge = act;

  auto mu = std::make_shared<MomentumMap>();
  mu->name = "gauge_momap";
  mu->action = act;
  BigradedForm b1, b2, b3;
  for (int a = 0; a < m; ++a) {
    // -2 kappa(A ^ dX)
    b1 -= wedge(cs.connection(a), horizontal_differential(X(0, a), *ext)) * ScalarExpr(2);
    // 2 kappa(X, dY)
    b2 += horizontal_differential(X(1, a), *ext) * (X(0, a) * ScalarExpr(2));
  }
  for (int d = 0; d < m; ++d)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (g->c(d, a, b) != 0) {
          // -kappa([A ^ A], X) and -kappa(X, [Y, Z])
          b1 -= wedge(cs.connection(a), cs.connection(b)) * (X(0, d) * ScalarExpr(g->c(d, a, b)));
          b3 += BigradedForm::scalar(X(0, d) * X(1, a) * X(2, b) * ScalarExpr(-g->c(d, a, b)));
        }
  mu->components = {GCochain::templ(1, b1), GCochain::templ(2, b2), GCochain::templ(3, b3)};
  cs.momap = mu;
  return cs;
}

ChernSimons chern_simons_abelian(int dim, int jet_order) {
  std::vector<std::string> labels;
  for (int a = 0; a < dim; ++a) labels.push_back("e" + std::to_string(a + 1));
  return chern_simons(std::make_shared<LieAlgebra>("abelian", labels, true), jet_order);
}

ChernSimons chern_simons_so3(int jet_order) {
  auto base = so3_standard();
  auto g = std::make_shared<LieAlgebra>("so3", base->labels(), true);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::vector<Rational> r(3);
      for (int k = 0; k < 3; ++k) r[k] = base->c(k, i, j);
      if (i != j) g->set_bracket(i, j, r);
    }
  g->validate();
  return chern_simons(g, jet_order);
}

// ---- phase space -------------------------------------------------------------------

PhaseSpace phase_space_so3() {
  PhaseSpace ps;
  ps.algebra = so3_standard();
  auto s = std::make_shared<JetSpace>(std::vector<std::string>{},
                                      std::vector<std::string>{"q1", "q2", "q3", "p1", "p2", "p3"}, 1);
  auto T = std::make_shared<Theory>();
  T->name = "phase_space";
  T->space = s;
  BigradedForm omega;
  for (int i = 0; i < 3; ++i) omega += BigradedForm::term(ScalarExpr(1), {Generator::delta(i), Generator::delta(i + 3)});
  T->omega_override = omega;
  ps.theory = T;
  std::array<ScalarExpr, 3> q{qj(0), qj(1), qj(2)}, p{qj(3), qj(4), qj(5)};
  auto act = std::make_shared<Action>();
  act->name = "rotation";
  act->algebra = ps.algebra;
  act->theory = T;
  act->space = s;
  for (int i = 0; i < 3; ++i) {
    std::vector<ScalarExpr> Q(6);
    for (int k = 0; k < 3; ++k) {
      Q[k] = cross(q, unit(i), k);
      Q[k + 3] = cross(p, unit(i), k);
    }
    act->basis_fields.push_back(JetVectorField::vertical(Q, *s));
  }
  ps.action = act;
  auto mu = std::make_shared<MomentumMap>();
  mu->name = "angular_momentum";
  mu->action = act;
  GCochain m1 = GCochain::table(1);
  for (int i = 0; i < 3; ++i) m1.set({i}, BigradedForm::scalar(cross(q, p, i)));
  mu->components.push_back(m1);
  ps.momap = mu;
  return ps;
}

std::shared_ptr<MomentumMap> sign_flipped(const MomentumMap& mu, int i) {
  auto out = std::make_shared<MomentumMap>(mu);
  out->name = mu.name + "_flipped";
  GCochain& c = out->components.at(i - 1);
  if (c.is_template()) {
    c = GCochain::templ(c.arity(), -c.body());
  } else {
    auto first = c.entries().begin();
    if (first == c.entries().end()) throw DomainError("nothing to flip");
    std::vector<int> t = first->first;
    BigradedForm v = first->second;
    c.set(t, -v);
  }
  return out;
}

}  // namespace jetreduce::corpus

namespace jetreduce::corpus {

FieldSample harmonic_orbit(const std::vector<double>& q0, const std::vector<double>& v0, double t1, int samples,
                           int substeps) {
  if (q0.size() != 3 || v0.size() != 3) throw DomainError("orbit needs three components");
  if (samples < 3 || substeps < 1) throw DomainError("orbit needs at least three samples");
  using State = std::array<double, 6>;
  auto rhs = [](const State& y) {
    State d{};
    for (int i = 0; i < 3; ++i) {
      d[i] = y[i + 3];
      d[i + 3] = -y[i];
    }
    return d;
  };
  double dt = t1 / (samples - 1);
  double h = dt / substeps;
  State y{q0[0], q0[1], q0[2], v0[0], v0[1], v0[2]};
  Grid g;
  g.origin = {0.0};
  g.spacing = {dt};
  g.counts = {samples};
  g.values.assign(3, std::vector<double>(samples));
  for (int k = 0; k < samples; ++k) {
    for (int i = 0; i < 3; ++i) g.values[i][k] = y[i];
    for (int s = 0; s < substeps; ++s) {
      auto axpy = [](const State& a, double c, const State& b) {
        State r;
        for (int i = 0; i < 6; ++i) r[i] = a[i] + c * b[i];
        return r;
      };
      State k1 = rhs(y), k2 = rhs(axpy(y, h / 2, k1)), k3 = rhs(axpy(y, h / 2, k2)), k4 = rhs(axpy(y, h, k3));
      for (int i = 0; i < 6; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
  }
  FieldSample f;
  f.label = "harmonic_orbit";
  f.grid = g;
  return f;
}

}  // namespace jetreduce::corpus
