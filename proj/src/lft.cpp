#include "jetreduce/lft.hpp"

#include <algorithm>

namespace jetreduce {

void Theory::validate() const {
  if (!space) throw DomainError("theory '" + name + "' has no jet space");
  if (!density && !omega_override) throw DomainError("theory '" + name + "' needs a lagrangian or an omega");
  if (density && density->depends_on(AtomKind::Param))
    throw DomainError("lagrangian of '" + name + "' mentions symmetry parameters");
  if (density && space->base_dim() == 0) throw DomainError("a lagrangian needs at least one base coordinate");
}

namespace {

std::set<Atom> field_jets_of(const ScalarExpr& e, const JetSpace& space, int a) {
  std::set<Atom> s;
  for (const auto& x : e.atoms()) {
    if (x.kind == AtomKind::Field && x.index == a) s.insert(x);
    if (x.kind == AtomKind::Function)
      for (const auto& arg : space.functions().at(x.index).args)
        if (arg.kind == AtomKind::Field && arg.index == a) s.insert(arg);
  }
  return s;
}

BigradedForm density_form(const ScalarExpr& density, const JetSpace& space) {
  return wedge(BigradedForm::scalar(density), volume_form(space));
}

// Coefficient of vol in a (0, n) form.
ScalarExpr top_coefficient(const BigradedForm& f, const JetSpace& space) {
  GenList vol;
  for (int mu = 0; mu < space.base_dim(); ++mu) vol.push_back(Generator::dx(mu));
  for (const auto& [g, c] : f.terms())
    if (g != vol) throw DomainError("expected a multiple of the volume form");
  return f.coefficient(vol);
}

}  // namespace

ScalarExpr euler_operator(const ScalarExpr& density, int a, const JetSpace& space) {
  ScalarExpr r;
  for (const auto& u : field_jets_of(density, space, a)) {
    ScalarExpr p = partial(density, u, space);
    if (p.is_zero()) continue;
    ScalarExpr d = total_derivative(p, u.multi, space);
    r += (u.multi.order() % 2 == 0) ? d : -d;
  }
  return r;
}

BigradedForm euler_lagrange_form(const ScalarExpr& density, const JetSpace& space) {
  BigradedForm r;
  BigradedForm vol = volume_form(space);
  for (int a = 0; a < space.num_fields(); ++a) {
    ScalarExpr E = euler_operator(density, a, space);
    if (!E.is_zero()) r += wedge(BigradedForm::term(E, {Generator::delta(a)}), vol);
  }
  return r;
}

BigradedForm euler_lagrange(const Theory& T) {
  T.validate();
  if (!T.density) return {};
  return euler_lagrange_form(*T.density, *T.space);
}

IbpResult integrate_by_parts(const BigradedForm& theta, const JetSpace& space) {
  int n = space.base_dim();
  std::map<std::pair<int, MultiIndex>, ScalarExpr> slots;
  for (const auto& [g, c] : theta.terms()) {
    if (g.size() != static_cast<std::size_t>(n + 1) || !g[0].vertical)
      throw DomainError("integration by parts expects a (1, n) form");
    for (std::size_t k = 1; k < g.size(); ++k)
      if (g[k].vertical) throw DomainError("integration by parts expects a (1, n) form");
    slots[{g[0].index, g[0].multi}] += c;
  }
  IbpResult out;
  for (;;) {
    // Highest order first; ties in (field, multi-index) order.
    auto pick = slots.end();
    for (auto it = slots.begin(); it != slots.end(); ++it) {
      if (it->second.is_zero() || it->first.second.order() == 0) continue;
      if (pick == slots.end() || it->first.second.order() > pick->first.second.order()) pick = it;
    }
    if (pick == slots.end()) break;
    auto [a, I] = pick->first;
    ScalarExpr P = pick->second;
    slots.erase(pick);
    int mu = 0;
    while (I.e[mu] == 0) ++mu;
    MultiIndex J = I;
    --J.e[mu];
    // P du_{J+mu} vol = -D_mu P du_J vol - d_h(P du_J ^ iota_mu vol)
    slots[{a, J}] -= total_derivative(P, mu, space);
    out.boundary += wedge(BigradedForm::term(P, {Generator::delta(a, J)}), volume_contraction(mu, space));
  }
  BigradedForm vol = volume_form(space);
  for (const auto& [key, P] : slots)
    if (!P.is_zero()) out.source += wedge(BigradedForm::term(P, {Generator::delta(key.first, key.second)}), vol);
  if (!(theta == out.source - d_h(out.boundary, space)))
    throw VerificationError("integration by parts does not reproduce the input form");
  return out;
}

BigradedForm boundary_form(const Theory& T) {
  T.validate();
  const JetSpace& s = *T.space;
  if (!T.density) return T.gamma_override.value_or(BigradedForm{});
  BigradedForm L = density_form(*T.density, s);
  BigradedForm dL = d_v(L, s);
  if (T.gamma_override) {
    BigradedForm EL = euler_lagrange_form(*T.density, s);
    if (!(dL == EL - d_h(*T.gamma_override, s)))
      throw VerificationError("supplied gamma does not satisfy delta L = EL - d gamma");
    return *T.gamma_override;
  }
  IbpResult r = integrate_by_parts(dL, s);
  if (!(r.source == euler_lagrange_form(*T.density, s)))
    throw VerificationError("integration by parts disagrees with the Euler operator");
  return r.boundary;
}

MultisymplecticData premultisymplectic(const Theory& T) {
  T.validate();
  const JetSpace& s = *T.space;
  MultisymplecticData d;
  if (T.density) {
    d.lagrangian = density_form(*T.density, s);
    d.el = euler_lagrange(T);
    d.gamma = boundary_form(T);
    if (!(d_v(d.lagrangian, s) == d.el - d_h(d.gamma, s)))
      throw VerificationError("delta L = EL - d gamma fails");
    d.omega = d.el + d_v(d.gamma, s);
    if (T.omega_override && !(*T.omega_override == d.omega))
      throw VerificationError("supplied omega differs from EL + delta gamma");
  } else {
    d.gamma = T.gamma_override.value_or(BigradedForm{});
    d.omega = *T.omega_override;
  }
  d.lepage = d.lagrangian + d.gamma;
  if (!d_total(d.omega, s).is_zero()) throw VerificationError("omega is not closed");
  return d;
}

std::optional<BigradedForm> horizontal_homotopy(const ScalarExpr& g, const JetSpace& space, std::string* why) {
  auto fail = [&](const std::string& msg) -> std::optional<BigradedForm> {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (space.base_dim() == 0) return fail("no base coordinates");
  for (const auto& a : g.atoms())
    if (a.kind == AtomKind::Function)
      for (const auto& arg : space.functions().at(a.index).args)
        if (arg.kind == AtomKind::Field) return fail("density involves uninterpreted functions of the fields");
  ScalarExpr base_part, field_part;
  for (const auto& [m, c] : g.terms()) {
    int deg = ScalarExpr::field_degree(m);
    for (const auto& f : m)
      if (f.atom.kind == AtomKind::Field && f.power < 0) return fail("density is not polynomial in the fields");
    if (deg == 0) {
      for (const auto& f : m)
        if (f.atom.kind == AtomKind::Param) return fail("field-independent part depends on parameters");
      base_part.add_term(m, c);
    } else {
      field_part.add_term(m, c);
    }
  }
  BigradedForm alpha;
  // Field-independent part: antiderivative in the first coordinate.
  if (!base_part.is_zero()) {
    ScalarExpr F;
    for (const auto& [m, c] : base_part.terms()) {
      int xpow = 0, trig = 0;
      Atom trig_atom;
      Monomial rest;
      for (const auto& f : m) {
        if (f.atom.kind == AtomKind::Base && f.atom.index == 0) {
          xpow = f.power;
        } else if (f.atom.is_transcendental() && f.atom.index == 0) {
          trig += f.power;
          trig_atom = f.atom;
        } else {
          rest.push_back(f);
        }
      }
      if (trig == 0) {
        if (xpow == -1) return fail("antiderivative leaves the polynomial class");
        F += ScalarExpr::monomial(monomial_product(rest, {{Atom::base(0), xpow + 1}}), c / (xpow + 1));
      } else if (trig == 1 && xpow == 0) {
        Rational k = trig_atom.frequency();
        ScalarExpr r = ScalarExpr::monomial(rest, c / k);
        if (trig_atom.kind == AtomKind::Sin) F -= r * ScalarExpr::cos(0, k);
        if (trig_atom.kind == AtomKind::Cos) F += r * ScalarExpr::sin(0, k);
        if (trig_atom.kind == AtomKind::Exp) F += r * ScalarExpr::exp(0, k);
      } else {
        return fail("antiderivative of a transcendental product is not supported");
      }
    }
    alpha += wedge(BigradedForm::scalar(F), volume_contraction(0, space));
  }
  if (!field_part.is_zero()) {
    BigradedForm theta = d_v(density_form(field_part, space), space);
    IbpResult r = integrate_by_parts(theta, space);
    if (!r.source.is_zero()) return fail("density is not variationally trivial");
    for (const auto& [G, C] : r.boundary.terms()) {
      // G = delta u^a_J ^ (horizontal); contract with the scaling field.
      ScalarExpr scaled;
      for (const auto& [m, c] : C.terms()) {
        int deg = ScalarExpr::field_degree(m);
        scaled.add_term(m, c / (deg + 1));
      }
      ScalarExpr u = ScalarExpr::field(G[0].index, G[0].multi);
      GenList rest(G.begin() + 1, G.end());
      alpha.add_term(rest, scaled * u);
    }
  }
  if (!(d_h(alpha, space) == density_form(g, space)))
    throw VerificationError("homotopy operator produced an incorrect primitive");
  return alpha;
}

NoetherResult is_noether_symmetry(const JetVectorField& chi, const Theory& T, const JetSpace* space) {
  T.validate();
  const JetSpace& s = space ? *space : *T.space;
  chi.validate(s);
  if (chi.has_horizontal()) throw PreconditionError("Noether test needs a strictly vertical field");
  NoetherResult r;
  if (!T.density) {
    r.symmetry = true;
    r.alpha = BigradedForm{};
    return r;
  }
  BigradedForm L = density_form(*T.density, s);
  r.lie_l = lie_derivative(chi, L, s);
  ScalarExpr g = r.lie_l.is_zero() ? ScalarExpr() : top_coefficient(r.lie_l, s);
  r.euler_image = euler_lagrange_form(g, s);
  r.symmetry = r.euler_image.is_zero();
  if (!r.symmetry) {
    r.note = "Euler operator does not annihilate L_chi L";
    return r;
  }
  std::string why;
  r.alpha = horizontal_homotopy(g, s, &why);
  if (!r.alpha) r.note = "homotopy operator not applicable: " + why;
  return r;
}

NoetherCurrent noether_current(const JetVectorField& chi, const BigradedForm& alpha, const MultisymplecticData& data,
                               const JetSpace& space) {
  NoetherCurrent nc;
  Prolongation P(chi, space);
  nc.j = alpha - contract(P, data.gamma, space);
  nc.conservation_residual = d_h(nc.j, space) - contract(P, data.el, space);
  nc.conserved = nc.conservation_residual.is_zero();
  BigradedForm iw = contract(P, data.omega, space);
  nc.plus.form = nc.j;
  nc.plus.residual = iw + d_total(nc.j, space);
  nc.plus.hamiltonian = nc.plus.residual.is_zero();
  nc.minus.form = -nc.j;
  nc.minus.residual = iw - d_total(nc.j, space);
  nc.minus.hamiltonian = nc.minus.residual.is_zero();
  return nc;
}

ManifestReport is_manifest(const JetVectorField& chi, const MultisymplecticData& data, const JetSpace& space) {
  ManifestReport r;
  ProlongationReport pr = prolongation_check(chi, space);
  r.decomposes = pr.vertical_commutes_with_dh && pr.horizontal_commutes_with_dv;
  r.lepage_residual = lie_derivative(chi, data.lepage, space);
  r.lepage_invariant = r.lepage_residual.is_zero();
  r.omega_invariant = lie_derivative(chi, data.omega, space).is_zero();
  return r;
}

}  // namespace jetreduce
