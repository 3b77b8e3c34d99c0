#include "jetreduce/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jetreduce {

// ---- grids -------------------------------------------------------------------------

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

std::size_t Grid::flat(const std::vector<int>& idx) const {
  std::size_t k = 0;
  for (int mu = 0; mu < dim(); ++mu) k = k * counts[mu] + idx[mu];
  return k;
}

std::vector<int> Grid::unflat(std::size_t k) const {
  std::vector<int> idx(dim());
  for (int mu = dim() - 1; mu >= 0; --mu) {
    idx[mu] = static_cast<int>(k % counts[mu]);
    k /= counts[mu];
  }
  return idx;
}

std::vector<double> Grid::point(std::size_t k) const {
  std::vector<int> idx = unflat(k);
  std::vector<double> x(dim());
  for (int mu = 0; mu < dim(); ++mu) x[mu] = origin[mu] + spacing[mu] * idx[mu];
  return x;
}

void FieldSample::validate(const JetSpace& space) const {
  if (is_grid()) {
    const Grid& g = *grid;
    if (g.dim() != space.base_dim() || static_cast<int>(g.origin.size()) != g.dim() ||
        static_cast<int>(g.spacing.size()) != g.dim())
      throw DomainError("grid of field '" + label + "' does not match the base dimension");
    if (static_cast<int>(g.values.size()) != space.num_fields())
      throw DomainError("field '" + label + "' needs one sample array per component");
    for (int mu = 0; mu < g.dim(); ++mu) {
      if (g.counts[mu] < 1) throw DomainError("empty grid axis");
      if (!(g.spacing[mu] > 0)) throw DomainError("grid spacing must be positive");
    }
    for (const auto& v : g.values)
      if (v.size() != g.size()) throw DomainError("sample array size differs from the grid size");
    return;
  }
  if (static_cast<int>(closed.size()) != space.num_fields())
    throw DomainError("field '" + label + "' has " + std::to_string(closed.size()) + " components, theory has " +
                      std::to_string(space.num_fields()));
  for (const auto& c : closed)
    for (const auto& a : c.atoms())
      if (a.kind != AtomKind::Base && !a.is_transcendental())
        throw DomainError("closed-form field components may depend on base coordinates only");
}

std::vector<double> GridJets::derivative(const std::vector<double>& f, int mu) const {
  const Grid& g = grid_;
  int N = g.counts[mu];
  if (N < 3) throw DomainError("grid resolution insufficient along " + space_.coords()[mu]);
  std::size_t stride = 1;
  for (int nu = mu + 1; nu < g.dim(); ++nu) stride *= g.counts[nu];
  double h = g.spacing[mu];
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    int i = static_cast<int>((k / stride) % N);
    auto at = [&](int j) { return f[k + (static_cast<long>(j) - i) * static_cast<long>(stride)]; };
    if (i == 0)
      out[k] = (-3 * at(0) + 4 * at(1) - at(2)) / (2 * h);
    else if (i == N - 1)
      out[k] = (3 * at(N - 1) - 4 * at(N - 2) + at(N - 3)) / (2 * h);
    else
      out[k] = (at(i + 1) - at(i - 1)) / (2 * h);
  }
  return out;
}

const std::vector<double>& GridJets::jet(int a, const MultiIndex& I) {
  auto key = std::make_pair(a, I);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (I.order() == 0) return cache_.emplace(key, grid_.values.at(a)).first->second;
  int mu = 0;
  while (I.e[mu] == 0) ++mu;
  MultiIndex J = I;
  --J.e[mu];
  std::vector<double> d = derivative(jet(a, J), mu);
  return cache_.emplace(key, std::move(d)).first->second;
}

std::vector<double> GridJets::evaluate(const ScalarExpr& e) {
  std::map<Atom, const std::vector<double>*> arrays;
  for (const auto& a : e.atoms()) {
    if (a.kind == AtomKind::Field) {
      arrays[a] = &jet(a.index, a.multi);
    } else if (a.kind == AtomKind::Function) {
      throw DomainError("function '" + space_.functions().at(a.index).name + "' has no value on sampled fields");
    } else if (a.kind == AtomKind::Param) {
      throw DomainError("symmetry parameters cannot be evaluated on sampled fields");
    }
  }
  std::size_t N = grid_.size();
  std::vector<double> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<double> x = grid_.point(k);
    out[k] = jetreduce::evaluate(e, [&](const Atom& a) -> double {
      if (a.kind == AtomKind::Base) return x[a.index];
      return (*arrays.at(a))[k];
    });
  }
  return out;
}

// ---- pullbacks -----------------------------------------------------------------------

namespace {

bool has_vertical(const GenList& g) {
  return std::any_of(g.begin(), g.end(), [](const Generator& x) { return x.vertical; });
}

void require_closed(const FieldSample& phi, const char* what) {
  if (phi.is_grid()) throw DomainError(std::string(what) + " needs a closed-form field");
}

double eval_at(const ScalarExpr& e, const std::vector<double>& x) {
  return evaluate(e, [&](const Atom& a) -> double {
    if (a.kind == AtomKind::Base) return x.at(a.index);
    throw DomainError("expression is not a function on the base");
  });
}

// Generic slot parameters get fixed irrational-looking values.
double eval_probe(const ScalarExpr& e, const std::vector<double>& x) {
  return evaluate(e, [&](const Atom& a) -> double {
    if (a.kind == AtomKind::Base) return x.at(a.index);
    if (a.kind == AtomKind::Param) {
      double v = 0.713 + 0.291 * a.index;
      for (std::size_t mu = 0; mu < a.multi.e.size(); ++mu) v -= 0.173 * (mu + 1.4) * a.multi.e[mu];
      return v;
    }
    throw DomainError("expression is not a function on the base");
  });
}

// Sample points in [-1, 1]^n, at most a few hundred.
std::vector<std::vector<double>> probe_points(int n) {
  std::vector<double> axis{-1.0, -0.37, 0.21, 0.64, 1.0};
  std::vector<std::vector<double>> pts{{}};
  for (int mu = 0; mu < n && mu < 3; ++mu) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : axis) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    pts = next;
  }
  for (auto& p : pts) p.resize(n, 0.5);
  return pts;
}

double probe_max(const BigradedForm& f, int n) {
  double m = 0;
  for (const auto& p : probe_points(n))
    for (const auto& [g, c] : f.terms()) m = std::max(m, std::abs(eval_probe(c, p)));
  return m;
}

}  // namespace

BigradedForm pullback_form(const BigradedForm& f, const FieldSample& phi, const JetSpace& space) {
  require_closed(phi, "symbolic pullback");
  phi.validate(space);
  BigradedForm r;
  for (const auto& [g, c] : f.terms()) {
    if (has_vertical(g)) continue;
    r.add_term(g, substitute_jet(c, phi.closed, space));
  }
  return r;
}

GridForm pullback_grid(const BigradedForm& f, GridJets& jets) {
  GridForm r;
  for (const auto& [g, c] : f.terms()) {
    if (has_vertical(g)) continue;
    std::vector<double> v = jets.evaluate(c);
    auto& slot = r[g];
    if (slot.empty())
      slot = std::move(v);
    else
      for (std::size_t k = 0; k < v.size(); ++k) slot[k] += v[k];
  }
  return r;
}

GridForm grid_d(const GridForm& f, const GridJets& jets) {
  GridForm r;
  for (const auto& [g, c] : f) {
    for (int mu = 0; mu < jets.grid().dim(); ++mu) {
      GenList g2{Generator::dx(mu)};
      g2.insert(g2.end(), g.begin(), g.end());
      int sign = canonical_sort(g2);
      if (sign == 0) continue;
      std::vector<double> d = jets.derivative(c, mu);
      auto& slot = r[g2];
      if (slot.empty()) slot.assign(d.size(), 0.0);
      for (std::size_t k = 0; k < d.size(); ++k) slot[k] += sign * d[k];
    }
  }
  return r;
}

double max_abs(const GridForm& f) {
  double m = 0;
  for (const auto& [g, v] : f)
    for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// ---- zero locus ------------------------------------------------------------------------

bool ZeroLocusReport::pass_i() const {
  return std::all_of(cond_i.begin(), cond_i.end(), [](const ConditionResult& r) { return r.pass; });
}

bool ZeroLocusReport::pass_ii() const {
  return std::all_of(cond_ii.begin(), cond_ii.end(), [](const ConditionResult& r) { return r.pass; });
}

namespace {

struct Subject {
  std::string label;
  std::vector<Element> args;
};

std::vector<Subject> singles(const Action& act) {
  const LieAlgebra& g = *act.algebra;
  if (act.local()) return {{"X", {g.generic(0, *act.space)}}};
  std::vector<Subject> out;
  for (int k = 0; k < g.dim(); ++k) out.push_back({g.labels()[k], {g.basis(k)}});
  return out;
}

std::vector<Subject> pairs(const Action& act) {
  const LieAlgebra& g = *act.algebra;
  if (act.local()) return {{"X^Y", {g.generic(0, *act.space), g.generic(1, *act.space)}}};
  std::vector<Subject> out;
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) out.push_back({g.labels()[a] + "^" + g.labels()[b], {g.basis(a), g.basis(b)}});
  return out;
}

double interior_max(const GridForm& f, const Grid& g, int margin) {
  bool fits = true;
  for (int c : g.counts) fits = fits && c > 2 * margin + 2;
  if (!fits || margin == 0) return max_abs(f);
  double m = 0;
  for (const auto& [gens, v] : f)
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::vector<int> idx = g.unflat(k);
      bool inside = true;
      for (int mu = 0; mu < g.dim(); ++mu) inside = inside && idx[mu] >= margin && idx[mu] < g.counts[mu] - margin;
      if (inside) m = std::max(m, std::abs(v[k]));
    }
  return m;
}

// Max magnitude over single monomial contributions and their derivatives.
double term_scale(const BigradedForm& f, GridJets& jets, bool differentiate) {
  double m = 0;
  for (const auto& [g, c] : f.terms()) {
    if (has_vertical(g)) continue;
    for (const auto& [mono, coef] : c.terms()) {
      BigradedForm single = BigradedForm::term(ScalarExpr::monomial(mono, coef), g);
      GridForm p = pullback_grid(single, jets);
      m = std::max(m, max_abs(p));
      if (differentiate) m = std::max(m, max_abs(grid_d(p, jets)));
    }
  }
  return m;
}

ConditionResult judge(const std::string& label, const BigradedForm& form, bool differentiate, const FieldSample& phi,
                      const JetSpace& s, GridJets* jets, double tol) {
  ConditionResult r;
  r.label = label;
  if (!jets) {
    BigradedForm p = pullback_form(form, phi, s);
    if (differentiate) p = d_h(p, s);
    r.symbolic = p;
    r.pass = form_vanishes(p);
    r.residual = r.pass ? 0.0 : probe_max(p, s.base_dim());
    return r;
  }
  GridForm p = pullback_grid(form, *jets);
  if (differentiate) p = grid_d(p, *jets);
  // Nested one-sided stencils lose an order at the edges; judge the interior.
  int margin = differentiate ? 1 : 0;
  for (const auto& [g, c] : form.terms())
    for (const auto& a : c.atoms())
      if (a.kind == AtomKind::Field) margin = std::max(margin, a.multi.order() + (differentiate ? 1 : 0));
  r.residual = interior_max(p, jets->grid(), margin);
  r.scale = term_scale(form, *jets, differentiate);
  r.pass = r.residual == 0 || r.residual <= tol * r.scale;
  return r;
}

}  // namespace

ZeroLocusReport zero_locus_check(const FieldSample& phi, const MomentumMap& mu, const BigradedForm& gamma, double tol) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  phi.validate(s);
  ZeroLocusReport rep;
  rep.numeric = phi.is_grid();
  rep.tol = tol;
  std::optional<GridJets> jets;
  if (phi.is_grid()) {
    if (act.local()) throw DomainError("sampled fields need a global-mode algebra");
    jets.emplace(*phi.grid, s);
  }
  GridJets* J = jets ? &*jets : nullptr;
  GCochain m1 = mu.mu(1);
  for (const auto& sub : singles(act))
    rep.cond_i.push_back(judge(sub.label, m1.evaluate(sub.args, s), true, phi, s, J, tol));
  BigradedForm dgamma = d_v(gamma, s);
  for (const auto& sub : pairs(act)) {
    JetVectorField xa = act.apply(sub.args[0]).vertical_part();
    JetVectorField xb = act.apply(sub.args[1]).vertical_part();
    BigradedForm f = contract(xa, contract(xb, dgamma, s), s);
    rep.cond_ii.push_back(judge(sub.label, f, false, phi, s, J, tol));
  }
  return rep;
}

bool exactness_oracle_n1(const MomentumMap& mu, const FieldSample& phi) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  const LieAlgebra& g = *act.algebra;
  require_closed(phi, "the exactness oracle");
  if (s.base_dim() != 1) throw PreconditionError("the exactness oracle is for one-dimensional bases");
  if (act.local()) throw PreconditionError("the exactness oracle needs a global-mode algebra");
  // Pulled-back mu_1(e_a) as functions of t, sampled on an interval.
  std::vector<double> ts;
  for (int k = 0; k <= 16; ++k) ts.push_back(-1.3 + 0.17 * k);
  std::vector<double> c(g.dim());
  GCochain m1 = mu.mu(1);
  for (int a = 0; a < g.dim(); ++a) {
    BigradedForm p = pullback_form(m1.evaluate({g.basis(a)}, s), phi, s);
    if (p.is_zero()) continue;
    if (p.terms().size() != 1 || !p.terms().begin()->first.empty())
      throw DomainError("mu_1 must take function values for n = 1");
    const ScalarExpr& f = p.terms().begin()->second;
    std::vector<double> v;
    double scale = 0;
    for (double t : ts) {
      v.push_back(eval_at(f, {t}));
      scale = std::max(scale, std::abs(v.back()));
    }
    for (double x : v)
      if (std::abs(x - v[0]) > 1e-10 * std::max(1.0, scale)) return false;
    c[a] = v[0];
  }
  // c must vanish on brackets: the (2, -1) component of d_bar beta.
  double scale = 0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) {
      double v = 0;
      for (int k = 0; k < g.dim(); ++k) v += rational_double(g.c(k, a, b)) * c[k];
      if (std::abs(v) > 1e-10 * std::max(1.0, scale)) return false;
    }
  return true;
}

// ---- charges ---------------------------------------------------------------------------

ScalarExpr charge_density(const BigradedForm& j, const FieldSample& phi, int k, const JetSpace& space) {
  BigradedForm p = pullback_form(j, phi, space);
  BigradedForm vk = volume_contraction(k, space);
  if (vk.terms().size() != 1) throw DomainError("unexpected volume contraction");
  const auto& [gens, sign] = *vk.terms().begin();
  for (const auto& [g, c] : p.terms())
    if (g != gens && !c.is_zero() && static_cast<int>(g.size()) != space.base_dim() - 1)
      throw DomainError("current must have degree n-1");
  return p.coefficient(gens) * sign;
}

namespace {

double trapezoid(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                 const std::vector<double>& hi, const std::vector<int>& counts) {
  int m = static_cast<int>(lo.size());
  if (m == 0) return f({});
  std::size_t total = 1;
  for (int c : counts) {
    if (c < 2) throw DomainError("quadrature needs at least two points per axis");
    total *= c;
  }
  double sum = 0;
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = k;
    std::vector<double> x(m);
    double w = 1;
    for (int mu = m - 1; mu >= 0; --mu) {
      int i = static_cast<int>(r % counts[mu]);
      r /= counts[mu];
      double h = (hi[mu] - lo[mu]) / (counts[mu] - 1);
      x[mu] = lo[mu] + i * h;
      w *= (i == 0 || i == counts[mu] - 1) ? h / 2 : h;
    }
    sum += w * f(x);
  }
  return sum;
}

}  // namespace

double charge(const BigradedForm& j, const FieldSample& phi, const SliceSpec& slice, const JetSpace& space) {
  int n = space.base_dim();
  int k = slice.coord;
  if (k < 0 || k >= n) throw DomainError("slice coordinate out of range");
  phi.validate(space);
  if (j.is_zero()) return 0.0;
  auto insert = [&](const std::vector<double>& rest, double v) {
    std::vector<double> x(rest.begin(), rest.begin() + k);
    x.push_back(v);
    x.insert(x.end(), rest.begin() + k, rest.end());
    return x;
  };
  if (!phi.is_grid()) {
    ScalarExpr dens = charge_density(j, phi, k, space);
    if (n == 1) return slice.coorientation * eval_at(dens, {slice.value});
    if (static_cast<int>(slice.lo.size()) != n - 1 || slice.hi.size() != slice.lo.size() ||
        slice.counts.size() != slice.lo.size())
      throw DomainError("slice needs a quadrature box on the remaining axes");
    return slice.coorientation *
           trapezoid([&](const std::vector<double>& r) { return eval_at(dens, insert(r, slice.value)); }, slice.lo,
                     slice.hi, slice.counts);
  }
  const Grid& g = *phi.grid;
  if (slice.value < g.lo(k) - 1e-12 || slice.value > g.hi(k) + 1e-12) throw DomainError("slice outside grid");
  GridJets jets(g, space);
  GridForm p = pullback_grid(j, jets);
  BigradedForm vk = volume_contraction(k, space);
  const auto& [gens, sign] = *vk.terms().begin();
  auto it = p.find(gens);
  if (it == p.end()) return 0.0;
  double sgn = rational_double(sign.constant_value());
  const std::vector<double>& dens = it->second;
  // Linear interpolation across the slice, trapezoid over the remaining axes.
  double u = (slice.value - g.lo(k)) / g.spacing[k];
  int i0 = std::clamp(static_cast<int>(std::floor(u)), 0, std::max(0, g.counts[k] - 2));
  double w1 = g.counts[k] > 1 ? u - i0 : 0.0;
  std::vector<int> rest_counts;
  for (int mu = 0; mu < n; ++mu)
    if (mu != k) rest_counts.push_back(g.counts[mu]);
  std::size_t total = 1;
  for (int c : rest_counts) total *= c;
  double sum = 0;
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<int> ridx(rest_counts.size());
    std::size_t rr = r;
    double w = 1;
    for (int m = static_cast<int>(rest_counts.size()) - 1; m >= 0; --m) {
      ridx[m] = static_cast<int>(rr % rest_counts[m]);
      rr /= rest_counts[m];
      int mu = m < k ? m : m + 1;
      double h = g.spacing[mu];
      w *= (rest_counts[m] == 1) ? 1.0 : ((ridx[m] == 0 || ridx[m] == rest_counts[m] - 1) ? h / 2 : h);
    }
    auto at = [&](int i) {
      std::vector<int> idx(ridx.begin(), ridx.begin() + k);
      idx.push_back(i);
      idx.insert(idx.end(), ridx.begin() + k, ridx.end());
      return dens[g.flat(idx)];
    };
    double v = g.counts[k] > 1 ? (1 - w1) * at(i0) + w1 * at(i0 + 1) : at(0);
    sum += w * v;
  }
  return slice.coorientation * sgn * sum;
}

// ---- invariance --------------------------------------------------------------------------

namespace {

struct Item {
  std::string component;
  int sign = 1;
  ScalarExpr monomial;
  int mu = -1;  // derivative direction, -1 for none
  ScalarExpr exact;  // pulled-back first variation
};

}  // namespace

InvarianceReport invariance_check(const FieldSample& phi0, const Element& c, const MomentumMap& mu,
                                  const BigradedForm& gamma, const InvarianceOptions& opt) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  if (act.local()) throw DomainError("invariance check needs a global-mode algebra");
  require_closed(phi0, "the invariance check");
  if (!zero_locus_check(phi0, mu, gamma).pass()) throw PreconditionError("field is not in the zero locus");
  int n = s.base_dim();

  JetVectorField Xc = act.apply(c).vertical_part();
  std::vector<ScalarExpr> eta(s.num_fields());
  for (int a = 0; a < s.num_fields(); ++a) eta[a] = substitute_jet(Xc.Q[a], phi0.closed, s);
  Prolongation P(Xc, s);

  std::vector<Item> items;
  auto add_items = [&](const std::string& label, const BigradedForm& f, bool differentiate) {
    for (const auto& [g, coef] : f.terms()) {
      if (has_vertical(g)) continue;
      for (const auto& [mono, q] : coef.terms()) {
        ScalarExpr M = ScalarExpr::monomial(mono, q);
        if (!differentiate) {
          ScalarExpr ex = substitute_jet(evolutionary_apply(P, M, s), phi0.closed, s);
          items.push_back({label, 1, M, -1, ex});
          continue;
        }
        for (int m = 0; m < n; ++m) {
          GenList g2{Generator::dx(m)};
          g2.insert(g2.end(), g.begin(), g.end());
          int sign = canonical_sort(g2);
          if (sign == 0) continue;
          std::string comp = label;
          for (const auto& x : g2) comp += " " + s.coords()[x.index];
          ScalarExpr ex = substitute_jet(evolutionary_apply(P, total_derivative(M, m, s), s), phi0.closed, s);
          items.push_back({comp, sign, M, m, ex});
        }
      }
    }
  };
  const LieAlgebra& g = *act.algebra;
  GCochain m1 = mu.mu(1);
  for (int a = 0; a < g.dim(); ++a) add_items("(i) " + g.labels()[a], m1.evaluate({g.basis(a)}, s), true);
  BigradedForm dgamma = d_v(gamma, s);
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) {
      BigradedForm f = contract(act.generic(a), contract(act.generic(b), dgamma, s), s);
      add_items("(ii) " + g.labels()[a] + "^" + g.labels()[b], f.horizontal_part(), false);
    }

  InvarianceReport rep;
  std::map<std::string, ScalarExpr> sym;
  for (const auto& it : items) sym[it.component] += it.exact * ScalarExpr(it.sign);
  rep.symbolic_pass = true;
  for (const auto& [k, v] : sym) {
    rep.symbolic.emplace_back(k, v);
    if (!vanishes(v)) rep.symbolic_pass = false;
  }

  // Exact jets of phi_0 and of the flow direction.
  std::map<Atom, std::pair<ScalarExpr, ScalarExpr>> jets;
  auto jet_of = [&](const Atom& a) -> const std::pair<ScalarExpr, ScalarExpr>& {
    auto it = jets.find(a);
    if (it != jets.end()) return it->second;
    ScalarExpr u = ScalarExpr::atom(a);
    return jets.emplace(a, std::make_pair(substitute_jet(u, phi0.closed, s), substitute_jet(u, eta, s))).first->second;
  };
  auto value = [&](const ScalarExpr& M, double flow, const std::vector<double>& x) {
    return evaluate(M, [&](const Atom& a) -> double {
      if (a.kind == AtomKind::Base) return x.at(a.index);
      if (a.kind == AtomKind::Field) {
        const auto& [j0, je] = jet_of(a);
        return eval_at(j0, x) + flow * eval_at(je, x);
      }
      throw DomainError("cannot evaluate '" + s.atom_text(a) + "' along a field");
    });
  };
  std::vector<std::vector<double>> points = opt.points;
  if (points.empty())
    for (double v : {0.3, 0.7, 1.1}) points.push_back(std::vector<double>(n, v));

  const double eps = std::numeric_limits<double>::epsilon();
  double floor_h = 0, scale = 0;
  auto run = [&](double h, double& residual, double& error) {
    residual = 0;
    error = 0;
    for (const auto& x : points) {
      std::map<std::string, double> comp;
      for (const auto& it : items) {
        double approx;
        double mag = 0;
        if (it.mu < 0) {
          double vp = value(it.monomial, h, x), vm = value(it.monomial, -h, x);
          approx = (vp - vm) / (2 * h);
          mag = std::max(std::abs(vp), std::abs(vm)) / h;
        } else {
          auto shifted = [&](double d) {
            auto y = x;
            y[it.mu] += d;
            return y;
          };
          double pp = value(it.monomial, h, shifted(h)), pm = value(it.monomial, h, shifted(-h));
          double mp = value(it.monomial, -h, shifted(h)), mm = value(it.monomial, -h, shifted(-h));
          approx = (pp - pm - mp + mm) / (4 * h * h);
          mag = std::max({std::abs(pp), std::abs(pm), std::abs(mp), std::abs(mm)}) / (h * h);
        }
        double exact = eval_at(it.exact, x);
        comp[it.component] += it.sign * approx;
        error += std::abs(approx - exact);
        scale = std::max(scale, std::abs(approx));
        if (h == opt.h) floor_h += 8 * eps * mag;
      }
      for (const auto& [k, v] : comp) residual = std::max(residual, std::abs(v));
    }
  };
  run(opt.h, rep.residual_h, rep.error_h);
  run(opt.h / 2, rep.residual_h2, rep.error_h2);
  if (rep.error_h > 10 * floor_h && rep.error_h2 > 0) rep.ratio = rep.error_h / rep.error_h2;
  rep.numeric_pass = rep.residual_h <= opt.tol * std::max(scale, 1.0);
  return rep;
}

}  // namespace jetreduce
