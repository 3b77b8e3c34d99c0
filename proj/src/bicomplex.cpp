#include "jetreduce/bicomplex.hpp"

#include <algorithm>

namespace jetreduce {

Generator Generator::dx(int mu) {
  Generator g;
  g.vertical = false;
  g.index = static_cast<std::uint16_t>(mu);
  return g;
}

Generator Generator::delta(int a, MultiIndex I) {
  Generator g;
  g.vertical = true;
  g.index = static_cast<std::uint16_t>(a);
  g.multi = I;
  return g;
}

bool Generator::operator<(const Generator& o) const {
  if (vertical != o.vertical) return vertical;
  if (!vertical) return index < o.index;
  int oa = multi.order(), ob = o.multi.order();
  if (oa != ob) return oa > ob;
  if (index != o.index) return index < o.index;
  return multi > o.multi;
}

int canonical_sort(GenList& g) {
  int sign = 1;
  for (std::size_t i = 1; i < g.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (g[j] == g[j - 1]) return 0;
      if (g[j] < g[j - 1]) {
        std::swap(g[j], g[j - 1]);
        sign = -sign;
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] == g[i - 1]) return 0;
  return sign;
}

// ---- BigradedForm ------------------------------------------------------------

BigradedForm BigradedForm::scalar(const ScalarExpr& c) {
  BigradedForm f;
  f.add_term({}, c);
  return f;
}

BigradedForm BigradedForm::gen(const Generator& g) {
  BigradedForm f;
  f.add_term({g}, ScalarExpr(1));
  return f;
}

BigradedForm BigradedForm::term(const ScalarExpr& c, GenList gens) {
  int s = canonical_sort(gens);
  BigradedForm f;
  if (s != 0) f.add_term(gens, s > 0 ? c : -c);
  return f;
}

void BigradedForm::add_term(const GenList& sorted, const ScalarExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(sorted, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

std::pair<int, int> bidegree_of(const GenList& g) {
  int p = 0;
  for (const auto& x : g) p += x.vertical ? 1 : 0;
  return {p, static_cast<int>(g.size()) - p};
}

}  // namespace

std::set<std::pair<int, int>> BigradedForm::bidegrees() const {
  std::set<std::pair<int, int>> s;
  for (const auto& [g, c] : terms_) s.insert(bidegree_of(g));
  return s;
}

bool BigradedForm::is_homogeneous() const {
  std::set<std::size_t> d;
  for (const auto& [g, c] : terms_) d.insert(g.size());
  return d.size() <= 1;
}

int BigradedForm::degree() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw DomainError("form is not homogeneous in total degree");
  return static_cast<int>(terms_.begin()->first.size());
}

BigradedForm BigradedForm::component(int p, int q) const {
  BigradedForm r;
  for (const auto& [g, c] : terms_)
    if (bidegree_of(g) == std::make_pair(p, q)) r.terms_.emplace(g, c);
  return r;
}

BigradedForm BigradedForm::horizontal_part() const {
  BigradedForm r;
  for (const auto& [g, c] : terms_)
    if (bidegree_of(g).first == 0) r.terms_.emplace(g, c);
  return r;
}

ScalarExpr BigradedForm::coefficient(const GenList& sorted) const {
  auto it = terms_.find(sorted);
  return it == terms_.end() ? ScalarExpr() : it->second;
}

BigradedForm& BigradedForm::operator+=(const BigradedForm& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

BigradedForm& BigradedForm::operator-=(const BigradedForm& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, -c);
  return *this;
}

BigradedForm& BigradedForm::operator*=(const ScalarExpr& c) {
  Terms old;
  old.swap(terms_);
  for (const auto& [g, v] : old) add_term(g, v * c);
  return *this;
}

BigradedForm BigradedForm::operator-() const {
  BigradedForm r;
  for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
  return r;
}

BigradedForm wedge(const BigradedForm& a, const BigradedForm& b) {
  BigradedForm r;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) {
      GenList g = ga;
      g.insert(g.end(), gb.begin(), gb.end());
      int s = canonical_sort(g);
      if (s == 0) continue;
      ScalarExpr c = ca * cb;
      r.add_term(g, s > 0 ? c : -c);
    }
  return r;
}

bool form_vanishes(const BigradedForm& f) {
  for (const auto& [g, c] : f.terms())
    if (!vanishes(c)) return false;
  return true;
}

// ---- differentials ---------------------------------------------------------------

namespace {

// Field jets that a coefficient depends on, directly or through function
// arguments.
std::set<Atom> field_dependencies(const ScalarExpr& c, const JetSpace& space) {
  std::set<Atom> s;
  for (const auto& a : c.atoms()) {
    if (a.kind == AtomKind::Field) s.insert(a);
    if (a.kind == AtomKind::Function)
      for (const auto& arg : space.functions().at(a.index).args)
        if (arg.kind == AtomKind::Field) s.insert(arg);
  }
  return s;
}

void add_signed(BigradedForm& r, GenList g, const ScalarExpr& c) {
  int s = canonical_sort(g);
  if (s == 0) return;
  r.add_term(g, s > 0 ? c : -c);
}

}  // namespace

BigradedForm d_h(const BigradedForm& f, const JetSpace& space) {
  BigradedForm r;
  for (const auto& [G, c] : f.terms()) {
    for (int mu = 0; mu < space.base_dim(); ++mu) {
      ScalarExpr Dc = total_derivative(c, mu, space);
      if (Dc.is_zero()) continue;
      GenList g{Generator::dx(mu)};
      g.insert(g.end(), G.begin(), G.end());
      add_signed(r, std::move(g), Dc);
    }
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (!G[j].vertical) continue;
      // d_h(delta u_I) = - sum_mu delta u_{I+mu} ^ dx^mu, placed at slot j.
      ScalarExpr coef = (j % 2 == 0) ? -c : c;
      for (int mu = 0; mu < space.base_dim(); ++mu) {
        MultiIndex I = G[j].multi.plus(mu);
        space.check_order(I);
        GenList g(G.begin(), G.begin() + static_cast<std::ptrdiff_t>(j));
        g.push_back(Generator::delta(G[j].index, I));
        g.push_back(Generator::dx(mu));
        g.insert(g.end(), G.begin() + static_cast<std::ptrdiff_t>(j) + 1, G.end());
        add_signed(r, std::move(g), coef);
      }
    }
  }
  return r;
}

BigradedForm d_v(const BigradedForm& f, const JetSpace& space) {
  BigradedForm r;
  for (const auto& [G, c] : f.terms()) {
    for (const auto& a : field_dependencies(c, space)) {
      ScalarExpr pc = partial(c, a, space);
      if (pc.is_zero()) continue;
      GenList g{Generator::delta(a.index, a.multi)};
      g.insert(g.end(), G.begin(), G.end());
      add_signed(r, std::move(g), pc);
    }
  }
  return r;
}

BigradedForm d_total(const BigradedForm& f, const JetSpace& space) { return d_h(f, space) + d_v(f, space); }

BigradedForm variation(const ScalarExpr& e, const JetSpace& space) {
  return d_v(BigradedForm::scalar(e), space);
}

BigradedForm horizontal_differential(const ScalarExpr& e, const JetSpace& space) {
  return d_h(BigradedForm::scalar(e), space);
}

BigradedForm volume_form(const JetSpace& space) {
  GenList g;
  for (int mu = 0; mu < space.base_dim(); ++mu) g.push_back(Generator::dx(mu));
  BigradedForm f;
  f.add_term(g, ScalarExpr(1));
  return f;
}

BigradedForm volume_contraction(int mu, const JetSpace& space) {
  GenList g;
  for (int nu = 0; nu < space.base_dim(); ++nu)
    if (nu != mu) g.push_back(Generator::dx(nu));
  BigradedForm f;
  f.add_term(g, ScalarExpr(mu % 2 == 0 ? 1 : -1));
  return f;
}

// ---- vector fields ---------------------------------------------------------------

JetVectorField JetVectorField::zero(const JetSpace& space) {
  JetVectorField X;
  X.Q.assign(space.num_fields(), ScalarExpr());
  X.v.assign(space.base_dim(), ScalarExpr());
  return X;
}

JetVectorField JetVectorField::vertical(std::vector<ScalarExpr> Q, const JetSpace& space) {
  JetVectorField X = zero(space);
  X.Q = std::move(Q);
  X.validate(space);
  return X;
}

JetVectorField JetVectorField::horizontal(std::vector<ScalarExpr> v, const JetSpace& space) {
  JetVectorField X = zero(space);
  X.v = std::move(v);
  X.validate(space);
  return X;
}

bool JetVectorField::has_vertical() const {
  return std::any_of(Q.begin(), Q.end(), [](const ScalarExpr& e) { return !e.is_zero(); });
}

bool JetVectorField::has_horizontal() const {
  return std::any_of(v.begin(), v.end(), [](const ScalarExpr& e) { return !e.is_zero(); });
}

JetVectorField JetVectorField::vertical_part() const {
  JetVectorField X = *this;
  for (auto& e : X.v) e = ScalarExpr();
  return X;
}

JetVectorField JetVectorField::horizontal_part() const {
  JetVectorField X = *this;
  for (auto& e : X.Q) e = ScalarExpr();
  return X;
}

void JetVectorField::validate(const JetSpace& space) const {
  if (static_cast<int>(Q.size()) != space.num_fields())
    throw DomainError("vector field has " + std::to_string(Q.size()) + " vertical components, expected " +
                      std::to_string(space.num_fields()));
  if (static_cast<int>(v.size()) != space.base_dim())
    throw DomainError("vector field has " + std::to_string(v.size()) + " horizontal components, expected " +
                      std::to_string(space.base_dim()));
  for (const auto& e : v)
    for (const auto& a : e.atoms()) {
      bool field_dep = a.kind == AtomKind::Field;
      if (a.kind == AtomKind::Function)
        for (const auto& arg : space.functions().at(a.index).args) field_dep |= arg.kind == AtomKind::Field;
      if (field_dep) throw DomainError("horizontal components may depend on base coordinates only");
    }
}

JetVectorField& JetVectorField::operator+=(const JetVectorField& o) {
  if (Q.size() != o.Q.size() || v.size() != o.v.size()) throw DomainError("vector field shape mismatch");
  for (std::size_t i = 0; i < Q.size(); ++i) Q[i] += o.Q[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}

JetVectorField& JetVectorField::operator*=(const ScalarExpr& c) {
  for (auto& e : Q) e *= c;
  for (auto& e : v) e *= c;
  return *this;
}

JetVectorField JetVectorField::operator-() const {
  JetVectorField X = *this;
  for (auto& e : X.Q) e = -e;
  for (auto& e : X.v) e = -e;
  return X;
}

const ScalarExpr& Prolongation::DQ(int a, const MultiIndex& I) const {
  auto key = std::make_pair(a, I);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ScalarExpr r;
  if (I.order() == 0) {
    r = X_.Q.at(a);
  } else {
    // Build on the cached lower-order derivative.
    auto seq = I.sequence();
    int last = seq.back();
    seq.pop_back();
    r = total_derivative(DQ(a, MultiIndex::from_sequence(seq)), last, space_);
  }
  return cache_.emplace(key, std::move(r)).first->second;
}

BigradedForm contract(const Prolongation& X, const BigradedForm& f, const JetSpace&) {
  const JetVectorField& F = X.field();
  BigradedForm r;
  for (const auto& [G, c] : f.terms()) {
    for (std::size_t j = 0; j < G.size(); ++j) {
      const Generator& g = G[j];
      const ScalarExpr& iv = g.vertical ? X.DQ(g.index, g.multi) : F.v.at(g.index);
      if (iv.is_zero()) continue;
      GenList rest = G;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      ScalarExpr coef = c * iv;
      r.add_term(rest, j % 2 == 0 ? coef : -coef);
    }
  }
  return r;
}

BigradedForm contract(const JetVectorField& X, const BigradedForm& f, const JetSpace& space) {
  X.validate(space);
  Prolongation P(X, space);
  return contract(P, f, space);
}

BigradedForm lie_derivative(const JetVectorField& X, const BigradedForm& f, const JetSpace& space) {
  X.validate(space);
  Prolongation P(X, space);
  return contract(P, d_total(f, space), space) + d_total(contract(P, f, space), space);
}

ScalarExpr evolutionary_apply(const Prolongation& X, const ScalarExpr& e, const JetSpace& space) {
  return apply_derivation(e, [&](const Atom& a) -> std::optional<ScalarExpr> {
    if (a.kind == AtomKind::Field) return X.DQ(a.index, a.multi);
    if (a.kind == AtomKind::Function) {
      const auto& args = space.functions().at(a.index).args;
      ScalarExpr r;
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k].kind != AtomKind::Field) continue;
        MultiIndex d = a.multi.plus(static_cast<int>(k));
        r += ScalarExpr::function(a.index, d) * X.DQ(args[k].index, args[k].multi);
      }
      return r;
    }
    return std::nullopt;
  });
}

ScalarExpr vector_field_apply(const JetVectorField& X, const ScalarExpr& e, const JetSpace& space) {
  Prolongation P(X, space);
  ScalarExpr r = evolutionary_apply(P, e, space);
  for (int mu = 0; mu < space.base_dim(); ++mu)
    if (!X.v[mu].is_zero()) r += X.v[mu] * total_derivative(e, mu, space);
  return r;
}

JetVectorField bracket(const JetVectorField& X, const JetVectorField& Y, const JetSpace& space) {
  X.validate(space);
  Y.validate(space);
  Prolongation PX(X, space), PY(Y, space);
  JetVectorField Z = JetVectorField::zero(space);
  for (int a = 0; a < space.num_fields(); ++a)
    Z.Q[a] = evolutionary_apply(PX, Y.Q[a], space) - evolutionary_apply(PY, X.Q[a], space);
  for (int mu = 0; mu < space.base_dim(); ++mu)
    for (int nu = 0; nu < space.base_dim(); ++nu)
      Z.v[mu] += X.v[nu] * total_derivative(Y.v[mu], nu, space) - Y.v[nu] * total_derivative(X.v[mu], nu, space);
  return Z;
}

int jet_order_of(const ScalarExpr& e) {
  int k = -1;
  for (const auto& a : e.atoms())
    if (a.is_jet()) k = std::max(k, a.multi.order());
  return k;
}

int jet_order_of(const BigradedForm& f) {
  int k = -1;
  for (const auto& [g, c] : f.terms()) {
    k = std::max(k, jet_order_of(c));
    for (const auto& x : g)
      if (x.vertical) k = std::max(k, x.multi.order());
  }
  return k;
}

std::string ProlongationReport::label() const {
  if (has_vertical && has_horizontal) return "vertical+horizontal";
  if (has_vertical) return "strictly vertical";
  if (has_horizontal) return "strictly horizontal";
  return "zero";
}

ProlongationReport prolongation_check(const JetVectorField& X, const JetSpace& space) {
  X.validate(space);
  ProlongationReport rep;
  rep.has_vertical = X.has_vertical();
  rep.has_horizontal = X.has_horizontal();
  int qorder = 0;
  for (const auto& q : X.Q) qorder = std::max(qorder, jet_order_of(q));
  // Test set: coordinates, jets and contact forms up to the order where the
  // prolongation still fits below the truncation.
  int top = space.jet_order() - qorder - 1;
  if (top < 0) throw JetOrderOverflow("characteristic order leaves no room for a prolongation test set");
  std::vector<BigradedForm> tests;
  for (int mu = 0; mu < space.base_dim(); ++mu) {
    tests.push_back(BigradedForm::scalar(ScalarExpr::base(mu)));
    tests.push_back(BigradedForm::gen(Generator::dx(mu)));
  }
  std::vector<MultiIndex> indices{MultiIndex{}};
  for (int k = 0; k < top; ++k) {
    std::vector<MultiIndex> next;
    for (const auto& I : indices)
      if (I.order() == k)
        for (int mu = 0; mu < space.base_dim(); ++mu) next.push_back(I.plus(mu));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    indices.insert(indices.end(), next.begin(), next.end());
  }
  for (int a = 0; a < space.num_fields(); ++a)
    for (const auto& I : indices) {
      tests.push_back(BigradedForm::scalar(ScalarExpr::field(a, I)));
      tests.push_back(BigradedForm::gen(Generator::delta(a, I)));
      if (space.base_dim() > 0)
        tests.push_back(BigradedForm::term(ScalarExpr::field(a, I), {Generator::delta(a, I), Generator::dx(0)}));
    }
  rep.test_set_size = tests.size();
  Prolongation V(X.vertical_part(), space), H(X.horizontal_part(), space);
  for (const auto& f : tests) {
    if (rep.has_vertical) {
      BigradedForm c = contract(V, d_h(f, space), space) + d_h(contract(V, f, space), space);
      if (!c.is_zero()) rep.vertical_commutes_with_dh = false;
    }
    if (rep.has_horizontal) {
      BigradedForm c = contract(H, d_v(f, space), space) + d_v(contract(H, f, space), space);
      if (!c.is_zero()) rep.horizontal_commutes_with_dv = false;
    }
  }
  return rep;
}

// ---- printing ---------------------------------------------------------------------

std::string generator_text(const Generator& g, const JetSpace& space) {
  if (!g.vertical) return "d(" + space.coords().at(g.index) + ")";
  return "v(" + space.atom_text(Atom::field(g.index, g.multi)) + ")";
}

std::string generator_latex(const Generator& g, const JetSpace& space) {
  if (!g.vertical) return "d" + space.atom_latex(Atom::base(g.index));
  return "\\delta " + space.atom_latex(Atom::field(g.index, g.multi));
}

namespace {

template <class CoefFn, class GenFn>
std::string render_form(const BigradedForm& f, CoefFn coef_text, GenFn gen_text, const std::string& wedge_sym,
                        const std::string& mul_sym, const std::string& lp, const std::string& rp) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<const GenList*, const ScalarExpr*>> order;
  for (const auto& [g, c] : f.terms()) order.push_back({&g, &c});
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return bidegree_of(*x.first).first < bidegree_of(*y.first).first;
  });
  std::string out;
  bool first = true;
  for (const auto& [gp, cp] : order) {
    const GenList& g = *gp;
    const ScalarExpr& c = *cp;
    std::string gens;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k) gens += wedge_sym;
      gens += gen_text(g[k]);
    }
    bool neg = c.terms().begin()->second < 0;
    ScalarExpr a = neg ? -c : c;
    std::string body;
    if (g.empty()) {
      if (c.size() > 1) {
        // A lone 0-form: print the coefficient as is.
        neg = false;
        body = coef_text(c);
        if (!first) body = lp + body + rp;
      } else {
        body = coef_text(a);
      }
    } else if (a.size() == 1 && a.terms().begin()->first.empty() && a.terms().begin()->second == 1) {
      body = gens;
    } else if (a.size() == 1) {
      body = coef_text(a) + mul_sym + gens;
    } else {
      body = lp + coef_text(a) + rp + mul_sym + gens;
    }
    if (first)
      out += neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace

std::string to_text(const BigradedForm& f, const JetSpace& space) {
  return render_form(
      f, [&](const ScalarExpr& c) { return to_text(c, space); },
      [&](const Generator& g) { return generator_text(g, space); }, "^^", "*", "(", ")");
}

std::string to_latex(const BigradedForm& f, const JetSpace& space) {
  return render_form(
      f, [&](const ScalarExpr& c) { return to_latex(c, space); },
      [&](const Generator& g) { return generator_latex(g, space); }, " \\wedge ", " ", "\\left(", "\\right)");
}

std::string to_text(const JetVectorField& X, const JetSpace& space) {
  std::string s = "{";
  bool first = true;
  for (int a = 0; a < static_cast<int>(X.Q.size()); ++a) {
    if (X.Q[a].is_zero()) continue;
    s += (first ? " " : ", ") + space.fields().at(a) + " = " + to_text(X.Q[a], space);
    first = false;
  }
  for (int mu = 0; mu < static_cast<int>(X.v.size()); ++mu) {
    if (X.v[mu].is_zero()) continue;
    s += (first ? " " : ", ") + space.coords().at(mu) + " = " + to_text(X.v[mu], space);
    first = false;
  }
  return s + (first ? "}" : " }");
}

}  // namespace jetreduce
