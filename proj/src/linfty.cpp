#include "jetreduce/linfty.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace jetreduce {

// ---- LieAlgebra ----------------------------------------------------------------

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, bool local)
    : name_(std::move(name)), labels_(std::move(labels)), local_(local) {
  std::size_t m = labels_.size();
  c_.assign(m * m * m, Rational(0));
}

std::optional<int> LieAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void LieAlgebra::set_bracket(int i, int j, const std::vector<Rational>& rhs) {
  int m = dim();
  if (i < 0 || j < 0 || i >= m || j >= m) throw DomainError("bracket index out of range");
  if (static_cast<int>(rhs.size()) != m) throw DomainError("bracket value has the wrong length");
  if (i == j) {
    for (const auto& r : rhs)
      if (r != 0) throw DomainError("[e, e] must vanish");
    return;
  }
  for (int k = 0; k < m; ++k) {
    c_[(k * m + i) * m + j] = rhs[k];
    c_[(k * m + j) * m + i] = -rhs[k];
  }
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

void LieAlgebra::validate() const {
  int m = dim();
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (c(k, i, j) != -c(k, j, i)) throw DomainError("structure constants are not antisymmetric");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        Element sum(m);
        auto acc = [&](int a, int b, int cc) {
          Element x = bracket(bracket(basis(a), basis(b)), basis(cc));
          for (int k = 0; k < m; ++k) sum[k] += x[k];
        };
        acc(i, j, l);
        acc(j, l, i);
        acc(l, i, j);
        for (const auto& x : sum)
          if (!x.is_zero()) throw DomainError("structure constants violate the Jacobi identity");
      }
}

Element LieAlgebra::basis(int i) const {
  Element e(dim());
  e.at(i) = ScalarExpr(1);
  return e;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  int m = dim();
  if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m)
    throw DomainError("element has the wrong number of components");
  Element z(m);
  for (int i = 0; i < m; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < m; ++j) {
      if (y[j].is_zero()) continue;
      ScalarExpr p;
      bool any = false;
      for (int k = 0; k < m; ++k)
        if (c(k, i, j) != 0) any = true;
      if (!any) continue;
      p = x[i] * y[j];
      for (int k = 0; k < m; ++k)
        if (c(k, i, j) != 0) z[k] += p * c(k, i, j);
    }
  }
  return z;
}

Element LieAlgebra::generic(int slot, const JetSpace& space) const {
  if (slot >= space.param_slots()) throw DomainError("not enough parameter slots");
  Element e(dim());
  for (int a = 0; a < dim(); ++a) e[a] = ScalarExpr::param(space.param_index(slot, a));
  return e;
}

bool LieAlgebra::operator==(const LieAlgebra& o) const {
  return name_ == o.name_ && labels_ == o.labels_ && local_ == o.local_ && c_ == o.c_;
}

// ---- GCochain ------------------------------------------------------------------

namespace {

int sort_tuple(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      std::swap(t[j], t[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

GCochain GCochain::table(int arity) {
  GCochain c;
  c.arity_ = arity;
  return c;
}

GCochain GCochain::templ(int arity, BigradedForm body) {
  GCochain c;
  c.arity_ = arity;
  c.template_ = true;
  c.body_ = std::move(body);
  return c;
}

void GCochain::set(std::vector<int> tuple, const BigradedForm& value) {
  if (template_) throw DomainError("cannot set table entries on a template cochain");
  if (static_cast<int>(tuple.size()) != arity_) throw DomainError("tuple length differs from cochain arity");
  int s = sort_tuple(tuple);
  if (s == 0) {
    if (!value.is_zero()) throw DomainError("alternating cochain must vanish on repeated arguments");
    return;
  }
  table_.erase(tuple);
  if (!value.is_zero()) table_.emplace(tuple, s > 0 ? value : -value);
}

void GCochain::add(std::vector<int> tuple, const BigradedForm& value) {
  if (static_cast<int>(tuple.size()) != arity_) throw DomainError("tuple length differs from cochain arity");
  int s = sort_tuple(tuple);
  if (s == 0) return;
  BigradedForm v = table_[tuple];
  v += s > 0 ? value : -value;
  if (v.is_zero())
    table_.erase(tuple);
  else
    table_[tuple] = v;
}

BigradedForm GCochain::at(std::vector<int> tuple) const {
  int s = sort_tuple(tuple);
  if (s == 0) return {};
  auto it = table_.find(tuple);
  if (it == table_.end()) return {};
  return s > 0 ? it->second : -it->second;
}

bool GCochain::is_zero() const { return template_ ? body_.is_zero() : table_.empty(); }

BigradedForm GCochain::evaluate(const std::vector<Element>& args, const JetSpace& space) const {
  if (static_cast<int>(args.size()) != arity_)
    throw DomainError("cochain of arity " + std::to_string(arity_) + " evaluated on " + std::to_string(args.size()) +
                      " arguments");
  BigradedForm r;
  if (template_) {
    if (body_.is_zero()) return r;
    std::vector<int> perm(arity_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> p = perm;
      int s = sort_tuple(p);
      std::vector<std::optional<Element>> slots(arity_);
      for (int k = 0; k < arity_; ++k) slots[k] = args[perm[k]];
      BigradedForm v = substitute_slots(body_, slots, space);
      r += s > 0 ? v : -v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return r * ScalarExpr(make_rational(1, factorial(arity_)));
  }
  if (table_.empty()) return r;
  // Multilinear expansion over distinct basis indices.
  std::vector<int> idx(arity_);
  std::function<void(int, ScalarExpr)> rec = [&](int k, ScalarExpr coef) {
    if (k == arity_) {
      BigradedForm v = at(idx);
      if (!v.is_zero()) r += v * coef;
      return;
    }
    for (int j = 0; j < static_cast<int>(args[k].size()); ++j) {
      if (args[k][j].is_zero()) continue;
      bool used = false;
      for (int l = 0; l < k; ++l) used |= idx[l] == j;
      if (used) continue;
      idx[k] = j;
      rec(k + 1, coef * args[k][j]);
    }
  };
  rec(0, ScalarExpr(1));
  return r;
}

GCochain& GCochain::operator+=(const GCochain& o) {
  if (o.arity_ != arity_ && !o.is_zero() && !is_zero()) throw DomainError("adding cochains of different arity");
  if (is_zero() && !o.is_zero()) {
    arity_ = o.arity_;
    template_ = o.template_;
  }
  if (template_ != o.template_ && !o.is_zero()) throw DomainError("adding table and template cochains");
  if (template_) {
    body_ += o.body_;
  } else {
    for (const auto& [t, v] : o.table_) add(t, v);
  }
  return *this;
}

GCochain& GCochain::operator*=(const Rational& c) {
  if (template_) {
    body_ *= ScalarExpr(c);
  } else {
    std::map<std::vector<int>, BigradedForm> old;
    old.swap(table_);
    if (c != 0)
      for (auto& [t, v] : old) table_.emplace(t, v * ScalarExpr(c));
  }
  return *this;
}

bool GCochain::operator==(const GCochain& o) const {
  if (is_zero() && o.is_zero()) return true;
  return arity_ == o.arity_ && template_ == o.template_ && table_ == o.table_ && body_ == o.body_;
}

// ---- slot substitution -----------------------------------------------------------

ScalarExpr substitute_slots(const ScalarExpr& e, const std::vector<std::optional<Element>>& per_slot,
                            const JetSpace& space) {
  int m = space.param_components();
  if (m == 0) return e;
  std::map<Atom, ScalarExpr> subs;
  for (const auto& a : e.atoms()) {
    if (a.kind != AtomKind::Param) continue;
    int slot = a.index / m, comp = a.index % m;
    if (slot >= static_cast<int>(per_slot.size()) || !per_slot[slot]) continue;
    subs.emplace(a, total_derivative(per_slot[slot]->at(comp), a.multi, space));
  }
  if (subs.empty()) return e;
  return substitute(e, subs);
}

BigradedForm substitute_slots(const BigradedForm& f, const std::vector<std::optional<Element>>& per_slot,
                              const JetSpace& space) {
  return f.map_coefficients([&](const ScalarExpr& c) { return substitute_slots(c, per_slot, space); });
}

// ---- Action ---------------------------------------------------------------------------

std::shared_ptr<JetSpace> extend_with_params(const JetSpace& base, const LieAlgebra& g, int slots) {
  auto s = std::make_shared<JetSpace>(base);
  s->set_params(g.labels(), slots);
  return s;
}

JetVectorField Action::apply(const Element& a) const {
  const JetSpace& s = *space;
  if (static_cast<int>(a.size()) != algebra->dim()) throw DomainError("element has the wrong number of components");
  if (!local()) {
    JetVectorField X = JetVectorField::zero(s);
    for (int k = 0; k < algebra->dim(); ++k)
      if (!a[k].is_zero()) X += basis_fields.at(k) * a[k];
    return X;
  }
  std::vector<std::optional<Element>> slots{a};
  JetVectorField X = local_template;
  for (auto& q : X.Q) q = substitute_slots(q, slots, s);
  for (auto& v : X.v) v = substitute_slots(v, slots, s);
  return X;
}

JetVectorField Action::generic(int k) const {
  if (!local()) return basis_fields.at(k);
  return apply(algebra->generic(k, *space));
}

void Action::validate() const {
  if (!algebra || !theory || !space) throw DomainError("action '" + name + "' is incomplete");
  const JetSpace& s = *space;
  if (!local()) {
    if (static_cast<int>(basis_fields.size()) != algebra->dim())
      throw DomainError("action '" + name + "' must give one vector field per basis element");
    for (const auto& X : basis_fields) {
      X.validate(s);
      for (const auto& q : X.Q)
        if (q.depends_on(AtomKind::Param)) throw DomainError("global action mentions slot parameters");
    }
    return;
  }
  local_template.validate(s);
  int m = s.param_components();
  auto check_linear = [&](const ScalarExpr& e) {
    for (const auto& [mono, c] : e.terms()) {
      int deg = 0;
      for (const auto& f : mono)
        if (f.atom.kind == AtomKind::Param) {
          if (f.atom.index / m != 0) throw DomainError("action template may only use the slot X");
          deg += f.power;
        }
      if (deg != 1) throw DomainError("action template must be linear in the parameter X");
    }
  };
  for (const auto& q : local_template.Q) check_linear(q);
  for (const auto& v : local_template.v) check_linear(v);
}

std::vector<BracketCheck> action_homomorphism_check(const Action& act) {
  const JetSpace& s = *act.space;
  const LieAlgebra& g = *act.algebra;
  std::vector<BracketCheck> out;
  auto run = [&](const Element& a, const Element& b, const std::string& label) {
    BracketCheck bc;
    bc.label = label;
    JetVectorField lhs = bracket(act.apply(a), act.apply(b), s);
    JetVectorField rhs = act.apply(g.bracket(a, b));
    bc.residual = lhs + (-rhs);
    bc.pass = bc.residual == JetVectorField::zero(s);
    out.push_back(bc);
  };
  if (act.local()) {
    run(g.generic(0, s), g.generic(1, s), "[X,Y]");
  } else {
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i + 1; j < g.dim(); ++j)
        run(g.basis(i), g.basis(j), "[" + g.labels()[i] + "," + g.labels()[j] + "]");
  }
  return out;
}

// ---- momentum maps ---------------------------------------------------------------

GCochain MomentumMap::mu(int i) const {
  if (i >= 1 && i <= static_cast<int>(components.size())) return components[i - 1];
  return GCochain::table(i);
}

HamiltonianReport hamiltonian_check(const BigradedForm& alpha, const JetVectorField& chi, const BigradedForm& omega,
                                    const JetSpace& space) {
  HamiltonianReport r;
  r.residual = contract(chi, omega, space) + d_total(alpha, space);
  r.pass = form_vanishes(r.residual);
  return r;
}

int plectic_degree(const BigradedForm& omega) {
  if (omega.is_zero()) throw DomainError("plectic degree of the zero form is undefined");
  return omega.degree() - 1;
}

BigradedForm l_bracket(const std::vector<LInfElement>& xs, const BigradedForm& omega, int n, const JetSpace& space) {
  int k = static_cast<int>(xs.size());
  if (k == 0) throw DomainError("bracket needs at least one argument");
  // L-infinity degree bookkeeping: form degree d sits in degree d - (n - 1).
  std::vector<bool> degree_zero(k, false);
  for (int i = 0; i < k; ++i) {
    const auto& x = xs[i];
    int d = x.form.degree();
    if (d > n - 1) throw DomainError("form of degree " + std::to_string(d) + " is outside the Hamiltonian complex");
    bool top = d == n - 1 || (x.form.is_zero() && x.chi);
    if (top) {
      if (!x.chi) throw DomainError("degree-0 element needs a Hamiltonian vector field");
      if (!hamiltonian_check(x.form, *x.chi, omega, space).pass)
        throw DomainError("unverified Hamiltonian pair");
    }
    degree_zero[i] = top;
  }
  if (k == 1) {
    const auto& x = xs[0];
    if (!x.form.is_zero() && !degree_zero[0]) return d_total(x.form, space);
    return {};
  }
  for (int i = 0; i < k; ++i)
    if (!degree_zero[i]) return {};
  BigradedForm r = omega;
  for (int i = 0; i < k; ++i) r = contract(*xs[i].chi, r, space);
  int e = k * (k + 1) / 2;
  return (e % 2 == 0) ? -r : r;
}

bool MomapReport::pass() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationResult& r) { return r.pass; });
}

std::string wedge_label(const std::vector<int>& tuple, const Action& act) {
  std::string s;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) s += "^";
    s += act.local() ? JetSpace::slot_name(tuple[k]) : act.algebra->labels().at(tuple[k]);
  }
  return s;
}

namespace {

void combinations(int m, int i, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == i) {
    out.push_back(cur);
    return;
  }
  for (int j = start; j < m; ++j) {
    cur.push_back(j);
    combinations(m, i, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MomapReport verify_momap(const MomentumMap& mu, const BigradedForm& omega) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  const LieAlgebra& g = *act.algebra;
  MomapReport rep;
  int n = omega.is_zero() ? s.base_dim() : plectic_degree(omega);
  rep.n = n;
  if (mu.max_arity() > n) throw DomainError("momentum map has components beyond the plectic degree");
  for (int i = 1; i <= mu.max_arity(); ++i) {
    const GCochain& c = mu.components[i - 1];
    if (c.is_zero()) continue;
    if (c.arity() != i) throw DomainError("component mu_" + std::to_string(i) + " has arity " + std::to_string(c.arity()));
    if (c.is_template() != act.local()) throw DomainError("momentum map mode differs from the action mode");
    auto check_degree = [&](const BigradedForm& v) {
      if (!v.is_zero() && v.degree() != n - i)
        throw DomainError("mu_" + std::to_string(i) + " values must have degree " + std::to_string(n - i));
    };
    if (c.is_template())
      check_degree(c.body());
    else
      for (const auto& [t, v] : c.entries()) check_degree(v);
  }
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<std::vector<int>> tuples;
    if (act.local()) {
      if (i > s.param_slots()) throw DomainError("not enough parameter slots for relation " + std::to_string(i));
      std::vector<int> t(i);
      std::iota(t.begin(), t.end(), 0);
      tuples.push_back(t);
    } else {
      std::vector<int> cur;
      combinations(g.dim(), i, 0, cur, tuples);
    }
    GCochain mi = mu.mu(i), mprev = mu.mu(i - 1);
    for (const auto& t : tuples) {
      std::vector<Element> args;
      for (int k : t) args.push_back(act.local() ? g.generic(k, s) : g.basis(k));
      BigradedForm lhs;
      if (i <= n) lhs += d_total(mi.evaluate(args, s), s);
      if (i >= 2 && !mprev.is_zero()) {
        for (int j = 0; j < i; ++j)
          for (int k = j + 1; k < i; ++k) {
            std::vector<Element> rest{g.bracket(args[j], args[k])};
            for (int l = 0; l < i; ++l)
              if (l != j && l != k) rest.push_back(args[l]);
            BigradedForm v = mprev.evaluate(rest, s);
            lhs += ((j + k) % 2 == 0) ? v : -v;
          }
      }
      BigradedForm rhs = omega;
      for (int k = 0; k < i && !rhs.is_zero(); ++k) rhs = contract(act.apply(args[k]), rhs, s);
      int e = i * (i + 1) / 2;
      if (e % 2) rhs = -rhs;
      RelationResult rr;
      rr.i = i;
      rr.tuple = t;
      rr.label = wedge_label(t, act);
      rr.residual = lhs - rhs;
      rr.pass = form_vanishes(rr.residual);
      rep.relations.push_back(std::move(rr));
    }
  }
  return rep;
}

BigradedForm bracket_defect(const MomentumMap& mu, const BigradedForm& omega, const Element& a, const Element& b) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  int n = plectic_degree(omega);
  GCochain m1 = mu.mu(1), m2 = mu.mu(2);
  LInfElement xa{m1.evaluate({a}, s), act.apply(a)};
  LInfElement xb{m1.evaluate({b}, s), act.apply(b)};
  BigradedForm r = l_bracket({xa, xb}, omega, n, s);
  r -= m1.evaluate({act.algebra->bracket(a, b)}, s);
  if (n >= 2) r += d_total(m2.evaluate({a, b}, s), s);
  return r;
}

}  // namespace jetreduce
