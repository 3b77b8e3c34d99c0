#include "jetreduce/obstruction.hpp"

#include <algorithm>

namespace jetreduce {

namespace {

void increasing_tuples(int m, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int j = start; j < m; ++j) {
    cur.push_back(j);
    increasing_tuples(m, k, j + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> increasing_tuples(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  increasing_tuples(m, k, 0, cur, out);
  return out;
}

void require_table(const GCochain& c) {
  if (c.is_template()) throw DomainError("double complex operations need global-mode cochains");
}

int sign_of(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

// ---- CochainSum ------------------------------------------------------------------

GCochain CochainSum::part(int arity) const {
  auto it = parts_.find(arity);
  return it == parts_.end() ? GCochain::table(arity) : it->second;
}

void CochainSum::add(const GCochain& c) {
  require_table(c);
  if (c.is_zero()) return;
  auto it = parts_.find(c.arity());
  if (it == parts_.end()) {
    parts_.emplace(c.arity(), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) parts_.erase(it);
}

bool CochainSum::is_zero() const { return parts_.empty(); }

bool CochainSum::vanishes() const {
  for (const auto& [p, c] : parts_)
    for (const auto& [t, v] : c.entries())
      if (!form_vanishes(v)) return false;
  return true;
}

CochainSum& CochainSum::operator+=(const CochainSum& o) {
  for (const auto& [p, c] : o.parts_) add(c);
  return *this;
}

CochainSum& CochainSum::operator-=(const CochainSum& o) {
  for (const auto& [p, c] : o.parts_) add(c * Rational(-1));
  return *this;
}

CochainSum& CochainSum::operator*=(const Rational& c) {
  if (c == 0) {
    parts_.clear();
    return *this;
  }
  for (auto& [p, x] : parts_) x *= c;
  return *this;
}

bool CochainSum::operator==(const CochainSum& o) const { return parts_ == o.parts_; }

// ---- differentials ------------------------------------------------------------------

GCochain d_g(const GCochain& c, const LieAlgebra& g, const JetSpace& space) {
  require_table(c);
  int p = c.arity();
  GCochain out = GCochain::table(p + 1);
  if (c.is_zero()) return out;
  for (const auto& t : increasing_tuples(g.dim(), p + 1)) {
    BigradedForm v;
    for (int j = 0; j <= p; ++j)
      for (int l = j + 1; l <= p; ++l) {
        Element br = g.bracket(g.basis(t[j]), g.basis(t[l]));
        bool zero = std::all_of(br.begin(), br.end(), [](const ScalarExpr& x) { return x.is_zero(); });
        if (zero) continue;
        std::vector<Element> args{br};
        for (int k = 0; k <= p; ++k)
          if (k != j && k != l) args.push_back(g.basis(t[k]));
        BigradedForm x = c.evaluate(args, space);
        v += sign_of(j + l) > 0 ? x : -x;
      }
    if (!v.is_zero()) out.set(t, v);
  }
  return out;
}

GCochain d_X(const GCochain& c, const JetSpace& space) {
  require_table(c);
  GCochain out = GCochain::table(c.arity());
  for (const auto& [t, v] : c.entries()) {
    BigradedForm dv = d_total(v, space);
    out.set(t, c.arity() % 2 == 0 ? dv : -dv);
  }
  return out;
}

CochainSum d_bar(const CochainSum& c, const LieAlgebra& g, const JetSpace& space) {
  CochainSum out;
  for (const auto& [p, x] : c.parts()) {
    out.add(d_g(x, g, space));
    out.add(d_X(x, space));
  }
  return out;
}

// ---- bar maps ------------------------------------------------------------------------

BarMap bar_map(const BigradedForm& beta, const Action& act) {
  if (act.local()) throw DomainError("bar map needs a global-mode action");
  const JetSpace& s = *act.space;
  const LieAlgebra& g = *act.algebra;
  BarMap out;
  int deg = beta.is_zero() ? 0 : beta.degree();
  std::vector<Prolongation> rho;
  for (int k = 0; k < g.dim(); ++k) rho.emplace_back(act.generic(k), s);
  for (int i = 1; i <= deg; ++i) {
    GCochain c = GCochain::table(i);
    for (const auto& t : increasing_tuples(g.dim(), i)) {
      BigradedForm v = beta;
      for (int k = 0; k < i && !v.is_zero(); ++k) v = contract(rho[t[k]], v, s);
      if (!v.is_zero()) c.set(t, v);
    }
    out.components.push_back(c);
    out.total.add(i % 2 == 1 ? c : c * Rational(-1));
  }
  return out;
}

CochainSum mu_bar(const MomentumMap& mu) {
  CochainSum out;
  for (int i = 1; i <= mu.max_arity(); ++i) {
    GCochain c = mu.mu(i);
    if (c.is_zero()) continue;
    // -(-1)^{i(i+1)/2}
    out.add(sign_of(i * (i + 1) / 2) > 0 ? c * Rational(-1) : c);
  }
  return out;
}

std::shared_ptr<MomentumMap> extract_momap(const CochainSum& nu, const ActionPtr& act, int n) {
  auto mu = std::make_shared<MomentumMap>();
  mu->name = "extracted";
  mu->action = act;
  for (int i = 1; i <= n; ++i) {
    GCochain c = nu.part(i);
    mu->components.push_back(sign_of(i * (i + 1) / 2) > 0 ? c * Rational(-1) : c);
  }
  for (const auto& [p, c] : nu.parts())
    if (p < 1 || p > n) throw DomainError("cochain of arity " + std::to_string(p) + " is not a momentum map component");
  return mu;
}

DoubleComplexReport check_double_complex(const Action& act, const BigradedForm& omega, const MomentumMap* mu) {
  if (act.local()) throw DomainError("the double complex check is restricted to global-mode algebras");
  const JetSpace& s = *act.space;
  const LieAlgebra& g = *act.algebra;
  DoubleComplexReport r;
  r.omega_bar = bar_map(omega, act).total;
  r.d_omega_bar = d_bar(r.omega_bar, g, s);
  r.closed = r.d_omega_bar.vanishes();
  r.invariant = true;
  for (int k = 0; k < g.dim(); ++k)
    if (!form_vanishes(lie_derivative(act.generic(k), omega, s))) r.invariant = false;
  if (mu) {
    r.has_momap = true;
    r.primitive_residual = d_bar(mu_bar(*mu), g, s) - r.omega_bar;
    r.primitive = r.primitive_residual.vanishes();
    r.momap_relations = verify_momap(*mu, omega).pass();
  }
  return r;
}

}  // namespace jetreduce
