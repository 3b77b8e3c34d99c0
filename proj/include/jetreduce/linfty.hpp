#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetreduce/lft.hpp"

namespace jetreduce {

// Algebra element as components in the declared basis. Global algebras use
// rational components; local algebras use parameter fields (functions on the
// base), including generic elements built from slot parameters.
using Element = std::vector<ScalarExpr>;

class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::string name, std::vector<std::string> labels, bool local = false);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  bool local() const { return local_; }
  std::optional<int> index_of(const std::string& label) const;

  // [e_i, e_j] = sum_k rhs[k] e_k; also sets [e_j, e_i] = -rhs.
  void set_bracket(int i, int j, const std::vector<Rational>& rhs);
  const Rational& c(int k, int i, int j) const { return c_[(k * dim() + i) * dim() + j]; }
  bool is_abelian() const;

  // Antisymmetry and the Jacobi identity; throws DomainError.
  void validate() const;

  Element basis(int i) const;
  Element bracket(const Element& x, const Element& y) const;
  // Generic element of a local algebra in parameter slot `slot`.
  Element generic(int slot, const JetSpace& space) const;

  bool operator==(const LieAlgebra& o) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  bool local_ = false;
  std::vector<Rational> c_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;
using TheoryPtr = std::shared_ptr<const Theory>;

// Alternating multilinear map from the algebra to forms. Global cochains are
// tables over strictly increasing basis tuples. Local cochains are templates
// in the slot parameters X, Y, Z, ...; evaluation alternates the template.
class GCochain {
 public:
  GCochain() = default;
  static GCochain table(int arity);
  static GCochain templ(int arity, BigradedForm body);

  int arity() const { return arity_; }
  bool is_template() const { return template_; }

  // `tuple` in any order; the alternation sign is absorbed. Repeated indices
  // require a zero value.
  void set(std::vector<int> tuple, const BigradedForm& value);
  void add(std::vector<int> tuple, const BigradedForm& value);
  BigradedForm at(std::vector<int> tuple) const;
  const std::map<std::vector<int>, BigradedForm>& entries() const { return table_; }
  const BigradedForm& body() const { return body_; }
  bool is_zero() const;

  BigradedForm evaluate(const std::vector<Element>& args, const JetSpace& space) const;

  GCochain& operator+=(const GCochain& o);
  GCochain& operator*=(const Rational& c);
  friend GCochain operator+(GCochain a, const GCochain& b) { return a += b; }
  friend GCochain operator*(GCochain a, const Rational& c) { return a *= c; }
  bool operator==(const GCochain& o) const;

 private:
  int arity_ = 0;
  bool template_ = false;
  std::map<std::vector<int>, BigradedForm> table_;
  BigradedForm body_;
};

// Replaces slot parameters by the jets of the given elements, simultaneously.
// `per_slot[s]` empty leaves slot s untouched.
BigradedForm substitute_slots(const BigradedForm& f, const std::vector<std::optional<Element>>& per_slot,
                              const JetSpace& space);
ScalarExpr substitute_slots(const ScalarExpr& e, const std::vector<std::optional<Element>>& per_slot,
                            const JetSpace& space);

class Action {
 public:
  std::string name;
  AlgebraPtr algebra;
  TheoryPtr theory;
  SpacePtr space;  // theory space, extended by slot parameters in local mode
  std::vector<JetVectorField> basis_fields;  // global mode
  JetVectorField local_template;              // local mode, written in slot X

  bool local() const { return algebra && algebra->local(); }
  JetVectorField apply(const Element& a) const;
  // rho on a basis element (global) or on the generic element of a slot (local).
  JetVectorField generic(int slot_or_basis) const;
  void validate() const;
};

using ActionPtr = std::shared_ptr<const Action>;

// Jet space for a local action: the theory space plus slot parameters for
// the algebra labels.
std::shared_ptr<JetSpace> extend_with_params(const JetSpace& base, const LieAlgebra& g, int slots);

struct BracketCheck {
  std::string label;
  bool pass = false;
  JetVectorField residual;
};

// rho([a,b]) = [rho(a), rho(b)] on basis pairs or generic slots.
std::vector<BracketCheck> action_homomorphism_check(const Action& act);

struct MomentumMap {
  std::string name;
  ActionPtr action;
  std::vector<GCochain> components;  // components[i-1] is mu_i

  // mu_i, or an empty cochain of arity i.
  GCochain mu(int i) const;
  int max_arity() const { return static_cast<int>(components.size()); }
};

using MomapPtr = std::shared_ptr<const MomentumMap>;

struct HamiltonianReport {
  bool pass = false;
  BigradedForm residual;  // iota_chi omega + d alpha
};

HamiltonianReport hamiltonian_check(const BigradedForm& alpha, const JetVectorField& chi, const BigradedForm& omega,
                                    const JetSpace& space);

// Element of the L-infinity algebra of Hamiltonian forms. Forms of degree
// n-1 (L-infinity degree 0) carry a Hamiltonian vector field.
struct LInfElement {
  BigradedForm form;
  std::optional<JetVectorField> chi;
};

// Multibracket l_k; n is the plectic degree (omega has degree n+1).
BigradedForm l_bracket(const std::vector<LInfElement>& xs, const BigradedForm& omega, int n, const JetSpace& space);

int plectic_degree(const BigradedForm& omega);

struct RelationResult {
  int i = 0;
  std::vector<int> tuple;  // basis indices (global) or slots (local)
  std::string label;       // e.g. "e1^e2" or "X^Y"
  bool pass = false;
  BigradedForm residual;
};

struct MomapReport {
  int n = 0;
  std::vector<RelationResult> relations;
  bool pass() const;
};

MomapReport verify_momap(const MomentumMap& mu, const BigradedForm& omega);

// l_2(mu_1(a), mu_1(b)) - mu_1([a,b]) + d mu_2(a ^ b).
BigradedForm bracket_defect(const MomentumMap& mu, const BigradedForm& omega, const Element& a, const Element& b);

std::string wedge_label(const std::vector<int>& tuple, const Action& act);

}  // namespace jetreduce
