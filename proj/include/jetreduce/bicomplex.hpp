#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetreduce/jetcore.hpp"

namespace jetreduce {

// Odd generator of the form algebra: dx^mu or the contact form delta u^a_I.
//
// Canonical order: contact forms first (higher jet order first, then field
// index, then multi-index), then dx^mu by coordinate index. With this order
// the familiar normal forms come out as written by hand, e.g.
// delta qdot ^ delta q and delta q ^ dt.
struct Generator {
  bool vertical = false;
  std::uint16_t index = 0;  // field index or coordinate index
  MultiIndex multi;

  static Generator dx(int mu);
  static Generator delta(int a, MultiIndex I = {});

  bool operator<(const Generator& o) const;
  bool operator==(const Generator& o) const = default;
};

using GenList = std::vector<Generator>;

// Sorts `g` into canonical order in place. Returns the permutation sign, or 0
// when a generator repeats.
int canonical_sort(GenList& g);

class BigradedForm {
 public:
  using Terms = std::map<GenList, ScalarExpr>;

  BigradedForm() = default;
  static BigradedForm scalar(const ScalarExpr& c);
  static BigradedForm gen(const Generator& g);
  // `gens` in any order; the permutation sign is absorbed.
  static BigradedForm term(const ScalarExpr& c, GenList gens);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Bidegrees (vertical, horizontal) present.
  std::set<std::pair<int, int>> bidegrees() const;
  // Total degree; throws DomainError on inhomogeneous forms. Zero form has
  // degree -1 by convention here: callers treat it as compatible with any.
  int degree() const;
  bool is_homogeneous() const;
  BigradedForm component(int p, int q) const;
  // Terms without contact forms, i.e. the (0, q) part.
  BigradedForm horizontal_part() const;
  ScalarExpr coefficient(const GenList& sorted) const;

  void add_term(const GenList& sorted, const ScalarExpr& c);
  BigradedForm& operator+=(const BigradedForm& o);
  BigradedForm& operator-=(const BigradedForm& o);
  BigradedForm& operator*=(const ScalarExpr& c);
  friend BigradedForm operator+(BigradedForm a, const BigradedForm& b) { return a += b; }
  friend BigradedForm operator-(BigradedForm a, const BigradedForm& b) { return a -= b; }
  friend BigradedForm operator*(BigradedForm a, const ScalarExpr& c) { return a *= c; }
  friend BigradedForm operator*(const ScalarExpr& c, BigradedForm a) { return a *= c; }
  BigradedForm operator-() const;

  bool operator==(const BigradedForm& o) const { return terms_ == o.terms_; }

  // Applies `fn` to every coefficient.
  template <class Fn>
  BigradedForm map_coefficients(Fn&& fn) const {
    BigradedForm r;
    for (const auto& [g, c] : terms_) r.add_term(g, fn(c));
    return r;
  }

 private:
  Terms terms_;
};

BigradedForm wedge(const BigradedForm& a, const BigradedForm& b);

// Exact zero, with the numeric fallback of `vanishes` on each coefficient.
bool form_vanishes(const BigradedForm& f);

BigradedForm d_h(const BigradedForm& f, const JetSpace& space);
BigradedForm d_v(const BigradedForm& f, const JetSpace& space);
BigradedForm d_total(const BigradedForm& f, const JetSpace& space);

// d_v of a function.
BigradedForm variation(const ScalarExpr& e, const JetSpace& space);
// d_h of a function.
BigradedForm horizontal_differential(const ScalarExpr& e, const JetSpace& space);

BigradedForm volume_form(const JetSpace& space);
// Contraction of the volume form with d/dx^mu.
BigradedForm volume_contraction(int mu, const JetSpace& space);

// pr(Q) + v^mu D_mu. The prolongation is implicit.
struct JetVectorField {
  std::vector<ScalarExpr> Q;  // one per field
  std::vector<ScalarExpr> v;  // one per base coordinate, base-dependent only

  static JetVectorField zero(const JetSpace& space);
  static JetVectorField vertical(std::vector<ScalarExpr> Q, const JetSpace& space);
  static JetVectorField horizontal(std::vector<ScalarExpr> v, const JetSpace& space);

  bool has_vertical() const;
  bool has_horizontal() const;
  JetVectorField vertical_part() const;
  JetVectorField horizontal_part() const;
  // Throws DomainError when shapes mismatch or v depends on field jets.
  void validate(const JetSpace& space) const;

  JetVectorField& operator+=(const JetVectorField& o);
  JetVectorField& operator*=(const ScalarExpr& c);
  friend JetVectorField operator+(JetVectorField a, const JetVectorField& b) { return a += b; }
  friend JetVectorField operator*(JetVectorField a, const ScalarExpr& c) { return a *= c; }
  JetVectorField operator-() const;

  bool operator==(const JetVectorField& o) const = default;
};

// Lazily prolonged characteristic: caches D_I Q^a per (a, I).
class Prolongation {
 public:
  Prolongation(JetVectorField X, const JetSpace& space) : X_(std::move(X)), space_(space) {}
  const ScalarExpr& DQ(int a, const MultiIndex& I) const;
  const JetVectorField& field() const { return X_; }

 private:
  JetVectorField X_;
  const JetSpace& space_;
  mutable std::map<std::pair<int, MultiIndex>, ScalarExpr> cache_;
};

BigradedForm contract(const JetVectorField& X, const BigradedForm& f, const JetSpace& space);
BigradedForm contract(const Prolongation& X, const BigradedForm& f, const JetSpace& space);
BigradedForm lie_derivative(const JetVectorField& X, const BigradedForm& f, const JetSpace& space);

// pr(Q) acting on a function.
ScalarExpr evolutionary_apply(const Prolongation& X, const ScalarExpr& e, const JetSpace& space);
// The full field pr(Q) + v^mu D_mu acting on a function.
ScalarExpr vector_field_apply(const JetVectorField& X, const ScalarExpr& e, const JetSpace& space);
JetVectorField bracket(const JetVectorField& X, const JetVectorField& Y, const JetSpace& space);

struct ProlongationReport {
  bool has_vertical = false;
  bool has_horizontal = false;
  bool vertical_commutes_with_dh = true;    // [iota_prQ, d_h] = 0 on the test set
  bool horizontal_commutes_with_dv = true;  // [iota_vhat, d_v] = 0 on the test set
  std::size_t test_set_size = 0;
  std::string label() const;
};

ProlongationReport prolongation_check(const JetVectorField& X, const JetSpace& space);

// Highest jet order among field and parameter atoms, -1 for none.
int jet_order_of(const ScalarExpr& e);
int jet_order_of(const BigradedForm& f);

std::string generator_text(const Generator& g, const JetSpace& space);
std::string generator_latex(const Generator& g, const JetSpace& space);
std::string to_text(const BigradedForm& f, const JetSpace& space);
std::string to_latex(const BigradedForm& f, const JetSpace& space);
std::string to_text(const JetVectorField& X, const JetSpace& space);

}  // namespace jetreduce
