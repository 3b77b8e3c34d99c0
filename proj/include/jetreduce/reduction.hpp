#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetreduce/linfty.hpp"

namespace jetreduce {

// Rectangular grid with uniform spacing; values are row-major with the last
// coordinate fastest.
struct Grid {
  std::vector<double> origin;
  std::vector<double> spacing;
  std::vector<int> counts;
  std::vector<std::vector<double>> values;  // one array per field component

  int dim() const { return static_cast<int>(counts.size()); }
  std::size_t size() const;
  std::size_t flat(const std::vector<int>& idx) const;
  std::vector<int> unflat(std::size_t k) const;
  std::vector<double> point(std::size_t k) const;
  double lo(int mu) const { return origin[mu]; }
  double hi(int mu) const { return origin[mu] + spacing[mu] * (counts[mu] - 1); }
};

// A concrete field: closed-form components in the base coordinates, or
// samples on a grid.
struct FieldSample {
  std::string label;
  std::vector<ScalarExpr> closed;
  std::optional<Grid> grid;

  bool is_grid() const { return grid.has_value(); }
  // Throws DomainError on shape mismatch or non-base atoms.
  void validate(const JetSpace& space) const;
};

// Horizontal form sampled on a grid.
using GridForm = std::map<GenList, std::vector<double>>;

// Finite-difference jets of a grid field: second-order central differences,
// second-order one-sided at the boundary.
class GridJets {
 public:
  GridJets(const Grid& grid, const JetSpace& space) : grid_(grid), space_(space) {}
  const std::vector<double>& jet(int a, const MultiIndex& I);
  // d/dx^mu of sampled values.
  std::vector<double> derivative(const std::vector<double>& f, int mu) const;
  std::vector<double> evaluate(const ScalarExpr& e);
  const Grid& grid() const { return grid_; }

 private:
  const Grid& grid_;
  const JetSpace& space_;
  std::map<std::pair<int, MultiIndex>, std::vector<double>> cache_;
};

// Pullback along j^infty phi: terms with contact forms vanish, jets are
// substituted. Closed-form fields only; the result has base-only coefficients.
BigradedForm pullback_form(const BigradedForm& f, const FieldSample& phi, const JetSpace& space);
GridForm pullback_grid(const BigradedForm& f, GridJets& jets);
// Exterior derivative of a sampled form.
GridForm grid_d(const GridForm& f, const GridJets& jets);
double max_abs(const GridForm& f);

struct ConditionResult {
  std::string label;        // basis label, wedge label or generic slots
  bool pass = false;
  double residual = 0;      // numeric max-abs (0 for exact symbolic zero)
  double scale = 0;         // max magnitude of contributing terms
  std::optional<BigradedForm> symbolic;  // closed-form fields
};

struct ZeroLocusReport {
  bool numeric = false;
  double tol = 0;
  std::vector<ConditionResult> cond_i;
  std::vector<ConditionResult> cond_ii;
  bool pass_i() const;
  bool pass_ii() const;
  bool pass() const { return pass_i() && pass_ii(); }
};

// Conditions (i) d((j phi)^* mu_1(a)) = 0 and (ii)
// (j phi)^*(iota_{xi_a} iota_{xi_b} delta gamma) = 0, with xi the vertical part
// of the action. Global algebras run over basis elements and pairs, local
// ones over generic slots. Numeric mode (grid fields) passes a residual
// when it is at most tol times the term scale.
ZeroLocusReport zero_locus_check(const FieldSample& phi, const MomentumMap& mu, const BigradedForm& gamma,
                                 double tol = 1e-6);

// n = 1 cross-check straight from exactness in the augmented complex: the
// pulled-back mu_1 must be constant, mu_1(a) = c(a), with c vanishing on [g, g].
// Closed-form fields and global algebras only.
bool exactness_oracle_n1(const MomentumMap& mu, const FieldSample& phi);

struct SliceSpec {
  int coord = 0;
  double value = 0;
  int coorientation = 1;
  // Closed-form fields with n >= 2: quadrature box on the remaining axes.
  std::vector<double> lo, hi;
  std::vector<int> counts;
};

// Coefficient of iota_{d/dx^k} vol in the pulled-back current, as a function
// on M. Closed-form fields.
ScalarExpr charge_density(const BigradedForm& j, const FieldSample& phi, int k, const JetSpace& space);
// Integral of the pulled-back current over the slice (trapezoid rule).
double charge(const BigradedForm& j, const FieldSample& phi, const SliceSpec& slice, const JetSpace& space);

struct InvarianceOptions {
  double h = 1e-3;
  double tol = 1e-6;
  std::vector<std::vector<double>> points;  // default: a few points on the diagonal
};

struct InvarianceReport {
  bool symbolic_pass = false;
  std::vector<std::pair<std::string, ScalarExpr>> symbolic;  // first variations
  double residual_h = 0;       // max |finite-difference derivative| at step h
  double residual_h2 = 0;      // same at h/2
  double error_h = 0;          // sum of per-monomial errors against the exact variation
  double error_h2 = 0;
  std::optional<double> ratio;  // error_h / error_h2; empty when both sit at the rounding floor
  bool numeric_pass = false;
  bool pass() const { return symbolic_pass && numeric_pass; }
};

// First-order flow phi_s = phi_0 + s xi_c(j phi_0) and the s-derivatives at 0
// of both zero-locus conditions, symbolically and by central differences.
// Requires a closed-form phi_0 in the zero locus and a global algebra.
InvarianceReport invariance_check(const FieldSample& phi0, const Element& c, const MomentumMap& mu,
                                  const BigradedForm& gamma, const InvarianceOptions& opt = {});

}  // namespace jetreduce
