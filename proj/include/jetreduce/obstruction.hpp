#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetreduce/linfty.hpp"

namespace jetreduce {

// Formal sum of table cochains in the double complex, keyed by arity.
// Global-mode algebras only.
class CochainSum {
 public:
  CochainSum() = default;

  const std::map<int, GCochain>& parts() const { return parts_; }
  GCochain part(int arity) const;
  void add(const GCochain& c);
  bool is_zero() const;
  // Zero test with the numeric fallback for transcendental coefficients.
  bool vanishes() const;

  CochainSum& operator+=(const CochainSum& o);
  CochainSum& operator-=(const CochainSum& o);
  CochainSum& operator*=(const Rational& c);
  friend CochainSum operator+(CochainSum a, const CochainSum& b) { return a += b; }
  friend CochainSum operator-(CochainSum a, const CochainSum& b) { return a -= b; }
  friend CochainSum operator*(CochainSum a, const Rational& c) { return a *= c; }
  bool operator==(const CochainSum& o) const;

 private:
  std::map<int, GCochain> parts_;
};

// (d_g c)(a_0, ..., a_p) = c(delta_CE(a_0 ^ ... ^ a_p)) with
// delta_CE(a_1 ^ ... ^ a_k) = sum_{j<l} (-1)^{j+l} [a_j, a_l] ^ (rest).
GCochain d_g(const GCochain& c, const LieAlgebra& g, const JetSpace& space);
// (d_X c) = (-1)^p d o c with d = d_h + d_v.
GCochain d_X(const GCochain& c, const JetSpace& space);
CochainSum d_bar(const CochainSum& c, const LieAlgebra& g, const JetSpace& space);

struct BarMap {
  std::vector<GCochain> components;  // components[i-1](a_1..a_i) = iota_{rho(a_i)}...iota_{rho(a_1)} beta
  CochainSum total;                  // sum (-1)^{i-1} beta_i
};

BarMap bar_map(const BigradedForm& beta, const Action& act);

// mu_bar = sum -(-1)^{i(i+1)/2} mu_i.
CochainSum mu_bar(const MomentumMap& mu);
// Inverse of mu_bar: mu_i = -(-1)^{i(i+1)/2} nu^(i, n-i).
std::shared_ptr<MomentumMap> extract_momap(const CochainSum& nu, const ActionPtr& act, int n);

struct DoubleComplexReport {
  CochainSum omega_bar;
  CochainSum d_omega_bar;
  bool closed = false;  // d_bar omega_bar = 0
  bool invariant = false;  // L_rho(a) omega = 0 for every basis element
  // With a momentum map:
  bool has_momap = false;
  CochainSum primitive_residual;  // d_bar mu_bar - omega_bar
  bool primitive = false;
  bool momap_relations = false;  // verify_momap verdict
  bool agrees() const { return !has_momap || primitive == momap_relations; }
};

// Throws DomainError for local-mode actions.
DoubleComplexReport check_double_complex(const Action& act, const BigradedForm& omega, const MomentumMap* mu = nullptr);

}  // namespace jetreduce
