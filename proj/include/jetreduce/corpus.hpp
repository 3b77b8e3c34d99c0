#pragma once

#include <string>
#include <vector>

#include "jetreduce/linfty.hpp"
#include "jetreduce/reduction.hpp"

namespace jetreduce::corpus {

// Potential for the point particle in R^3.
enum class Potential {
  General,    // uninterpreted V(q1, q2, q3)
  Free,       // V = 0
  Harmonic,   // V = 1/2 |q|^2
  Quadratic,  // V = (q1)^2, breaks translation invariance
};

std::shared_ptr<Theory> particle(Potential V = Potential::General, int jet_order = 4);

// Potential energy as an expression in the theory space.
ScalarExpr potential(const Theory& T, Potential V);

// Mechanics symmetries. Rotations use rho(a) = a x q with [e1, e2] = -e3
// (cyclic), the bracket for which a -> a x q is a homomorphism.
std::shared_ptr<LieAlgebra> translations();
std::shared_ptr<LieAlgebra> rotations();
std::shared_ptr<LieAlgebra> time_line();
std::shared_ptr<LieAlgebra> so3_standard();  // [e1, e2] = e3 (cyclic)

std::shared_ptr<Action> translation_action(const std::shared_ptr<Theory>& T);
std::shared_ptr<Action> rotation_action(const std::shared_ptr<Theory>& T);
std::shared_ptr<Action> time_action(const std::shared_ptr<Theory>& T, Potential V);

std::shared_ptr<MomentumMap> translation_momap(const std::shared_ptr<Action>& act);
std::shared_ptr<MomentumMap> rotation_momap(const std::shared_ptr<Action>& act);
std::shared_ptr<MomentumMap> time_momap(const std::shared_ptr<Action>& act, Potential V);

// Chern-Simons theory on R^3 with coordinates x, y, z and fields A<a><mu>
// (e.g. A1x) for a Lie algebra with invariant form kappa = identity.
struct ChernSimons {
  std::shared_ptr<LieAlgebra> algebra;
  std::shared_ptr<Theory> theory;
  std::shared_ptr<Action> gauge;      // local mode
  std::shared_ptr<MomentumMap> momap;  // mu_1, mu_2, mu_3
  // A^alpha as a horizontal 1-form.
  BigradedForm connection(int alpha) const;
  // F^alpha = dA^alpha + 1/2 f^alpha_{beta gamma} A^beta ^ A^gamma.
  BigradedForm curvature(int alpha) const;
};

ChernSimons chern_simons_abelian(int dim = 2, int jet_order = 2);
ChernSimons chern_simons_so3(int jet_order = 2);
ChernSimons chern_simons(std::shared_ptr<LieAlgebra> g, int jet_order);

// Phase space T*R^3 with omega = dq^i ^ dp_i and the angular momentum map
// mu(e_i) = (q x p)_i. The action is rho(a) = (q x a, p x a): with the
// standard so(3) bracket this is the sign for which iota_rho omega = -d mu.
struct PhaseSpace {
  std::shared_ptr<LieAlgebra> algebra;
  std::shared_ptr<Theory> theory;
  std::shared_ptr<Action> action;
  std::shared_ptr<MomentumMap> momap;
};

PhaseSpace phase_space_so3();

// Harmonic oscillator orbit q'' = -q on [0, t1], integrated with RK4 and
// sampled on `samples` uniform points (substeps RK4 steps per sample).
FieldSample harmonic_orbit(const std::vector<double>& q0, const std::vector<double>& v0, double t1, int samples,
                           int substeps = 8);

// Copy of `mu` with component `i` (1-based) of basis entry or template
// negated: the single-sign-flip mutant.
std::shared_ptr<MomentumMap> sign_flipped(const MomentumMap& mu, int i = 1);

}  // namespace jetreduce::corpus
