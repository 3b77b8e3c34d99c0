#pragma once

#include <optional>
#include <string>

#include "jetreduce/bicomplex.hpp"

namespace jetreduce {

// A Lagrangian field theory L = density * vol, or a bare closed form omega for
// theories given directly by their (pre)symplectic structure.
struct Theory {
  std::string name;
  SpacePtr space;
  std::optional<ScalarExpr> density;
  std::optional<BigradedForm> gamma_override;
  std::optional<BigradedForm> omega_override;

  const JetSpace& jet_space() const { return *space; }
  // Throws DomainError when neither a density nor an omega is given or when
  // the density mentions parameter atoms.
  void validate() const;
};

struct MultisymplecticData {
  BigradedForm lagrangian;  // (0, n)
  BigradedForm el;          // (1, n)
  BigradedForm gamma;       // (1, n-1)
  BigradedForm omega;       // EL + d_v gamma
  BigradedForm lepage;      // L + gamma
};

// E_a(density) = sum_I (-D)_I d density / d u^a_I.
ScalarExpr euler_operator(const ScalarExpr& density, int a, const JetSpace& space);
BigradedForm euler_lagrange_form(const ScalarExpr& density, const JetSpace& space);
BigradedForm euler_lagrange(const Theory& T);

// Integration by parts of a (1, n) form theta = sum P delta u_I ^ vol into
// a source form and a boundary form with theta = source - d_h(boundary).
struct IbpResult {
  BigradedForm source;
  BigradedForm boundary;
};
IbpResult integrate_by_parts(const BigradedForm& theta, const JetSpace& space);

// gamma for the density, verified against delta L = EL - d_h gamma.
BigradedForm boundary_form(const Theory& T);
MultisymplecticData premultisymplectic(const Theory& T);

// alpha in (0, n-1) with d_h alpha = g vol, by the homotopy operator over the
// scaling field. Returns nullopt and sets `why` when not applicable.
std::optional<BigradedForm> horizontal_homotopy(const ScalarExpr& g, const JetSpace& space, std::string* why);

struct NoetherResult {
  bool symmetry = false;      // L_chi L is d_h-exact
  BigradedForm lie_l;         // L_chi L
  BigradedForm euler_image;   // E(L_chi L) delta u ^ vol; zero iff exact
  std::optional<BigradedForm> alpha;
  std::string note;
};

// Requires a strictly vertical field (PreconditionError otherwise). When the
// Lie derivative is exact but the homotopy operator does not apply, `alpha`
// stays empty and `note` says why. `space` overrides the theory space, e.g.
// with the parameter slots of a local action.
NoetherResult is_noether_symmetry(const JetVectorField& chi, const Theory& T, const JetSpace* space = nullptr);

struct CurrentCandidate {
  BigradedForm form;
  bool hamiltonian = false;  // iota_chi omega = -d(form)
  BigradedForm residual;     // iota_chi omega + d(form)
};

struct NoetherCurrent {
  BigradedForm j;  // alpha - iota_chi gamma
  bool conserved = false;
  BigradedForm conservation_residual;  // d_h j - iota_chi EL
  CurrentCandidate plus;   // j
  CurrentCandidate minus;  // -j
};

NoetherCurrent noether_current(const JetVectorField& chi, const BigradedForm& alpha, const MultisymplecticData& data,
                               const JetSpace& space);

struct ManifestReport {
  bool decomposes = false;  // strictly vertical + strictly horizontal parts behave
  bool lepage_invariant = false;
  bool omega_invariant = false;
  BigradedForm lepage_residual;  // L_chi (L + gamma)
  bool manifest() const { return decomposes && lepage_invariant; }
};

ManifestReport is_manifest(const JetVectorField& chi, const MultisymplecticData& data, const JetSpace& space);

}  // namespace jetreduce
