#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetreduce {

// Randomized invariant suites: "bicomplex" (d_h^2, d_v^2, anticommutation,
// Leibniz rules for wedge and contraction, [iota_prQ, d_h] = 0) and "cochain"
// (d_g^2, d_X^2, anticommutation, d_bar^2).
struct SelftestOptions {
  std::uint64_t seed = 0;
  int forms = 200;             // random forms in the bicomplex suite
  int characteristics = 20;    // random evolutionary fields for [iota, d_h]
  int cochains = 24;           // random cochains in the cochain suite
  std::vector<std::string> suites{"bicomplex", "cochain"};
  std::string fault;           // identity name whose residual gets a spurious term
};

struct IdentityResult {
  std::string suite;
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string residual;  // first nonzero residual, canonical text
  bool pass() const { return failures == 0; }
};

struct SelftestReport {
  std::vector<IdentityResult> identities;
  double seconds = 0;
  bool pass() const;
};

std::vector<std::string> selftest_suites();
std::vector<std::string> selftest_identities();

SelftestReport run_selftest(const SelftestOptions& opt = {});

}  // namespace jetreduce
