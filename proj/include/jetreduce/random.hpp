#pragma once

#include <cstdint>
#include <random>

#include "jetreduce/bicomplex.hpp"

namespace jetreduce {

struct RandomConfig {
  int max_jet_order = 3;
  int max_terms = 5;
  int max_depth = 6;
  int max_power = 3;
  bool use_functions = true;  // draw function-symbol atoms when declared
};

// Seeded generator of expressions, trees, forms and vector fields over a
// fixed jet space. Deterministic for a given seed.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, const JetSpace& space, RandomConfig cfg = {});

  int uniform(int lo, int hi);
  Rational rational();
  MultiIndex multi_index(int max_order);
  Atom atom();
  Monomial monomial();
  ScalarExpr scalar(int terms = -1);
  ExprTree tree(int depth = -1);
  Generator generator();
  // Homogeneous form of bidegree (p, q); p + q generators per term.
  BigradedForm form(int p, int q, int terms = -1);
  BigradedForm form();
  // Vertical field with polynomial characteristic of jet order <= `order`.
  JetVectorField characteristic(int order = 1);
  // Horizontal field with polynomial coefficients in base coordinates.
  JetVectorField horizontal();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  const JetSpace& space_;
  RandomConfig cfg_;
};

}  // namespace jetreduce
