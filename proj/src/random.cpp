#include "jetreduce/random.hpp"

#include <algorithm>

namespace jetreduce {

RandomSource::RandomSource(std::uint64_t seed, const JetSpace& space, RandomConfig cfg)
    : rng_(seed), space_(space), cfg_(cfg) {}

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational RandomSource::rational() {
  int num = uniform(-6, 6);
  if (num == 0) num = 1;
  int den = uniform(1, 4);
  return make_rational(num, den);
}

MultiIndex RandomSource::multi_index(int max_order) {
  int n = space_.base_dim();
  MultiIndex I;
  if (n == 0) return I;
  int k = uniform(0, std::min(max_order, space_.jet_order()));
  for (int i = 0; i < k; ++i) I = I.plus(uniform(0, n - 1));
  return I;
}

Atom RandomSource::atom() {
  int n = space_.base_dim();
  int nf = space_.num_fields();
  int nfun = cfg_.use_functions ? static_cast<int>(space_.functions().size()) : 0;
  int choice = uniform(0, 9);
  if (choice == 0 && n > 0) return Atom::base(uniform(0, n - 1));
  if (choice == 1 && nfun > 0) return Atom::function(uniform(0, nfun - 1));
  if (nf > 0) return Atom::field(uniform(0, nf - 1), multi_index(cfg_.max_jet_order));
  if (n > 0) return Atom::base(uniform(0, n - 1));
  throw DomainError("jet space has no variables");
}

Monomial RandomSource::monomial() {
  int k = uniform(0, 3);
  ScalarExpr e(1);
  for (int i = 0; i < k; ++i) e *= ScalarExpr::atom(atom(), uniform(1, cfg_.max_power));
  return e.terms().begin()->first;
}

ScalarExpr RandomSource::scalar(int terms) {
  if (terms < 0) terms = uniform(1, cfg_.max_terms);
  ScalarExpr e;
  for (int i = 0; i < terms; ++i) e.add_term(monomial(), rational());
  return e;
}

ExprTree RandomSource::tree(int depth) {
  if (depth < 0) depth = cfg_.max_depth;
  using Op = ExprNode::Op;
  if (depth == 0 || uniform(0, 3) == 0) {
    if (uniform(0, 2) == 0) return tree_number(rational());
    return tree_var(space_.atom_text(atom()));
  }
  switch (uniform(0, 4)) {
    case 0:
      return tree_binary(Op::Add, tree(depth - 1), tree(depth - 1));
    case 1:
      return tree_binary(Op::Sub, tree(depth - 1), tree(depth - 1));
    case 2:
      return tree_binary(Op::Mul, tree(depth - 1), tree(depth - 1));
    case 3:
      return tree_neg(tree(depth - 1));
    default:
      // Keep powers of compound trees small so normalization stays cheap.
      return tree_binary(Op::Pow, tree(std::min(depth - 1, 2)), tree_number(uniform(0, 2)));
  }
}

Generator RandomSource::generator() {
  int n = space_.base_dim();
  if (n > 0 && uniform(0, 2) == 0) return Generator::dx(uniform(0, n - 1));
  MultiIndex I = multi_index(cfg_.max_jet_order);
  return Generator::delta(uniform(0, space_.num_fields() - 1), I);
}

BigradedForm RandomSource::form(int p, int q, int terms) {
  if (terms < 0) terms = uniform(1, cfg_.max_terms);
  int n = space_.base_dim();
  if (q > n) throw DomainError("horizontal degree exceeds base dimension");
  BigradedForm f;
  for (int t = 0; t < terms; ++t) {
    GenList g;
    for (int i = 0; i < p; ++i) g.push_back(Generator::delta(uniform(0, space_.num_fields() - 1),
                                                            multi_index(cfg_.max_jet_order)));
    std::vector<int> coords(n);
    for (int mu = 0; mu < n; ++mu) coords[mu] = mu;
    std::shuffle(coords.begin(), coords.end(), rng_);
    for (int i = 0; i < q; ++i) g.push_back(Generator::dx(coords[i]));
    f += BigradedForm::term(scalar(), g);
  }
  return f;
}

BigradedForm RandomSource::form() {
  int n = space_.base_dim();
  return form(uniform(0, 2), uniform(0, n));
}

JetVectorField RandomSource::characteristic(int order) {
  RandomConfig saved = cfg_;
  cfg_.max_jet_order = order;
  cfg_.max_terms = 3;
  cfg_.max_power = 2;
  JetVectorField X = JetVectorField::zero(space_);
  for (auto& q : X.Q) q = scalar();
  cfg_ = saved;
  return X;
}

JetVectorField RandomSource::horizontal() {
  JetVectorField X = JetVectorField::zero(space_);
  for (int mu = 0; mu < space_.base_dim(); ++mu) {
    ScalarExpr e;
    int terms = uniform(1, 2);
    for (int i = 0; i < terms; ++i)
      e += ScalarExpr(rational()) * ScalarExpr::base(uniform(0, space_.base_dim() - 1)).pow(uniform(0, 2));
    X.v[mu] = e;
  }
  return X;
}

}  // namespace jetreduce
