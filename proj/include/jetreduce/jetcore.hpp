#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetreduce/errors.hpp"
#include "jetreduce/rational.hpp"

namespace jetreduce {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxFunctionDerivative = 12;

// Multi-index over base coordinates. Entries beyond the base dimension stay 0.
// Function atoms reuse the same storage for partial-derivative counts per
// argument.
struct MultiIndex {
  std::array<std::uint8_t, kMaxDim> e{};

  int order() const;
  MultiIndex plus(int mu) const;
  // Derivative index list in ascending coordinate order, e.g. {0,0,1}.
  std::vector<int> sequence() const;
  static MultiIndex from_sequence(const std::vector<int>& seq);

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;
};

enum class AtomKind : std::uint8_t { Base, Field, Param, Function, Sin, Cos, Exp };

// A variable of the polynomial ring: base coordinate, field jet, parameter jet,
// function application or an elementary transcendental of a base coordinate.
struct Atom {
  AtomKind kind = AtomKind::Base;
  std::uint16_t index = 0;
  MultiIndex multi;
  std::int32_t num = 0;  // frequency k = num/den for sin/cos/exp(k x^index)
  std::int32_t den = 1;

  static Atom base(int mu);
  static Atom field(int a, MultiIndex I = {});
  static Atom param(int p, MultiIndex I = {});
  static Atom function(int f, MultiIndex partials = {});

  bool is_jet() const { return kind == AtomKind::Field || kind == AtomKind::Param; }
  bool is_transcendental() const {
    return kind == AtomKind::Sin || kind == AtomKind::Cos || kind == AtomKind::Exp;
  }
  Rational frequency() const { return make_rational(num, den); }

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

struct Factor {
  Atom atom;
  int power = 1;
  auto operator<=>(const Factor&) const = default;
  bool operator==(const Factor&) const = default;
};

// Sorted by atom, nonzero powers, each atom at most once.
using Monomial = std::vector<Factor>;

Monomial monomial_product(const Monomial& a, const Monomial& b);

struct FunctionDecl {
  std::string name;
  std::vector<Atom> args;  // each a base coordinate or field jet
};

// Variable universe of one theory: coordinates, fields, parameter slots,
// uninterpreted functions and the jet truncation order.
class JetSpace {
 public:
  JetSpace() = default;
  JetSpace(std::vector<std::string> coords, std::vector<std::string> fields, int jet_order = 4);

  int base_dim() const { return static_cast<int>(coords_.size()); }
  int num_fields() const { return static_cast<int>(fields_.size()); }
  int jet_order() const { return jet_order_; }
  void set_jet_order(int k) { jet_order_ = k; }

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<std::string>& fields() const { return fields_; }

  // Local symmetry parameters: `labels` are the algebra basis labels, each
  // replicated over `slots` argument slots (X, Y, Z, ...).
  void set_params(std::vector<std::string> labels, int slots);
  int param_components() const { return static_cast<int>(param_labels_.size()); }
  int param_slots() const { return param_slots_; }
  int num_params() const { return param_components() * param_slots_; }
  int param_index(int slot, int component) const { return slot * param_components() + component; }
  const std::vector<std::string>& param_labels() const { return param_labels_; }
  static std::string slot_name(int slot);

  int add_function(std::string name, std::vector<Atom> args);
  const std::vector<FunctionDecl>& functions() const { return functions_; }

  std::optional<int> coord_index(const std::string& name) const;
  std::optional<int> field_index(const std::string& name) const;
  std::optional<int> function_index(const std::string& name) const;

  // Throws JetOrderOverflow when I exceeds the truncation order.
  void check_order(const MultiIndex& I) const;

  std::string jet_suffix(const MultiIndex& I) const;
  std::string atom_text(const Atom& a) const;
  std::string atom_latex(const Atom& a) const;
  // Inverse of atom_text for jets, coordinates and function symbols.
  std::optional<Atom> parse_atom(const std::string& name) const;
  std::optional<MultiIndex> parse_jet_suffix(const std::string& suffix) const;

  bool operator==(const JetSpace& o) const;

 private:
  std::vector<std::string> coords_;
  std::vector<std::string> fields_;
  std::vector<std::string> param_labels_;
  int param_slots_ = 0;
  std::vector<FunctionDecl> functions_;
  int jet_order_ = 4;
};

using SpacePtr = std::shared_ptr<const JetSpace>;

class ScalarExpr {
 public:
  using Terms = std::map<Monomial, Rational>;

  ScalarExpr() = default;
  ScalarExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  ScalarExpr(long c) : ScalarExpr(Rational(c)) {}  // NOLINT
  ScalarExpr(int c) : ScalarExpr(Rational(c)) {}  // NOLINT

  static ScalarExpr atom(const Atom& a, int power = 1);
  static ScalarExpr base(int mu) { return atom(Atom::base(mu)); }
  static ScalarExpr field(int a, MultiIndex I = {}) { return atom(Atom::field(a, I)); }
  static ScalarExpr param(int p, MultiIndex I = {}) { return atom(Atom::param(p, I)); }
  static ScalarExpr function(int f, MultiIndex partials = {}) { return atom(Atom::function(f, partials)); }
  static ScalarExpr sin(int mu, const Rational& k);
  static ScalarExpr cos(int mu, const Rational& k);
  static ScalarExpr exp(int mu, const Rational& k);
  static ScalarExpr monomial(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the empty monomial
  std::size_t size() const { return terms_.size(); }

  std::set<Atom> atoms() const;
  bool depends_on(AtomKind kind) const;
  bool depends_on(const Atom& a) const;
  // Degree in field jets of a monomial (parameters and base atoms excluded).
  static int field_degree(const Monomial& m);

  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const ScalarExpr& o);
  ScalarExpr& operator*=(const Rational& c);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(ScalarExpr a, const Rational& c) { return a *= c; }
  friend ScalarExpr operator*(const Rational& c, ScalarExpr a) { return a *= c; }
  ScalarExpr operator-() const;
  // Integer power; negative exponents only for single-term expressions.
  ScalarExpr pow(int k) const;

  bool operator==(const ScalarExpr& o) const { return terms_ == o.terms_; }
  bool operator<(const ScalarExpr& o) const { return terms_ < o.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  Terms terms_;
};

// ---- raw trees ----------------------------------------------------------

// Unnormalized expression tree as produced by a parser or a random generator.
struct ExprNode;
using ExprTree = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op { Number, Var, Add, Sub, Mul, Neg, Pow, Call };
  Op op = Op::Number;
  Rational value;
  std::string name;  // Var, Call (sin, cos, exp)
  std::vector<ExprTree> kids;
};

ExprTree tree_number(const Rational& v);
ExprTree tree_var(const std::string& name);
ExprTree tree_call(const std::string& fn, ExprTree arg);
ExprTree tree_binary(ExprNode::Op op, ExprTree a, ExprTree b);
ExprTree tree_neg(ExprTree a);
// Canonical tree spelling of a normalized expression.
ExprTree to_tree(const ScalarExpr& e, const JetSpace& space);

// Errors: DomainError on undeclared variables or non-integer exponents.
ScalarExpr normalize(const ExprTree& t, const JetSpace& space);

// ---- calculus ------------------------------------------------------------

// Applies the derivation whose value on each atom is given by `on_atom`.
// Atoms mapping to zero may return std::nullopt to skip work.
ScalarExpr apply_derivation(const ScalarExpr& e,
                            const std::function<std::optional<ScalarExpr>(const Atom&)>& on_atom);

// Formal partial derivative. Function symbols follow the chain rule through
// their arguments; sin/cos/exp follow their base coordinate.
ScalarExpr partial(const ScalarExpr& e, const Atom& v, const JetSpace& space);

ScalarExpr total_derivative(const ScalarExpr& e, int mu, const JetSpace& space);
ScalarExpr total_derivative(const ScalarExpr& e, const MultiIndex& I, const JetSpace& space);

// Simultaneous substitution of atoms. Function applications whose arguments
// are substituted raise DomainError.
ScalarExpr substitute(const ScalarExpr& e, const std::map<Atom, ScalarExpr>& subs);

// Replaces every field jet u^a_I with D_I phi^a, where phi depends on base
// coordinates only.
ScalarExpr substitute_jet(const ScalarExpr& e, const std::vector<ScalarExpr>& phi, const JetSpace& space);

// Numeric evaluation. `value` is consulted for non-transcendental atoms;
// sin/cos/exp are computed from base coordinate values.
double evaluate(const ScalarExpr& e, const std::function<double(const Atom&)>& value);

// Exact zero test with a numeric fallback for expressions containing
// transcendental atoms, whose identities are not simplified symbolically.
bool vanishes(const ScalarExpr& e);

std::string to_text(const ScalarExpr& e, const JetSpace& space);
std::string to_latex(const ScalarExpr& e, const JetSpace& space);

}  // namespace jetreduce
