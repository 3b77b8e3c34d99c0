#include "jetreduce/jetcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace jetreduce {

// ---- MultiIndex / Atom ----------------------------------------------------

int MultiIndex::order() const {
  int s = 0;
  for (auto v : e) s += v;
  return s;
}

MultiIndex MultiIndex::plus(int mu) const {
  MultiIndex r = *this;
  if (r.e[mu] == 255) throw JetOrderOverflow("multi-index entry overflow");
  ++r.e[mu];
  return r;
}

std::vector<int> MultiIndex::sequence() const {
  std::vector<int> s;
  for (int mu = 0; mu < kMaxDim; ++mu)
    for (int k = 0; k < e[mu]; ++k) s.push_back(mu);
  return s;
}

MultiIndex MultiIndex::from_sequence(const std::vector<int>& seq) {
  MultiIndex r;
  for (int mu : seq) r = r.plus(mu);
  return r;
}

Atom Atom::base(int mu) {
  Atom a;
  a.kind = AtomKind::Base;
  a.index = static_cast<std::uint16_t>(mu);
  return a;
}

Atom Atom::field(int idx, MultiIndex I) {
  Atom a;
  a.kind = AtomKind::Field;
  a.index = static_cast<std::uint16_t>(idx);
  a.multi = I;
  return a;
}

Atom Atom::param(int p, MultiIndex I) {
  Atom a;
  a.kind = AtomKind::Param;
  a.index = static_cast<std::uint16_t>(p);
  a.multi = I;
  return a;
}

Atom Atom::function(int f, MultiIndex partials) {
  Atom a;
  a.kind = AtomKind::Function;
  a.index = static_cast<std::uint16_t>(f);
  a.multi = partials;
  return a;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].atom < b[j].atom)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].atom < a[i].atom) {
      r.push_back(b[j++]);
    } else {
      int p = a[i].power + b[j].power;
      if (p != 0) r.push_back({a[i].atom, p});
      ++i;
      ++j;
    }
  }
  return r;
}

// ---- JetSpace ----------------------------------------------------------------

JetSpace::JetSpace(std::vector<std::string> coords, std::vector<std::string> fields, int jet_order)
    : coords_(std::move(coords)), fields_(std::move(fields)), jet_order_(jet_order) {
  if (base_dim() > kMaxDim) throw DomainError("base dimension exceeds " + std::to_string(kMaxDim));
}

void JetSpace::set_params(std::vector<std::string> labels, int slots) {
  param_labels_ = std::move(labels);
  param_slots_ = slots;
}

std::string JetSpace::slot_name(int slot) {
  static const char* names[] = {"X", "Y", "Z", "W", "U", "S", "R", "P"};
  if (slot < 0 || slot >= 8) throw DomainError("parameter slot out of range");
  return names[slot];
}

int JetSpace::add_function(std::string name, std::vector<Atom> args) {
  if (args.size() > static_cast<std::size_t>(kMaxDim))
    throw DomainError("function '" + name + "' has too many arguments");
  if (args.size() > 9) throw DomainError("function '" + name + "' has too many arguments");
  functions_.push_back({std::move(name), std::move(args)});
  return static_cast<int>(functions_.size()) - 1;
}

std::optional<int> JetSpace::coord_index(const std::string& name) const {
  for (int i = 0; i < base_dim(); ++i)
    if (coords_[i] == name) return i;
  return std::nullopt;
}

std::optional<int> JetSpace::field_index(const std::string& name) const {
  for (int i = 0; i < num_fields(); ++i)
    if (fields_[i] == name) return i;
  return std::nullopt;
}

std::optional<int> JetSpace::function_index(const std::string& name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

void JetSpace::check_order(const MultiIndex& I) const {
  if (I.order() > jet_order_)
    throw JetOrderOverflow("derivative of order " + std::to_string(I.order()) +
                           " exceeds jet truncation order " + std::to_string(jet_order_));
}

std::string JetSpace::jet_suffix(const MultiIndex& I) const {
  if (I.order() == 0) return "";
  auto seq = I.sequence();
  if (base_dim() == 1 && coords_[0].size() == 1) return "_" + std::string(seq.size(), coords_[0][0]);
  std::string s = "_d{";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) s += ",";
    s += coords_.at(seq[k]);
  }
  return s + "}";
}

namespace {

std::string frequency_prefix(const Rational& k) {
  if (k == 1) return "";
  if (k == -1) return "-";
  return k.get_str() + "*";
}

// Trailing digits become a superscript: q1 -> q^{1}.
std::string latex_name(const std::string& name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  std::string head = name.substr(0, cut);
  std::string tail = name.substr(cut);
  if (head.size() > 1) head = "\\mathrm{" + head + "}";
  if (tail.empty()) return head;
  return head + "^{" + tail + "}";
}

std::string latex_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

}  // namespace

std::string JetSpace::atom_text(const Atom& a) const {
  switch (a.kind) {
    case AtomKind::Base:
      return coords_.at(a.index);
    case AtomKind::Field:
      return fields_.at(a.index) + jet_suffix(a.multi);
    case AtomKind::Param: {
      int m = param_components();
      if (m == 0) throw DomainError("parameter atom without declared parameters");
      return slot_name(a.index / m) + "." + param_labels_.at(a.index % m) + jet_suffix(a.multi);
    }
    case AtomKind::Function: {
      std::string s = functions_.at(a.index).name;
      if (a.multi.order() > 0) {
        s += "_";
        for (int k : a.multi.sequence()) s += static_cast<char>('1' + k);
      }
      return s;
    }
    case AtomKind::Sin:
    case AtomKind::Cos:
    case AtomKind::Exp: {
      const char* fn = a.kind == AtomKind::Sin ? "sin" : a.kind == AtomKind::Cos ? "cos" : "exp";
      return std::string(fn) + "(" + frequency_prefix(a.frequency()) + coords_.at(a.index) + ")";
    }
  }
  return "?";
}

std::string JetSpace::atom_latex(const Atom& a) const {
  auto jet_latex = [&](const std::string& base, const MultiIndex& I) {
    int k = I.order();
    if (k == 0) return base;
    if (base_dim() == 1) {
      if (k == 1) return "\\dot{" + base + "}";
      if (k == 2) return "\\ddot{" + base + "}";
      if (k == 3) return "\\dddot{" + base + "}";
      return base + "^{(" + std::to_string(k) + ")}";
    }
    std::string s = "{" + base + "}_{,";
    for (int mu : I.sequence()) s += coords_.at(mu);
    return s + "}";
  };
  switch (a.kind) {
    case AtomKind::Base:
      return latex_name(coords_.at(a.index));
    case AtomKind::Field: {
      // Put the jet accent on the letter part only: \dot{q}^{1}.
      const std::string& nm = fields_.at(a.index);
      std::size_t cut = nm.size();
      while (cut > 0 && std::isdigit(static_cast<unsigned char>(nm[cut - 1]))) --cut;
      std::string head = latex_name(nm.substr(0, cut));
      std::string tail = nm.substr(cut);
      std::string j = jet_latex(head, a.multi);
      return tail.empty() ? j : j + "^{" + tail + "}";
    }
    case AtomKind::Param: {
      int m = param_components();
      std::string b = slot_name(a.index / m) + "^{" + latex_name(param_labels_.at(a.index % m)) + "}";
      return jet_latex(b, a.multi);
    }
    case AtomKind::Function: {
      std::string s = latex_name(functions_.at(a.index).name);
      if (a.multi.order() > 0) {
        s = "{" + s + "}_{,";
        for (int k : a.multi.sequence()) s += std::to_string(k + 1);
        s += "}";
      }
      return s;
    }
    case AtomKind::Sin:
    case AtomKind::Cos:
    case AtomKind::Exp: {
      const char* fn = a.kind == AtomKind::Sin ? "\\sin" : a.kind == AtomKind::Cos ? "\\cos" : "\\exp";
      Rational k = a.frequency();
      std::string pre = k == 1 ? "" : k == -1 ? "-" : latex_rational(k) + " ";
      return std::string(fn) + "(" + pre + latex_name(coords_.at(a.index)) + ")";
    }
  }
  return "?";
}

std::optional<MultiIndex> JetSpace::parse_jet_suffix(const std::string& suffix) const {
  MultiIndex I;
  if (suffix.empty()) return I;
  if (suffix.size() >= 3 && suffix[0] == 'd' && suffix[1] == '{' && suffix.back() == '}') {
    std::string body = suffix.substr(2, suffix.size() - 3);
    std::stringstream ss(body);
    std::string item;
    std::vector<int> seq;
    while (std::getline(ss, item, ',')) {
      auto idx = coord_index(item);
      if (!idx) return std::nullopt;
      seq.push_back(*idx);
    }
    if (seq.empty()) return std::nullopt;
    return MultiIndex::from_sequence(seq);
  }
  // Short form u_xxt when every coordinate name is a single letter.
  for (const auto& c : coords_)
    if (c.size() != 1) return std::nullopt;
  std::vector<int> seq;
  for (char ch : suffix) {
    auto idx = coord_index(std::string(1, ch));
    if (!idx) return std::nullopt;
    seq.push_back(*idx);
  }
  return MultiIndex::from_sequence(seq);
}

std::optional<Atom> JetSpace::parse_atom(const std::string& name) const {
  auto us = name.find('_');
  std::string head = name.substr(0, us);
  std::string suffix = us == std::string::npos ? "" : name.substr(us + 1);
  if (us != std::string::npos && suffix.empty()) return std::nullopt;
  auto dot = head.find('.');
  if (dot != std::string::npos) {
    std::string slot = head.substr(0, dot);
    std::string label = head.substr(dot + 1);
    int s = -1;
    for (int k = 0; k < param_slots_; ++k)
      if (slot_name(k) == slot) s = k;
    if (s < 0) return std::nullopt;
    auto it = std::find(param_labels_.begin(), param_labels_.end(), label);
    if (it == param_labels_.end()) return std::nullopt;
    auto I = parse_jet_suffix(suffix);
    if (!I) return std::nullopt;
    return Atom::param(param_index(s, static_cast<int>(it - param_labels_.begin())), *I);
  }
  if (auto c = coord_index(head)) {
    if (!suffix.empty()) return std::nullopt;
    return Atom::base(*c);
  }
  if (auto f = field_index(head)) {
    auto I = parse_jet_suffix(suffix);
    if (!I) return std::nullopt;
    return Atom::field(*f, *I);
  }
  if (auto f = function_index(head)) {
    MultiIndex d;
    int nargs = static_cast<int>(functions_[*f].args.size());
    for (char c : suffix) {
      if (c < '1' || c > '9') return std::nullopt;
      int k = c - '1';
      if (k >= nargs) return std::nullopt;
      d = d.plus(k);
    }
    return Atom::function(*f, d);
  }
  return std::nullopt;
}

bool JetSpace::operator==(const JetSpace& o) const {
  if (coords_ != o.coords_ || fields_ != o.fields_ || param_labels_ != o.param_labels_ ||
      param_slots_ != o.param_slots_ || jet_order_ != o.jet_order_ || functions_.size() != o.functions_.size())
    return false;
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name != o.functions_[i].name || functions_[i].args != o.functions_[i].args) return false;
  return true;
}

// ---- ScalarExpr ----------------------------------------------------------

ScalarExpr::ScalarExpr(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

ScalarExpr ScalarExpr::atom(const Atom& a, int power) {
  ScalarExpr r;
  if (power == 0) return ScalarExpr(1);
  r.terms_.emplace(Monomial{{a, power}}, Rational(1));
  return r;
}

namespace {

Atom transcendental(AtomKind kind, int mu, const Rational& k) {
  Atom a;
  a.kind = kind;
  a.index = static_cast<std::uint16_t>(mu);
  if (!k.get_num().fits_sint_p() || !k.get_den().fits_sint_p())
    throw DomainError("frequency does not fit the supported range");
  a.num = static_cast<std::int32_t>(k.get_num().get_si());
  a.den = static_cast<std::int32_t>(k.get_den().get_si());
  return a;
}

}  // namespace

ScalarExpr ScalarExpr::sin(int mu, const Rational& k) {
  if (k == 0) return ScalarExpr();
  if (k < 0) return -sin(mu, -k);
  return atom(transcendental(AtomKind::Sin, mu, k));
}

ScalarExpr ScalarExpr::cos(int mu, const Rational& k) {
  if (k == 0) return ScalarExpr(1);
  if (k < 0) return cos(mu, -k);
  return atom(transcendental(AtomKind::Cos, mu, k));
}

ScalarExpr ScalarExpr::exp(int mu, const Rational& k) {
  if (k == 0) return ScalarExpr(1);
  return atom(transcendental(AtomKind::Exp, mu, k));
}

ScalarExpr ScalarExpr::monomial(const Monomial& m, const Rational& c) {
  ScalarExpr r;
  r.add_term(m, c);
  return r;
}

bool ScalarExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational ScalarExpr::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<Atom> ScalarExpr::atoms() const {
  std::set<Atom> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m) s.insert(f.atom);
  return s;
}

bool ScalarExpr::depends_on(AtomKind kind) const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m)
      if (f.atom.kind == kind) return true;
  return false;
}

bool ScalarExpr::depends_on(const Atom& a) const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m)
      if (f.atom == a) return true;
  return false;
}

int ScalarExpr::field_degree(const Monomial& m) {
  int d = 0;
  for (const auto& f : m)
    if (f.atom.kind == AtomKind::Field) d += f.power;
  return d;
}

void ScalarExpr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  ScalarExpr r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
  return r;
}

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
  *this = *this * o;
  return *this;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ScalarExpr ScalarExpr::pow(int k) const {
  if (k < 0) {
    if (terms_.size() != 1) throw DomainError("negative power of a non-monomial expression");
    const auto& [m, c] = *terms_.begin();
    Monomial inv = m;
    for (auto& f : inv) f.power = -f.power;
    return monomial(inv, 1 / c).pow(-k);
  }
  ScalarExpr result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

// ---- trees ---------------------------------------------------------------

ExprTree tree_number(const Rational& v) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Number;
  n->value = v;
  return n;
}

ExprTree tree_var(const std::string& name) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Var;
  n->name = name;
  return n;
}

ExprTree tree_call(const std::string& fn, ExprTree arg) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Call;
  n->name = fn;
  n->kids = {std::move(arg)};
  return n;
}

ExprTree tree_binary(ExprNode::Op op, ExprTree a, ExprTree b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

ExprTree tree_neg(ExprTree a) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Neg;
  n->kids = {std::move(a)};
  return n;
}

ExprTree to_tree(const ScalarExpr& e, const JetSpace& space) {
  ExprTree sum;
  for (const auto& [m, c] : e.terms()) {
    ExprTree term = tree_number(c);
    for (const auto& f : m) {
      ExprTree v;
      if (f.atom.is_transcendental()) {
        const char* fn = f.atom.kind == AtomKind::Sin ? "sin" : f.atom.kind == AtomKind::Cos ? "cos" : "exp";
        v = tree_call(fn, tree_binary(ExprNode::Op::Mul, tree_number(f.atom.frequency()),
                                      tree_var(space.coords().at(f.atom.index))));
      } else {
        v = tree_var(space.atom_text(f.atom));
      }
      if (f.power != 1) v = tree_binary(ExprNode::Op::Pow, v, tree_number(f.power));
      term = tree_binary(ExprNode::Op::Mul, term, v);
    }
    sum = sum ? tree_binary(ExprNode::Op::Add, sum, term) : term;
  }
  return sum ? sum : tree_number(0);
}

ScalarExpr normalize(const ExprTree& t, const JetSpace& space) {
  using Op = ExprNode::Op;
  switch (t->op) {
    case Op::Number:
      return ScalarExpr(t->value);
    case Op::Var: {
      auto a = space.parse_atom(t->name);
      if (!a) throw DomainError("undeclared variable '" + t->name + "'");
      if (a->is_jet()) space.check_order(a->multi);
      return ScalarExpr::atom(*a);
    }
    case Op::Add:
      return normalize(t->kids[0], space) + normalize(t->kids[1], space);
    case Op::Sub:
      return normalize(t->kids[0], space) - normalize(t->kids[1], space);
    case Op::Mul:
      return normalize(t->kids[0], space) * normalize(t->kids[1], space);
    case Op::Neg:
      return -normalize(t->kids[0], space);
    case Op::Pow: {
      ScalarExpr ex = normalize(t->kids[1], space);
      if (!ex.is_constant() || !is_integer(ex.constant_value()))
        throw DomainError("non-integer exponent");
      Rational k = ex.constant_value();
      if (!k.get_num().fits_sint_p() || abs(k) > 1000) throw DomainError("exponent out of range");
      return normalize(t->kids[0], space).pow(static_cast<int>(k.get_num().get_si()));
    }
    case Op::Call: {
      ScalarExpr arg = normalize(t->kids[0], space);
      // Argument must be k * x^mu.
      if (arg.size() != 1) throw DomainError(t->name + " argument must be a rational multiple of a coordinate");
      const auto& [m, k] = *arg.terms().begin();
      if (m.size() != 1 || m[0].power != 1 || m[0].atom.kind != AtomKind::Base)
        throw DomainError(t->name + " argument must be a rational multiple of a coordinate");
      int mu = m[0].atom.index;
      if (t->name == "sin") return ScalarExpr::sin(mu, k);
      if (t->name == "cos") return ScalarExpr::cos(mu, k);
      if (t->name == "exp") return ScalarExpr::exp(mu, k);
      throw DomainError("unknown function '" + t->name + "'");
    }
  }
  return {};
}

// ---- calculus -------------------------------------------------------------

ScalarExpr apply_derivation(const ScalarExpr& e,
                            const std::function<std::optional<ScalarExpr>(const Atom&)>& on_atom) {
  std::map<Atom, std::optional<ScalarExpr>> cache;
  ScalarExpr result;
  for (const auto& [m, c] : e.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Atom& a = m[i].atom;
      auto it = cache.find(a);
      if (it == cache.end()) it = cache.emplace(a, on_atom(a)).first;
      if (!it->second || it->second->is_zero()) continue;
      Monomial rest = m;
      int p = rest[i].power;
      if (p == 1)
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      else
        rest[i].power = p - 1;
      result += ScalarExpr::monomial(rest, c * p) * *it->second;
    }
  }
  return result;
}

namespace {

std::optional<ScalarExpr> transcendental_derivative(const Atom& a, int mu) {
  if (a.index != mu) return std::nullopt;
  Rational k = a.frequency();
  switch (a.kind) {
    case AtomKind::Sin:
      return ScalarExpr::cos(mu, k) * k;
    case AtomKind::Cos:
      return ScalarExpr::sin(mu, k) * Rational(-k);
    case AtomKind::Exp:
      return ScalarExpr::exp(mu, k) * k;
    default:
      return std::nullopt;
  }
}

ScalarExpr function_partial(const Atom& f, int arg) {
  MultiIndex d = f.multi.plus(arg);
  if (d.order() > kMaxFunctionDerivative) throw DomainError("function derivative order too high");
  return ScalarExpr::function(f.index, d);
}

}  // namespace

ScalarExpr partial(const ScalarExpr& e, const Atom& v, const JetSpace& space) {
  return apply_derivation(e, [&](const Atom& a) -> std::optional<ScalarExpr> {
    if (a == v) return ScalarExpr(1);
    if (a.kind == AtomKind::Function) {
      const auto& args = space.functions().at(a.index).args;
      ScalarExpr r;
      for (std::size_t k = 0; k < args.size(); ++k)
        if (args[k] == v) r += function_partial(a, static_cast<int>(k));
      return r;
    }
    if (a.is_transcendental() && v.kind == AtomKind::Base) return transcendental_derivative(a, v.index);
    return std::nullopt;
  });
}

namespace {

std::optional<ScalarExpr> total_derivative_atom(const Atom& a, int mu, const JetSpace& space) {
  switch (a.kind) {
    case AtomKind::Base:
      if (a.index == mu) return ScalarExpr(1);
      return std::nullopt;
    case AtomKind::Field:
    case AtomKind::Param: {
      MultiIndex I = a.multi.plus(mu);
      space.check_order(I);
      Atom b = a;
      b.multi = I;
      return ScalarExpr::atom(b);
    }
    case AtomKind::Function: {
      const auto& args = space.functions().at(a.index).args;
      ScalarExpr r;
      for (std::size_t k = 0; k < args.size(); ++k) {
        auto d = total_derivative_atom(args[k], mu, space);
        if (d) r += function_partial(a, static_cast<int>(k)) * *d;
      }
      return r;
    }
    default:
      return transcendental_derivative(a, mu);
  }
}

}  // namespace

ScalarExpr total_derivative(const ScalarExpr& e, int mu, const JetSpace& space) {
  if (mu < 0 || mu >= space.base_dim()) throw DomainError("base index out of range");
  return apply_derivation(e, [&](const Atom& a) { return total_derivative_atom(a, mu, space); });
}

ScalarExpr total_derivative(const ScalarExpr& e, const MultiIndex& I, const JetSpace& space) {
  ScalarExpr r = e;
  for (int mu : I.sequence()) r = total_derivative(r, mu, space);
  return r;
}

ScalarExpr substitute(const ScalarExpr& e, const std::map<Atom, ScalarExpr>& subs) {
  auto touches = [&](const Atom& a) {
    for (const auto& [k, v] : subs)
      if (k.kind == AtomKind::Base && a.is_transcendental() && a.index == k.index) return true;
    return false;
  };
  ScalarExpr result;
  for (const auto& [m, c] : e.terms()) {
    ScalarExpr term(c);
    Monomial kept;
    for (const auto& f : m) {
      auto it = subs.find(f.atom);
      if (it != subs.end()) {
        term *= it->second.pow(f.power);
      } else {
        if (touches(f.atom)) throw DomainError("cannot substitute inside a transcendental function");
        kept.push_back(f);
      }
    }
    result += term * ScalarExpr::monomial(kept, 1);
  }
  return result;
}

ScalarExpr substitute_jet(const ScalarExpr& e, const std::vector<ScalarExpr>& phi, const JetSpace& space) {
  if (static_cast<int>(phi.size()) != space.num_fields())
    throw DomainError("field sample has " + std::to_string(phi.size()) + " components, theory has " +
                      std::to_string(space.num_fields()));
  for (const auto& p : phi)
    for (const auto& a : p.atoms())
      if (a.kind != AtomKind::Base && !a.is_transcendental())
        throw DomainError("closed-form field components may depend on base coordinates only");
  std::map<Atom, ScalarExpr> subs;
  for (const auto& a : e.atoms()) {
    if (a.kind == AtomKind::Function) {
      const auto& args = space.functions().at(a.index).args;
      for (const auto& arg : args)
        if (arg.kind == AtomKind::Field)
          throw DomainError("function '" + space.functions()[a.index].name +
                            "' has no value along a concrete field; give it explicitly");
      continue;
    }
    if (a.kind != AtomKind::Field) continue;
    // D_I of a base-only expression is an ordinary partial derivative; jets
    // of phi are not bounded by the truncation order.
    ScalarExpr d = phi[a.index];
    for (int mu : a.multi.sequence())
      d = apply_derivation(d, [&](const Atom& b) -> std::optional<ScalarExpr> {
        if (b.kind == AtomKind::Base) return b.index == mu ? std::optional<ScalarExpr>(1) : std::nullopt;
        return transcendental_derivative(b, mu);
      });
    subs.emplace(a, d);
  }
  return substitute(e, subs);
}

double evaluate(const ScalarExpr& e, const std::function<double(const Atom&)>& value) {
  std::map<Atom, double> cache;
  auto val = [&](const Atom& a) {
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    double v;
    if (a.is_transcendental()) {
      double x = value(Atom::base(a.index)) * rational_double(a.frequency());
      v = a.kind == AtomKind::Sin ? std::sin(x) : a.kind == AtomKind::Cos ? std::cos(x) : std::exp(x);
    } else {
      v = value(a);
    }
    cache.emplace(a, v);
    return v;
  };
  double s = 0;
  for (const auto& [m, c] : e.terms()) {
    double t = rational_double(c);
    for (const auto& f : m) t *= std::pow(val(f.atom), f.power);
    s += t;
  }
  return s;
}

bool vanishes(const ScalarExpr& e) {
  if (e.is_zero()) return true;
  bool transcendental = false;
  for (const auto& a : e.atoms()) transcendental = transcendental || a.is_transcendental();
  if (!transcendental) return false;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(0.3, 1.7);
  for (int trial = 0; trial < 6; ++trial) {
    std::map<Atom, double> values;
    auto value = [&](const Atom& a) {
      auto it = values.find(a);
      if (it == values.end()) it = values.emplace(a, dist(rng)).first;
      return it->second;
    };
    double sum = 0, scale = 1;
    for (const auto& [m, c] : e.terms()) {
      double t = evaluate(ScalarExpr::monomial(m, c), value);
      sum += t;
      scale = std::max(scale, std::abs(t));
    }
    if (std::abs(sum) > 1e-10 * scale) return false;
  }
  return true;
}

// ---- printing ------------------------------------------------------------

std::string to_text(const ScalarExpr& e, const JetSpace& space) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    bool neg = c < 0;
    Rational a = abs(c);
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string body;
    if (m.empty() || a != 1) body = a.get_str();
    for (const auto& f : m) {
      if (!body.empty()) body += "*";
      body += space.atom_text(f.atom);
      if (f.power != 1) body += "^" + std::to_string(f.power);
    }
    s += body;
  }
  return s;
}

std::string to_latex(const ScalarExpr& e, const JetSpace& space) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    bool neg = c < 0;
    Rational a = abs(c);
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string body;
    if (m.empty() || a != 1) body = latex_rational(a);
    for (const auto& f : m) {
      if (!body.empty()) body += " ";
      std::string at = space.atom_latex(f.atom);
      if (f.power != 1) at = "{" + at + "}^{" + std::to_string(f.power) + "}";
      body += at;
    }
    s += body;
  }
  return s;
}

}  // namespace jetreduce
