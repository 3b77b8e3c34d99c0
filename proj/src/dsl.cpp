#include "jetreduce/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include "jetreduce/random.hpp"

namespace jetreduce::dsl {

const char* to_string(DiagKind k) {
  switch (k) {
    case DiagKind::Lexical: return "lexical";
    case DiagKind::Syntax: return "syntax";
    case DiagKind::Resolution: return "resolution";
    case DiagKind::Arity: return "arity";
    case DiagKind::Degree: return "degree";
    case DiagKind::Domain: return "domain";
  }
  return "?";
}

std::string Diagnostic::render(const std::string& source, const std::string& origin) const {
  std::ostringstream os;
  os << origin << ":" << span.line << ":" << span.col << ": " << to_string(kind) << " error: " << message;
  if (!unexpected.empty()) os << " (found '" << unexpected << "')";
  if (!expected.empty()) {
    os << "; expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) os << (k ? ", " : "") << expected[k];
  }
  os << "\n";
  std::size_t start = std::min(span.offset, source.size());
  while (start > 0 && source[start - 1] != '\n') --start;
  std::size_t end = source.find('\n', start);
  if (end == std::string::npos) end = source.size();
  os << "  " << source.substr(start, end - start) << "\n  "
     << std::string(static_cast<std::size_t>(std::max(0, span.col - 1)), ' ') << "^"
     << std::string(span.length > 1 ? std::min<std::size_t>(span.length - 1, end - start) : 0, '~') << "\n";
  return os.str();
}

// ---- lexer -------------------------------------------------------------------------------

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return t.text;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.'; }

std::vector<Token> lex(const std::string& src, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* puncts[] = {"^^", "->", "{", "}", "[", "]", "(", ")", ";", ":", ",", "=", "+", "-", "*", "/", "^"};
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.span = {line, col, i, 0};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      // Jet suffix _d{x,y}.
      if (j + 1 < src.size() && j >= 2 && src[j - 1] == 'd' && src[j - 2] == '_' && src[j] == '{') {
        std::size_t k = src.find('}', j);
        bool ok = k != std::string::npos;
        for (std::size_t m = j + 1; ok && m < k; ++m) ok = ident_char(src[m]) || src[m] == ',';
        if (!ok) {
          Diagnostic d{DiagKind::Lexical, {line, col + static_cast<int>(j - i), j, 1}, "unterminated jet suffix", "{", {"}"}};
          diags.push_back(d);
          advance(j - i + 1);
          continue;
        }
        j = k + 1;
      }
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      if (j < src.size() && ident_start(src[j])) {
        std::size_t k = j;
        while (k < src.size() && ident_char(src[k])) ++k;
        diags.push_back({DiagKind::Lexical, {line, col, i, k - i}, "malformed number", src.substr(i, k - i), {}});
        advance(k - i);
        continue;
      }
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
    } else {
      const char* hit = nullptr;
      for (const char* p : puncts)
        if (src.compare(i, std::char_traits<char>::length(p), p) == 0) {
          hit = p;
          break;
        }
      if (!hit) {
        std::size_t len = 1;
        unsigned char u = static_cast<unsigned char>(c);
        if (u >= 0x80) {
          while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80) ++len;
        }
        diags.push_back({DiagKind::Lexical, {line, col, i, len}, "unexpected character", src.substr(i, len), {}});
        advance(len);
        continue;
      }
      t.kind = Tok::Punct;
      t.text = hit;
    }
    t.span.length = t.text.size();
    advance(t.text.size());
    out.push_back(t);
  }
  Token end;
  end.kind = Tok::End;
  end.span = {line, col, src.size(), 0};
  out.push_back(end);
  return out;
}

Rational decimal_rational(const std::string& s) {
  std::string mant = s;
  long exp10 = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = std::stol(s.substr(e + 1));
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  mpz_class num(mant, 10), den(1);
  mpz_class ten(10);
  if (exp10 > 400 || exp10 < -400) throw DomainError("exponent out of range");
  for (long k = 0; k < std::labs(exp10); ++k) (exp10 > 0 ? num : den) *= ten;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---- parser ---------------------------------------------------------------------------------

struct Fail {
  Diagnostic diag;
};

const std::set<std::string>& top_keywords() {
  static const std::set<std::string> k{"theory", "algebra", "action", "momap", "field", "check"};
  return k;
}

struct CheckSchema {
  std::vector<DeclKind> args;  // DeclKind::Check marks a basis label, Field for fields
  bool variadic_fields = false;
  bool trailing_number = false;
};

const std::map<std::string, CheckSchema>& check_schemas() {
  static const std::map<std::string, CheckSchema> m{
      {"el", {{DeclKind::Theory}}},
      {"symmetry", {{DeclKind::Action}}},
      {"momap", {{DeclKind::Momap}}},
      {"zero_locus", {{DeclKind::Momap}, true}},
      {"invariance", {{DeclKind::Momap, DeclKind::Field, DeclKind::Check}}},
      {"charge", {{DeclKind::Momap, DeclKind::Check, DeclKind::Field}, false, true}},
  };
  return m;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseOptions opt) : toks_(std::move(toks)), opt_(opt) {}

  ParseResult run() {
    while (peek().kind != Tok::End) {
      std::size_t before = pos_;
      try {
        declaration();
      } catch (const Fail& f) {
        diags_.push_back(f.diag);
        recover(before);
      }
    }
    ParseResult r;
    r.doc = std::move(doc_);
    r.diagnostics = std::move(diags_);
    return r;
  }

 private:
  std::vector<Token> toks_;
  ParseOptions opt_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Document doc_;
  std::vector<Diagnostic> diags_;
  std::set<std::string> names_;

  const Token& peek(int k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind == Tok::Punct && t.text == "{") ++depth_;
    if (t.kind == Tok::Punct && t.text == "}") --depth_;
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_punct(const char* p, int k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }
  bool is_word(const char* w, int k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == w; }

  [[noreturn]] void fail(DiagKind kind, const Span& span, std::string msg, std::string unexpected = "",
                         std::vector<std::string> expected = {}) {
    throw Fail{{kind, span, std::move(msg), std::move(unexpected), std::move(expected)}};
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected, const std::string& what = "unexpected token") {
    fail(DiagKind::Syntax, peek().span, what, describe(peek()), std::move(expected));
  }

  const Token& expect_punct(const char* p) {
    if (!is_punct(p)) unexpected({std::string("'") + p + "'"});
    return next();
  }
  const Token& expect_word(const char* w) {
    if (!is_word(w)) unexpected({std::string("'") + w + "'"});
    return next();
  }
  const Token& expect_ident(const char* what = "identifier") {
    if (peek().kind != Tok::Ident) unexpected({what});
    return next();
  }
  int expect_int(const char* what = "integer") {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Number || peek().text.find_first_of(".eE") != std::string::npos) unexpected({what});
    const Token& t = next();
    if (t.text.size() > 6) fail(DiagKind::Domain, t.span, "integer out of range", t.text);
    int v = std::stoi(t.text);
    return neg ? -v : v;
  }
  double expect_double() {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Number) unexpected({"number"});
    const Token& t = next();
    double v = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc()) fail(DiagKind::Domain, t.span, "number out of range", t.text);
    return neg ? -v : v;
  }

  void recover(std::size_t before) {
    if (pos_ == before) next();
    while (peek().kind != Tok::End) {
      if (depth_ <= 0 && peek().kind == Tok::Ident && top_keywords().count(peek().text) &&
          (pos_ == 0 || toks_[pos_ - 1].text == "}" || toks_[pos_ - 1].text == ";")) {
        depth_ = 0;
        return;
      }
      next();
    }
    depth_ = 0;
  }

  void declare(const Token& name) {
    if (!names_.insert(name.text).second)
      fail(DiagKind::Resolution, name.span, "duplicate declaration '" + name.text + "'", name.text);
  }

  void declaration() {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident || !top_keywords().count(kw.text))
      unexpected({"'theory'", "'algebra'", "'action'", "'momap'", "'field'", "'check'"}, "expected a declaration");
    if (kw.text == "theory") return theory();
    if (kw.text == "algebra") return algebra();
    if (kw.text == "action") return action();
    if (kw.text == "momap") return momap();
    if (kw.text == "field") return field();
    return check();
  }

  // -- expressions --

  struct Ctx {
    const JetSpace* space;
  };

  BigradedForm sum(const Ctx& c) {
    BigradedForm acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (is_punct("+") || is_punct("-")) {
        sign = next().text == "-" ? -1 : 1;
      } else if (!first) {
        break;
      }
      BigradedForm t = term(c);
      acc += sign > 0 ? t : -t;
      first = false;
      if (!is_punct("+") && !is_punct("-")) break;
    }
    return acc;
  }

  BigradedForm term(const Ctx& c) {
    BigradedForm v = unary(c);
    while (is_punct("*") || is_punct("^^") || is_punct("/")) {
      const Token& op = next();
      Span at = peek().span;
      BigradedForm r = unary(c);
      if (op.text == "/") {
        if (!r.is_zero() && r.degree() == 0) {
          ScalarExpr s = r.coefficient({});
          if (s.is_constant() && s.constant_value() != 0) {
            v = v * ScalarExpr(Rational(1) / s.constant_value());
            continue;
          }
        }
        fail(DiagKind::Domain, at, "division is only by nonzero rational constants");
      }
      v = wedge(v, r);
    }
    return v;
  }

  BigradedForm unary(const Ctx& c) {
    if (is_punct("-")) {
      next();
      return -unary(c);
    }
    if (is_punct("+")) {
      next();
      return unary(c);
    }
    return power(c);
  }

  BigradedForm power(const Ctx& c) {
    Span start = peek().span;
    BigradedForm b = primary(c);
    if (!is_punct("^")) return b;
    const Token& caret = next();
    if (peek().kind != Tok::Number || peek().text.find_first_of(".eE") != std::string::npos)
      fail(DiagKind::Syntax, caret.span, "malformed power: expected an integer exponent after '^'", describe(peek()),
           {"integer"});
    const Token& e = next();
    if (e.text.size() > 3) fail(DiagKind::Domain, e.span, "exponent too large", e.text);
    int k = std::stoi(e.text);
    if (!b.is_zero() && b.degree() != 0) fail(DiagKind::Degree, start, "only functions can be raised to a power");
    return BigradedForm::scalar(b.coefficient({}).pow(k));
  }

  Atom resolve_atom(const Token& t, const Ctx& c) {
    auto a = c.space->parse_atom(t.text);
    if (!a) fail(DiagKind::Resolution, t.span, "unknown identifier '" + t.text + "'", t.text);
    if (a->is_jet()) {
      try {
        c.space->check_order(a->multi);
      } catch (const JetOrderOverflow& e) {
        fail(DiagKind::Domain, t.span, e.what(), t.text);
      }
    }
    return *a;
  }

  BigradedForm primary(const Ctx& c) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return BigradedForm::scalar(ScalarExpr(decimal_rational(t.text)));
    }
    if (is_punct("(")) {
      next();
      BigradedForm v = sum(c);
      expect_punct(")");
      return v;
    }
    if (t.kind != Tok::Ident) unexpected({"number", "identifier", "'('"}, "expected an expression");
    const Token& id = next();
    if (is_punct("(") && (id.text == "d" || id.text == "v")) {
      next();
      const Token& arg = expect_ident(id.text == "d" ? "coordinate" : "field jet");
      expect_punct(")");
      if (id.text == "d") {
        auto mu = c.space->coord_index(arg.text);
        if (!mu) fail(DiagKind::Resolution, arg.span, "unknown coordinate '" + arg.text + "'", arg.text);
        return BigradedForm::gen(Generator::dx(*mu));
      }
      Atom a = resolve_atom(arg, c);
      if (a.kind != AtomKind::Field) fail(DiagKind::Resolution, arg.span, "v(...) needs a field jet", arg.text);
      return BigradedForm::gen(Generator::delta(a.index, a.multi));
    }
    if (is_punct("(") && (id.text == "sin" || id.text == "cos" || id.text == "exp")) {
      next();
      Span at = peek().span;
      BigradedForm arg = sum(c);
      expect_punct(")");
      // k * x^mu
      bool ok = !arg.is_zero() && arg.degree() == 0;
      int mu = -1;
      Rational k;
      if (ok) {
        ScalarExpr s = arg.coefficient({});
        ok = s.size() == 1;
        if (ok) {
          const auto& [mono, coef] = *s.terms().begin();
          ok = mono.size() == 1 && mono[0].atom.kind == AtomKind::Base && mono[0].power == 1;
          if (ok) {
            mu = mono[0].atom.index;
            k = coef;
          }
        }
      }
      if (!ok) fail(DiagKind::Domain, at, id.text + " takes a rational multiple of one base coordinate");
      ScalarExpr r = id.text == "sin" ? ScalarExpr::sin(mu, k) : id.text == "cos" ? ScalarExpr::cos(mu, k) : ScalarExpr::exp(mu, k);
      return BigradedForm::scalar(r);
    }
    return BigradedForm::scalar(ScalarExpr::atom(resolve_atom(id, c)));
  }

  ScalarExpr scalar_expr(const Ctx& c) {
    Span at = peek().span;
    BigradedForm f = sum(c);
    if (!f.is_zero() && f.degree() != 0) fail(DiagKind::Degree, at, "expected a function, found a form of degree " +
                                                                        std::to_string(f.degree()));
    return f.coefficient({});
  }

  // Homogeneous total degree check; returns -1 for the zero form.
  int form_degree(const BigradedForm& f, const Span& at) {
    int deg = -1;
    for (const auto& [g, c] : f.terms()) {
      int d = static_cast<int>(g.size());
      if (deg >= 0 && d != deg) fail(DiagKind::Degree, at, "form is not homogeneous in degree");
      deg = d;
    }
    return deg;
  }

  std::vector<std::string> name_list(const char* close) {
    std::vector<std::string> out;
    if (is_punct(close)) return out;
    out.push_back(expect_ident().text);
    while (is_punct(",")) {
      next();
      out.push_back(expect_ident().text);
    }
    return out;
  }

  template <class T>
  static std::shared_ptr<T> find(const std::vector<std::shared_ptr<T>>& v, const std::string& name) {
    for (const auto& x : v)
      if (x->name == name) return x;
    return nullptr;
  }

  // -- theory --

  void theory() {
    next();
    const Token& name = expect_ident("theory name");
    declare(name);
    expect_punct("{");
    auto T = std::make_shared<Theory>();
    T->name = name.text;
    std::optional<std::vector<std::string>> coords, fields;
    std::vector<std::pair<std::string, std::vector<Token>>> fns;
    int jet_order = 4;
    std::shared_ptr<JetSpace> space;
    auto build_space = [&](const Token& at) {
      if (space) return;
      if (!coords) fail(DiagKind::Syntax, at.span, "theory needs 'base' before expressions", at.text, {"'base'"});
      if (!fields) fail(DiagKind::Syntax, at.span, "theory needs 'fields' before expressions", at.text, {"'fields'"});
      space = std::make_shared<JetSpace>(*coords, *fields, opt_.jet_order.value_or(jet_order));
      for (const auto& [fname, args] : fns) {
        std::vector<Atom> atoms;
        for (const auto& a : args) {
          if (auto f = space->field_index(a.text))
            atoms.push_back(Atom::field(*f));
          else if (auto mu = space->coord_index(a.text))
            atoms.push_back(Atom::base(*mu));
          else
            fail(DiagKind::Resolution, a.span, "unknown function argument '" + a.text + "'", a.text);
        }
        space->add_function(fname, atoms);
      }
    };
    std::set<std::string> seen;
    while (!is_punct("}")) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident)
        unexpected({"'base'", "'fields'", "'functions'", "'jet_order'", "'lagrangian'", "'gamma'", "'omega'", "'}'"});
      if (!seen.insert(kw.text).second) fail(DiagKind::Syntax, kw.span, "repeated item '" + kw.text + "'", kw.text);
      bool header = kw.text == "base" || kw.text == "fields" || kw.text == "functions" || kw.text == "jet_order";
      if (header && space) fail(DiagKind::Syntax, kw.span, "'" + kw.text + "' must precede the expressions", kw.text);
      if (kw.text == "base") {
        next();
        Span at = peek().span;
        int n = expect_int("base dimension");
        expect_word("coords");
        expect_punct("[");
        auto names = name_list("]");
        expect_punct("]");
        if (n < 0 || n != static_cast<int>(names.size()))
          fail(DiagKind::Arity, at, "base dimension " + std::to_string(n) + " does not match " +
                                        std::to_string(names.size()) + " coordinates");
        coords = names;
      } else if (kw.text == "fields") {
        next();
        auto names = name_list(";");
        if (names.empty()) unexpected({"field name"});
        fields = names;
      } else if (kw.text == "functions") {
        next();
        do {
          if (is_punct(",")) next();
          const Token& fname = expect_ident("function name");
          expect_punct("(");
          std::vector<Token> args;
          if (!is_punct(")")) {
            args.push_back(expect_ident());
            while (is_punct(",")) {
              next();
              args.push_back(expect_ident());
            }
          }
          expect_punct(")");
          fns.emplace_back(fname.text, args);
        } while (is_punct(","));
      } else if (kw.text == "jet_order") {
        next();
        Span at = peek().span;
        jet_order = expect_int("jet order");
        if (jet_order < 1 || jet_order > 12) fail(DiagKind::Domain, at, "jet order must lie in 1..12");
      } else if (kw.text == "lagrangian" || kw.text == "gamma" || kw.text == "omega") {
        build_space(kw);
        next();
        expect_punct("=");
        Ctx c{space.get()};
        Span at = peek().span;
        if (kw.text == "lagrangian") {
          T->density = scalar_expr(c);
        } else {
          BigradedForm f = sum(c);
          int deg = form_degree(f, at);
          if (kw.text == "gamma") {
            int n = space->base_dim();
            for (const auto& [g, x] : f.terms()) {
              int p = static_cast<int>(std::count_if(g.begin(), g.end(), [](const Generator& y) { return y.vertical; }));
              if (p != 1 || static_cast<int>(g.size()) != n)
                fail(DiagKind::Degree, at, "gamma must have bidegree (1, " + std::to_string(n - 1) + ")");
            }
            T->gamma_override = f;
          } else {
            if (deg == 0) fail(DiagKind::Degree, at, "omega must have positive degree");
            T->omega_override = f;
          }
        }
      } else {
        unexpected({"'base'", "'fields'", "'functions'", "'jet_order'", "'lagrangian'", "'gamma'", "'omega'", "'}'"});
      }
      expect_punct(";");
    }
    const Token& close = peek();
    build_space(close);
    next();
    T->space = space;
    try {
      T->validate();
    } catch (const DomainError& e) {
      fail(DiagKind::Domain, name.span, e.what(), name.text);
    }
    doc_.order.emplace_back(DeclKind::Theory, static_cast<int>(doc_.theories.size()));
    doc_.theories.push_back(T);
  }

  // -- algebra --

  std::vector<Rational> linear_combination(const LieAlgebra& g) {
    std::vector<Rational> out(g.dim());
    bool first = true;
    while (first || is_punct("+") || is_punct("-")) {
      Rational sign = 1;
      if (is_punct("+") || is_punct("-")) sign = next().text == "-" ? -1 : 1;
      first = false;
      Rational coef = 1;
      bool has_coef = false;
      if (peek().kind == Tok::Number) {
        coef = decimal_rational(next().text);
        has_coef = true;
        if (is_punct("/")) {
          next();
          if (peek().kind != Tok::Number) unexpected({"number"});
          const Token& d = next();
          Rational den = decimal_rational(d.text);
          if (den == 0) fail(DiagKind::Domain, d.span, "division by zero");
          coef /= den;
        }
        if (!is_punct("*")) {
          if (coef != 0) fail(DiagKind::Syntax, peek().span, "expected '*' and a basis label", describe(peek()), {"'*'"});
          continue;
        }
        next();
      }
      (void)has_coef;
      const Token& lab = expect_ident("basis label");
      auto k = g.index_of(lab.text);
      if (!k) fail(DiagKind::Resolution, lab.span, "unknown basis label '" + lab.text + "'", lab.text);
      out[*k] += sign * coef;
    }
    return out;
  }

  void algebra() {
    next();
    const Token& name = expect_ident("algebra name");
    declare(name);
    expect_punct("{");
    expect_word("basis");
    expect_punct("[");
    std::vector<Token> labels;
    if (!is_punct("]")) {
      labels.push_back(expect_ident("basis label"));
      while (is_punct(",")) {
        next();
        labels.push_back(expect_ident("basis label"));
      }
    }
    expect_punct("]");
    expect_punct(";");
    std::vector<std::string> names;
    for (const auto& l : labels) {
      if (std::find(names.begin(), names.end(), l.text) != names.end())
        fail(DiagKind::Resolution, l.span, "duplicate basis label '" + l.text + "'", l.text);
      names.push_back(l.text);
    }
    if (names.empty()) fail(DiagKind::Arity, name.span, "algebra needs at least one basis element");
    struct Entry {
      Token a, b;
      std::vector<Rational> rhs;
    };
    std::vector<Entry> entries;
    bool local = false;
    LieAlgebra probe(name.text, names);
    while (!is_punct("}")) {
      if (is_word("brackets")) {
        next();
        expect_punct("{");
        while (!is_punct("}")) {
          expect_punct("[");
          Token a = expect_ident("basis label");
          expect_punct(",");
          Token b = expect_ident("basis label");
          expect_punct("]");
          expect_punct("=");
          auto rhs = linear_combination(probe);
          expect_punct(";");
          entries.push_back({a, b, rhs});
        }
        expect_punct("}");
      } else if (is_word("local")) {
        next();
        expect_punct(";");
        local = true;
      } else {
        unexpected({"'brackets'", "'local'", "'}'"});
      }
    }
    next();
    auto g = std::make_shared<LieAlgebra>(name.text, names, local);
    std::set<std::pair<int, int>> done;
    for (const auto& e : entries) {
      auto i = g->index_of(e.a.text), j = g->index_of(e.b.text);
      if (!i) fail(DiagKind::Resolution, e.a.span, "unknown basis label '" + e.a.text + "'", e.a.text);
      if (!j) fail(DiagKind::Resolution, e.b.span, "unknown basis label '" + e.b.text + "'", e.b.text);
      if (!done.insert({std::min(*i, *j), std::max(*i, *j)}).second)
        fail(DiagKind::Domain, e.a.span, "bracket given twice");
      try {
        g->set_bracket(*i, *j, e.rhs);
      } catch (const DomainError& ex) {
        fail(DiagKind::Domain, e.a.span, ex.what(), e.a.text);
      }
    }
    try {
      g->validate();
    } catch (const DomainError& ex) {
      fail(DiagKind::Domain, name.span, ex.what(), name.text);
    }
    doc_.order.emplace_back(DeclKind::Algebra, static_cast<int>(doc_.algebras.size()));
    doc_.algebras.push_back(g);
  }

  // -- action --

  void action() {
    next();
    const Token& name = expect_ident("action name");
    declare(name);
    expect_word("of");
    const Token& gname = expect_ident("algebra name");
    auto g = doc_.algebra(gname.text);
    if (!g) fail(DiagKind::Resolution, gname.span, "unknown algebra '" + gname.text + "'", gname.text);
    expect_word("on");
    const Token& tname = expect_ident("theory name");
    auto T = find(doc_.theories, tname.text);
    if (!T) fail(DiagKind::Resolution, tname.span, "unknown theory '" + tname.text + "'", tname.text);
    auto act = std::make_shared<Action>();
    act->name = name.text;
    act->algebra = g;
    act->theory = T;
    if (g->local())
      act->space = extend_with_params(*T->space, *g, std::max(plectic_n(*T) + 1, 2));
    else
      act->space = T->space;
    const JetSpace& s = *act->space;
    Ctx c{&s};
    expect_punct("{");
    std::vector<std::optional<JetVectorField>> fields(g->local() ? 1 : g->dim());
    while (!is_punct("}")) {
      const Token& lab = expect_ident("basis label");
      int slot = 0;
      if (g->local()) {
        if (lab.text != JetSpace::slot_name(0))
          fail(DiagKind::Resolution, lab.span, "local actions are written in the slot " + JetSpace::slot_name(0),
               lab.text, {JetSpace::slot_name(0)});
      } else {
        auto k = g->index_of(lab.text);
        if (!k) fail(DiagKind::Resolution, lab.span, "unknown basis label '" + lab.text + "'", lab.text);
        slot = *k;
      }
      if (fields[slot]) fail(DiagKind::Domain, lab.span, "vector field for '" + lab.text + "' given twice", lab.text);
      expect_punct("->");
      expect_punct("{");
      JetVectorField X = JetVectorField::zero(s);
      std::set<std::string> keys;
      while (!is_punct("}")) {
        const Token& key = expect_ident("field or coordinate");
        if (!keys.insert(key.text).second) fail(DiagKind::Domain, key.span, "component given twice", key.text);
        expect_punct(":");
        ScalarExpr e = scalar_expr(c);
        if (auto a = T->space->field_index(key.text))
          X.Q[*a] = e;
        else if (auto mu = T->space->coord_index(key.text))
          X.v[*mu] = e;
        else
          fail(DiagKind::Resolution, key.span, "unknown field or coordinate '" + key.text + "'", key.text);
        if (!is_punct(",")) break;
        next();
      }
      expect_punct("}");
      expect_punct(";");
      fields[slot] = X;
    }
    const Token& close = next();
    for (int k = 0; k < static_cast<int>(fields.size()); ++k)
      if (!fields[k])
        fail(DiagKind::Arity, close.span,
             "action '" + name.text + "' leaves '" + (g->local() ? JetSpace::slot_name(0) : g->labels()[k]) +
                 "' undefined");
    if (g->local())
      act->local_template = *fields[0];
    else
      for (auto& X : fields) act->basis_fields.push_back(*X);
    try {
      act->validate();
    } catch (const DomainError& e) {
      fail(DiagKind::Domain, name.span, e.what(), name.text);
    }
    doc_.order.emplace_back(DeclKind::Action, static_cast<int>(doc_.actions.size()));
    doc_.actions.push_back(act);
  }

  // -- momentum map --

  void momap() {
    next();
    const Token& name = expect_ident("momentum map name");
    declare(name);
    expect_word("for");
    const Token& aname = expect_ident("action name");
    auto act = find(doc_.actions, aname.text);
    if (!act) fail(DiagKind::Resolution, aname.span, "unknown action '" + aname.text + "'", aname.text);
    const LieAlgebra& g = *act->algebra;
    const JetSpace& s = *act->space;
    int n = plectic_n(*act->theory);
    auto mu = std::make_shared<MomentumMap>();
    mu->name = name.text;
    mu->action = act;
    expect_punct("{");
    std::set<std::vector<int>> seen_tuples;
    std::set<int> seen_templates;
    while (!is_punct("}")) {
      expect_word("mu");
      Span at_i = peek().span;
      int i = expect_int("component index");
      if (i < 1) fail(DiagKind::Arity, at_i, "component index must be at least 1");
      expect_punct(":");
      std::vector<Token> pattern{expect_ident("basis label")};
      while (is_punct("^")) {
        next();
        pattern.push_back(expect_ident("basis label"));
      }
      if (static_cast<int>(pattern.size()) != i)
        fail(DiagKind::Arity, pattern[0].span,
             "mu " + std::to_string(i) + " takes " + std::to_string(i) + " arguments, pattern has " +
                 std::to_string(pattern.size()));
      std::vector<int> tuple;
      for (int k = 0; k < i; ++k) {
        const Token& p = pattern[k];
        if (g.local()) {
          if (p.text != JetSpace::slot_name(k))
            fail(DiagKind::Resolution, p.span, "local momentum maps use the slots in order", p.text,
                 {JetSpace::slot_name(k)});
        } else {
          auto idx = g.index_of(p.text);
          if (!idx) fail(DiagKind::Resolution, p.span, "unknown basis label '" + p.text + "'", p.text);
          if (std::find(tuple.begin(), tuple.end(), *idx) != tuple.end())
            fail(DiagKind::Arity, p.span, "repeated basis label in wedge pattern", p.text);
          tuple.push_back(*idx);
        }
      }
      if (g.local() && i > s.param_slots())
        fail(DiagKind::Arity, pattern[0].span, "more arguments than parameter slots");
      expect_punct("->");
      Span at = peek().span;
      BigradedForm f = sum(Ctx{&s});
      expect_punct(";");
      int deg = form_degree(f, at);
      if (n - i < 0 && deg >= 0)
        fail(DiagKind::Degree, at, "mu " + std::to_string(i) + " must vanish for n = " + std::to_string(n));
      if (deg >= 0 && deg != n - i)
        fail(DiagKind::Degree, at, "mu " + std::to_string(i) + " has degree " + std::to_string(n - i) +
                                        ", found " + std::to_string(deg));
      while (mu->max_arity() < i)
        mu->components.push_back(g.local() ? GCochain::templ(mu->max_arity() + 1, {})
                                            : GCochain::table(mu->max_arity() + 1));
      if (g.local()) {
        if (!seen_templates.insert(i).second) fail(DiagKind::Domain, at_i, "component given twice");
        mu->components[i - 1] = GCochain::templ(i, f);
      } else {
        std::vector<int> key = tuple;
        std::sort(key.begin(), key.end());
        if (!seen_tuples.insert(key).second) fail(DiagKind::Domain, pattern[0].span, "entry given twice");
        mu->components[i - 1].set(tuple, f);
      }
    }
    next();
    doc_.order.emplace_back(DeclKind::Momap, static_cast<int>(doc_.momaps.size()));
    doc_.momaps.push_back(mu);
  }

  // -- field --

  std::vector<double> double_list() {
    expect_punct("[");
    std::vector<double> out;
    if (!is_punct("]")) {
      out.push_back(expect_double());
      while (is_punct(",")) {
        next();
        out.push_back(expect_double());
      }
    }
    expect_punct("]");
    return out;
  }

  void field() {
    next();
    const Token& name = expect_ident("field name");
    declare(name);
    expect_word("on");
    const Token& tname = expect_ident("theory name");
    auto T = find(doc_.theories, tname.text);
    if (!T) fail(DiagKind::Resolution, tname.span, "unknown theory '" + tname.text + "'", tname.text);
    const JetSpace& s = *T->space;
    FieldDecl fd;
    fd.theory = T;
    fd.sample.label = name.text;
    expect_punct("{");
    std::vector<std::optional<ScalarExpr>> closed(s.num_fields());
    std::vector<std::optional<std::vector<double>>> samples(s.num_fields());
    std::optional<Grid> grid;
    while (!is_punct("}")) {
      if (is_word("grid")) {
        const Token& kw = next();
        if (grid) fail(DiagKind::Domain, kw.span, "grid given twice");
        Grid g;
        expect_word("origin");
        g.origin = double_list();
        expect_word("spacing");
        g.spacing = double_list();
        expect_word("counts");
        expect_punct("[");
        if (!is_punct("]")) {
          g.counts.push_back(expect_int());
          while (is_punct(",")) {
            next();
            g.counts.push_back(expect_int());
          }
        }
        expect_punct("]");
        expect_punct(";");
        if (static_cast<int>(g.counts.size()) != s.base_dim() || g.origin.size() != g.counts.size() ||
            g.spacing.size() != g.counts.size())
          fail(DiagKind::Arity, kw.span, "grid needs one origin, spacing and count per base coordinate");
        grid = g;
        continue;
      }
      const Token& comp = expect_ident("field component");
      auto a = s.field_index(comp.text);
      if (!a) fail(DiagKind::Resolution, comp.span, "unknown field component '" + comp.text + "'", comp.text);
      if (closed[*a] || samples[*a]) fail(DiagKind::Domain, comp.span, "component given twice", comp.text);
      expect_punct("=");
      if (is_punct("["))
        samples[*a] = double_list();
      else
        closed[*a] = scalar_expr(Ctx{&s});
      expect_punct(";");
    }
    const Token& close = next();
    bool any_closed = std::any_of(closed.begin(), closed.end(), [](const auto& x) { return x.has_value(); });
    bool any_samples = std::any_of(samples.begin(), samples.end(), [](const auto& x) { return x.has_value(); });
    if (any_closed && (any_samples || grid))
      fail(DiagKind::Domain, name.span, "a field is either closed-form or sampled", name.text);
    if (any_samples && !grid) fail(DiagKind::Syntax, close.span, "sampled components need a grid line", "}", {"'grid'"});
    for (int k = 0; k < s.num_fields(); ++k)
      if (!closed[k] && !(grid && samples[k]))
        fail(DiagKind::Arity, close.span, "field '" + name.text + "' leaves '" + s.fields()[k] + "' undefined");
    if (grid) {
      for (auto& v : samples) grid->values.push_back(*v);
      fd.sample.grid = grid;
    } else {
      for (auto& e : closed) fd.sample.closed.push_back(*e);
    }
    try {
      fd.sample.validate(s);
    } catch (const DomainError& e) {
      fail(DiagKind::Domain, name.span, e.what(), name.text);
    }
    doc_.order.emplace_back(DeclKind::Field, static_cast<int>(doc_.fields.size()));
    doc_.fields.push_back(fd);
  }

  // -- check --

  void check() {
    const Token& kw = next();
    const Token& kind = expect_ident("check kind");
    auto sc = check_schemas().find(kind.text);
    if (sc == check_schemas().end()) {
      std::vector<std::string> names;
      for (const auto& [k, v] : check_schemas()) names.push_back(k);
      fail(DiagKind::Resolution, kind.span, "unknown check '" + kind.text + "'", kind.text, names);
    }
    expect_punct("(");
    std::vector<Token> args;
    std::vector<std::string> texts;
    while (!is_punct(")")) {
      if (!args.empty()) expect_punct(",");
      bool neg = false;
      if (is_punct("-")) {
        next();
        neg = true;
      }
      if (peek().kind != Tok::Ident && peek().kind != Tok::Number) unexpected({"identifier", "number", "')'"});
      Token t = next();
      if (neg) {
        if (t.kind != Tok::Number) fail(DiagKind::Syntax, t.span, "'-' must precede a number", t.text);
        t.text = "-" + t.text;
      }
      args.push_back(t);
      texts.push_back(t.text);
    }
    const Token& close = next();
    expect_punct(";");
    const CheckSchema& schema = sc->second;
    std::size_t need = schema.args.size() + (schema.trailing_number ? 1 : 0);
    bool arity_ok = schema.variadic_fields ? args.size() >= need : args.size() == need;
    if (!arity_ok)
      fail(DiagKind::Arity, close.span,
           "check " + kind.text + " takes " + std::to_string(need) + (schema.variadic_fields ? " or more" : "") +
               " arguments, found " + std::to_string(args.size()));
    std::shared_ptr<MomentumMap> mu;
    auto ident = [&](const Token& t) {
      if (t.kind != Tok::Ident) fail(DiagKind::Syntax, t.span, "expected a name", t.text, {"identifier"});
    };
    for (std::size_t k = 0; k < args.size(); ++k) {
      const Token& t = args[k];
      if (schema.trailing_number && k == args.size() - 1) {
        if (t.kind != Tok::Number) fail(DiagKind::Syntax, t.span, "expected a number", t.text, {"number"});
        continue;
      }
      DeclKind want = k < schema.args.size() ? schema.args[k] : DeclKind::Field;
      ident(t);
      bool ok = true;
      switch (want) {
        case DeclKind::Theory: ok = find(doc_.theories, t.text) != nullptr; break;
        case DeclKind::Action: ok = find(doc_.actions, t.text) != nullptr; break;
        case DeclKind::Momap:
          mu = find(doc_.momaps, t.text);
          ok = mu != nullptr;
          break;
        case DeclKind::Field: {
          ok = doc_.field(t.text) != nullptr;
          if (ok && mu && doc_.field(t.text)->theory != mu->action->theory)
            fail(DiagKind::Resolution, t.span, "field '" + t.text + "' lives on another theory", t.text);
          break;
        }
        case DeclKind::Check:
          ok = mu && mu->action->algebra->index_of(t.text).has_value();
          break;
        default: break;
      }
      if (!ok) fail(DiagKind::Resolution, t.span, "unresolved argument '" + t.text + "'", t.text);
    }
    CheckDecl cd{kind.text, texts, kw.span};
    doc_.order.emplace_back(DeclKind::Check, static_cast<int>(doc_.checks.size()));
    doc_.checks.push_back(cd);
  }
};

}  // namespace

// ---- document ----------------------------------------------------------------------------------

int plectic_n(const Theory& T) {
  if (T.omega_override) return T.omega_override->is_zero() ? 0 : T.omega_override->degree() - 1;
  return T.space->base_dim();
}

std::shared_ptr<Theory> Document::theory(const std::string& name) const {
  for (const auto& x : theories)
    if (x->name == name) return x;
  return nullptr;
}

std::shared_ptr<LieAlgebra> Document::algebra(const std::string& name) const {
  for (const auto& x : algebras)
    if (x->name() == name) return x;
  return nullptr;
}

std::shared_ptr<Action> Document::action(const std::string& name) const {
  for (const auto& x : actions)
    if (x->name == name) return x;
  return nullptr;
}

std::shared_ptr<MomentumMap> Document::momap(const std::string& name) const {
  for (const auto& x : momaps)
    if (x->name == name) return x;
  return nullptr;
}

const FieldDecl* Document::field(const std::string& name) const {
  for (const auto& x : fields)
    if (x.sample.label == name) return &x;
  return nullptr;
}

namespace {

bool same(const Theory& a, const Theory& b) {
  return a.name == b.name && *a.space == *b.space && a.density == b.density && a.gamma_override == b.gamma_override &&
         a.omega_override == b.omega_override;
}

bool same(const Action& a, const Action& b) {
  if (a.name != b.name || a.algebra->name() != b.algebra->name() || a.theory->name != b.theory->name) return false;
  if (!(*a.space == *b.space)) return false;
  if (a.local() != b.local()) return false;
  return a.local() ? a.local_template == b.local_template : a.basis_fields == b.basis_fields;
}

bool same(const MomentumMap& a, const MomentumMap& b) {
  if (a.name != b.name || a.action->name != b.action->name) return false;
  int m = std::max(a.max_arity(), b.max_arity());
  for (int i = 1; i <= m; ++i) {
    GCochain x = a.mu(i), y = b.mu(i);
    if (x.is_zero() && y.is_zero()) continue;
    if (!(x == y)) return false;
  }
  return true;
}

bool same(const FieldDecl& a, const FieldDecl& b) {
  if (a.sample.label != b.sample.label || a.theory->name != b.theory->name) return false;
  if (a.sample.closed != b.sample.closed || a.sample.is_grid() != b.sample.is_grid()) return false;
  if (!a.sample.is_grid()) return true;
  const Grid& x = *a.sample.grid;
  const Grid& y = *b.sample.grid;
  return x.origin == y.origin && x.spacing == y.spacing && x.counts == y.counts && x.values == y.values;
}

template <class T, class F>
bool all_same(const std::vector<T>& a, const std::vector<T>& b, F f) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!f(a[k], b[k])) return false;
  return true;
}

}  // namespace

bool Document::operator==(const Document& o) const {
  return order == o.order && checks == o.checks &&
         all_same(theories, o.theories, [](const auto& a, const auto& b) { return same(*a, *b); }) &&
         all_same(algebras, o.algebras, [](const auto& a, const auto& b) { return *a == *b; }) &&
         all_same(actions, o.actions, [](const auto& a, const auto& b) { return same(*a, *b); }) &&
         all_same(momaps, o.momaps, [](const auto& a, const auto& b) { return same(*a, *b); }) &&
         all_same(fields, o.fields, [](const auto& a, const auto& b) { return same(a, b); });
}

ParseResult parse(const std::string& text, const ParseOptions& opt) {
  std::vector<Diagnostic> lexd;
  auto toks = lex(text, lexd);
  if (!lexd.empty()) return {{}, lexd};
  return Parser(std::move(toks), opt).run();
}

Document parse_or_throw(const std::string& text, const std::string& origin, const ParseOptions& opt) {
  ParseResult r = parse(text, opt);
  if (r.ok()) return std::move(r.doc);
  std::string msg;
  for (const auto& d : r.diagnostics) msg += d.render(text, origin);
  throw ParseError(r.diagnostics, msg);
}

// ---- printer -----------------------------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k];
  return s;
}

std::string linear_text(const std::vector<Rational>& c, const LieAlgebra& g) {
  std::string s;
  for (int k = 0; k < g.dim(); ++k) {
    if (c[k] == 0) continue;
    Rational a = abs(c[k]);
    if (s.empty())
      s += c[k] < 0 ? "-" : "";
    else
      s += c[k] < 0 ? " - " : " + ";
    if (a != 1) s += a.get_str() + "*";
    s += g.labels()[k];
  }
  return s.empty() ? "0" : s;
}

void print_theory(std::ostream& os, const Theory& T) {
  const JetSpace& s = *T.space;
  os << "theory " << T.name << " {\n";
  os << "  base " << s.base_dim() << " coords [" << join(s.coords()) << "];\n";
  os << "  fields " << join(s.fields()) << ";\n";
  if (!s.functions().empty()) {
    std::vector<std::string> fns;
    for (const auto& f : s.functions()) {
      std::vector<std::string> args;
      for (const auto& a : f.args) args.push_back(s.atom_text(a));
      fns.push_back(f.name + "(" + join(args) + ")");
    }
    os << "  functions " << join(fns) << ";\n";
  }
  os << "  jet_order " << s.jet_order() << ";\n";
  if (T.density) os << "  lagrangian = " << to_text(*T.density, s) << ";\n";
  if (T.gamma_override) os << "  gamma = " << to_text(*T.gamma_override, s) << ";\n";
  if (T.omega_override) os << "  omega = " << to_text(*T.omega_override, s) << ";\n";
  os << "}\n";
}

void print_algebra(std::ostream& os, const LieAlgebra& g) {
  os << "algebra " << g.name() << " {\n";
  os << "  basis [" << join(g.labels()) << "];\n";
  std::vector<std::string> lines;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      std::vector<Rational> c(g.dim());
      bool any = false;
      for (int k = 0; k < g.dim(); ++k) {
        c[k] = g.c(k, i, j);
        any = any || c[k] != 0;
      }
      if (any) lines.push_back("[" + g.labels()[i] + ", " + g.labels()[j] + "] = " + linear_text(c, g) + ";");
    }
  if (!lines.empty()) {
    os << "  brackets {\n";
    for (const auto& l : lines) os << "    " << l << "\n";
    os << "  }\n";
  }
  if (g.local()) os << "  local;\n";
  os << "}\n";
}

std::string vf_text(const JetVectorField& X, const Theory& T, const JetSpace& s) {
  std::vector<std::string> items;
  for (int mu = 0; mu < T.space->base_dim(); ++mu)
    if (!X.v[mu].is_zero()) items.push_back(T.space->coords()[mu] + ": " + to_text(X.v[mu], s));
  for (int a = 0; a < T.space->num_fields(); ++a)
    if (!X.Q[a].is_zero()) items.push_back(T.space->fields()[a] + ": " + to_text(X.Q[a], s));
  return items.empty() ? "{ }" : "{ " + join(items) + " }";
}

void print_action(std::ostream& os, const Action& a) {
  os << "action " << a.name << " of " << a.algebra->name() << " on " << a.theory->name << " {\n";
  if (a.local()) {
    os << "  " << JetSpace::slot_name(0) << " -> " << vf_text(a.local_template, *a.theory, *a.space) << ";\n";
  } else {
    for (int k = 0; k < a.algebra->dim(); ++k)
      os << "  " << a.algebra->labels()[k] << " -> " << vf_text(a.basis_fields[k], *a.theory, *a.space) << ";\n";
  }
  os << "}\n";
}

void print_momap(std::ostream& os, const MomentumMap& mu) {
  const Action& a = *mu.action;
  os << "momap " << mu.name << " for " << a.name << " {\n";
  for (int i = 1; i <= mu.max_arity(); ++i) {
    GCochain c = mu.mu(i);
    if (c.is_template()) {
      if (c.body().is_zero()) continue;
      std::vector<std::string> slots;
      for (int k = 0; k < i; ++k) slots.push_back(JetSpace::slot_name(k));
      os << "  mu " << i << ": " << join(slots, "^") << " -> " << to_text(c.body(), *a.space) << ";\n";
    } else {
      for (const auto& [t, v] : c.entries()) {
        if (v.is_zero()) continue;
        std::vector<std::string> labels;
        for (int k : t) labels.push_back(a.algebra->labels()[k]);
        os << "  mu " << i << ": " << join(labels, "^") << " -> " << to_text(v, *a.space) << ";\n";
      }
    }
  }
  os << "}\n";
}

std::string doubles(const std::vector<double>& v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(format_double(x));
  return "[" + join(s) + "]";
}

void print_field(std::ostream& os, const FieldDecl& f) {
  const JetSpace& s = *f.theory->space;
  os << "field " << f.sample.label << " on " << f.theory->name << " {\n";
  if (f.sample.is_grid()) {
    const Grid& g = *f.sample.grid;
    std::vector<std::string> counts;
    for (int c : g.counts) counts.push_back(std::to_string(c));
    os << "  grid origin " << doubles(g.origin) << " spacing " << doubles(g.spacing) << " counts [" << join(counts)
       << "];\n";
    for (int a = 0; a < s.num_fields(); ++a) os << "  " << s.fields()[a] << " = " << doubles(g.values[a]) << ";\n";
  } else {
    for (int a = 0; a < s.num_fields(); ++a)
      os << "  " << s.fields()[a] << " = " << to_text(f.sample.closed[a], s) << ";\n";
  }
  os << "}\n";
}

}  // namespace

std::string print(const Document& doc) {
  std::ostringstream os;
  std::optional<DeclKind> prev;
  for (const auto& [kind, k] : doc.order) {
    if (prev && !(kind == DeclKind::Check && *prev == DeclKind::Check)) os << "\n";
    prev = kind;
    switch (kind) {
      case DeclKind::Theory: print_theory(os, *doc.theories[k]); break;
      case DeclKind::Algebra: print_algebra(os, *doc.algebras[k]); break;
      case DeclKind::Action: print_action(os, *doc.actions[k]); break;
      case DeclKind::Momap: print_momap(os, *doc.momaps[k]); break;
      case DeclKind::Field: print_field(os, doc.fields[k]); break;
      case DeclKind::Check: {
        const auto& c = doc.checks[k];
        os << "check " << c.kind << "(" << join(c.args) << ");\n";
        break;
      }
    }
  }
  return os.str();
}

// ---- fuzzing -------------------------------------------------------------------------------------

Document random_document(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Document doc;
  auto add = [&](DeclKind k, std::size_t idx) { doc.order.emplace_back(k, static_cast<int>(idx)); };

  // Theory.
  int n = pick(1, 2);
  std::vector<std::string> coords = n == 1 ? std::vector<std::string>{"t"} : std::vector<std::string>{"x", "y"};
  int nf = pick(1, 3);
  std::vector<std::string> fields;
  for (int a = 0; a < nf; ++a) fields.push_back("u" + std::to_string(a + 1));
  auto space = std::make_shared<JetSpace>(coords, fields, pick(2, 4));
  if (pick(0, 1)) space->add_function("W", {Atom::field(0)});
  RandomConfig cfg;
  cfg.max_jet_order = 1;
  cfg.max_terms = 3;
  cfg.max_power = 2;
  RandomSource rnd(seed ^ 0x9e3779b97f4a7c15ULL, *space, cfg);
  auto T = std::make_shared<Theory>();
  T->name = "th" + std::to_string(seed % 1000);
  T->space = space;
  T->density = rnd.scalar();
  if (pick(0, 2) == 0) T->gamma_override = rnd.form(1, n - 1, 2);
  doc.theories.push_back(T);
  add(DeclKind::Theory, 0);

  // Global algebra: abelian or a multiple of so(3).
  int dim = pick(1, 3);
  std::vector<std::string> labels;
  for (int k = 0; k < dim; ++k) labels.push_back("e" + std::to_string(k + 1));
  auto g = std::make_shared<LieAlgebra>("alg", labels);
  if (dim == 3 && pick(0, 1)) {
    Rational c = rnd.rational();
    if (c == 0) c = 1;
    g->set_bracket(0, 1, {0, 0, c});
    g->set_bracket(1, 2, {c, 0, 0});
    g->set_bracket(2, 0, {0, c, 0});
  }
  doc.algebras.push_back(g);
  add(DeclKind::Algebra, 0);

  auto act = std::make_shared<Action>();
  act->name = "act";
  act->algebra = g;
  act->theory = T;
  act->space = space;
  for (int k = 0; k < dim; ++k) {
    JetVectorField X = rnd.characteristic(1);
    if (pick(0, 3) == 0) X += rnd.horizontal();
    act->basis_fields.push_back(X);
  }
  doc.actions.push_back(act);
  add(DeclKind::Action, 0);

  auto mu = std::make_shared<MomentumMap>();
  mu->name = "mom";
  mu->action = act;
  for (int i = 1; i <= std::min(n, dim); ++i) {
    GCochain c = GCochain::table(i);
    std::vector<int> t(i);
    for (int k = 0; k < i; ++k) t[k] = k;
    int deg = n - i;
    int p = pick(0, deg);
    c.set(t, rnd.form(p, deg - p, 2));
    mu->components.push_back(c);
  }
  doc.momaps.push_back(mu);
  add(DeclKind::Momap, 0);

  // Local algebra and gauge-like action.
  if (pick(0, 1)) {
    int ld = pick(1, 2);
    std::vector<std::string> ll;
    for (int k = 0; k < ld; ++k) ll.push_back("f" + std::to_string(k + 1));
    auto h = std::make_shared<LieAlgebra>("gauge_alg", ll, true);
    doc.algebras.push_back(h);
    add(DeclKind::Algebra, 1);
    auto la = std::make_shared<Action>();
    la->name = "gauge";
    la->algebra = h;
    la->theory = T;
    auto ext = extend_with_params(*space, *h, std::max(n + 1, 2));
    la->space = ext;
    la->local_template = JetVectorField::zero(*ext);
    for (int a = 0; a < nf; ++a) {
      int comp = pick(0, ld - 1);
      MultiIndex I;
      if (pick(0, 1)) I.e[pick(0, n - 1)] = 1;
      la->local_template.Q[a] = ScalarExpr::param(ext->param_index(0, comp), I) * ScalarExpr(rnd.rational() + 1) +
                                ScalarExpr::param(ext->param_index(0, 0)) * ScalarExpr::field(a);
    }
    doc.actions.push_back(la);
    add(DeclKind::Action, 1);
    auto lm = std::make_shared<MomentumMap>();
    lm->name = "gauge_mom";
    lm->action = la;
    BigradedForm body = rnd.form(0, n - 1, 2);
    lm->components.push_back(GCochain::templ(1, body * ScalarExpr::param(ext->param_index(0, 0))));
    doc.momaps.push_back(lm);
    add(DeclKind::Momap, 1);
  }

  // Fields.
  FieldDecl closed;
  closed.theory = T;
  closed.sample.label = "phi";
  for (int a = 0; a < nf; ++a) {
    ScalarExpr e(rnd.rational());
    for (int mu = 0; mu < n; ++mu) e += ScalarExpr(rnd.rational()) * ScalarExpr::base(mu).pow(pick(1, 2));
    if (pick(0, 2) == 0) e += ScalarExpr::sin(0, make_rational(pick(1, 3), pick(1, 2)));
    closed.sample.closed.push_back(e);
  }
  doc.fields.push_back(closed);
  add(DeclKind::Field, 0);
  if (pick(0, 1)) {
    FieldDecl sampled;
    sampled.theory = T;
    sampled.sample.label = "grid_phi";
    Grid gr;
    std::uniform_real_distribution<double> u(-2, 2);
    for (int mu = 0; mu < n; ++mu) {
      gr.origin.push_back(u(rng));
      gr.spacing.push_back(std::abs(u(rng)) + 0.01);
      gr.counts.push_back(pick(3, 5));
    }
    for (int a = 0; a < nf; ++a) {
      std::vector<double> v(gr.size());
      for (auto& x : v) x = u(rng);
      gr.values.push_back(v);
    }
    sampled.sample.grid = gr;
    doc.fields.push_back(sampled);
    add(DeclKind::Field, 1);
  }

  doc.checks.push_back({"el", {T->name}, {}});
  doc.checks.push_back({"momap", {"mom"}, {}});
  doc.checks.push_back({"zero_locus", {"mom", "phi"}, {}});
  doc.checks.push_back({"charge", {"mom", "e1", "phi", std::to_string(pick(0, 3))}, {}});
  for (std::size_t k = 0; k < doc.checks.size(); ++k) add(DeclKind::Check, k);
  return doc;
}

}  // namespace jetreduce::dsl
