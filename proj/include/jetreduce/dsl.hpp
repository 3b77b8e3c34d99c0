#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetreduce/reduction.hpp"

namespace jetreduce::dsl {

// 1-based line and column; offset and length in bytes.
struct Span {
  int line = 1;
  int col = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

enum class DiagKind { Lexical, Syntax, Resolution, Arity, Degree, Domain };

const char* to_string(DiagKind k);

struct Diagnostic {
  DiagKind kind = DiagKind::Syntax;
  Span span;
  std::string message;
  std::string unexpected;             // offending token text, if any
  std::vector<std::string> expected;  // expected token set, if known

  // "file:line:col: kind error: message" followed by the source line and a caret.
  std::string render(const std::string& source, const std::string& origin = "<input>") const;
};

class ParseError : public DomainError {
 public:
  explicit ParseError(std::vector<Diagnostic> diags, const std::string& rendered)
      : DomainError(rendered), diagnostics(std::move(diags)) {}
  std::vector<Diagnostic> diagnostics;
};

struct FieldDecl {
  FieldSample sample;  // label is the declaration name
  std::shared_ptr<const Theory> theory;
};

// check <kind>(<args>); with arguments kept as written.
struct CheckDecl {
  std::string kind;
  std::vector<std::string> args;
  Span span;
  bool operator==(const CheckDecl& o) const { return kind == o.kind && args == o.args; }
};

enum class DeclKind { Theory, Algebra, Action, Momap, Field, Check };

struct Document {
  std::vector<std::shared_ptr<Theory>> theories;
  std::vector<std::shared_ptr<LieAlgebra>> algebras;
  std::vector<std::shared_ptr<Action>> actions;
  std::vector<std::shared_ptr<MomentumMap>> momaps;
  std::vector<FieldDecl> fields;
  std::vector<CheckDecl> checks;
  // Declaration order: kind and index into the matching vector.
  std::vector<std::pair<DeclKind, int>> order;

  std::shared_ptr<Theory> theory(const std::string& name) const;
  std::shared_ptr<LieAlgebra> algebra(const std::string& name) const;
  std::shared_ptr<Action> action(const std::string& name) const;
  std::shared_ptr<MomentumMap> momap(const std::string& name) const;
  const FieldDecl* field(const std::string& name) const;

  bool empty() const { return order.empty(); }
  // Structural equality: names, spaces, normalized expressions, grids.
  bool operator==(const Document& o) const;
};

struct ParseResult {
  Document doc;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

struct ParseOptions {
  std::optional<int> jet_order;  // replaces every theory's jet_order
};

ParseResult parse(const std::string& text, const ParseOptions& opt = {});
// Throws ParseError with rendered diagnostics.
Document parse_or_throw(const std::string& text, const std::string& origin = "<input>", const ParseOptions& opt = {});

// Canonical rendering; parse(print(d)) == d.
std::string print(const Document& doc);

// Plectic degree n of a theory: base dimension for Lagrangian theories,
// deg(omega) - 1 for an omega override.
int plectic_n(const Theory& T);

// Seeded random valid document for round-trip fuzzing.
Document random_document(std::uint64_t seed);

}  // namespace jetreduce::dsl
