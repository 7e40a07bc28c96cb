#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apiinfer/lexer.hpp"

namespace apiinfer {

struct SourceFile;

struct ClassInfo {
  std::string name;
  std::string header;  // e.g. "class Trainer(Base):" or "public class RingBuffer"
  int start_line = 0;
};

struct FunctionDef {
  std::string name;
  std::string header;     // normalized source header, without the body
  std::string signature;  // name, parameters and return type where present
  std::vector<std::string> param_names;
  std::optional<std::string> return_type;
  std::vector<std::string> decorators;  // python, without '@'
  std::vector<std::string> modifiers;   // java
  // Enclosing classes, outermost first. Empty for module-level functions.
  std::vector<ClassInfo> classes;
  bool nested_in_function = false;
  bool is_static = false;
  int start_line = 0;  // first decorator / annotation line
  int end_line = 0;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;
};

struct ImportedName {
  std::string name;   // as written after `import`
  std::string bound;  // local binding introduced in the file
};

struct ImportStatement {
  int first_line = 0;
  int last_line = 0;
  std::string module;  // dotted; for python `from . import x` this is ""
  int level = 0;       // python relative-import dots
  bool is_from = false;
  bool is_static = false;  // java `import static`
  bool wildcard = false;
  std::vector<ImportedName> names;
};

struct Outline {
  bool ok = true;
  int error_line = 0;
  std::string error;
  std::vector<FunctionDef> functions;
  std::vector<ImportStatement> imports;
  std::optional<std::string> package;  // java
};

// Structural parse: validates brackets, literals, indentation (python) and
// declaration headers, then lists functions/methods and import statements.
// Lambdas and function bodies are never descended into for java; python defs
// nested in defs are reported with nested_in_function set.
Outline parse_outline(std::string_view text, const std::vector<Token>& tokens,
                      std::optional<LexError> lex_error, Language lang);

Outline parse_outline(const SourceFile& file);

// Joins tokens [first, last) with single spaces where the source had
// whitespace; no space after '(' / '[' or before ')' / ']' / ','.
std::string render_tokens(std::string_view text, const std::vector<Token>& tokens,
                          std::size_t first, std::size_t last);

// Normalizes whitespace in a code fragment the same way render_tokens does.
std::string normalize_header(std::string_view fragment, Language lang);

}  // namespace apiinfer
