#include "apiinfer/syntax.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "apiinfer/corpus.hpp"

namespace apiinfer {

namespace {

bool is_open(std::string_view t) { return t == "(" || t == "[" || t == "{"; }
bool is_close(std::string_view t) { return t == ")" || t == "]" || t == "}"; }

char closer_for(std::string_view open) {
  return open == "(" ? ')' : open == "[" ? ']' : '}';
}

bool is_op(const Token& tok, std::string_view text) {
  return tok.kind == TokenKind::op && tok.text == text;
}

std::size_t token_end(const Token& tok) { return tok.offset + tok.text.size(); }

// Index of the bracket matching tokens[open], or tokens.size() if unbalanced.
std::size_t match_bracket(const std::vector<Token>& tokens, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::op) continue;
    if (is_open(tokens[i].text)) ++depth;
    if (is_close(tokens[i].text) && --depth == 0) return i;
  }
  return tokens.size();
}

struct BracketCheck {
  bool ok = true;
  int line = 0;
  std::string message;
};

BracketCheck check_brackets(const std::vector<Token>& tokens) {
  std::vector<const Token*> stack;
  for (const auto& tok : tokens) {
    if (tok.kind != TokenKind::op) continue;
    if (is_open(tok.text)) {
      stack.push_back(&tok);
    } else if (is_close(tok.text)) {
      if (stack.empty() || closer_for(stack.back()->text) != tok.text[0]) {
        return {false, tok.line, "unmatched '" + tok.text + "'"};
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) return {false, stack.back()->line, "'" + stack.back()->text + "' was never closed"};
  return {};
}

// Splits the token range (first, last) at depth-0 commas. Angle brackets count
// as nesting for java generics.
std::vector<std::pair<std::size_t, std::size_t>> split_params(const std::vector<Token>& tokens,
                                                              std::size_t first, std::size_t last,
                                                              bool angle_brackets) {
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  int depth = 0;
  std::size_t begin = first;
  for (std::size_t i = first; i < last; ++i) {
    const auto& t = tokens[i];
    if (t.kind != TokenKind::op) continue;
    if (is_open(t.text) || (angle_brackets && t.text == "<")) ++depth;
    if (is_close(t.text) || (angle_brackets && t.text == ">")) --depth;
    if (t.text == "," && depth == 0) {
      parts.emplace_back(begin, i);
      begin = i + 1;
    }
  }
  if (begin < last) parts.emplace_back(begin, last);
  return parts;
}

// ---------------------------------------------------------------- python

struct LogicalLine {
  std::size_t begin = 0;  // token index
  std::size_t end = 0;    // exclusive
  int indent = 0;
  int first_line = 0;
  int last_line = 0;
};

int visual_indent(std::string_view line) {
  int col = 0;
  for (char c : line) {
    if (c == ' ') {
      ++col;
    } else if (c == '\t') {
      col = (col / 8 + 1) * 8;
    } else if (c == '\f') {
      col = 0;
    } else {
      break;
    }
  }
  return col;
}

bool ends_with_continuation(std::string_view text, const Token& tok) {
  std::size_t pos = token_end(tok);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos >= text.size() || text[pos] != '\\') return false;
  ++pos;
  if (pos < text.size() && text[pos] == '\r') ++pos;
  return pos < text.size() && text[pos] == '\n';
}

std::string_view line_at(std::string_view text, std::size_t offset) {
  std::size_t begin = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  begin = (begin == std::string_view::npos || offset == 0) ? 0 : begin + 1;
  std::size_t end = text.find('\n', begin);
  return text.substr(begin, end == std::string_view::npos ? text.size() - begin : end - begin);
}

std::vector<LogicalLine> python_logical_lines(std::string_view text,
                                              const std::vector<Token>& tokens) {
  std::vector<LogicalLine> out;
  int depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    const bool starts_new =
        out.empty() || (depth == 0 && tok.line > tokens[i - 1].end_line() &&
                        !ends_with_continuation(text, tokens[i - 1]));
    if (starts_new) {
      LogicalLine ll;
      ll.begin = i;
      ll.first_line = tok.line;
      ll.indent = visual_indent(line_at(text, tok.offset));
      out.push_back(ll);
    }
    out.back().end = i + 1;
    out.back().last_line = tok.end_line();
    if (tok.kind == TokenKind::op) {
      if (is_open(tok.text)) ++depth;
      if (is_close(tok.text)) depth = std::max(0, depth - 1);
    }
  }
  return out;
}

struct PyScope {
  enum Kind { klass, function } kind;
  int indent;
  std::size_t index;  // into outline.functions or classes
};

const std::set<std::string_view> kPyCompound = {"if",  "elif",    "else",    "for",
                                                "while", "try",   "except",  "finally",
                                                "with", "def",    "class"};

std::optional<std::size_t> find_depth0(const std::vector<Token>& tokens, std::size_t first,
                                       std::size_t last, std::string_view what) {
  int depth = 0;
  for (std::size_t i = first; i < last; ++i) {
    const auto& t = tokens[i];
    if (t.kind != TokenKind::op) continue;
    if (depth == 0 && t.text == what) return i;
    if (is_open(t.text)) ++depth;
    if (is_close(t.text)) --depth;
  }
  return std::nullopt;
}

void parse_python_import(std::string_view text, const std::vector<Token>& tokens,
                         const LogicalLine& ll, Outline& outline) {
  ImportStatement stmt;
  stmt.first_line = ll.first_line;
  stmt.last_line = ll.last_line;
  std::size_t i = ll.begin;
  auto dotted = [&](std::size_t& j) {
    std::string name;
    while (j < ll.end && (tokens[j].kind == TokenKind::identifier || is_op(tokens[j], "."))) {
      name += tokens[j].text;
      ++j;
    }
    return name;
  };
  if (tokens[i].text == "import") {
    ++i;
    for (auto [b, e] : split_params(tokens, i, ll.end, false)) {
      std::size_t j = b;
      ImportedName n;
      n.name = dotted(j);
      n.bound = n.name.substr(0, n.name.find('.'));
      if (j + 1 < e && tokens[j].text == "as") n.bound = tokens[j + 1].text;
      if (!n.name.empty()) stmt.names.push_back(n);
    }
    if (!stmt.names.empty()) stmt.module = stmt.names.front().name;
  } else {
    stmt.is_from = true;
    ++i;
    while (i < ll.end && (is_op(tokens[i], ".") || is_op(tokens[i], "..."))) {
      stmt.level += static_cast<int>(tokens[i].text.size());
      ++i;
    }
    stmt.module = dotted(i);
    if (i < ll.end && tokens[i].text == "import") ++i;
    std::size_t first = i;
    std::size_t last = ll.end;
    if (first < last && is_op(tokens[first], "(")) {
      ++first;
      if (is_op(tokens[last - 1], ")")) --last;
    }
    if (first < last && is_op(tokens[first], "*")) {
      stmt.wildcard = true;
    } else {
      for (auto [b, e] : split_params(tokens, first, last, false)) {
        if (b >= e || tokens[b].kind != TokenKind::identifier) continue;
        ImportedName n{tokens[b].text, tokens[b].text};
        if (b + 2 < e && tokens[b + 1].text == "as") n.bound = tokens[b + 2].text;
        stmt.names.push_back(n);
      }
    }
  }
  (void)text;
  outline.imports.push_back(std::move(stmt));
}

void python_fail(Outline& outline, int line, std::string message) {
  if (!outline.ok) return;
  outline.ok = false;
  outline.error_line = line;
  outline.error = std::move(message);
}

Outline parse_python(std::string_view text, const std::vector<Token>& tokens) {
  Outline outline;
  const auto lines = python_logical_lines(text, tokens);

  std::vector<int> indents{0};
  bool prev_opens_block = false;
  int prev_line = 0;
  std::vector<PyScope> scopes;
  std::vector<ClassInfo> classes;
  std::vector<std::size_t> pending_decorators;  // logical line indices

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& ll = lines[li];
    const Token& head = tokens[ll.begin];

    // Indentation.
    if (ll.indent > indents.back()) {
      if (!prev_opens_block) python_fail(outline, ll.first_line, "unexpected indent");
      indents.push_back(ll.indent);
    } else {
      if (prev_opens_block) python_fail(outline, prev_line, "expected an indented block");
      while (ll.indent < indents.back()) indents.pop_back();
      if (ll.indent != indents.back()) {
        python_fail(outline, ll.first_line, "unindent does not match any outer indentation level");
      }
    }
    const Token& tail = tokens[ll.end - 1];
    prev_opens_block = is_op(tail, ":");
    prev_line = ll.last_line;

    // Scope bookkeeping.
    while (!scopes.empty() && scopes.back().indent >= ll.indent) scopes.pop_back();
    for (const auto& s : scopes) {
      if (s.kind == PyScope::function) outline.functions[s.index].end_line = ll.last_line;
    }

    std::size_t kw = ll.begin;
    if (head.text == "async" && ll.end - ll.begin > 1 && tokens[kw + 1].text == "def") ++kw;
    const std::string_view keyword = tokens[kw].kind == TokenKind::keyword ? std::string_view(tokens[kw].text) : "";

    if (kPyCompound.contains(keyword) && !find_depth0(tokens, kw, ll.end, ":")) {
      python_fail(outline, ll.first_line, "expected ':'");
    }
    if (keyword == "import" || keyword == "from") parse_python_import(text, tokens, ll, outline);

    if (is_op(head, "@")) {
      pending_decorators.push_back(li);
      continue;
    }

    const bool in_function = std::any_of(scopes.begin(), scopes.end(), [](const PyScope& s) {
      return s.kind == PyScope::function;
    });

    if (keyword == "class") {
      if (kw + 1 >= ll.end || tokens[kw + 1].kind != TokenKind::identifier ||
          kw + 2 >= ll.end || !(is_op(tokens[kw + 2], ":") || is_op(tokens[kw + 2], "("))) {
        python_fail(outline, ll.first_line, "invalid class header");
      } else {
        const auto colon = find_depth0(tokens, kw, ll.end, ":").value_or(ll.end - 1);
        classes.push_back(ClassInfo{tokens[kw + 1].text, render_tokens(text, tokens, kw, colon + 1),
                                    ll.first_line});
        scopes.push_back({PyScope::klass, ll.indent, classes.size() - 1});
      }
    } else if (keyword == "def") {
      const bool header_ok = kw + 2 < ll.end && tokens[kw + 1].kind == TokenKind::identifier &&
                             is_op(tokens[kw + 2], "(");
      const std::size_t close = header_ok ? match_bracket(tokens, kw + 2) : ll.end;
      const auto colon = close < ll.end ? find_depth0(tokens, close + 1, ll.end, ":") : std::nullopt;
      const bool tail_ok = colon && (*colon == close + 1 || is_op(tokens[close + 1], "->"));
      if (!header_ok || close >= ll.end || !tail_ok) {
        python_fail(outline, ll.first_line, "invalid function header");
      } else {
        FunctionDef fn;
        fn.name = tokens[kw + 1].text;
        fn.header = render_tokens(text, tokens, ll.begin, *colon + 1);
        const std::string params = render_tokens(text, tokens, kw + 2, close + 1);
        fn.signature = fn.name + params;
        if (*colon > close + 1) {
          fn.return_type = render_tokens(text, tokens, close + 2, *colon);
          fn.signature += " -> " + *fn.return_type;
        }
        for (auto [b, e] : split_params(tokens, kw + 3, close, false)) {
          std::size_t j = b;
          while (j < e && (is_op(tokens[j], "*") || is_op(tokens[j], "**"))) ++j;
          if (j < e && tokens[j].kind == TokenKind::identifier) fn.param_names.push_back(tokens[j].text);
        }
        for (std::size_t d : pending_decorators) {
          fn.decorators.push_back(
              render_tokens(text, tokens, lines[d].begin + 1, lines[d].end));
        }
        fn.is_static = std::any_of(fn.decorators.begin(), fn.decorators.end(), [](const std::string& d) {
          return d == "staticmethod" || d == "classmethod";
        });
        fn.nested_in_function = in_function;
        // Enclosing classes: the chain of class scopes with no function between.
        for (const auto& s : scopes) {
          if (s.kind == PyScope::function) {
            fn.classes.clear();
          } else {
            fn.classes.push_back(classes[s.index]);
          }
        }
        if (in_function) fn.classes.clear();
        const std::size_t first_tok = pending_decorators.empty() ? ll.begin : lines[pending_decorators.front()].begin;
        fn.start_line = tokens[first_tok].line;
        fn.start_offset = tokens[first_tok].offset - static_cast<std::size_t>(tokens[first_tok].column);
        fn.end_line = ll.last_line;
        outline.functions.push_back(std::move(fn));
        scopes.push_back({PyScope::function, ll.indent, outline.functions.size() - 1});
      }
    }
    pending_decorators.clear();
  }
  if (prev_opens_block) python_fail(outline, prev_line, "expected an indented block");

  // End offsets from end lines.
  std::vector<std::size_t> line_ends;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_ends.push_back(i);
  }
  line_ends.push_back(text.size());
  for (auto& fn : outline.functions) {
    fn.end_offset = line_ends[static_cast<std::size_t>(std::max(1, fn.end_line)) - 1];
  }
  return outline;
}

// ------------------------------------------------------------------ java

const std::set<std::string_view> kJavaModifiers = {
    "public",   "private",  "protected", "static",  "final",     "abstract",
    "synchronized", "native", "strictfp", "default", "transient", "volatile",
    "sealed",   "non-sealed"};

bool is_type_keyword(std::string_view t) {
  return t == "class" || t == "interface" || t == "enum" || t == "record";
}

struct JavaClassCtx {
  ClassInfo info;
  bool is_enum = false;
};

class JavaParser {
 public:
  JavaParser(std::string_view text, const std::vector<Token>& tokens)
      : text_(text), tokens_(tokens) {}

  Outline run() {
    std::size_t i = 0;
    while (i < tokens_.size()) {
      const auto& t = tokens_[i];
      if (t.text == "package") {
        const std::size_t end = find_semicolon(i);
        outline_.package = render_tokens(text_, tokens_, i + 1, end);
        i = end + 1;
      } else if (t.text == "import") {
        i = parse_import(i);
      } else if (is_op(t, ";")) {
        ++i;
      } else {
        i = parse_member(i, tokens_.size(), {});
      }
    }
    return std::move(outline_);
  }

 private:
  std::size_t find_semicolon(std::size_t i) const {
    while (i < tokens_.size() && !is_op(tokens_[i], ";")) ++i;
    return i;
  }

  std::size_t parse_import(std::size_t i) {
    const std::size_t end = find_semicolon(i);
    ImportStatement stmt;
    stmt.first_line = tokens_[i].line;
    stmt.last_line = end < tokens_.size() ? tokens_[end].line : tokens_[i].line;
    std::size_t j = i + 1;
    if (j < end && tokens_[j].text == "static") {
      stmt.is_static = true;
      ++j;
    }
    std::string path;
    for (; j < end; ++j) path += tokens_[j].text;
    if (path.ends_with(".*")) {
      stmt.wildcard = true;
      stmt.module = path.substr(0, path.size() - 2);
    } else {
      const auto dot = path.rfind('.');
      const std::string last = dot == std::string::npos ? path : path.substr(dot + 1);
      stmt.module = path;
      if (stmt.is_static && dot != std::string::npos) stmt.module = path.substr(0, dot);
      stmt.names.push_back({last, last});
    }
    outline_.imports.push_back(std::move(stmt));
    return end + 1;
  }

  // Skips an annotation starting at '@'; returns the index after it.
  std::size_t skip_annotation(std::size_t i, std::size_t limit) const {
    ++i;  // '@'
    while (i < limit && (tokens_[i].kind == TokenKind::identifier || is_op(tokens_[i], "."))) ++i;
    if (i < limit && is_op(tokens_[i], "(")) i = match_bracket(tokens_, i) + 1;
    return i;
  }

  // Parses one member (or top-level declaration) starting at `i`, bounded by
  // `limit`. Returns the index of the next member.
  std::size_t parse_member(std::size_t i, std::size_t limit, const std::vector<JavaClassCtx>& chain) {
    const std::size_t member_begin = i;
    std::vector<std::size_t> member;  // token indices, annotations removed
    bool saw_assign = false;
    bool type_decl = false;
    while (i < limit) {
      const auto& t = tokens_[i];
      if (is_op(t, "@") && i + 1 < limit && tokens_[i + 1].text != "interface") {
        i = skip_annotation(i, limit);
        continue;
      }
      if (is_op(t, ";")) {
        return i + 1;  // field, abstract method or empty declaration
      }
      if (is_op(t, "=")) saw_assign = true;
      if (t.kind == TokenKind::keyword && is_type_keyword(t.text) &&
          (member.empty() || tokens_[member.back()].text != ".")) {
        type_decl = true;
      }
      if (t.text == "record" && t.kind == TokenKind::identifier && !saw_assign &&
          i + 2 < limit && tokens_[i + 1].kind == TokenKind::identifier) {
        type_decl = true;
      }
      if (is_op(t, "(") && !type_decl) {
        member.push_back(i);
        i = match_bracket(tokens_, i);
        if (i >= limit) return limit;
        member.push_back(i);
        ++i;
        continue;
      }
      if (is_op(t, "{")) break;
      if (is_op(t, "}")) return i + 1;  // stray close; let the caller resync
      member.push_back(i);
      ++i;
    }
    if (i >= limit) return limit;
    const std::size_t open = i;
    const std::size_t close = std::min(match_bracket(tokens_, open), limit);

    if (saw_assign && !type_decl) {
      // Initializer with braces (array literal, anonymous class): skip to ';'.
      std::size_t j = close + 1;
      int depth = 0;
      while (j < limit) {
        if (is_open(tokens_[j].text)) ++depth;
        if (is_close(tokens_[j].text)) --depth;
        if (depth == 0 && is_op(tokens_[j], ";")) return j + 1;
        if (depth < 0) return j;
        ++j;
      }
      return limit;
    }

    if (type_decl) {
      std::size_t k = 0;
      while (k < member.size() &&
             !(is_type_keyword(tokens_[member[k]].text) && (tokens_[member[k]].kind == TokenKind::keyword ||
                                                            tokens_[member[k]].text == "record"))) {
        ++k;
      }
      JavaClassCtx ctx;
      if (k + 1 < member.size()) ctx.info.name = tokens_[member[k + 1]].text;
      ctx.is_enum = k < member.size() && tokens_[member[k]].text == "enum";
      ctx.info.header = render_tokens(text_, tokens_, first_code_token(member_begin, open), open);
      ctx.info.start_line = tokens_[member_begin].line;
      auto inner = chain;
      inner.push_back(ctx);
      parse_body(open + 1, close, inner);
      return close + 1;
    }

    // Method or constructor: requires '(' among the member tokens.
    const auto paren = std::find_if(member.begin(), member.end(),
                                    [&](std::size_t idx) { return is_op(tokens_[idx], "("); });
    if (paren != member.end() && paren != member.begin() && !chain.empty()) {
      const std::size_t name_idx = *(paren - 1);
      const std::size_t lparen = *paren;
      const std::size_t rparen = match_bracket(tokens_, lparen);
      if (tokens_[name_idx].kind == TokenKind::identifier) {
        add_method(member_begin, member, static_cast<std::size_t>(paren - member.begin()), name_idx, lparen,
                   rparen, open, close, chain);
      }
    }
    return close + 1;
  }

  std::size_t first_code_token(std::size_t i, std::size_t limit) const {
    while (i < limit && is_op(tokens_[i], "@") && i + 1 < limit && tokens_[i + 1].text != "interface") {
      i = skip_annotation(i, limit);
    }
    return i;
  }

  void parse_body(std::size_t first, std::size_t last, const std::vector<JavaClassCtx>& chain) {
    std::size_t i = first;
    if (chain.back().is_enum) {
      // Enum constants run up to the first depth-0 ';'.
      int depth = 0;
      std::size_t j = first;
      for (; j < last; ++j) {
        if (is_open(tokens_[j].text)) ++depth;
        if (is_close(tokens_[j].text)) --depth;
        if (depth == 0 && is_op(tokens_[j], ";")) break;
      }
      i = j < last ? j + 1 : last;
    }
    while (i < last) {
      const std::size_t next = parse_member(i, last, chain);
      i = std::max(next, i + 1);
    }
  }

  void add_method(std::size_t member_begin, const std::vector<std::size_t>& member, std::size_t paren_pos,
                  std::size_t name_idx, std::size_t lparen, std::size_t rparen, std::size_t open,
                  std::size_t close, const std::vector<JavaClassCtx>& chain) {
    FunctionDef fn;
    fn.name = tokens_[name_idx].text;
    fn.classes.reserve(chain.size());
    for (const auto& c : chain) fn.classes.push_back(c.info);

    // modifiers, optional type parameters, return type, name
    std::size_t k = 0;
    const std::size_t name_pos = paren_pos - 1;
    while (k < name_pos && kJavaModifiers.contains(tokens_[member[k]].text)) {
      fn.modifiers.push_back(tokens_[member[k]].text);
      ++k;
    }
    if (k < name_pos && is_op(tokens_[member[k]], "<")) {
      int depth = 0;
      for (; k < name_pos; ++k) {
        if (is_op(tokens_[member[k]], "<")) ++depth;
        if (is_op(tokens_[member[k]], ">") && --depth == 0) {
          ++k;
          break;
        }
      }
    }
    if (k < name_pos) {
      fn.return_type = render_tokens(text_, tokens_, member[k], member[name_pos - 1] + 1);
    }
    fn.is_static = std::find(fn.modifiers.begin(), fn.modifiers.end(), "static") != fn.modifiers.end();

    for (auto [b, e] : split_params(tokens_, lparen + 1, rparen, true)) {
      for (std::size_t j = e; j > b; --j) {
        if (tokens_[j - 1].kind == TokenKind::identifier) {
          fn.param_names.push_back(tokens_[j - 1].text);
          break;
        }
      }
    }
    const std::size_t header_begin = first_code_token(member_begin, open);
    fn.header = render_tokens(text_, tokens_, header_begin, open);
    const std::string params = render_tokens(text_, tokens_, lparen, rparen + 1);
    fn.signature = (fn.return_type ? *fn.return_type + " " : std::string()) + fn.name + params;
    fn.start_line = tokens_[member_begin].line;
    fn.start_offset = tokens_[member_begin].offset - static_cast<std::size_t>(tokens_[member_begin].column);
    fn.end_line = tokens_[close].line;
    fn.end_offset = token_end(tokens_[close]);
    outline_.functions.push_back(std::move(fn));
  }

  std::string_view text_;
  const std::vector<Token>& tokens_;
  Outline outline_;
};

}  // namespace

std::string render_tokens(std::string_view text, const std::vector<Token>& tokens, std::size_t first,
                          std::size_t last) {
  std::string out;
  for (std::size_t i = first; i < last && i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (i > first) {
      const auto& prev = tokens[i - 1];
      const bool gap = token_end(prev) < t.offset;
      const bool glue = prev.text == "(" || prev.text == "[" || t.text == ")" || t.text == "]" ||
                        t.text == ",";
      if (gap && !glue) out += ' ';
    }
    out += t.text;
  }
  (void)text;
  return out;
}

std::string normalize_header(std::string_view fragment, Language lang) {
  const auto tokens = tokenize(fragment, lang);
  return render_tokens(fragment, tokens, 0, tokens.size());
}

Outline parse_outline(std::string_view text, const std::vector<Token>& tokens,
                      std::optional<LexError> lex_error, Language lang) {
  Outline outline;
  if (lang == Language::python) {
    outline = parse_python(text, tokens);
  } else {
    outline = JavaParser(text, tokens).run();
  }
  const auto brackets = check_brackets(tokens);
  if (!brackets.ok) {
    outline.ok = false;
    outline.error_line = brackets.line;
    outline.error = brackets.message;
  }
  if (lex_error) {
    outline.ok = false;
    outline.error_line = lex_error->line;
    outline.error = lex_error->message;
  }
  return outline;
}

Outline parse_outline(const SourceFile& file) {
  const auto result = lex(file.text, file.language);
  return parse_outline(file.text, result.tokens, result.error, file.language);
}

}  // namespace apiinfer
