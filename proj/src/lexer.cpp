#include "apiinfer/lexer.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace apiinfer {

namespace {

constexpr std::array kPythonKeywords = {
    "False", "None",   "True",    "and",      "as",       "assert", "async",
    "await", "break",  "class",   "continue", "def",      "del",    "elif",
    "else",  "except", "finally", "for",      "from",     "global", "if",
    "import", "in",    "is",      "lambda",   "nonlocal", "not",    "or",
    "pass",  "raise",  "return",  "try",      "while",    "with",   "yield"};

constexpr std::array kJavaKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while",      "true",      "false",     "null"};

// Longest operators first.
constexpr std::array kPythonOps = {"**=", "//=", ">>=", "<<=", "...", "->", ":=", "**",
                                   "//",  "<<",  ">>",  "<=",  ">=",  "==", "!=", "+=",
                                   "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", "@="};

// '>>' and '>>>' are deliberately absent so nested generics close one '>' at a time.
constexpr std::array kJavaOps = {"...", "->", "::", "++", "--", "&&", "||", "==", "!=",
                                 "<=",  ">=", "+=", "-=", "*=", "/=", "&=", "|=", "^=",
                                 "%=",  "<<=", "<<"};

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, Language lang, bool keep_comments)
      : text_(text), lang_(lang), keep_comments_(keep_comments) {}

  LexResult run() {
    while (pos_ < text_.size()) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '\n') {
        advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance(1);
      } else if (c == '\\' && lang_ == Language::python && peek(1) == '\n') {
        advance(2);
      } else if (lang_ == Language::python && c == '#') {
        line_comment();
      } else if (lang_ == Language::java && c == '/' && peek(1) == '/') {
        line_comment();
      } else if (lang_ == Language::java && c == '/' && peek(1) == '*') {
        block_comment();
      } else if (lang_ == Language::python && python_string_start()) {
        python_string();
      } else if (lang_ == Language::java && (c == '"' || c == '\'')) {
        java_string();
      } else if (is_ident_start(c)) {
        identifier();
      } else if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
        number();
      } else {
        op();
      }
    }
    return std::move(result_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
    }
  }

  void emit(TokenKind kind, std::size_t start, int line, int column) {
    result_.tokens.push_back(
        Token{kind, std::string(text_.substr(start, pos_ - start)), line, column, start});
  }

  void fail(int line, std::string message) {
    if (!result_.error) result_.error = LexError{line, std::move(message)};
  }

  void line_comment() {
    const auto [start, line, col] = mark();
    while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
    if (keep_comments_) emit(TokenKind::comment, start, line, col);
  }

  void block_comment() {
    const auto [start, line, col] = mark();
    advance(2);
    while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/')) advance(1);
    if (pos_ >= text_.size()) {
      fail(line, "unterminated block comment");
    } else {
      advance(2);
    }
    if (keep_comments_) emit(TokenKind::comment, start, line, col);
  }

  struct Mark {
    std::size_t start;
    int line;
    int column;
  };
  Mark mark() const { return {pos_, line_, static_cast<int>(pos_ - line_start_)}; }

  bool python_string_start() const {
    std::size_t i = pos_;
    std::size_t prefix = 0;
    while (prefix < 2 && i < text_.size() &&
           std::string_view("rRbBuUfF").find(text_[i]) != std::string_view::npos) {
      ++i;
      ++prefix;
    }
    return i < text_.size() && (text_[i] == '"' || text_[i] == '\'');
  }

  void python_string() {
    const auto [start, line, col] = mark();
    while (text_[pos_] != '"' && text_[pos_] != '\'') advance(1);
    const char quote = text_[pos_];
    const bool triple = peek(1) == quote && peek(2) == quote;
    advance(triple ? 3 : 1);
    for (;;) {
      if (pos_ >= text_.size()) {
        fail(line, "unterminated string literal");
        break;
      }
      const char c = text_[pos_];
      // Raw strings still cannot end on an escaped quote.
      if (c == '\\') {
        advance(2);
        continue;
      }
      if (!triple && c == '\n') {
        fail(line, "unterminated string literal");
        break;
      }
      if (c == quote) {
        if (!triple) {
          advance(1);
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          advance(3);
          break;
        }
      }
      advance(1);
    }
    emit(TokenKind::string, start, line, col);
  }

  void java_string() {
    const auto [start, line, col] = mark();
    const char quote = text_[pos_];
    const bool text_block = quote == '"' && peek(1) == '"' && peek(2) == '"';
    advance(text_block ? 3 : 1);
    for (;;) {
      if (pos_ >= text_.size()) {
        fail(line, "unterminated literal");
        break;
      }
      const char c = text_[pos_];
      if (c == '\\') {
        advance(2);
        continue;
      }
      if (!text_block && c == '\n') {
        fail(line, "unterminated literal");
        break;
      }
      if (c == quote) {
        if (!text_block) {
          advance(1);
          break;
        }
        if (peek(1) == '"' && peek(2) == '"') {
          advance(3);
          break;
        }
      }
      advance(1);
    }
    emit(TokenKind::string, start, line, col);
  }

  void identifier() {
    const auto [start, line, col] = mark();
    while (pos_ < text_.size() &&
           (is_ident_char(static_cast<unsigned char>(text_[pos_])) ||
            (lang_ == Language::java && text_[pos_] == '$'))) {
      advance(1);
    }
    const auto word = text_.substr(start, pos_ - start);
    emit(is_keyword(word, lang_) ? TokenKind::keyword : TokenKind::identifier, start, line, col);
  }

  void number() {
    const auto [start, line, col] = mark();
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool exponent_sign =
          (c == '+' || c == '-') && pos_ > start &&
          (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E') &&
          !(pos_ - start >= 2 && (text_[start + 1] == 'x' || text_[start + 1] == 'X'));
      if (is_ident_char(static_cast<unsigned char>(c)) || c == '.' || exponent_sign) {
        advance(1);
      } else {
        break;
      }
    }
    emit(TokenKind::number, start, line, col);
  }

  void op() {
    const auto [start, line, col] = mark();
    const auto rest = text_.substr(pos_);
    auto try_ops = [&](const auto& ops) {
      for (std::string_view candidate : ops) {
        if (rest.starts_with(candidate)) {
          advance(candidate.size());
          return true;
        }
      }
      return false;
    };
    const bool matched = lang_ == Language::python ? try_ops(kPythonOps) : try_ops(kJavaOps);
    if (!matched) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      advance(1);
      const bool punct = std::string_view("()[]{}.,:;=+-*/%<>!&|^~@?").find(static_cast<char>(c)) !=
                         std::string_view::npos;
      emit(punct ? TokenKind::op : TokenKind::unknown, start, line, col);
      return;
    }
    emit(TokenKind::op, start, line, col);
  }

  std::string_view text_;
  Language lang_;
  bool keep_comments_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
  LexResult result_;
};

}  // namespace

std::string_view to_string(Language lang) {
  return lang == Language::python ? "python" : "java";
}

Language language_from_string(std::string_view name) {
  if (name == "python" || name == "py") return Language::python;
  if (name == "java") return Language::java;
  throw std::invalid_argument("unknown language: " + std::string(name));
}

std::optional<Language> language_for_path(std::string_view path) {
  if (path.ends_with(".py")) return Language::python;
  if (path.ends_with(".java")) return Language::java;
  return std::nullopt;
}

int Token::end_line() const {
  return line + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

LexResult lex(std::string_view text, Language lang, bool keep_comments) {
  return Lexer(text, lang, keep_comments).run();
}

std::vector<Token> tokenize(std::string_view text, Language lang) {
  return lex(text, lang).tokens;
}

std::size_t count_tokens(std::string_view text, Language lang) {
  std::size_t n = 0;
  for (const auto& tok : lex(text, lang, /*keep_comments=*/true).tokens) {
    if (tok.kind != TokenKind::comment) {
      ++n;
      continue;
    }
    bool in_word = false;
    for (char c : tok.text) {
      const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
      if (!space && !in_word) ++n;
      in_word = !space;
    }
  }
  return n;
}

bool is_keyword(std::string_view word, Language lang) {
  auto contains = [&](const auto& list) {
    return std::find(list.begin(), list.end(), word) != list.end();
  };
  return lang == Language::python ? contains(kPythonKeywords) : contains(kJavaKeywords);
}

}  // namespace apiinfer
