#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apiinfer {

enum class Language { python, java };

std::string_view to_string(Language lang);
Language language_from_string(std::string_view name);
// Inferred from the extension only; nullopt for anything but .py / .java.
std::optional<Language> language_for_path(std::string_view path);

enum class TokenKind { identifier, keyword, number, string, op, comment, unknown };

struct Token {
  TokenKind kind = TokenKind::unknown;
  std::string text;
  int line = 1;        // 1-based
  int column = 0;      // 0-based byte column
  std::size_t offset = 0;

  int end_line() const;
  bool operator==(const Token&) const = default;
};

struct LexError {
  int line = 0;
  std::string message;
};

struct LexResult {
  std::vector<Token> tokens;
  std::optional<LexError> error;
};

// Total lexer. Unknown bytes become single-character tokens; unterminated
// literals are emitted up to end of input (or end of line) and reported in
// `error`. Comments are only emitted when `keep_comments` is set.
LexResult lex(std::string_view text, Language lang, bool keep_comments = false);

// Lexical tokens without comments or whitespace.
std::vector<Token> tokenize(std::string_view text, Language lang);

// Token count used for every prompt budget. Comment tokens count one per
// whitespace-separated word so that path headers are not free.
std::size_t count_tokens(std::string_view text, Language lang);

bool is_keyword(std::string_view word, Language lang);

}  // namespace apiinfer
