#include <gtest/gtest.h>

#include "apiinfer/lexer.hpp"

using namespace apiinfer;

namespace {

std::vector<std::string> texts(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

}  // namespace

TEST(Lexer, PythonBasicTokens) {
  const auto toks = tokenize("x = load_data(path, 'csv')  # read\n", Language::python);
  EXPECT_EQ(texts(toks), (std::vector<std::string>{"x", "=", "load_data", "(", "path", ",", "'csv'", ")"}));
  EXPECT_EQ(toks[0].kind, TokenKind::identifier);
  EXPECT_EQ(toks[6].kind, TokenKind::string);
  EXPECT_EQ(toks[2].column, 4);
}

TEST(Lexer, KeywordsAreClassified) {
  const auto toks = tokenize("def f(): return None", Language::python);
  EXPECT_EQ(toks[0].kind, TokenKind::keyword);
  EXPECT_EQ(toks[1].kind, TokenKind::identifier);
  EXPECT_TRUE(is_keyword("class", Language::java));
  EXPECT_FALSE(is_keyword("def", Language::java));
}

TEST(Lexer, TripleQuotedStringSpansLines) {
  const auto toks = tokenize("s = \"\"\"a\nb\"\"\"\ny = 1\n", Language::python);
  ASSERT_EQ(toks.size(), 6u);
  EXPECT_EQ(toks[2].kind, TokenKind::string);
  EXPECT_EQ(toks[2].end_line(), 2);
  EXPECT_EQ(toks[3].line, 3);
}

TEST(Lexer, MultiCharOperators) {
  const auto toks = tokenize("a **= b // c -> d", Language::python);
  EXPECT_EQ(texts(toks), (std::vector<std::string>{"a", "**=", "b", "//", "c", "->", "d"}));
}

TEST(Lexer, JavaCommentsAndGenerics) {
  const auto toks = tokenize("List<String> xs = a.b(); // note\n/* block */ int y;", Language::java);
  EXPECT_EQ(texts(toks),
            (std::vector<std::string>{"List", "<", "String", ">", "xs", "=", "a", ".", "b", "(", ")", ";", "int", "y", ";"}));
}

TEST(Lexer, KeepCommentsWhenAsked) {
  const auto res = lex("x = 1  # hello there\n", Language::python, true);
  ASSERT_FALSE(res.tokens.empty());
  EXPECT_EQ(res.tokens.back().kind, TokenKind::comment);
}

TEST(Lexer, UnterminatedStringReported) {
  const auto res = lex("s = 'abc\nx = 1\n", Language::python);
  ASSERT_TRUE(res.error.has_value());
  EXPECT_EQ(res.error->line, 1);
}

TEST(Lexer, CountTokensCountsCommentWords) {
  EXPECT_EQ(count_tokens("# pkg/app.py", Language::python), 2u);
  EXPECT_EQ(count_tokens("x = 1", Language::python), 3u);
  EXPECT_EQ(count_tokens("x = 1  # two words", Language::python), 6u);
  EXPECT_EQ(count_tokens("", Language::python), 0u);
  EXPECT_EQ(count_tokens("// src/A.java\nint x;", Language::java), 5u);
}

TEST(Lexer, LanguageFromPath) {
  EXPECT_EQ(language_for_path("a/b.py"), Language::python);
  EXPECT_EQ(language_for_path("A.java"), Language::java);
  EXPECT_FALSE(language_for_path("README.md").has_value());
  EXPECT_EQ(language_from_string("java"), Language::java);
}
