#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "apiinfer/embedding.hpp"
#include "apiinfer/lexer.hpp"

namespace apiinfer {

// Text -> unit-norm vectors. Implementations must be safe for concurrent calls.
class EmbedderPort {
 public:
  virtual ~EmbedderPort() = default;
  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) const = 0;
  virtual int dim() const = 0;
  virtual std::string id() const = 0;

  Embedding embed_one(const std::string& text) const { return embed({text}).front(); }
};

struct Summary {
  std::string text;
  bool fell_back = false;  // the backing model failed and the fallback answered
};

class SummarizerPort {
 public:
  virtual ~SummarizerPort() = default;
  virtual Summary summarize(std::string_view code, Language lang) const = 0;
  virtual std::string id() const = 0;
};

class CompletionPort {
 public:
  virtual ~CompletionPort() = default;
  virtual std::string complete(std::string_view prompt, int max_new_tokens) const = 0;
  virtual std::string id() const = 0;
};

// Bag-of-tokens feature hashing: each lexical token adds 1 to bucket
// fnv1a(token) % dim, then the vector is L2-normalized. Empty input gives the
// zero vector.
class HashEmbedder final : public EmbedderPort {
 public:
  explicit HashEmbedder(int dim = 256, Language lang = Language::python);
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;
  int dim() const override { return dim_; }
  std::string id() const override;

  std::size_t bucket(std::string_view token) const;

 private:
  int dim_;
  Language lang_;
};

// "Performs <name words> given <params>." built from the first definition
// header in `code`, else the first call expression, else the identifiers.
std::string fallback_summary(std::string_view code, Language lang);

// Splits snake_case / camelCase identifiers into lowercase words.
std::vector<std::string> split_identifier_words(std::string_view name);

struct SummaryExemplar {
  std::string code;
  std::string docstring;
};

std::vector<SummaryExemplar> default_summary_exemplars(Language lang);

// Few-shot summarization prompt: instruction, exemplar code/docstring pairs,
// then the target code last.
std::string render_summary_prompt(std::string_view code, const std::vector<SummaryExemplar>& exemplars);

// Docstring body from a raw model answer: quotes and surrounding blank lines removed.
std::string extract_docstring(std::string_view model_output);

// Summarizer rendering the few-shot template through `llm`; without an llm, or
// when the llm throws, it answers with fallback_summary.
class TemplateSummarizer final : public SummarizerPort {
 public:
  explicit TemplateSummarizer(const CompletionPort* llm = nullptr, std::size_t code_char_budget = 4000,
                              int max_new_tokens = 128);
  Summary summarize(std::string_view code, Language lang) const override;
  std::string id() const override;

 private:
  const CompletionPort* llm_;
  std::size_t code_char_budget_;
  int max_new_tokens_;
};

// Cuts `text` after its max_tokens-th lexical token.
std::string truncate_to_tokens(std::string_view text, int max_tokens, Language lang);

struct MockOracleEntry {
  std::string task_id;
  // Text of the prompt's last line that identifies the task (the unfinished
  // cursor line).
  std::string cursor_line;
  std::string ground_truth;
  std::string distractor;
  // The ground truth is returned iff the prompt contains one of these.
  std::vector<std::string> evidence;
};

// Deterministic evidence-gated stand-in for a code LLM.
class MockLlm final : public CompletionPort {
 public:
  explicit MockLlm(std::vector<MockOracleEntry> entries, Language lang = Language::python);
  std::string complete(std::string_view prompt, int max_new_tokens) const override;
  std::string id() const override { return "mock-oracle"; }

  const MockOracleEntry* find(std::string_view prompt) const;

 private:
  std::vector<MockOracleEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_cursor_line_;
  Language lang_;
};

std::vector<MockOracleEntry> load_mock_oracle(const std::string& path);
void save_mock_oracle(const std::vector<MockOracleEntry>& entries, const std::string& path);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ull);

}  // namespace apiinfer
