#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apiinfer/corpus.hpp"
#include "apiinfer/kb.hpp"
#include "apiinfer/providers.hpp"
#include "apiinfer/usage_examples.hpp"

namespace apiinfer {

// |A ∩ B| / |A ∪ B| over sorted unique token sets; 0 when both are empty.
double jaccard(const TokenSet& a, const TokenSet& b);

// All sliding windows of a repository, grouped per file in line order.
class WindowCorpus {
 public:
  WindowCorpus() = default;
  WindowCorpus(const std::vector<SourceFile>& files, int window_len, int slide);
  explicit WindowCorpus(std::vector<CodeWindow> windows);

  const std::vector<CodeWindow>& windows() const { return windows_; }
  // Index of the window that follows `i` in the same file; `i` itself for the
  // last window of a file.
  std::size_t subsequent(std::size_t i) const { return next_[i]; }
  bool empty() const { return windows_.empty(); }

 private:
  void link();

  std::vector<CodeWindow> windows_;
  std::vector<std::size_t> next_;
};

struct SnippetHit {
  double score = 0.0;  // jaccard(query, matched)
  CodeWindow snippet;  // the window after `matched`
  CodeWindow matched;
};

// Windows for which this returns true never match and are never returned.
using WindowFilter = std::function<bool(const CodeWindow&)>;

// Excludes every window of `file` that reaches `cursor_line` or later.
WindowFilter exclude_from_cursor(std::string file, int cursor_line);

// Ranks every window by jaccard against `query_tokens` (descending, ties by
// file then start line), maps each to its subsequent window, drops repeated
// snippets, and accumulates until the next snippet's token count would exceed
// `budget_tokens`. A negative budget means unlimited.
std::vector<SnippetHit> similar_code(const TokenSet& query_tokens, const WindowCorpus& corpus, long budget_tokens,
                                     const WindowFilter& exclude = {});

std::vector<SnippetHit> similar_code(const std::string& query_text, Language lang, const WindowCorpus& corpus,
                                     long budget_tokens, const WindowFilter& exclude = {});

// Budget cost of a window's text.
std::size_t window_tokens(const CodeWindow& window);

enum class HitSource { uer, fsr };
std::string_view to_string(HitSource source);

struct ApiHit {
  const KbEntry* entry = nullptr;
  double score = 0.0;
  HitSource source = HitSource::uer;
  std::optional<UsageForm> best_ue_form;  // UER only
};

// Top-k entries by max cosine between `query` and each entry's usage-example
// embeddings; ties by qualified_name.
std::vector<ApiHit> rank_by_usage(const Embedding& query, const KnowledgeBase& kb, std::size_t k);

// Top-k non-degraded entries by cosine between `query` and the docstring embedding.
std::vector<ApiHit> rank_by_docstring(const Embedding& query, const KnowledgeBase& kb, std::size_t k);

std::vector<ApiHit> uer(const std::string& draft_line, const KnowledgeBase& kb, const EmbedderPort& embedder,
                        std::size_t k);

struct FsrResult {
  std::vector<ApiHit> hits;
  std::string docstring;  // summary of the draft block used as the query
  bool fell_back = false;
};

FsrResult fsr(const std::string& draft_block, Language lang, const KnowledgeBase& kb,
              const SummarizerPort& summarizer, const EmbedderPort& embedder, std::size_t k);

}  // namespace apiinfer
