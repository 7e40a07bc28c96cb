#include "apiinfer/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

namespace apiinfer {

double jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

WindowCorpus::WindowCorpus(const std::vector<SourceFile>& files, int window_len, int slide) {
  for (const auto& f : files) {
    auto w = apiinfer::windows(f, window_len, slide);
    windows_.insert(windows_.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  }
  link();
}

WindowCorpus::WindowCorpus(std::vector<CodeWindow> windows) : windows_(std::move(windows)) {
  std::stable_sort(windows_.begin(), windows_.end(), [](const CodeWindow& a, const CodeWindow& b) {
    return std::tie(a.file, a.start_line) < std::tie(b.file, b.start_line);
  });
  link();
}

void WindowCorpus::link() {
  next_.resize(windows_.size());
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    const bool has_next = i + 1 < windows_.size() && windows_[i + 1].file == windows_[i].file;
    next_[i] = has_next ? i + 1 : i;
  }
}

WindowFilter exclude_from_cursor(std::string file, int cursor_line) {
  return [file = std::move(file), cursor_line](const CodeWindow& w) {
    return w.file == file && w.end_line >= cursor_line;
  };
}

std::size_t window_tokens(const CodeWindow& window) {
  return count_tokens(window.text, language_for_path(window.file).value_or(Language::python));
}

std::vector<SnippetHit> similar_code(const TokenSet& query_tokens, const WindowCorpus& corpus, long budget_tokens,
                                     const WindowFilter& exclude) {
  const auto& ws = corpus.windows();
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (exclude && (exclude(ws[i]) || exclude(ws[corpus.subsequent(i)]))) continue;
    scored.emplace_back(jaccard(query_tokens, ws[i].token_set), i);
  }
  // Windows are stored in (file, start_line) order, so index order breaks ties.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<SnippetHit> hits;
  std::set<std::size_t> used;
  long spent = 0;
  for (const auto& [score, i] : scored) {
    const std::size_t s = corpus.subsequent(i);
    if (!used.insert(s).second) continue;
    if (budget_tokens >= 0) {
      const long cost = static_cast<long>(window_tokens(ws[s]));
      if (spent + cost > budget_tokens) break;
      spent += cost;
    }
    hits.push_back(SnippetHit{score, ws[s], ws[i]});
  }
  return hits;
}

std::vector<SnippetHit> similar_code(const std::string& query_text, Language lang, const WindowCorpus& corpus,
                                     long budget_tokens, const WindowFilter& exclude) {
  return similar_code(make_token_set(tokenize(query_text, lang)), corpus, budget_tokens, exclude);
}

std::string_view to_string(HitSource source) { return source == HitSource::uer ? "uer" : "fsr"; }

namespace {

std::vector<ApiHit> top_k(std::vector<ApiHit> all, std::size_t k) {
  auto better = [](const ApiHit& a, const ApiHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entry->qualified_name < b.entry->qualified_name;
  };
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), better);
  all.resize(k);
  return all;
}

}  // namespace

std::vector<ApiHit> rank_by_usage(const Embedding& query, const KnowledgeBase& kb, std::size_t k) {
  std::vector<ApiHit> all;
  all.reserve(kb.entries.size());
  for (const auto& e : kb.entries) {
    ApiHit hit{&e, 0.0, HitSource::uer, std::nullopt};
    if (e.ue_embeddings.rows() > 0) {
      const auto scores = cosine_rows(e.ue_embeddings, query);
      Eigen::Index best = 0;
      hit.score = scores.maxCoeff(&best);
      hit.best_ue_form = e.usage_examples[static_cast<std::size_t>(best)].form;
    }
    all.push_back(hit);
  }
  return top_k(std::move(all), k);
}

std::vector<ApiHit> rank_by_docstring(const Embedding& query, const KnowledgeBase& kb, std::size_t k) {
  std::vector<ApiHit> all;
  for (const auto& e : kb.entries) {
    if (e.degraded) continue;
    all.push_back(ApiHit{&e, cosine(e.doc_embedding, query), HitSource::fsr, std::nullopt});
  }
  return top_k(std::move(all), k);
}

std::vector<ApiHit> uer(const std::string& draft_line, const KnowledgeBase& kb, const EmbedderPort& embedder,
                        std::size_t k) {
  const bool blank = std::all_of(draft_line.begin(), draft_line.end(),
                                 [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank || kb.entries.empty()) return {};
  return rank_by_usage(embedder.embed_one(draft_line), kb, k);
}

FsrResult fsr(const std::string& draft_block, Language lang, const KnowledgeBase& kb,
              const SummarizerPort& summarizer, const EmbedderPort& embedder, std::size_t k) {
  FsrResult result;
  const bool blank = std::all_of(draft_block.begin(), draft_block.end(),
                                 [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank || kb.entries.empty()) return result;
  try {
    auto summary = summarizer.summarize(draft_block, lang);
    result.docstring = std::move(summary.text);
    result.fell_back = summary.fell_back;
  } catch (const std::exception&) {
    result.docstring = fallback_summary(draft_block, lang);
    result.fell_back = true;
  }
  result.hits = rank_by_docstring(embedder.embed_one(result.docstring), kb, k);
  return result;
}

}  // namespace apiinfer
