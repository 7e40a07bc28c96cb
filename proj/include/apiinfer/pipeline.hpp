#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apiinfer/config.hpp"
#include "apiinfer/kb.hpp"
#include "apiinfer/providers.hpp"
#include "apiinfer/retrieval.hpp"

namespace apiinfer {

struct MaskedLine {
  int line_no = 0;
  std::string text;

  bool operator==(const MaskedLine&) const = default;
};

struct CompletionTask {
  std::string task_id;
  std::string repo_root;
  std::string file;
  std::string prefix;        // unfinished code up to the cursor
  std::string ground_truth;  // cursor to end of line
  std::vector<MaskedLine> masked_import_lines;
  Language language = Language::python;
  int cursor_line = 0;  // 1-based line in the original file
  int cursor_column = 0;

  bool operator==(const CompletionTask&) const = default;
};

nlohmann::json to_json(const CompletionTask& task);
CompletionTask task_from_json(const nlohmann::json& j);

enum class BlockKind { similar_snippet, api_info };

struct PromptBlock {
  BlockKind kind = BlockKind::similar_snippet;
  std::string file;
  std::string text;
  double score = 0.0;
  std::string label;  // qualified name or file:start-end
};

struct PromptPlan {
  Language language = Language::python;
  std::vector<PromptBlock> blocks;
  std::string infile_file;
  std::string infile_context;
  int total_budget = 0;
  int retrieved_budget = 0;
  int infile_budget = 0;
  std::vector<std::string> dropped;  // labels of blocks removed to fit the budget
};

std::string comment_prefix(Language lang);
std::string render_block(const PromptBlock& block, Language lang);
std::string render_prompt(const PromptPlan& plan);
std::size_t retrieved_tokens(const PromptPlan& plan);
std::size_t prompt_tokens(const PromptPlan& plan);

// Enclosing class header (if any) plus the declaration header; never the body.
std::string render_api_info(const ApiRecord& api);

// The longest tail of `prefix` (whole lines, the unfinished cursor line always
// kept) that fits `budget` tokens together with the file-path comment line.
std::string infile_tail(const std::string& prefix, const std::string& file, Language lang, int budget);

struct PipelineContext {
  const KnowledgeBase* kb = nullptr;
  const WindowCorpus* corpus = nullptr;
  const EmbedderPort* embedder = nullptr;
  const SummarizerPort* summarizer = nullptr;
  const CompletionPort* llm = nullptr;
  RunConfig cfg;
};

struct DraftResult {
  PromptPlan plan;
  std::string prompt;
  std::string output;  // raw model output, never post-processed
  std::vector<SnippetHit> snippets;
  std::optional<std::string> error;
};

DraftResult generate_draft(const CompletionTask& task, const PipelineContext& ctx);

struct RetrievalFlags {
  bool uer = true;
  bool fsr = true;
};

struct Knowledge {
  std::string uer_query;
  std::string fsr_query;
  std::string fsr_docstring;
  bool fsr_fell_back = false;
  std::vector<ApiHit> uer_hits;
  std::vector<ApiHit> fsr_hits;
  // uer_hits and fsr_hits with repeated qualified names removed (higher score kept).
  std::vector<ApiHit> api_hits;
  std::vector<SnippetHit> snippet_hits;
  std::string snippet_query;
};

// The line of prefix+draft holding the first generated tokens.
std::string uer_query_line(const std::string& prefix, const std::string& draft);

Knowledge retrieve_knowledge(const CompletionTask& task, const std::string& draft, const PipelineContext& ctx,
                             RetrievalFlags flags = {});

// Similar snippets (score-descending) then API infos (UER then FSR unless
// configured otherwise), then the unfinished code. Whole blocks are dropped,
// lowest-scoring API info first, until the retrieved part fits.
PromptPlan assemble_prompt(const CompletionTask& task, const Knowledge& knowledge, const RunConfig& cfg);

struct CompletionResult {
  std::string prediction;
  nlohmann::json trace;
};

// Runs one task in `mode`. `external_draft` is required for
// aim_over_external_draft and ignored otherwise.
CompletionResult complete_task(const CompletionTask& task, Mode mode, const PipelineContext& ctx,
                               const std::optional<std::string>& external_draft = std::nullopt);

// complete_task over every task with `workers` threads; results keep task
// order. For aim_over_external_draft, `drafts` maps task_id to the draft.
std::vector<CompletionResult> run_tasks(const std::vector<CompletionTask>& tasks, Mode mode,
                                        const PipelineContext& ctx,
                                        const std::map<std::string, std::string>& drafts = {});

std::string first_line(const std::string& text);

}  // namespace apiinfer
