#include "apiinfer/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <thread>

#include "apiinfer/error.hpp"

namespace apiinfer {

using nlohmann::json;

json to_json(const CompletionTask& t) {
  json masked = json::array();
  for (const auto& m : t.masked_import_lines) masked.push_back({{"line_no", m.line_no}, {"text", m.text}});
  return json{{"task_id", t.task_id},
              {"repo_root", t.repo_root},
              {"file", t.file},
              {"language", to_string(t.language)},
              {"cursor_line", t.cursor_line},
              {"cursor_column", t.cursor_column},
              {"prefix", t.prefix},
              {"ground_truth", t.ground_truth},
              {"masked_import_lines", masked}};
}

CompletionTask task_from_json(const json& j) {
  try {
    CompletionTask t;
    t.task_id = j.at("task_id").get<std::string>();
    t.repo_root = j.value("repo_root", std::string());
    t.file = j.at("file").get<std::string>();
    t.language = language_from_string(j.at("language").get<std::string>());
    t.cursor_line = j.value("cursor_line", 0);
    t.cursor_column = j.value("cursor_column", 0);
    t.prefix = j.at("prefix").get<std::string>();
    t.ground_truth = j.at("ground_truth").get<std::string>();
    for (const auto& m : j.value("masked_import_lines", json::array())) {
      t.masked_import_lines.push_back({m.at("line_no").get<int>(), m.at("text").get<std::string>()});
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed task: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("malformed task: ") + e.what());
  }
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

// ------------------------------------------------------------ rendering

std::string comment_prefix(Language lang) { return lang == Language::java ? "// " : "# "; }

std::string render_block(const PromptBlock& block, Language lang) {
  return comment_prefix(lang) + block.file + "\n" + block.text;
}

std::string render_prompt(const PromptPlan& plan) {
  std::string out;
  for (const auto& b : plan.blocks) {
    out += render_block(b, plan.language);
    out += "\n\n";
  }
  out += comment_prefix(plan.language) + plan.infile_file + "\n";
  out += plan.infile_context;
  return out;
}

std::size_t retrieved_tokens(const PromptPlan& plan) {
  std::size_t n = 0;
  for (const auto& b : plan.blocks) n += count_tokens(render_block(b, plan.language), plan.language);
  return n;
}

std::size_t prompt_tokens(const PromptPlan& plan) { return count_tokens(render_prompt(plan), plan.language); }

std::string render_api_info(const ApiRecord& api) {
  if (api.language == Language::java) {
    std::string decl = api.header + ";";
    if (!api.enclosing_class_decl) return decl;
    return *api.enclosing_class_decl + " {\n    " + decl + "\n}";
  }
  if (!api.enclosing_class_decl) return api.header;
  return *api.enclosing_class_decl + "\n    " + api.header;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string join(const std::vector<std::string>& lines, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < lines.size(); ++i) {
    if (i > from) out += '\n';
    out += lines[i];
  }
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string last_lines(const std::string& text, int n) {
  const auto lines = split_lines(text);
  const std::size_t keep = std::min(lines.size(), static_cast<std::size_t>(std::max(n, 1)));
  return join(lines, lines.size() - keep);
}

}  // namespace

std::string infile_tail(const std::string& prefix, const std::string& file, Language lang, int budget) {
  const long header = static_cast<long>(count_tokens(comment_prefix(lang) + file, lang));
  const long avail = budget - header;
  const auto lines = split_lines(prefix);
  if (avail <= 0) return {};

  // Greedy on per-line counts, then confirm on the joined text since a
  // string can span lines.
  std::size_t from = lines.size() - 1;
  long spent = static_cast<long>(count_tokens(lines.back(), lang));
  if (spent > avail) {
    // Only the cursor line is left; keep its last tokens.
    const auto toks = tokenize(lines.back(), lang);
    const std::size_t keep = static_cast<std::size_t>(avail);
    if (keep >= toks.size()) return {};
    return lines.back().substr(toks[toks.size() - keep].offset);
  }
  while (from > 0) {
    const long cost = static_cast<long>(count_tokens(lines[from - 1], lang));
    if (spent + cost > avail) break;
    spent += cost;
    --from;
  }
  std::string tail = join(lines, from);
  while (from + 1 < lines.size() && static_cast<long>(count_tokens(tail, lang)) > avail) {
    ++from;
    tail = join(lines, from);
  }
  return tail;
}

// ------------------------------------------------------------ plans

namespace {

PromptBlock snippet_block(const SnippetHit& hit) {
  return PromptBlock{BlockKind::similar_snippet, hit.snippet.file, hit.snippet.text, hit.score,
                     hit.snippet.file + ":" + std::to_string(hit.snippet.start_line) + "-" +
                         std::to_string(hit.snippet.end_line)};
}

PromptBlock api_block(const ApiHit& hit) {
  return PromptBlock{BlockKind::api_info, hit.entry->api.file, render_api_info(hit.entry->api), hit.score,
                     hit.entry->qualified_name};
}

// Fills the retrieved half: API infos first (dropping the lowest-scoring ones
// until they fit), then snippets in rank order until the next one overflows.
void fit_blocks(PromptPlan& plan, std::vector<PromptBlock> snippets, std::vector<PromptBlock> apis) {
  auto cost = [&](const PromptBlock& b) { return static_cast<long>(count_tokens(render_block(b, plan.language), plan.language)); };
  const long budget = plan.retrieved_budget;

  long api_cost = 0;
  for (const auto& b : apis) api_cost += cost(b);
  while (api_cost > budget && !apis.empty()) {
    // Lowest score, latest position on ties.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < apis.size(); ++i) {
      if (apis[i].score <= apis[worst].score) worst = i;
    }
    api_cost -= cost(apis[worst]);
    plan.dropped.push_back(apis[worst].label);
    apis.erase(apis.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  long spent = api_cost;
  std::size_t used = 0;
  for (; used < snippets.size(); ++used) {
    const long c = cost(snippets[used]);
    if (spent + c > budget) break;
    spent += c;
  }
  for (std::size_t i = used; i < snippets.size(); ++i) plan.dropped.push_back(snippets[i].label);
  snippets.resize(used);

  plan.blocks = std::move(snippets);
  plan.blocks.insert(plan.blocks.end(), apis.begin(), apis.end());
}

WindowFilter task_filter(const CompletionTask& task) {
  std::vector<int> masked;
  for (const auto& m : task.masked_import_lines) masked.push_back(m.line_no);
  return [file = task.file, cursor = task.cursor_line, masked](const CodeWindow& w) {
    if (w.file != file) return false;
    if (w.end_line >= cursor) return true;
    // The masked imports are absent from the file at completion time.
    return std::any_of(masked.begin(), masked.end(),
                       [&](int l) { return l >= w.start_line && l <= w.end_line; });
  };
}

PromptPlan base_plan(const CompletionTask& task, const RunConfig& cfg, int infile_budget) {
  PromptPlan plan;
  plan.language = task.language;
  plan.total_budget = cfg.total_budget;
  plan.retrieved_budget = cfg.retrieved_budget();
  plan.infile_budget = infile_budget;
  plan.infile_file = task.file;
  plan.infile_context = infile_tail(task.prefix, task.file, task.language, infile_budget);
  return plan;
}

std::vector<SnippetHit> snippets_for(const std::string& query, const CompletionTask& task, const PipelineContext& ctx) {
  if (!ctx.corpus || ctx.corpus->empty()) return {};
  return similar_code(query, task.language, *ctx.corpus, ctx.cfg.retrieved_budget(), task_filter(task));
}

}  // namespace

PromptPlan assemble_prompt(const CompletionTask& task, const Knowledge& knowledge, const RunConfig& cfg) {
  PromptPlan plan = base_plan(task, cfg, cfg.infile_budget());

  std::vector<PromptBlock> snippets;
  for (const auto& h : knowledge.snippet_hits) snippets.push_back(snippet_block(h));

  std::vector<const ApiHit*> uer_part;
  std::vector<const ApiHit*> fsr_part;
  for (const auto& h : knowledge.api_hits) (h.source == HitSource::uer ? uer_part : fsr_part).push_back(&h);
  auto by_score = [](const ApiHit* a, const ApiHit* b) {
    if (a->score != b->score) return a->score > b->score;
    return a->entry->qualified_name < b->entry->qualified_name;
  };
  std::stable_sort(uer_part.begin(), uer_part.end(), by_score);
  std::stable_sort(fsr_part.begin(), fsr_part.end(), by_score);
  if (!cfg.uer_before_fsr) std::swap(uer_part, fsr_part);

  std::vector<PromptBlock> apis;
  for (const auto* h : uer_part) apis.push_back(api_block(*h));
  for (const auto* h : fsr_part) apis.push_back(api_block(*h));

  fit_blocks(plan, std::move(snippets), std::move(apis));
  return plan;
}

// ------------------------------------------------------------ stages

DraftResult generate_draft(const CompletionTask& task, const PipelineContext& ctx) {
  DraftResult result;
  result.snippets = snippets_for(last_lines(task.prefix, ctx.cfg.window_len), task, ctx);
  result.plan = base_plan(task, ctx.cfg, ctx.cfg.infile_budget());
  std::vector<PromptBlock> blocks;
  for (const auto& h : result.snippets) blocks.push_back(snippet_block(h));
  fit_blocks(result.plan, std::move(blocks), {});
  result.prompt = render_prompt(result.plan);
  try {
    if (!ctx.llm) throw Error("no completion provider configured");
    result.output = ctx.llm->complete(result.prompt, ctx.cfg.max_new_tokens);
  } catch (const std::exception& e) {
    result.output.clear();
    result.error = e.what();
  }
  return result;
}

std::string uer_query_line(const std::string& prefix, const std::string& draft) {
  const auto prefix_lines = split_lines(prefix);
  const std::string& cursor_line = prefix_lines.back();
  if (draft.empty()) return cursor_line;
  const std::string merged = cursor_line + first_line(draft);
  if (!blank(merged)) return merged;
  for (const auto& l : split_lines(draft)) {
    if (!blank(l)) return l;
  }
  return merged;
}

Knowledge retrieve_knowledge(const CompletionTask& task, const std::string& draft, const PipelineContext& ctx,
                             RetrievalFlags flags) {
  Knowledge k;
  const auto kk = static_cast<std::size_t>(std::max(ctx.cfg.k, 0));
  const bool have_kb = ctx.kb && !ctx.kb->entries.empty() && ctx.embedder;

  k.uer_query = uer_query_line(task.prefix, draft);
  if (flags.uer && have_kb) k.uer_hits = uer(k.uer_query, *ctx.kb, *ctx.embedder, kk);

  k.fsr_query = draft;
  if (flags.fsr && have_kb && !blank(draft) && ctx.summarizer) {
    auto r = fsr(draft, task.language, *ctx.kb, *ctx.summarizer, *ctx.embedder, kk);
    k.fsr_hits = std::move(r.hits);
    k.fsr_docstring = std::move(r.docstring);
    k.fsr_fell_back = r.fell_back;
  }

  // One hit per qualified name; the higher score wins, UER on ties.
  std::map<std::string, ApiHit> best;
  for (const auto* list : {&k.uer_hits, &k.fsr_hits}) {
    for (const auto& h : *list) {
      auto [it, inserted] = best.emplace(h.entry->qualified_name, h);
      if (!inserted && h.score > it->second.score) it->second = h;
    }
  }
  for (const auto* list : {&k.uer_hits, &k.fsr_hits}) {
    for (const auto& h : *list) {
      const auto it = best.find(h.entry->qualified_name);
      if (it != best.end() && it->second.source == h.source && it->second.score == h.score) {
        k.api_hits.push_back(h);
        best.erase(it);
      }
    }
  }

  k.snippet_query = last_lines(task.prefix + draft, ctx.cfg.window_len);
  k.snippet_hits = snippets_for(k.snippet_query, task, ctx);
  return k;
}

// ------------------------------------------------------------ traces

namespace {

json plan_json(const PromptPlan& plan, const std::string& prompt) {
  json blocks = json::array();
  for (const auto& b : plan.blocks) {
    blocks.push_back({{"kind", b.kind == BlockKind::api_info ? "api_info" : "similar_snippet"},
                      {"file", b.file},
                      {"label", b.label},
                      {"score", b.score},
                      {"tokens", count_tokens(render_block(b, plan.language), plan.language)}});
  }
  return json{{"prompt", prompt},
              {"prompt_tokens", count_tokens(prompt, plan.language)},
              {"retrieved_tokens", retrieved_tokens(plan)},
              {"total_budget", plan.total_budget},
              {"retrieved_budget", plan.retrieved_budget},
              {"infile_budget", plan.infile_budget},
              {"blocks", blocks},
              {"dropped", plan.dropped}};
}

json hits_json(const std::vector<ApiHit>& hits) {
  json out = json::array();
  for (const auto& h : hits) {
    json j{{"qualified_name", h.entry->qualified_name}, {"source", to_string(h.source)}, {"score", h.score}};
    if (h.best_ue_form) j["best_ue_form"] = to_string(*h.best_ue_form);
    out.push_back(std::move(j));
  }
  return out;
}

json snippets_json(const std::vector<SnippetHit>& hits) {
  json out = json::array();
  for (const auto& h : hits) {
    out.push_back({{"file", h.snippet.file},
                   {"start_line", h.snippet.start_line},
                   {"end_line", h.snippet.end_line},
                   {"matched_start_line", h.matched.start_line},
                   {"score", h.score}});
  }
  return out;
}

json knowledge_json(const Knowledge& k) {
  return json{{"stage", "retrieve"},
              {"uer_query", k.uer_query},
              {"fsr_query", k.fsr_query},
              {"fsr_docstring", k.fsr_docstring},
              {"fsr_fell_back", k.fsr_fell_back},
              {"uer_hits", hits_json(k.uer_hits)},
              {"fsr_hits", hits_json(k.fsr_hits)},
              {"api_hits", hits_json(k.api_hits)},
              {"snippet_query", k.snippet_query},
              {"snippet_hits", snippets_json(k.snippet_hits)}};
}

json llm_stage(const std::string& name, const PromptPlan& plan, const std::string& prompt, const std::string& output,
               const std::optional<std::string>& error) {
  json j = plan_json(plan, prompt);
  j["stage"] = name;
  j["output"] = output;
  j["error"] = error ? json(*error) : json(nullptr);
  return j;
}

struct Generation {
  std::string prompt;
  std::string output;
  std::optional<std::string> error;
};

Generation generate(const PromptPlan& plan, const PipelineContext& ctx) {
  Generation g;
  g.prompt = render_prompt(plan);
  try {
    if (!ctx.llm) throw Error("no completion provider configured");
    g.output = ctx.llm->complete(g.prompt, ctx.cfg.max_new_tokens);
  } catch (const std::exception& e) {
    g.error = e.what();
  }
  return g;
}

}  // namespace

CompletionResult complete_task(const CompletionTask& task, Mode mode, const PipelineContext& ctx,
                               const std::optional<std::string>& external_draft) {
  CompletionResult result;
  json stages = json::array();
  std::optional<std::string> error;

  auto finish = [&](const std::string& final_output) {
    result.prediction = error ? std::string() : first_line(final_output);
    result.trace = json{{"task_id", task.task_id},
                        {"mode", to_string(mode)},
                        {"config", to_json(ctx.cfg)},
                        {"stages", std::move(stages)},
                        {"prediction", result.prediction},
                        {"error", error ? json(*error) : json(nullptr)}};
    return result;
  };

  if (mode == Mode::infile) {
    // No retrieved half: the in-file context takes everything but the headroom.
    PromptPlan plan = base_plan(task, ctx.cfg, ctx.cfg.total_budget - ctx.cfg.max_new_tokens);
    auto g = generate(plan, ctx);
    error = g.error;
    stages.push_back(llm_stage("final", plan, g.prompt, g.output, g.error));
    return finish(g.output);
  }

  std::string draft;
  if (mode == Mode::aim_over_external_draft) {
    if (!external_draft) throw Error("aim_over_external_draft requires an external draft for task " + task.task_id);
    draft = *external_draft;
    stages.push_back(json{{"stage", "external_draft"}, {"output", draft}});
  } else {
    auto d = generate_draft(task, ctx);
    draft = d.output;
    stages.push_back(llm_stage("draft", d.plan, d.prompt, d.output, d.error));
    if (mode == Mode::draft_only) {
      error = d.error;
      return finish(d.output);
    }
  }

  RetrievalFlags flags;
  flags.uer = mode == Mode::plus_uer || mode == Mode::full || mode == Mode::aim_over_external_draft;
  flags.fsr = mode == Mode::plus_fsr || mode == Mode::full || mode == Mode::aim_over_external_draft;

  std::string output;
  const int rounds = std::max(ctx.cfg.rounds, 1);
  for (int round = 0; round < rounds; ++round) {
    const Knowledge k = retrieve_knowledge(task, draft, ctx, flags);
    stages.push_back(knowledge_json(k));
    const PromptPlan plan = assemble_prompt(task, k, ctx.cfg);
    auto g = generate(plan, ctx);
    error = g.error;
    stages.push_back(llm_stage(round + 1 == rounds ? "final" : "refine", plan, g.prompt, g.output, g.error));
    output = g.output;
    if (g.error) break;
    draft = output;
  }
  return finish(output);
}

std::vector<CompletionResult> run_tasks(const std::vector<CompletionTask>& tasks, Mode mode,
                                        const PipelineContext& ctx,
                                        const std::map<std::string, std::string>& drafts) {
  std::vector<CompletionResult> results(tasks.size());
  auto run_one = [&](std::size_t i) {
    std::optional<std::string> draft;
    if (mode == Mode::aim_over_external_draft) {
      const auto it = drafts.find(tasks[i].task_id);
      draft = it == drafts.end() ? std::string() : it->second;
    }
    results[i] = complete_task(tasks[i], mode, ctx, draft);
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(ctx.cfg.workers, 1)),
                                                    std::max<std::size_t>(tasks.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace apiinfer
