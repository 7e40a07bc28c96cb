#pragma once

// The 40-task mock suite loaded the same way `apiinfer run` loads it.

#include <memory>
#include <string>

#include "apiinfer/bench.hpp"
#include "apiinfer/corpus.hpp"
#include "apiinfer/kb.hpp"
#include "apiinfer/mock_suite.hpp"
#include "apiinfer/pipeline.hpp"
#include "apiinfer/retrieval.hpp"
#include "support.hpp"

namespace mock_env {

struct Env {
  testing_support::TempDir dir;
  apiinfer::MockSuite suite;
  apiinfer::MockSuitePaths paths;
  std::vector<apiinfer::SourceFile> files;
  std::unique_ptr<apiinfer::HashEmbedder> embedder;
  std::unique_ptr<apiinfer::TemplateSummarizer> summarizer;
  std::unique_ptr<apiinfer::MockLlm> llm;
  apiinfer::KnowledgeBase kb;
  apiinfer::WindowCorpus corpus;
  apiinfer::RunConfig cfg;

  apiinfer::PipelineContext context() const {
    return apiinfer::PipelineContext{&kb, &corpus, embedder.get(), summarizer.get(), llm.get(), cfg};
  }
};

inline std::unique_ptr<Env> make(apiinfer::RunConfig cfg = {}) {
  using namespace apiinfer;
  auto env = std::make_unique<Env>();
  env->suite = make_mock_suite();
  env->paths = write_mock_suite(env->suite, env->dir.str());
  cfg.repo_root = env->paths.repo;
  env->cfg = cfg;
  env->files = scan_repo(env->paths.repo).files;
  env->embedder = std::make_unique<HashEmbedder>(cfg.dim, cfg.language);
  env->summarizer = std::make_unique<TemplateSummarizer>(nullptr, cfg.summarize_char_budget, cfg.max_new_tokens);
  env->llm = std::make_unique<MockLlm>(env->suite.oracle, cfg.language);
  env->kb = build_kb(env->files, *env->embedder, *env->summarizer);
  env->corpus = WindowCorpus(env->files, cfg.window_len, cfg.slide);
  return env;
}

inline double em(const std::vector<apiinfer::CompletionResult>& results, const apiinfer::MockSuite& suite) {
  apiinfer::Predictions preds;
  for (std::size_t i = 0; i < results.size(); ++i) preds[suite.tasks[i].task_id] = results[i].prediction;
  return apiinfer::score_run(preds, suite.tasks, "x").aggregate.code_em;
}

}  // namespace mock_env
