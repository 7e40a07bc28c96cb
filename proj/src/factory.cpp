#include "apiinfer/factory.hpp"

#include "apiinfer/error.hpp"
#include "apiinfer/http_providers.hpp"

namespace apiinfer {

namespace {

HttpEndpoint endpoint(const RunConfig& cfg, const std::string& url, const char* what) {
  if (url.empty()) throw Error(std::string("no URL configured for the ") + what + " provider");
  return HttpEndpoint{url, cfg.timeout_s, cfg.retries};
}

}  // namespace

Providers make_providers(const RunConfig& cfg, bool need_llm) {
  Providers p;
  if (cfg.embedder == "hash") {
    p.embedder = std::make_unique<HashEmbedder>(cfg.dim, cfg.language);
  } else if (cfg.embedder == "http") {
    p.embedder = std::make_unique<HttpEmbedder>(endpoint(cfg, cfg.embed_url, "embed"));
  } else {
    throw Error("unknown embedder: " + cfg.embedder + " (expected hash or http)");
  }

  if (cfg.llm == "mock") {
    if (!cfg.mock_oracle.empty()) {
      p.llm = std::make_unique<MockLlm>(load_mock_oracle(cfg.mock_oracle), cfg.language);
    } else if (need_llm) {
      throw Error("llm=mock needs --mock-oracle <oracle.jsonl>");
    }
  } else if (cfg.llm == "http") {
    if (need_llm || !cfg.complete_url.empty()) {
      p.llm = std::make_unique<HttpCompletion>(endpoint(cfg, cfg.complete_url, "complete"));
    }
  } else {
    throw Error("unknown llm: " + cfg.llm + " (expected mock or http)");
  }

  if (cfg.summarizer == "fallback") {
    p.summarizer = std::make_unique<TemplateSummarizer>(nullptr, cfg.summarize_char_budget, cfg.max_new_tokens);
  } else if (cfg.summarizer == "http") {
    p.summarizer = std::make_unique<HttpSummarizer>(endpoint(cfg, cfg.summarize_url, "summarize"),
                                                    cfg.summarize_char_budget);
  } else if (cfg.summarizer == "llm") {
    if (!p.llm) throw Error("summarizer=llm needs a configured completion provider");
    p.summarizer = std::make_unique<TemplateSummarizer>(p.llm.get(), cfg.summarize_char_budget, cfg.max_new_tokens);
  } else {
    throw Error("unknown summarizer: " + cfg.summarizer + " (expected fallback, http or llm)");
  }
  return p;
}

}  // namespace apiinfer
