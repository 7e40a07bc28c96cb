#pragma once

#include <memory>

#include "apiinfer/config.hpp"
#include "apiinfer/providers.hpp"

namespace apiinfer {

struct Providers {
  std::unique_ptr<EmbedderPort> embedder;
  std::unique_ptr<CompletionPort> llm;  // null when cfg.llm cannot be built (mock without oracle)
  std::unique_ptr<SummarizerPort> summarizer;
};

// Builds the providers named in `cfg`: embedder hash|http, summarizer
// fallback|http|llm, llm mock|http. Throws apiinfer::Error on unknown names or
// missing endpoints.
Providers make_providers(const RunConfig& cfg, bool need_llm);

}  // namespace apiinfer
