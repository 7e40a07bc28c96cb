#pragma once

#include <string>
#include <vector>

#include "apiinfer/api.hpp"
#include "apiinfer/embedding.hpp"
#include "apiinfer/providers.hpp"
#include "apiinfer/usage_examples.hpp"

namespace apiinfer {

struct KbEntry {
  ApiRecord api;
  std::vector<UsageExample> usage_examples;
  EmbeddingMatrix ue_embeddings;  // one row per usage example
  std::string docstring;
  Embedding doc_embedding;  // zero when degraded without a docstring
  std::string qualified_name;
  // Summarization or doc embedding failed; excluded from functional-semantic retrieval.
  bool degraded = false;
};

bool operator==(const KbEntry& a, const KbEntry& b);

struct KbHeader {
  int dim = 0;
  std::string embedder_id;
  std::string summarizer_id;
  std::string repo_fingerprint;

  bool operator==(const KbHeader&) const = default;
};

struct KnowledgeBase {
  KbHeader header;
  std::vector<KbEntry> entries;

  bool operator==(const KnowledgeBase&) const = default;
};

// Hash of the sorted (path, content-hash) pairs of the scanned files.
std::string repo_fingerprint(const std::vector<SourceFile>& files);

// "file::Class.name#sighash"
std::string qualified_name(const ApiRecord& record);

struct BuildOptions {
  int workers = 1;
};

struct BuildReport {
  std::vector<std::string> warnings;
  std::size_t degraded = 0;
};

// One entry per internal API record: usage examples, their embeddings, a
// docstring from `summarizer` over the definition source and its embedding.
// Provider failures degrade the entry instead of aborting the build.
KnowledgeBase build_kb(const std::vector<SourceFile>& repo, const EmbedderPort& embedder,
                       const SummarizerPort& summarizer, const BuildOptions& options = {},
                       BuildReport* report = nullptr);

// JSON-Lines: header object on line 1, then one entry per line.
void save_kb(const KnowledgeBase& kb, const std::string& path);
std::string serialize_kb(const KnowledgeBase& kb);

// Throws apiinfer::Error naming the offending line on corrupt input.
KnowledgeBase load_kb(const std::string& path);
KnowledgeBase parse_kb(const std::string& text, const std::string& source_name = "<kb>");

// Invariant violations (vector norms, dimensions, duplicate names, UE/embedding
// counts); empty when the KB is well formed.
std::vector<std::string> validate_kb(const KnowledgeBase& kb);

}  // namespace apiinfer
