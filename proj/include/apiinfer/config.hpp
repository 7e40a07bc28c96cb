#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apiinfer/lexer.hpp"

namespace apiinfer {

enum class Mode { infile, draft_only, base, plus_uer, plus_fsr, full, aim_over_external_draft };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

// How identifier lists are compared for the ID-match exact-match metric.
enum class IdMatchMode { multiset, set, sequence };

std::string_view to_string(IdMatchMode mode);
IdMatchMode id_match_mode_from_string(std::string_view name);

struct RunConfig {
  std::string repo_root = ".";
  Language language = Language::python;
  int window_len = 20;
  int slide = 10;
  int k = 4;
  int total_budget = 4096;
  int max_new_tokens = 128;
  int dim = 256;
  Mode mode = Mode::full;
  std::uint64_t seed = 42;
  int workers = 1;
  int rounds = 1;  // retrieval-generation refinement rounds after the draft
  bool uer_before_fsr = true;
  IdMatchMode id_match = IdMatchMode::multiset;
  std::vector<std::string> excludes;

  std::string embedder = "hash";      // hash | http
  std::string summarizer = "fallback";  // fallback | http | llm
  std::string llm = "mock";           // mock | http
  std::string embed_url;
  std::string summarize_url;
  std::string complete_url;
  std::string mock_oracle;  // path to the mock oracle JSON-Lines
  double timeout_s = 30.0;
  int retries = 2;
  std::size_t summarize_char_budget = 4000;

  int retrieved_budget() const { return total_budget / 2; }
  // Budget for the in-file part when retrieved context is present.
  int infile_budget() const { return total_budget - retrieved_budget() - max_new_tokens; }
};

nlohmann::json to_json(const RunConfig& cfg);
// Keys absent from `j` keep the values already in `cfg`. Unknown keys throw.
void merge_config(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// APIINFER_EMBED_URL, APIINFER_SUMMARIZE_URL, APIINFER_COMPLETE_URL.
void apply_env_overrides(RunConfig& cfg);

}  // namespace apiinfer
