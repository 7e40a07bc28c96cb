#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apiinfer/config.hpp"
#include "apiinfer/corpus.hpp"
#include "apiinfer/pipeline.hpp"
#include "apiinfer/syntax.hpp"

namespace apiinfer {

// ------------------------------------------------------------ task mining

struct ConstructionRecord {
  std::string file;
  int import_first_line = 0;
  int import_last_line = 0;
  std::string import_text;
  std::string symbol;       // bound name whose first use defines the task
  int first_use_line = 0;   // 0 when the import is never used
  std::string status;       // task | duplicate_ground_truth | unused | not_sampled
  std::string task_id;      // set when status == task
};

struct TaskSet {
  std::string repo_fingerprint;
  std::vector<CompletionTask> tasks;
  std::vector<ConstructionRecord> construction_log;
  std::vector<std::string> diagnostics;
};

// Tasks at the first use of each internal import. The import statements used
// first on that line are removed from the prefix, the cursor sits at a seeded
// random token start on or before the cross-file token, and lines whose ground
// truth occurs verbatim in another file are dropped. At most n_per_repo tasks
// are sampled, again with `seed`.
TaskSet mine_tasks(const std::vector<SourceFile>& repo, int n_per_repo, std::uint64_t seed,
                   const std::string& repo_root = ".");

// Internal modules bound by `stmt` in `file`, resolved against the repo paths.
bool is_internal_import(const ImportStatement& stmt, const SourceFile& file, const std::vector<SourceFile>& repo);

// ------------------------------------------------------------ metrics

// Trims, then collapses runs of whitespace into one space.
std::string normalize_ws(const std::string& s);

// Levenshtein distance over Unicode code points.
std::size_t levenshtein(const std::string& a, const std::string& b);

// 1 - lev(a, b) / max(|a|, |b|); 1 when both are empty.
double edit_similarity(const std::string& a, const std::string& b);

// Identifier tokens in source order (keywords excluded).
std::vector<std::string> identifiers(const std::string& code, Language lang);

struct IdMatch {
  int em = 0;
  double f1 = 0.0;
};

IdMatch id_match(const std::vector<std::string>& pred, const std::vector<std::string>& gold,
                 IdMatchMode mode = IdMatchMode::multiset);
IdMatch id_match(const std::string& pred, const std::string& gold, Language lang,
                 IdMatchMode mode = IdMatchMode::multiset);

struct TaskScore {
  std::string task_id;
  int code_em = 0;
  double code_es = 0.0;
  int id_em = 0;
  double id_f1 = 0.0;
  bool missing = false;  // no prediction supplied; scored as ""
};

struct Aggregate {
  double code_em = 0.0;  // all x100
  double code_es = 0.0;
  double id_em = 0.0;
  double id_f1 = 0.0;
};

struct Timing {
  double kb_build_s = 0.0;
  double mean_inference_s = 0.0;
};

struct MetricsReport {
  std::string mode;
  std::vector<TaskScore> per_task;
  Aggregate aggregate;
  std::size_t missing = 0;
  std::optional<Timing> timing;
};

using Predictions = std::map<std::string, std::string>;

TaskScore score_task(const CompletionTask& task, const std::optional<std::string>& prediction,
                     IdMatchMode mode = IdMatchMode::multiset);
MetricsReport score_run(const Predictions& predictions, const std::vector<CompletionTask>& tasks,
                        const std::string& mode, IdMatchMode id_mode = IdMatchMode::multiset);

struct Comparison {
  std::vector<std::string> modes;
  std::vector<Aggregate> aggregates;
  // Tasks solved (code EM) by this run and by no other.
  std::vector<std::size_t> unique_correct;
  struct Delta {
    std::string from;
    std::string to;
    Aggregate delta;  // to - from
  };
  std::vector<Delta> deltas;
  std::string table;
};

Comparison compare_runs(const std::vector<MetricsReport>& reports);

std::string render_table(const std::vector<MetricsReport>& reports);

// ------------------------------------------------------------ serialization

nlohmann::json to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Comparison& cmp);
nlohmann::json to_json(const ConstructionRecord& r);

void save_tasks(const std::vector<CompletionTask>& tasks, const std::string& path);
std::vector<CompletionTask> load_tasks(const std::string& path);

void save_predictions(const std::vector<std::pair<std::string, std::string>>& predictions, const std::string& path);
Predictions load_predictions(const std::string& path);

}  // namespace apiinfer
