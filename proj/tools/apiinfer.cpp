// apiinfer: knowledge-base build, task mining, completion runs and scoring.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "apiinfer/api.hpp"
#include "apiinfer/bench.hpp"
#include "apiinfer/config.hpp"
#include "apiinfer/corpus.hpp"
#include "apiinfer/error.hpp"
#include "apiinfer/factory.hpp"
#include "apiinfer/io.hpp"
#include "apiinfer/kb.hpp"
#include "apiinfer/mock_suite.hpp"
#include "apiinfer/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace apiinfer;

namespace {

// RunConfig fields settable from the command line. Unset flags keep the value
// from --config (or the default).
struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> repo, language, mode, id_match, embedder, summarizer, llm;
  std::optional<std::string> embed_url, summarize_url, complete_url, mock_oracle;
  std::optional<int> window_len, slide, k, total_budget, max_new_tokens, dim, workers, rounds, retries;
  std::optional<std::uint64_t> seed;
  std::optional<double> timeout_s;
  std::vector<std::string> excludes;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file; flags override it");
    cmd->add_option("--repo", repo, "repository root");
    cmd->add_option("--language", language, "python | java");
    cmd->add_option("--mode", mode, "infile | draft_only | base | plus_uer | plus_fsr | full | aim_over_external_draft");
    cmd->add_option("--window-len", window_len, "sliding window length in lines (20)");
    cmd->add_option("--slide", slide, "sliding window step in lines (10)");
    cmd->add_option("-k", k, "APIs retrieved per path (4)");
    cmd->add_option("--total-budget", total_budget, "prompt budget in tokens (4096)");
    cmd->add_option("--max-new-tokens", max_new_tokens, "generation length (128)");
    cmd->add_option("--dim", dim, "hash embedder dimension (256)");
    cmd->add_option("--seed", seed, "random seed (42)");
    cmd->add_option("--workers", workers, "worker threads (1)");
    cmd->add_option("--rounds", rounds, "retrieve/generate rounds after the draft (1)");
    cmd->add_option("--id-match", id_match, "multiset | set | sequence");
    cmd->add_option("--embedder", embedder, "hash | http");
    cmd->add_option("--summarizer", summarizer, "fallback | http | llm");
    cmd->add_option("--llm", llm, "mock | http");
    cmd->add_option("--embed-url", embed_url, "sidecar base URL for /embed");
    cmd->add_option("--summarize-url", summarize_url, "sidecar base URL for /summarize");
    cmd->add_option("--complete-url", complete_url, "sidecar base URL for /complete");
    cmd->add_option("--mock-oracle", mock_oracle, "oracle JSON-Lines for the mock LLM");
    cmd->add_option("--timeout", timeout_s, "provider timeout in seconds");
    cmd->add_option("--retries", retries, "provider retries");
    cmd->add_option("--exclude", excludes, "glob of paths to skip (repeatable)");
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    apply_env_overrides(c);
    if (repo) c.repo_root = *repo;
    if (language) c.language = language_from_string(*language);
    if (mode) c.mode = mode_from_string(*mode);
    if (id_match) c.id_match = id_match_mode_from_string(*id_match);
    if (embedder) c.embedder = *embedder;
    if (summarizer) c.summarizer = *summarizer;
    if (llm) c.llm = *llm;
    if (embed_url) c.embed_url = *embed_url;
    if (summarize_url) c.summarize_url = *summarize_url;
    if (complete_url) c.complete_url = *complete_url;
    if (mock_oracle) c.mock_oracle = *mock_oracle;
    if (window_len) c.window_len = *window_len;
    if (slide) c.slide = *slide;
    if (k) c.k = *k;
    if (total_budget) c.total_budget = *total_budget;
    if (max_new_tokens) c.max_new_tokens = *max_new_tokens;
    if (dim) c.dim = *dim;
    if (workers) c.workers = *workers;
    if (rounds) c.rounds = *rounds;
    if (retries) c.retries = *retries;
    if (seed) c.seed = *seed;
    if (timeout_s) c.timeout_s = *timeout_s;
    if (!excludes.empty()) c.excludes = excludes;
    if (c.window_len < 1 || c.slide < 1) throw Error("window-len and slide must be >= 1");
    if (c.k < 1) throw Error("k must be >= 1");
    if (c.max_new_tokens < 1 || c.total_budget <= c.max_new_tokens) {
      throw Error("total-budget must exceed max-new-tokens");
    }
    return c;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_warnings(const std::vector<ScanWarning>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w.path << ": " << w.message << "\n";
}

std::vector<SourceFile> scan_language(const RunConfig& cfg) {
  auto scan = scan_repo(cfg.repo_root, cfg.excludes);
  print_warnings(scan.warnings);
  std::vector<SourceFile> files;
  for (auto& f : scan.files) {
    if (f.language == cfg.language) files.push_back(std::move(f));
  }
  return files;
}

std::string trace_name(const std::string& task_id) {
  std::string s = task_id;
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return s + ".json";
}

bool needs_kb(Mode m) {
  return m == Mode::plus_uer || m == Mode::plus_fsr || m == Mode::full || m == Mode::aim_over_external_draft;
}

// ------------------------------------------------------------ commands

int cmd_build_kb(const ConfigFlags& flags, const std::string& out) {
  const RunConfig cfg = flags.resolve();
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = scan_language(cfg);
  auto providers = make_providers(cfg, cfg.summarizer == "llm");
  BuildReport report;
  const auto kb = build_kb(files, *providers.embedder, *providers.summarizer, BuildOptions{cfg.workers}, &report);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  save_kb(kb, out);
  const double elapsed = seconds_since(t0);
  write_file_atomic(out + ".meta.json", json{{"kb_build_s", elapsed},
                                             {"entries", kb.entries.size()},
                                             {"degraded", report.degraded},
                                             {"files", files.size()}}
                                            .dump(2) +
                                            "\n");
  std::cout << "wrote " << kb.entries.size() << " entries from " << files.size() << " files to " << out << " ("
            << report.degraded << " degraded)\n";
  return 0;
}

int cmd_mine_tasks(const ConfigFlags& flags, const std::string& out, int n, const std::string& log_path) {
  const RunConfig cfg = flags.resolve();
  const auto files = scan_language(cfg);
  const auto set = mine_tasks(files, n, cfg.seed, cfg.repo_root);
  for (const auto& d : set.diagnostics) std::cerr << "note: " << d << "\n";
  save_tasks(set.tasks, out);
  json log = json::array();
  for (const auto& r : set.construction_log) log.push_back(to_json(r));
  write_file_atomic(log_path.empty() ? out + ".log.json" : log_path,
                    json{{"repo_fingerprint", set.repo_fingerprint},
                         {"seed", cfg.seed},
                         {"n_per_repo", n},
                         {"construction_log", log},
                         {"diagnostics", set.diagnostics}}
                            .dump(2) +
                        "\n");
  std::cout << "wrote " << set.tasks.size() << " tasks to " << out << "\n";
  return 0;
}

int cmd_run(const ConfigFlags& flags, const std::string& tasks_path, const std::string& kb_path,
            const std::string& out_dir, const std::string& drafts_path) {
  RunConfig cfg = flags.resolve();
  const auto tasks = load_tasks(tasks_path);
  if (!flags.repo && flags.config_path.empty() && !tasks.empty() && !tasks.front().repo_root.empty()) {
    cfg.repo_root = tasks.front().repo_root;
  }
  if (!flags.language && !tasks.empty()) cfg.language = tasks.front().language;

  KnowledgeBase kb;
  if (needs_kb(cfg.mode)) {
    if (kb_path.empty() || !fs::exists(kb_path)) {
      throw Error("knowledge base not found" + (kb_path.empty() ? std::string() : ": " + kb_path) +
                  "\n  mode " + std::string(to_string(cfg.mode)) +
                  " needs one; create it with: apiinfer build-kb --repo " + cfg.repo_root + " --out " +
                  (kb_path.empty() ? std::string("kb.jsonl") : kb_path) + " and pass --kb");
    }
    kb = load_kb(kb_path);
    if (const auto issues = validate_kb(kb); !issues.empty()) {
      throw Error("knowledge base " + kb_path + " is invalid: " + issues.front());
    }
  }
  std::map<std::string, std::string> drafts;
  if (cfg.mode == Mode::aim_over_external_draft) {
    if (drafts_path.empty()) throw Error("mode aim_over_external_draft needs --drafts <predictions.jsonl>");
    drafts = load_predictions(drafts_path);
  }

  const auto files = scan_language(cfg);
  auto providers = make_providers(cfg, true);
  if (needs_kb(cfg.mode)) {
    if (kb.header.dim != providers.embedder->dim()) {
      throw Error("knowledge base dimension " + std::to_string(kb.header.dim) + " does not match the embedder (" +
                  std::to_string(providers.embedder->dim()) + "); rebuild it with build-kb");
    }
    if (kb.header.repo_fingerprint != repo_fingerprint(files)) {
      std::cerr << "warning: knowledge base was built from a different repository state\n";
    }
  }
  const WindowCorpus corpus(files, cfg.window_len, cfg.slide);
  PipelineContext ctx{&kb, &corpus, providers.embedder.get(), providers.summarizer.get(), providers.llm.get(), cfg};

  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_tasks(tasks, cfg.mode, ctx, drafts);
  const double elapsed = seconds_since(t0);

  fs::create_directories(fs::path(out_dir) / "traces");
  std::vector<std::pair<std::string, std::string>> predictions;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    predictions.emplace_back(tasks[i].task_id, results[i].prediction);
    if (!results[i].trace.at("error").is_null()) ++errors;
    write_file_atomic((fs::path(out_dir) / "traces" / trace_name(tasks[i].task_id)).string(),
                      results[i].trace.dump(2) + "\n");
  }
  save_predictions(predictions, (fs::path(out_dir) / "predictions.jsonl").string());
  write_file_atomic((fs::path(out_dir) / "run_meta.json").string(),
                    json{{"mode", to_string(cfg.mode)},
                         {"tasks", tasks.size()},
                         {"errors", errors},
                         {"elapsed_s", elapsed},
                         {"mean_inference_s", tasks.empty() ? 0.0 : elapsed / static_cast<double>(tasks.size())}}
                            .dump(2) +
                        "\n");
  std::cout << "ran " << tasks.size() << " tasks in mode " << to_string(cfg.mode) << " (" << errors
            << " provider errors); outputs in " << out_dir << "\n";
  return 0;
}

int cmd_score(const std::string& tasks_path, const std::string& preds_path, const std::string& mode,
              const std::string& id_match, const std::string& out, const std::string& run_meta,
              const std::string& kb_meta) {
  const auto tasks = load_tasks(tasks_path);
  const auto preds = load_predictions(preds_path);
  auto report = score_run(preds, tasks, mode, id_match_mode_from_string(id_match));
  if (!run_meta.empty() || !kb_meta.empty()) {
    Timing t;
    if (!run_meta.empty()) t.mean_inference_s = json::parse(read_file(run_meta)).value("mean_inference_s", 0.0);
    if (!kb_meta.empty()) t.kb_build_s = json::parse(read_file(kb_meta)).value("kb_build_s", 0.0);
    report.timing = t;
  }
  if (report.missing > 0) std::cerr << "warning: " << report.missing << " tasks had no prediction (scored as empty)\n";
  if (!out.empty()) write_file_atomic(out, to_json(report).dump(2) + "\n");
  std::cout << render_table({report});
  return 0;
}

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& out) {
  std::vector<MetricsReport> reports;
  for (const auto& p : report_paths) {
    try {
      reports.push_back(report_from_json(json::parse(read_file(p, "report"))));
    } catch (const json::parse_error& e) {
      throw Error(p + ": " + e.what());
    }
  }
  const auto cmp = compare_runs(reports);
  if (!out.empty()) write_file_atomic(out, to_json(cmp).dump(2) + "\n");
  std::cout << cmp.table;
  for (const auto& d : cmp.deltas) {
    std::cout << d.from << " -> " << d.to << ": code EM " << std::showpos << d.delta.code_em << ", ES "
              << d.delta.code_es << std::noshowpos << "\n";
  }
  return 0;
}

int cmd_make_fixture(const std::string& out) {
  const auto paths = write_mock_suite(make_mock_suite(), out);
  std::cout << "repo: " << paths.repo << "\ntasks: " << paths.tasks << "\noracle: " << paths.oracle << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internal-API inference for repository-level code completion"};
  app.require_subcommand(1);

  ConfigFlags build_flags, mine_flags, run_flags;
  std::string kb_out, tasks_out, mine_log, run_tasks_path, run_kb, run_out, run_drafts;
  std::string score_tasks, score_preds, score_mode = "run", score_id = "multiset", score_out, score_meta, score_kb_meta;
  std::string compare_out, fixture_out;
  std::vector<std::string> compare_reports;
  int mine_n = 100;

  auto* build = app.add_subcommand("build-kb", "build the API knowledge base of a repository");
  build_flags.add_to(build);
  build->add_option("--out", kb_out, "knowledge base JSON-Lines")->required();

  auto* mine = app.add_subcommand("mine-tasks", "mine import-masked completion tasks");
  mine_flags.add_to(mine);
  mine->add_option("--out", tasks_out, "task set JSON-Lines")->required();
  mine->add_option("-n,--n-per-repo", mine_n, "tasks to sample (100)");
  mine->add_option("--log", mine_log, "construction log (default <out>.log.json)");

  auto* run = app.add_subcommand("run", "complete every task of a task set");
  run_flags.add_to(run);
  run->add_option("--tasks", run_tasks_path, "task set JSON-Lines")->required();
  run->add_option("--kb", run_kb, "knowledge base from build-kb");
  run->add_option("--out-dir", run_out, "directory for predictions.jsonl and traces/")->required();
  run->add_option("--drafts", run_drafts, "predictions used as drafts by aim_over_external_draft");

  auto* score = app.add_subcommand("score", "score predictions against a task set");
  score->add_option("--tasks", score_tasks, "task set JSON-Lines")->required();
  score->add_option("--predictions", score_preds, "predictions JSON-Lines")->required();
  score->add_option("--mode", score_mode, "label for this run");
  score->add_option("--id-match", score_id, "multiset | set | sequence");
  score->add_option("--out", score_out, "metrics report JSON");
  score->add_option("--run-meta", score_meta, "run_meta.json to include inference timing");
  score->add_option("--kb-meta", score_kb_meta, "<kb>.meta.json to include build timing");

  auto* compare = app.add_subcommand("compare", "tabulate several metrics reports");
  compare->add_option("reports", compare_reports, "metrics report JSON files")->required();
  compare->add_option("--out", compare_out, "comparison JSON");

  auto* fixture = app.add_subcommand("make-fixture", "write the mock-oracle task suite");
  fixture->add_option("--out", fixture_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build_kb(build_flags, kb_out);
    if (*mine) return cmd_mine_tasks(mine_flags, tasks_out, mine_n, mine_log);
    if (*run) return cmd_run(run_flags, run_tasks_path, run_kb, run_out, run_drafts);
    if (*score) {
      return cmd_score(score_tasks, score_preds, score_mode, score_id, score_out, score_meta, score_kb_meta);
    }
    if (*compare) return cmd_compare(compare_reports, compare_out);
    if (*fixture) return cmd_make_fixture(fixture_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
