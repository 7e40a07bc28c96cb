#include "apiinfer/mock_suite.hpp"

#include <filesystem>
#include <sstream>

#include "apiinfer/bench.hpp"
#include "apiinfer/error.hpp"
#include "apiinfer/io.hpp"

namespace apiinfer {

namespace {

struct UseCase {
  const char* target;
  const char* near_miss;  // u: what the model guesses instead
  const char* p1;
  const char* p2;
  const char* var;
};

constexpr UseCase kUsage[] = {
    {"smooth_series", "rolling_average", "samples", "window", "smoothed"},
    {"merge_headers", "combine_headers", "base_headers", "extra_headers", "headers"},
    {"parse_duration", "read_duration", "duration_text", "default_unit", "duration"},
    {"render_badge", "draw_badge", "label_text", "badge_color", "badge"},
    {"score_candidates", "rank_candidates", "candidate_list", "weight_map", "scores"},
    {"encode_payload", "serialize_payload", "payload_dict", "schema_version", "encoded"},
    {"resolve_alias", "find_alias", "alias_key", "alias_map", "resolved"},
    {"filter_events", "select_events", "event_log", "min_severity", "events"},
    {"group_orders", "bucket_orders", "order_rows", "group_key", "groups"},
    {"split_chunks", "chunk_buffer", "raw_buffer", "chunk_size", "chunks"},
    {"align_columns", "pad_columns", "column_cells", "column_width", "aligned"},
    {"compact_index", "shrink_index", "index_entries", "keep_ratio", "compacted"},
    {"sample_rows", "pick_rows", "row_source", "sample_count", "picked"},
    {"normalize_path", "clean_path", "raw_path", "base_dir", "path"},
    {"retry_request", "repeat_request", "request_fn", "max_attempts", "response"},
};

constexpr UseCase kFunctional[] = {
    {"merge_layers", "", "base_layer", "override_layer", "merged"},
    {"count_tokens_by_kind", "", "token_stream", "kind_filter", "counts"},
    {"build_lookup_table", "", "key_rows", "value_field", "lookup"},
    {"format_currency", "", "amount_cents", "currency_code", "price"},
    {"diff_snapshots", "", "old_snapshot", "new_snapshot", "delta"},
    {"validate_schema", "", "record_obj", "schema_spec", "problems"},
    {"estimate_eta", "", "done_units", "unit_rate", "eta"},
    {"flatten_tree", "", "tree_root", "max_depth", "flat"},
    {"hash_credentials", "", "user_secret", "salt_bytes", "digest"},
    {"paginate_results", "", "result_items", "page_size", "pages"},
    {"throttle_calls", "", "call_queue", "calls_per_second", "throttled"},
    {"interpolate_color", "", "start_rgb", "end_rgb", "blended"},
    {"tally_votes", "", "ballot_list", "seat_count", "tally"},
    {"decode_cursor", "", "cursor_token", "page_codec", "position"},
    {"summarize_latency", "", "latency_ms", "percentile_set", "summary"},
};

struct Reuse {
  const char* truth;
  const char* p1;
  const char* p2;
  const char* var;
};

constexpr Reuse kReuse[] = {
    {"os.path.join(cache_root, \"thumbs\", image_name)", "cache_root", "image_name", "thumb_path"},
    {"json.dumps(report_rows, indent=2, sort_keys=True)", "report_rows", "report_name", "report_text"},
    {"sorted(user_records, key=lambda r: r[\"joined\"])", "user_records", "cutoff_day", "ordered_users"},
    {"os.environ.get(\"APP_MODE\", fallback_mode)", "fallback_mode", "app_name", "mode"},
    {"int(retry_header or 0) + backoff_base", "retry_header", "backoff_base", "delay"},
    {"[line.strip() for line in text_blob.splitlines() if line]", "text_blob", "strip_all", "clean_lines"},
    {"dict(zip(field_names, row_values))", "field_names", "row_values", "row_map"},
    {"round(elapsed_s * 1000.0, precision_digits)", "elapsed_s", "precision_digits", "elapsed_ms"},
    {"max(queue_depths, default=0) > alert_level", "queue_depths", "alert_level", "overloaded"},
    {"\"-\".join(part.lower() for part in slug_parts)", "slug_parts", "slug_limit", "slug"},
};

std::string two(std::size_t i) {
  std::string s = std::to_string(i + 1);
  return s.size() < 2 ? "0" + s : s;
}

// Twelve body lines with tokens unique to the task.
std::vector<std::string> context_lines(const std::string& id, const std::string& p1, const std::string& p2) {
  std::vector<std::string> out;
  out.push_back("    started_" + id + " = time.monotonic()");
  out.push_back("    label_" + id + " = \"" + id + "\"");
  out.push_back("    seen_" + id + " = set()");
  out.push_back("    limit_" + id + " = len(" + p1 + ") if " + p1 + " else 0");
  out.push_back("    notes_" + id + " = []");
  out.push_back("    notes_" + id + ".append(label_" + id + ")");
  out.push_back("    flag_" + id + " = " + p2 + " is not None");
  out.push_back("    seen_" + id + ".add(limit_" + id + ")");
  out.push_back("    stamp_" + id + " = started_" + id + " + limit_" + id);
  out.push_back("    notes_" + id + ".append(str(flag_" + id + "))");
  out.push_back("    budget_" + id + " = limit_" + id + " * 2");
  out.push_back("    seen_" + id + ".add(budget_" + id + ")");
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// Module-level filler so that a file spans several windows.
void pad(std::vector<std::string>& lines, const std::string& stem, std::size_t upto) {
  for (int n = 1; lines.size() < upto; ++n) lines.push_back(stem + "_" + std::to_string(n) + " = " + std::to_string(n * 7));
}

struct TaskSource {
  std::string id;
  std::string p1;
  std::string p2;
  std::string var;
  std::string truth;
};

// Writes app/task_<id>.py and returns the task cut at the assignment line.
CompletionTask task_file(MockSuite& suite, const TaskSource& t) {
  std::vector<std::string> lines = {"import json", "import os", "import time", "", "",
                                    "def run_" + t.id + "(" + t.p1 + ", " + t.p2 + "):"};
  for (auto& l : context_lines(t.id, t.p1, t.p2)) lines.push_back(std::move(l));
  const std::string cursor = "    " + t.var + "_" + t.id + " = ";
  const int cursor_line = static_cast<int>(lines.size()) + 1;
  lines.push_back(cursor + t.truth);
  lines.push_back("    notes_" + t.id + ".append(" + t.var + "_" + t.id + ")");
  lines.push_back("    return " + t.var + "_" + t.id);
  lines.push_back("");
  lines.push_back("");
  lines.push_back("def describe_" + t.id + "():");
  lines.push_back("    return \"job " + t.id + "\"");

  const std::string path = "app/task_" + t.id + ".py";
  suite.files.emplace_back(path, join(lines));

  CompletionTask task;
  task.task_id = "mock-" + t.id;
  task.file = path;
  task.language = Language::python;
  task.cursor_line = cursor_line;
  task.cursor_column = static_cast<int>(cursor.size());
  for (int i = 0; i < cursor_line - 1; ++i) task.prefix += lines[static_cast<std::size_t>(i)] + "\n";
  task.prefix += cursor;
  task.ground_truth = t.truth;
  return task;
}

void target_module(MockSuite& suite, const std::string& id, const UseCase& u) {
  std::vector<std::string> lines = {
      "import math",
      "",
      "",
      std::string("def ") + u.target + "(" + u.p1 + ", " + u.p2 + "):",
      std::string("    value = ") + u.p1,
      std::string("    return value if ") + u.p2 + " is None else (value, " + u.p2 + ")",
      "",
      "",
  };
  pad(lines, "LIMIT_" + id, 34);
  suite.files.emplace_back("lib/ops_" + id + ".py", join(lines));
}

// Short zero-argument functions and classes. Their brief docstrings and usage
// examples outrank unrelated targets for weak queries.
std::string common_module() {
  std::vector<std::string> lines;
  for (const char* name : {"reset", "flush", "close", "reload", "ping", "drain"}) {
    lines.push_back(std::string("def ") + name + "():");
    lines.push_back("    return None");
    lines.push_back("");
    lines.push_back("");
  }
  for (const char* name : {"Registry", "Clock", "Ledger", "Mailbox", "Pool", "Tracker"}) {
    lines.push_back(std::string("class ") + name + ":");
    lines.push_back("    def __init__(self):");
    lines.push_back("        self.items = []");
    lines.push_back("");
    lines.push_back("");
  }
  return join(lines);
}

}  // namespace

MockSuite make_mock_suite() {
  MockSuite suite;
  suite.files.emplace_back("lib/__init__.py", "");
  suite.files.emplace_back("lib/common.py", common_module());

  for (std::size_t i = 0; i < std::size(kReuse); ++i) {
    const auto& r = kReuse[i];
    const std::string id = "s" + two(i);
    const TaskSource src{id, r.p1, r.p2, r.var, r.truth};
    auto task = task_file(suite, src);

    // Same body as the task, then the marker and the answer at lines 11-12.
    const auto ctx = context_lines(id, r.p1, r.p2);
    std::vector<std::string> lines = {"def recipe_" + id + "(" + r.p1 + ", " + r.p2 + "):"};
    lines.insert(lines.end(), ctx.end() - 9, ctx.end());
    const std::string marker = "# reusable: " + std::string(r.var) + " recipe " + id;
    lines.push_back("    " + marker);
    lines.push_back("    " + std::string(r.var) + "_" + id + " = " + r.truth);
    lines.push_back("    return " + std::string(r.var) + "_" + id);
    lines.push_back("");
    lines.push_back("");
    pad(lines, "RECIPE_" + id, 34);
    suite.files.emplace_back("recipes/recipe_" + id + ".py", join(lines));

    suite.oracle.push_back({task.task_id, "    " + std::string(r.var) + "_" + id + " = ", r.truth, "None", {marker}});
    suite.family[task.task_id] = 's';
    suite.tasks.push_back(std::move(task));
  }

  for (std::size_t i = 0; i < std::size(kUsage); ++i) {
    const auto& u = kUsage[i];
    const std::string id = "u" + two(i);
    const std::string truth = std::string(u.target) + "(" + u.p1 + ", " + u.p2 + ")";
    auto task = task_file(suite, {id, u.p1, u.p2, u.var, truth});
    target_module(suite, id, u);
    const std::string distractor = std::string(u.near_miss) + "(" + u.p1 + ", " + u.p2 + ")\n\n\n" +
                                   "def finish_step():\n    return None\n";
    suite.oracle.push_back({task.task_id, "    " + std::string(u.var) + "_" + id + " = ", truth, distractor,
                            {std::string("def ") + u.target + "("}});
    suite.family[task.task_id] = 'u';
    suite.tasks.push_back(std::move(task));
  }

  for (std::size_t i = 0; i < std::size(kFunctional); ++i) {
    const auto& f = kFunctional[i];
    const std::string id = "f" + two(i);
    const std::string truth = std::string(f.target) + "(" + f.p1 + ", " + f.p2 + ")";
    auto task = task_file(suite, {id, f.p1, f.p2, f.var, truth});
    target_module(suite, id, f);
    const std::string distractor = std::string("prepare()\n\n\ndef local_") + f.target + "(" + f.p1 + ", " + f.p2 +
                                   "):\n    value = " + f.p1 + "\n    return value\n";
    suite.oracle.push_back({task.task_id, "    " + std::string(f.var) + "_" + id + " = ", truth, distractor,
                            {std::string("def ") + f.target + "("}});
    suite.family[task.task_id] = 'f';
    suite.tasks.push_back(std::move(task));
  }
  return suite;
}

MockSuitePaths write_mock_suite(const MockSuite& suite, const std::string& dir) {
  namespace fs = std::filesystem;
  MockSuitePaths paths{(fs::path(dir) / "repo").string(), (fs::path(dir) / "tasks.jsonl").string(),
                       (fs::path(dir) / "oracle.jsonl").string()};
  std::error_code ec;
  fs::create_directories(paths.repo, ec);
  if (ec) throw Error("cannot create " + paths.repo + ": " + ec.message());
  for (const auto& [rel, content] : suite.files) {
    const fs::path p = fs::path(paths.repo) / rel;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw Error("cannot create " + p.parent_path().string() + ": " + ec.message());
    write_file_atomic(p.string(), content);
  }
  auto tasks = suite.tasks;
  for (auto& t : tasks) t.repo_root = paths.repo;
  save_tasks(tasks, paths.tasks);
  save_mock_oracle(suite.oracle, paths.oracle);
  return paths;
}

}  // namespace apiinfer
