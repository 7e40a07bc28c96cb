#include <gtest/gtest.h>

#include "apiinfer/bench.hpp"
#include "apiinfer/error.hpp"
#include "../mining_fixture.hpp"

using namespace apiinfer;

namespace {

std::vector<SourceFile> fixture_repo() {
  std::vector<SourceFile> repo;
  for (const auto& [path, text] : mining_fixture::files()) {
    repo.push_back(load_source(path, Language::python, text));
  }
  return repo;
}

const CompletionTask* by_id(const TaskSet& s, const std::string& id) {
  for (const auto& t : s.tasks) {
    if (t.task_id == id) return &t;
  }
  return nullptr;
}

CompletionTask gold(const std::string& id, const std::string& truth) {
  CompletionTask t;
  t.task_id = id;
  t.ground_truth = truth;
  return t;
}

}  // namespace

TEST(Mining, FindsFirstUseOfEachInternalImport) {
  const auto set = mine_tasks(fixture_repo(), 100, 42);
  ASSERT_EQ(set.tasks.size(), 5u);
  const auto* app8 = by_id(set, "pkg/app.py:8");
  ASSERT_NE(app8, nullptr);
  EXPECT_EQ(app8->file, "pkg/app.py");
  EXPECT_EQ(app8->cursor_line, 8);
  EXPECT_LE(app8->cursor_column, 11);
  EXPECT_TRUE(app8->ground_truth.ends_with("load_data(path, \"json\")"));
  EXPECT_EQ(app8->prefix.find("from pkg.utils.io"), std::string::npos);
  EXPECT_NE(app8->prefix.find("from pkg.models import Model"), std::string::npos);
}

TEST(Mining, RelativeAndMultiLineImports) {
  const auto set = mine_tasks(fixture_repo(), 100, 42);
  const auto* rep = by_id(set, "pkg/report.py:6");
  ASSERT_NE(rep, nullptr);
  ASSERT_EQ(rep->masked_import_lines.size(), 1u);
  EXPECT_EQ(rep->masked_import_lines[0].text, "from . import models");
  const auto* multi = by_id(set, "pkg/multi.py:9");
  ASSERT_NE(multi, nullptr);
  EXPECT_EQ(multi->masked_import_lines.size(), 4u);
  EXPECT_EQ(multi->ground_truth, "save_data(dst, load_data(src, \"raw\"))");
}

TEST(Mining, ExternalImportsAreIgnored) {
  const auto repo = fixture_repo();
  const auto& app = *std::find_if(repo.begin(), repo.end(), [](const SourceFile& f) { return f.path == "pkg/app.py"; });
  const auto outline = parse_outline(app);
  ASSERT_EQ(outline.imports.size(), 3u);
  EXPECT_FALSE(is_internal_import(outline.imports[0], app, repo));
  EXPECT_TRUE(is_internal_import(outline.imports[1], app, repo));
}

TEST(Mining, LogRecordsEveryImport) {
  const auto set = mine_tasks(fixture_repo(), 2, 1);
  std::map<std::string, int> statuses;
  for (const auto& r : set.construction_log) ++statuses[r.status];
  EXPECT_EQ(statuses["task"], 2);
  EXPECT_EQ(statuses["not_sampled"], 3);
  EXPECT_EQ(statuses["duplicate_ground_truth"], 1);
  EXPECT_EQ(statuses["unused"], 1);
}

TEST(Mining, SeedChangesSamplingNotCandidates) {
  const auto repo = fixture_repo();
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& t : mine_tasks(repo, 1, seed).tasks) seen.insert(t.task_id);
  }
  EXPECT_GT(seen.size(), 1u);
  for (const auto& id : seen) EXPECT_TRUE(mining_fixture::expected_tasks().count(id)) << id;
}

TEST(Mining, NoCandidatesIsDiagnosed) {
  const auto set = mine_tasks({load_source("a.py", Language::python, "import os\nos.getcwd()\n")}, 10, 1);
  EXPECT_TRUE(set.tasks.empty());
  EXPECT_FALSE(set.diagnostics.empty());
}

TEST(Metrics, NormalizeWhitespace) { EXPECT_EQ(normalize_ws("  a \t b\n\nc  "), "a b c"); }

TEST(Metrics, LevenshteinOverCodePoints) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("h\xc3\xa9llo", "hello"), 1u);  // é is one code point
  EXPECT_DOUBLE_EQ(edit_similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(edit_similarity("abcd", "abce"), 0.75);
}

TEST(Metrics, IdentifiersSkipKeywords) {
  EXPECT_EQ(identifiers("return self.load(x, None)", Language::python),
            (std::vector<std::string>{"self", "load", "x"}));
}

TEST(Metrics, IdMatchModes) {
  const std::vector<std::string> p = {"a", "a", "b"}, g = {"a", "b", "b"};
  EXPECT_EQ(id_match(p, g).em, 0);
  EXPECT_DOUBLE_EQ(id_match(p, g).f1, 2.0 / 3.0);
  EXPECT_EQ(id_match(p, g, IdMatchMode::set).em, 1);
  EXPECT_EQ(id_match({"a", "b"}, {"b", "a"}, IdMatchMode::sequence).em, 0);
  EXPECT_EQ(id_match({"a", "b"}, {"b", "a"}, IdMatchMode::multiset).em, 1);
  EXPECT_EQ(id_match(std::vector<std::string>{}, {}).em, 1);
  EXPECT_EQ(id_match({"x"}, {}).f1, 0.0);
}

TEST(Metrics, ScoreRunAggregatesAndCountsMissing) {
  const std::vector<CompletionTask> tasks = {gold("a", "f(x)"), gold("b", "g(y)")};
  const auto r = score_run({{"a", " f(x) "}}, tasks, "m");
  EXPECT_EQ(r.missing, 1u);
  EXPECT_DOUBLE_EQ(r.aggregate.code_em, 50.0);
  EXPECT_TRUE(r.per_task[1].missing);
  EXPECT_FALSE(r.timing.has_value());
}

TEST(Metrics, CompareCountsUniqueCorrect) {
  const std::vector<CompletionTask> tasks = {gold("a", "x"), gold("b", "y"), gold("c", "z")};
  const auto r1 = score_run({{"a", "x"}, {"b", "y"}}, tasks, "one");
  const auto r2 = score_run({{"a", "x"}, {"c", "z"}}, tasks, "two");
  const auto cmp = compare_runs({r1, r2});
  EXPECT_EQ(cmp.unique_correct, (std::vector<std::size_t>{1, 1}));
  ASSERT_EQ(cmp.deltas.size(), 1u);
  EXPECT_DOUBLE_EQ(cmp.deltas[0].delta.code_em, 0.0);
  EXPECT_NE(cmp.table.find("Code Match"), std::string::npos);
  EXPECT_NE(cmp.table.find("66.67"), std::string::npos);
}

TEST(Metrics, ReportJsonRoundTrip) {
  const std::vector<CompletionTask> tasks = {gold("a", "f(x)")};
  auto r = score_run({{"a", "f(y)"}}, tasks, "m");
  r.timing = Timing{1.5, 0.25};
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.mode, "m");
  EXPECT_EQ(to_json(back), to_json(r));
}

TEST(Files, TasksAndPredictionsRoundTrip) {
  testing_support::TempDir dir;
  const auto set = mine_tasks(fixture_repo(), 100, 42);
  save_tasks(set.tasks, dir.file("t.jsonl"));
  EXPECT_EQ(load_tasks(dir.file("t.jsonl")), set.tasks);
  save_predictions({{"a", "x\ny"}, {"b", ""}}, dir.file("p.jsonl"));
  const auto p = load_predictions(dir.file("p.jsonl"));
  EXPECT_EQ(p.at("a"), "x\ny");
  EXPECT_EQ(p.at("b"), "");
}

TEST(Files, CorruptTaskLineIsNamed) {
  testing_support::TempDir dir;
  testing_support::write_text(dir.path() / "t.jsonl", "{oops\n");
  EXPECT_THROW(load_tasks(dir.file("t.jsonl")), Error);
}
