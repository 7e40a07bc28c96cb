#include <gtest/gtest.h>

#include "apiinfer/error.hpp"
#include "apiinfer/pipeline.hpp"
#include "../mock_env.hpp"

using namespace apiinfer;

namespace {

CompletionTask small_task() {
  CompletionTask t;
  t.task_id = "t";
  t.file = "app/main.py";
  t.prefix = "import os\n\ndef main():\n    x = ";
  t.ground_truth = "f(1)";
  t.cursor_line = 4;
  t.cursor_column = 8;
  return t;
}

KbEntry api_entry(const std::string& name, const std::string& header) {
  KbEntry e;
  e.api.name = name;
  e.api.header = header;
  e.api.file = "lib/" + name + ".py";
  e.qualified_name = e.api.file + "::" + name + "#0";
  return e;
}

class ThrowingLlm final : public CompletionPort {
 public:
  std::string complete(std::string_view, int) const override { throw ProviderError("model offline"); }
  std::string id() const override { return "throwing"; }
};

}  // namespace

TEST(Prompt, ApiInfoRendering) {
  ApiRecord py;
  py.header = "def push(self, item):";
  py.enclosing_class_decl = "class RingBuffer:";
  EXPECT_EQ(render_api_info(py), "class RingBuffer:\n    def push(self, item):");
  py.enclosing_class_decl.reset();
  EXPECT_EQ(render_api_info(py), "def push(self, item):");

  ApiRecord java;
  java.language = Language::java;
  java.header = "public int size()";
  java.enclosing_class_decl = "public class RingBuffer";
  EXPECT_EQ(render_api_info(java), "public class RingBuffer {\n    public int size();\n}");
}

TEST(Prompt, BlocksThenInfileContext) {
  PromptPlan plan;
  plan.infile_file = "app/main.py";
  plan.infile_context = "    x = ";
  plan.blocks.push_back({BlockKind::api_info, "lib/a.py", "def f(a):", 1.0, "a"});
  EXPECT_EQ(render_prompt(plan), "# lib/a.py\ndef f(a):\n\n# app/main.py\n    x = ");
  EXPECT_EQ(retrieved_tokens(plan), 2u + 6u);
  EXPECT_EQ(comment_prefix(Language::java), "// ");
}

TEST(Prompt, InfileTailKeepsCursorLineAndFits) {
  std::string prefix;
  for (int i = 0; i < 50; ++i) prefix += "value_" + std::to_string(i) + " = " + std::to_string(i) + "\n";
  prefix += "    y = ";
  const auto tail = infile_tail(prefix, "m.py", Language::python, 20);
  EXPECT_TRUE(tail.ends_with("\n    y = "));
  EXPECT_LE(count_tokens("# m.py\n" + tail, Language::python), 20u);
  EXPECT_FALSE(tail.starts_with("value_0 "));
  EXPECT_EQ(infile_tail("a = 1\nb = ", "m.py", Language::python, 100), "a = 1\nb = ");
}

TEST(Prompt, AssemblyOrderAndSwap) {
  const auto t = small_task();
  const auto e1 = api_entry("u_hi", "def u_hi():");
  const auto e2 = api_entry("u_lo", "def u_lo():");
  const auto e3 = api_entry("f_one", "def f_one():");
  Knowledge k;
  k.api_hits = {{&e2, 0.5, HitSource::uer, std::nullopt},
                {&e3, 0.9, HitSource::fsr, std::nullopt},
                {&e1, 0.7, HitSource::uer, std::nullopt}};
  CodeWindow w;
  w.file = "other.py";
  w.start_line = 11;
  w.end_line = 30;
  w.text = "z = 1";
  k.snippet_hits = {{0.4, w, w}};
  RunConfig cfg;
  auto plan = assemble_prompt(t, k, cfg);
  ASSERT_EQ(plan.blocks.size(), 4u);
  EXPECT_EQ(plan.blocks[0].kind, BlockKind::similar_snippet);
  EXPECT_EQ(plan.blocks[0].label, "other.py:11-30");
  EXPECT_EQ(plan.blocks[1].text, "def u_hi():");
  EXPECT_EQ(plan.blocks[2].text, "def u_lo():");
  EXPECT_EQ(plan.blocks[3].text, "def f_one():");
  EXPECT_EQ(plan.infile_budget, 4096 - 2048 - 128);

  cfg.uer_before_fsr = false;
  plan = assemble_prompt(t, k, cfg);
  EXPECT_EQ(plan.blocks[1].text, "def f_one():");
}

TEST(Prompt, OverBudgetDropsLowestApiFirst) {
  const auto t = small_task();
  const auto e1 = api_entry("aaa", "def aaa(p1, p2, p3):");
  const auto e2 = api_entry("bbb", "def bbb(p1, p2, p3):");
  Knowledge k;
  k.api_hits = {{&e1, 0.9, HitSource::uer, std::nullopt}, {&e2, 0.2, HitSource::uer, std::nullopt}};
  CodeWindow w;
  w.file = "s.py";
  w.text = "a = 1";
  k.snippet_hits = {{0.9, w, w}};
  RunConfig cfg;
  cfg.total_budget = 30;  // 15 retrieved tokens: one API block (12) fits, nothing else
  cfg.max_new_tokens = 4;
  const auto plan = assemble_prompt(t, k, cfg);
  ASSERT_EQ(plan.blocks.size(), 1u);
  EXPECT_EQ(plan.blocks[0].text, "def aaa(p1, p2, p3):");
  EXPECT_EQ(plan.dropped, (std::vector<std::string>{e2.qualified_name, "s.py:1-1"}));
  EXPECT_LE(retrieved_tokens(plan), 15u);
}

TEST(Queries, UerQueryLine) {
  EXPECT_EQ(uer_query_line("a\n    x = ", "f(1)\nmore"), "    x = f(1)");
  EXPECT_EQ(uer_query_line("a\n", "\n\n  g(2)\n"), "  g(2)");
  EXPECT_EQ(uer_query_line("a\n    x = ", ""), "    x = ");
}

TEST(Queries, FirstLine) {
  EXPECT_EQ(first_line("a\nb"), "a");
  EXPECT_EQ(first_line("abc"), "abc");
  EXPECT_EQ(first_line(""), "");
}

TEST(TaskJson, RoundTrip) {
  auto t = small_task();
  t.masked_import_lines = {{2, "from x import y"}};
  EXPECT_EQ(task_from_json(to_json(t)), t);
}

class MockSuitePipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { env_ = mock_env::make().release(); }
  static void TearDownTestSuite() {
    delete env_;
    env_ = nullptr;
  }
  static mock_env::Env* env_;
};

mock_env::Env* MockSuitePipeline::env_ = nullptr;

TEST_F(MockSuitePipeline, TraceHasEveryStage) {
  const auto ctx = env_->context();
  const auto r = complete_task(env_->suite.tasks[0], Mode::full, ctx);
  const auto& st = r.trace.at("stages");
  ASSERT_EQ(st.size(), 3u);
  EXPECT_EQ(st[0].at("stage"), "draft");
  EXPECT_EQ(st[1].at("stage"), "retrieve");
  EXPECT_EQ(st[2].at("stage"), "final");
  EXPECT_TRUE(st[2].contains("prompt_tokens"));
  EXPECT_EQ(r.trace.at("prediction"), r.prediction);
  EXPECT_TRUE(r.trace.at("error").is_null());
}

TEST_F(MockSuitePipeline, InfileHasOneStage) {
  const auto r = complete_task(env_->suite.tasks[0], Mode::infile, env_->context());
  EXPECT_EQ(r.trace.at("stages").size(), 1u);
  EXPECT_EQ(r.trace.at("stages")[0].at("blocks").size(), 0u);
  EXPECT_EQ(r.trace.at("stages")[0].at("infile_budget"), 4096 - 128);
}

TEST_F(MockSuitePipeline, AimNeedsADraft) {
  EXPECT_THROW(complete_task(env_->suite.tasks[0], Mode::aim_over_external_draft, env_->context()), Error);
  const auto r = complete_task(env_->suite.tasks[0], Mode::aim_over_external_draft, env_->context(), "x");
  EXPECT_EQ(r.trace.at("stages")[0].at("stage"), "external_draft");
}

TEST_F(MockSuitePipeline, ModelErrorsGiveEmptyPrediction) {
  auto ctx = env_->context();
  const ThrowingLlm llm;
  ctx.llm = &llm;
  const auto r = complete_task(env_->suite.tasks[0], Mode::full, ctx);
  EXPECT_EQ(r.prediction, "");
  EXPECT_NE(r.trace.at("error").get<std::string>().find("model offline"), std::string::npos);
}

TEST_F(MockSuitePipeline, WorkersKeepOrderAndResults) {
  auto ctx = env_->context();
  const auto one = run_tasks(env_->suite.tasks, Mode::full, ctx);
  ctx.cfg.workers = 3;
  const auto three = run_tasks(env_->suite.tasks, Mode::full, ctx);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].prediction, three[i].prediction);
    EXPECT_EQ(one[i].trace.at("stages"), three[i].trace.at("stages"));
  }
}

TEST_F(MockSuitePipeline, ExtraRoundsAddRefineStages) {
  auto ctx = env_->context();
  ctx.cfg.rounds = 2;
  const auto r = complete_task(env_->suite.tasks[0], Mode::full, ctx);
  const auto& st = r.trace.at("stages");
  ASSERT_EQ(st.size(), 5u);
  EXPECT_EQ(st[2].at("stage"), "refine");
  EXPECT_EQ(st[4].at("stage"), "final");
}

TEST_F(MockSuitePipeline, SnippetsNeverComeFromTheTaskFileTail) {
  const auto ctx = env_->context();
  for (const auto& t : env_->suite.tasks) {
    const auto k = retrieve_knowledge(t, "", ctx);
    for (const auto& h : k.snippet_hits) {
      if (h.snippet.file == t.file) EXPECT_LT(h.snippet.end_line, t.cursor_line);
    }
  }
}

TEST_F(MockSuitePipeline, ApiHitsAreUniqueByName) {
  const auto ctx = env_->context();
  for (const auto& t : env_->suite.tasks) {
    const auto k = retrieve_knowledge(t, t.ground_truth, ctx);
    std::set<std::string> names;
    for (const auto& h : k.api_hits) EXPECT_TRUE(names.insert(h.entry->qualified_name).second);
  }
}
