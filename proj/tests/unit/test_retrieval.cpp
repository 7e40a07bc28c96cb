#include <gtest/gtest.h>

#include "apiinfer/retrieval.hpp"

using namespace apiinfer;

namespace {

CodeWindow win(const std::string& file, int start, const std::string& text) {
  CodeWindow w;
  w.file = file;
  w.start_line = start;
  w.end_line = start + 19;
  w.text = text;
  w.token_set = make_token_set(tokenize(text, Language::python));
  return w;
}

KbEntry entry(const std::string& name, std::vector<Embedding> ues, Embedding doc, bool degraded = false) {
  KbEntry e;
  e.qualified_name = name;
  e.ue_embeddings.resize(static_cast<Eigen::Index>(ues.size()), doc.size());
  for (std::size_t i = 0; i < ues.size(); ++i) {
    e.ue_embeddings.row(static_cast<Eigen::Index>(i)) = ues[i].transpose();
    e.usage_examples.push_back({"u" + std::to_string(i), i == 0 ? UsageForm::py_regular_args : UsageForm::py_regular_noargs});
  }
  e.doc_embedding = std::move(doc);
  e.degraded = degraded;
  return e;
}

Embedding v2(double a, double b) {
  Embedding v(2);
  v << a, b;
  return v;
}

class FixedEmbedder final : public EmbedderPort {
 public:
  explicit FixedEmbedder(Embedding v) : v_(std::move(v)) {}
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override {
    return std::vector<Embedding>(texts.size(), v_);
  }
  int dim() const override { return static_cast<int>(v_.size()); }
  std::string id() const override { return "fixed"; }

 private:
  Embedding v_;
};

}  // namespace

TEST(Jaccard, Basics) {
  EXPECT_DOUBLE_EQ(jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(jaccard({}, {}), 0.0);
  EXPECT_DOUBLE_EQ(jaccard({"a"}, {"a"}), 1.0);
}

TEST(SimilarCode, ReturnsTheSubsequentWindow) {
  const WindowCorpus corpus({win("a.py", 1, "alpha beta"), win("a.py", 11, "gamma"), win("b.py", 1, "delta")});
  const auto hits = similar_code("alpha beta", Language::python, corpus, -1);
  // a.py:11 maps to itself (last window of its file) and repeats the first snippet.
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_DOUBLE_EQ(hits[0].score, 1.0);
  EXPECT_EQ(hits[0].matched.start_line, 1);
  EXPECT_EQ(hits[0].snippet.start_line, 11);
  EXPECT_EQ(hits[1].matched.file, "b.py");
  EXPECT_EQ(hits[1].snippet, hits[1].matched);
  EXPECT_EQ(hits[1].score, 0.0);
}

TEST(SimilarCode, RepeatedSnippetsCollapse) {
  const WindowCorpus corpus({win("a.py", 1, "x"), win("a.py", 11, "x y")});
  const auto hits = similar_code("x y", Language::python, corpus, -1);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].matched.start_line, 11);
}

TEST(SimilarCode, StopsAtBudget) {
  const WindowCorpus corpus({win("a.py", 1, "a b c"), win("b.py", 1, "a b"), win("c.py", 1, "a")});
  const auto hits = similar_code("a", Language::python, corpus, 4);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].snippet.file, "c.py");
  EXPECT_EQ(hits[1].snippet.file, "b.py");
}

TEST(SimilarCode, FilterRemovesWindowsAtOrAfterCursor) {
  const WindowCorpus corpus({win("a.py", 1, "q"), win("a.py", 11, "q"), win("a.py", 21, "q")});
  const auto hits = similar_code("q", Language::python, corpus, -1, exclude_from_cursor("a.py", 30));
  // Window 11-30 reaches the cursor, so 1-20 (whose snippet is 11-30) goes too.
  EXPECT_TRUE(hits.empty());
}

TEST(RankByUsage, MaxOverUsageExamplesAndTies) {
  KnowledgeBase kb;
  kb.entries.push_back(entry("b", {v2(0, 1), v2(1, 0)}, v2(1, 0)));
  kb.entries.push_back(entry("a", {v2(1, 0)}, v2(0, 1)));
  kb.entries.push_back(entry("c", {v2(1, 1)}, v2(1, 1)));
  const auto hits = rank_by_usage(v2(1, 0), kb, 2);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].entry->qualified_name, "a");
  EXPECT_EQ(hits[1].entry->qualified_name, "b");
  EXPECT_DOUBLE_EQ(hits[1].score, 1.0);
  EXPECT_EQ(hits[1].best_ue_form, UsageForm::py_regular_noargs);
}

TEST(RankByDocstring, SkipsDegraded) {
  KnowledgeBase kb;
  kb.entries.push_back(entry("a", {v2(1, 0)}, v2(1, 0), true));
  kb.entries.push_back(entry("b", {v2(1, 0)}, v2(1, 1)));
  const auto hits = rank_by_docstring(v2(1, 0), kb, 4);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].entry->qualified_name, "b");
  EXPECT_EQ(hits[0].source, HitSource::fsr);
}

TEST(Uer, BlankLineOrEmptyKbGivesNothing) {
  KnowledgeBase kb;
  const FixedEmbedder emb(v2(1, 0));
  EXPECT_TRUE(uer("x = f()", kb, emb, 4).empty());
  kb.entries.push_back(entry("a", {v2(1, 0)}, v2(1, 0)));
  EXPECT_TRUE(uer("   ", kb, emb, 4).empty());
  EXPECT_EQ(uer("x = f()", kb, emb, 4).size(), 1u);
}

TEST(Fsr, UsesTheSummaryAsQuery) {
  KnowledgeBase kb;
  kb.entries.push_back(entry("a", {v2(1, 0)}, v2(1, 0)));
  const FixedEmbedder emb(v2(1, 0));
  const TemplateSummarizer sum;
  const auto r = fsr("def pick(a):\n    return a\n", Language::python, kb, sum, emb, 4);
  EXPECT_EQ(r.docstring, "Performs pick given a.");
  ASSERT_EQ(r.hits.size(), 1u);
  EXPECT_TRUE(fsr("\n  \n", Language::python, kb, sum, emb, 4).hits.empty());
}
