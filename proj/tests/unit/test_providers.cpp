#include <gtest/gtest.h>

#include <cmath>

#include "apiinfer/embedding.hpp"
#include "apiinfer/providers.hpp"
#include "../support.hpp"

using namespace apiinfer;

namespace {

class CannedLlm final : public CompletionPort {
 public:
  explicit CannedLlm(std::string answer, bool fail = false) : answer_(std::move(answer)), fail_(fail) {}
  std::string complete(std::string_view prompt, int) const override {
    last_prompt = std::string(prompt);
    if (fail_) throw std::runtime_error("down");
    return answer_;
  }
  std::string id() const override { return "canned"; }
  mutable std::string last_prompt;

 private:
  std::string answer_;
  bool fail_;
};

}  // namespace

TEST(HashEmbedder, UnitNormAndDeterministic) {
  const HashEmbedder e(64);
  const auto a = e.embed_one("x = load_data(path)");
  const auto b = e.embed_one("x = load_data(path)");
  EXPECT_EQ(a.size(), 64);
  EXPECT_TRUE(is_unit(a));
  EXPECT_EQ(a, b);
}

TEST(HashEmbedder, CountsTokensInBuckets) {
  const HashEmbedder e(1024);
  const auto v = e.embed_one("a a b");
  const auto ia = static_cast<Eigen::Index>(e.bucket("a"));
  const auto ib = static_cast<Eigen::Index>(e.bucket("b"));
  ASSERT_NE(ia, ib);
  EXPECT_NEAR(v(ia), 2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(v(ib), 1.0 / std::sqrt(5.0), 1e-12);
}

TEST(HashEmbedder, EmptyTextIsZero) {
  const HashEmbedder e(16);
  EXPECT_EQ(e.embed_one("").norm(), 0.0);
}

TEST(Cosine, ZeroVectorGivesZero) {
  Eigen::VectorXd a(3), z = Eigen::VectorXd::Zero(3);
  a << 1, 2, 3;
  EXPECT_EQ(cosine(a, z), 0.0);
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-15);
}

TEST(Fnv, KnownVector) {
  // Standard FNV-1a 64-bit test vector.
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
}

TEST(FallbackSummary, FromDefinitionHeader) {
  EXPECT_EQ(fallback_summary("def load_data(self, path, *rest):\n    pass\n", Language::python),
            "Performs load data given path, rest.");
  EXPECT_EQ(fallback_summary("public int sizeOf(List<String> items) { return 0; }", Language::java),
            "Performs size of given items.");
}

TEST(FallbackSummary, FromCallThenIdentifiers) {
  EXPECT_EQ(fallback_summary("x = parseRow(line, 3)", Language::python), "Performs parse row given line.");
  EXPECT_EQ(fallback_summary("total_count += 1", Language::python), "Performs total count.");
  EXPECT_EQ(fallback_summary("", Language::python), "");
}

TEST(Summary, PromptPutsTargetLast) {
  const auto p = render_summary_prompt("def f(x):\n    return x\n", default_summary_exemplars(Language::python));
  EXPECT_NE(p.find("Docstring:\n\"\"\"Converts"), std::string::npos);
  EXPECT_TRUE(p.ends_with("def f(x):\n    return x\nDocstring:\n"));
}

TEST(Summary, ExtractDocstring) {
  EXPECT_EQ(extract_docstring("  \"\"\"Adds two numbers.\"\"\" trailing"), "Adds two numbers.");
  EXPECT_EQ(extract_docstring("Adds two numbers.\n\nCode:\nmore"), "Adds two numbers.");
}

TEST(Summary, TemplateUsesLlmAndFallsBack) {
  const CannedLlm good("\"\"\"Returns x.\"\"\"");
  const TemplateSummarizer s(&good, 10);
  const auto out = s.summarize("def ident(x):\n    return x\n", Language::python);
  EXPECT_EQ(out.text, "Returns x.");
  EXPECT_FALSE(out.fell_back);
  // The code part is cut to the char budget.
  EXPECT_TRUE(good.last_prompt.ends_with("def ident(\nDocstring:\n"));

  const CannedLlm bad("", true);
  const auto fb = TemplateSummarizer(&bad).summarize("def ident(x):\n    return x\n", Language::python);
  EXPECT_TRUE(fb.fell_back);
  EXPECT_EQ(fb.text, "Performs ident given x.");
}

TEST(Truncate, CutsAfterTokenLimit) {
  EXPECT_EQ(truncate_to_tokens("a(b, c)\nnext", 3, Language::python), "a(b");
  EXPECT_EQ(truncate_to_tokens("a b", 5, Language::python), "a b");
  EXPECT_EQ(truncate_to_tokens("a b", 0, Language::python), "");
}

TEST(MockLlm, EvidenceGatesTheAnswer) {
  MockOracleEntry e{"t1", "    x = ", "compute(a)", "None", {"def compute("}};
  const MockLlm llm({e});
  EXPECT_EQ(llm.complete("# f.py\n    x = ", 128), "None");
  EXPECT_EQ(llm.complete("# lib.py\ndef compute(a):\n\n# f.py\n    x = ", 128), "compute(a)");
  EXPECT_EQ(llm.complete("def compute(\n# f.py\n    y = ", 128), "");
  EXPECT_EQ(llm.complete("def compute(\n    x = ", 1), "compute");
}

TEST(MockLlm, OracleRoundTrip) {
  testing_support::TempDir dir;
  std::vector<MockOracleEntry> es = {{"a", "x", "y", "z", {"e1", "e2"}}};
  save_mock_oracle(es, dir.file("o.jsonl"));
  const auto back = load_mock_oracle(dir.file("o.jsonl"));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].evidence, es[0].evidence);
  EXPECT_EQ(back[0].distractor, "z");
}
