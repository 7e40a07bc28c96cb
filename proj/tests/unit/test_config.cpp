#include <gtest/gtest.h>

#include <cstdlib>

#include "apiinfer/config.hpp"
#include "apiinfer/error.hpp"
#include "apiinfer/factory.hpp"
#include "../support.hpp"

using namespace apiinfer;

TEST(Config, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.window_len, 20);
  EXPECT_EQ(c.slide, 10);
  EXPECT_EQ(c.k, 4);
  EXPECT_EQ(c.total_budget, 4096);
  EXPECT_EQ(c.max_new_tokens, 128);
  EXPECT_EQ(c.retrieved_budget(), 2048);
  EXPECT_EQ(c.infile_budget(), 1920);
}

TEST(Config, MergeKeepsAbsentKeys) {
  RunConfig c;
  merge_config(c, {{"k", 8}, {"mode", "plus_uer"}, {"language", "java"}});
  EXPECT_EQ(c.k, 8);
  EXPECT_EQ(c.mode, Mode::plus_uer);
  EXPECT_EQ(c.language, Language::java);
  EXPECT_EQ(c.window_len, 20);
}

TEST(Config, UnknownKeysAndModesThrow) {
  RunConfig c;
  EXPECT_THROW(merge_config(c, {{"windw_len", 3}}), Error);
  EXPECT_THROW(merge_config(c, {{"mode", "turbo"}}), Error);
  EXPECT_THROW(mode_from_string("nope"), Error);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.excludes = {"tests/*"};
  c.seed = 7;
  RunConfig d;
  merge_config(d, to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
}

TEST(Config, LoadFromFile) {
  testing_support::TempDir dir;
  testing_support::write_text(dir.path() / "c.json", R"({"total_budget": 1024, "rounds": 2})");
  const auto c = load_config(dir.file("c.json"));
  EXPECT_EQ(c.total_budget, 1024);
  EXPECT_EQ(c.rounds, 2);
  testing_support::write_text(dir.path() / "bad.json", "{");
  EXPECT_THROW(load_config(dir.file("bad.json")), Error);
}

TEST(Config, EnvOverridesUrls) {
  setenv("APIINFER_COMPLETE_URL", "http://127.0.0.1:9", 1);
  RunConfig c;
  apply_env_overrides(c);
  unsetenv("APIINFER_COMPLETE_URL");
  EXPECT_EQ(c.complete_url, "http://127.0.0.1:9");
}

TEST(Factory, BuildsNamedProviders) {
  RunConfig c;
  auto p = make_providers(c, false);
  EXPECT_EQ(p.embedder->dim(), 256);
  EXPECT_EQ(p.llm, nullptr);
  EXPECT_THROW(make_providers(c, true), Error);
  c.embedder = "http";
  EXPECT_THROW(make_providers(c, false), Error);
  c.embedder = "bogus";
  EXPECT_THROW(make_providers(c, false), Error);
}
