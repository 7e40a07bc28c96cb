#include <gtest/gtest.h>

#include <algorithm>

#include "apiinfer/api.hpp"
#include "apiinfer/usage_examples.hpp"
#include "../ue_fixture.hpp"

using namespace apiinfer;

namespace {

const ApiRecord& find(const std::vector<ApiRecord>& rs, const std::string& name) {
  const auto it = std::find_if(rs.begin(), rs.end(), [&](const ApiRecord& r) { return r.name == name; });
  if (it == rs.end()) throw std::runtime_error("no record " + name);
  return *it;
}

std::vector<ApiRecord> all_records() {
  std::vector<ApiRecord> out;
  for (const auto& f : ue_fixture::sources()) {
    auto rs = extract_apis(f).records;
    out.insert(out.end(), rs.begin(), rs.end());
  }
  return out;
}

}  // namespace

TEST(ApiExtract, KindsFollowTheDefinitionShape) {
  const auto rs = all_records();
  EXPECT_EQ(find(rs, "load_data").kind, ApiKind::regular_function);
  EXPECT_EQ(find(rs, "push").kind, ApiKind::class_function);
  EXPECT_EQ(find(rs, "size").kind, ApiKind::java_method);
  EXPECT_EQ(find(rs, "Account").kind, ApiKind::java_constructor);
  EXPECT_EQ(find(rs, "link").kind, ApiKind::java_inner_class_method);
  EXPECT_EQ(find(rs, "link").outer_class, "Graph");
  EXPECT_TRUE(find(rs, "splitWords").is_static);
  EXPECT_TRUE(find(rs, "clamp").is_static);
}

TEST(ApiExtract, PythonHeaderAndParams) {
  const auto rs = all_records();
  const auto& push = find(rs, "push");
  EXPECT_EQ(push.header, "def push(self, item):");
  EXPECT_EQ(push.param_names, (std::vector<std::string>{"item"}));
  EXPECT_EQ(push.class_name, "RingBuffer");
  EXPECT_EQ(push.enclosing_class_decl, "class RingBuffer:");
  EXPECT_EQ(push.start_line, 2);
  EXPECT_EQ(push.end_line, 3);
  EXPECT_NE(push.body.find("self.items.append(item)"), std::string::npos);
  const auto& clamp = find(rs, "clamp");
  EXPECT_LT(clamp.body.find("@staticmethod"), clamp.body.find("def clamp"));
}

TEST(ApiExtract, JavaHeaderKeepsModifiersAndTypes) {
  const auto rs = all_records();
  const auto& split = find(rs, "splitWords");
  EXPECT_EQ(split.header, "public static List<String> splitWords(String text, int limit)");
  EXPECT_EQ(split.return_type, "List<String>");
  EXPECT_EQ(split.param_names, (std::vector<std::string>{"text", "limit"}));
}

TEST(ApiExtract, NestedPythonFunctionsExcluded) {
  const auto f = load_source("m.py", Language::python,
                             "def outer():\n"
                             "    def inner():\n"
                             "        return 1\n"
                             "    return inner\n");
  const auto rs = extract_apis(f).records;
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].name, "outer");
}

TEST(ApiExtract, JavaLambdasAndAnonymousClassesExcluded) {
  const auto f = load_source("A.java", Language::java,
                             "class A {\n"
                             "    void run() {\n"
                             "        Runnable r = new Runnable() { public void run() {} };\n"
                             "        java.util.function.Function<Integer, Integer> g = x -> x + 1;\n"
                             "    }\n"
                             "}\n");
  const auto rs = extract_apis(f).records;
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].start_line, 2);
}

TEST(ApiExtract, ParseFailureWarnsAndYieldsNothing) {
  const auto f = load_source("bad.py", Language::python, "def f(:\n");
  const auto res = extract_apis(f);
  EXPECT_TRUE(res.records.empty());
  EXPECT_FALSE(res.warnings.empty());
}

TEST(ApiExtract, InternalFilterKeepsRepoFiles) {
  auto rs = all_records();
  const auto kept = internal_filter(rs, {"main.py"});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].name, "run");
}

TEST(UsageExamples, MatchFixtureExactly) {
  const auto expected = ue_fixture::expected();
  std::size_t seen = 0;
  for (const auto& rec : all_records()) {
    const auto it = expected.find(ue_fixture::key(rec));
    ASSERT_NE(it, expected.end()) << ue_fixture::key(rec);
    std::vector<std::string> got;
    for (const auto& ue : synth_usage_examples(rec)) got.push_back(ue.text);
    EXPECT_EQ(got, it->second) << it->first;
    ++seen;
  }
  EXPECT_EQ(seen, expected.size());
}

TEST(UsageExamples, FormsAreLabelled) {
  const auto rs = all_records();
  const auto ues = synth_usage_examples(find(rs, "Account"));
  ASSERT_EQ(ues.size(), 2u);
  EXPECT_EQ(ues[0].form, UsageForm::java_ctor_assign);
  EXPECT_EQ(ues[1].form, UsageForm::java_ctor_new);
  EXPECT_EQ(usage_form_from_string(to_string(UsageForm::java_inner_call)), UsageForm::java_inner_call);
}

TEST(UsageExamples, InstanceMethodHasNoStaticCallInJava) {
  const auto rs = all_records();
  for (const auto& ue : synth_usage_examples(find(rs, "size"))) EXPECT_NE(ue.form, UsageForm::java_static_call);
}

TEST(UsageExamples, CaseHelpers) {
  EXPECT_EQ(snake_case("RingBuffer"), "ring_buffer");
  EXPECT_EQ(snake_case("HTTPServer"), "http_server");
  EXPECT_EQ(snake_case("XMLParser2"), "xml_parser2");
  EXPECT_EQ(camel_case("RingBuffer"), "ringBuffer");
  EXPECT_TRUE(is_complex_java_type("List<String>"));
  EXPECT_TRUE(is_complex_java_type("double[]"));
  EXPECT_FALSE(is_complex_java_type("int"));
  EXPECT_FALSE(is_complex_java_type("void"));
}
