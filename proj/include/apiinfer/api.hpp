#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apiinfer/corpus.hpp"

namespace apiinfer {

enum class ApiKind {
  regular_function,
  class_function,
  constructor,
  java_method,
  java_constructor,
  java_inner_class_method,
};

std::string_view to_string(ApiKind kind);
ApiKind api_kind_from_string(std::string_view name);

// One function or method defined in the repository.
struct ApiRecord {
  std::string name;
  std::string signature;
  std::optional<std::string> class_name;
  std::optional<std::string> enclosing_class_decl;
  // Java only: the class enclosing class_name, for inner-class methods.
  std::optional<std::string> outer_class;
  std::string header;  // normalized declaration header
  std::string body;    // full definition source, decorators included
  std::string file;
  Language language = Language::python;
  ApiKind kind = ApiKind::regular_function;
  bool is_static = false;
  std::vector<std::string> param_names;  // python: without self/cls
  std::optional<std::string> return_type;
  int start_line = 0;
  int end_line = 0;

  bool operator==(const ApiRecord&) const = default;
};

struct ExtractResult {
  std::vector<ApiRecord> records;
  std::vector<std::string> warnings;
};

// Every function/method definition in `file`. Nested python functions,
// lambdas and anonymous classes are excluded.
ExtractResult extract_apis(const SourceFile& file);

// Keeps the records whose defining file is one of `repo_files`.
std::vector<ApiRecord> internal_filter(std::vector<ApiRecord> records,
                                       const std::set<std::string>& repo_files);

// extract_apis over a whole scan, followed by internal_filter.
std::vector<ApiRecord> extract_repo_apis(const std::vector<SourceFile>& files,
                                         std::vector<std::string>* warnings = nullptr);

}  // namespace apiinfer
