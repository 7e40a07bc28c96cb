#include "apiinfer/api.hpp"

#include <algorithm>
#include <stdexcept>

#include "apiinfer/syntax.hpp"

namespace apiinfer {

namespace {

constexpr std::pair<ApiKind, std::string_view> kKindNames[] = {
    {ApiKind::regular_function, "regular_function"},
    {ApiKind::class_function, "class_function"},
    {ApiKind::constructor, "constructor"},
    {ApiKind::java_method, "java_method"},
    {ApiKind::java_constructor, "java_constructor"},
    {ApiKind::java_inner_class_method, "java_inner_class_method"},
};

ApiRecord python_record(const SourceFile& file, const FunctionDef& fn) {
  ApiRecord rec;
  rec.name = fn.name;
  rec.signature = fn.signature;
  rec.header = fn.header;
  rec.file = file.path;
  rec.language = Language::python;
  rec.is_static = fn.is_static;
  rec.return_type = fn.return_type;
  rec.start_line = fn.start_line;
  rec.end_line = fn.end_line;
  rec.body = file.text.substr(fn.start_offset, fn.end_offset - fn.start_offset);

  rec.param_names = fn.param_names;
  if (fn.classes.empty()) {
    rec.kind = ApiKind::regular_function;
  } else {
    const auto& cls = fn.classes.back();
    rec.class_name = cls.name;
    rec.enclosing_class_decl = cls.header;
    if (fn.classes.size() > 1) rec.outer_class = fn.classes[fn.classes.size() - 2].name;
    rec.kind = fn.name == "__init__" ? ApiKind::constructor : ApiKind::class_function;
    // Bound receiver is not part of the call-site argument list.
    const bool plain_static =
        std::find(fn.decorators.begin(), fn.decorators.end(), "staticmethod") != fn.decorators.end();
    if (!plain_static && !rec.param_names.empty() &&
        (rec.param_names.front() == "self" || rec.param_names.front() == "cls")) {
      rec.param_names.erase(rec.param_names.begin());
    }
  }
  return rec;
}

ApiRecord java_record(const SourceFile& file, const FunctionDef& fn) {
  ApiRecord rec;
  rec.name = fn.name;
  rec.signature = fn.signature;
  rec.header = fn.header;
  rec.file = file.path;
  rec.language = Language::java;
  rec.is_static = fn.is_static;
  rec.param_names = fn.param_names;
  rec.start_line = fn.start_line;
  rec.end_line = fn.end_line;
  rec.body = file.text.substr(fn.start_offset, fn.end_offset - fn.start_offset);

  const auto& cls = fn.classes.back();
  rec.class_name = cls.name;
  rec.enclosing_class_decl = cls.header;
  if (fn.classes.size() > 1) rec.outer_class = fn.classes[fn.classes.size() - 2].name;
  if (fn.name == cls.name && !fn.return_type) {
    rec.kind = ApiKind::java_constructor;
  } else {
    rec.kind = rec.outer_class ? ApiKind::java_inner_class_method : ApiKind::java_method;
    rec.return_type = fn.return_type;
  }
  return rec;
}

}  // namespace

std::string_view to_string(ApiKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ApiKind api_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown api kind: " + std::string(name));
}

ExtractResult extract_apis(const SourceFile& file) {
  ExtractResult result;
  if (file.parse_failed) {
    result.warnings.push_back(file.path + ": not parsed (" + file.parse_error + "), no APIs extracted");
    return result;
  }
  const auto outline = parse_outline(file);
  for (const auto& fn : outline.functions) {
    if (file.language == Language::python) {
      if (fn.nested_in_function) continue;
      result.records.push_back(python_record(file, fn));
    } else {
      if (fn.classes.empty()) continue;
      result.records.push_back(java_record(file, fn));
    }
  }
  return result;
}

std::vector<ApiRecord> internal_filter(std::vector<ApiRecord> records,
                                       const std::set<std::string>& repo_files) {
  std::erase_if(records, [&](const ApiRecord& r) { return !repo_files.contains(r.file); });
  return records;
}

std::vector<ApiRecord> extract_repo_apis(const std::vector<SourceFile>& files,
                                         std::vector<std::string>* warnings) {
  std::set<std::string> repo_files;
  std::vector<ApiRecord> all;
  for (const auto& f : files) {
    repo_files.insert(f.path);
    auto res = extract_apis(f);
    all.insert(all.end(), std::make_move_iterator(res.records.begin()),
               std::make_move_iterator(res.records.end()));
    if (warnings) warnings->insert(warnings->end(), res.warnings.begin(), res.warnings.end());
  }
  return internal_filter(std::move(all), repo_files);
}

}  // namespace apiinfer
