#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "apiinfer/api.hpp"

namespace apiinfer {

// One row of the usage-example rule table.
enum class UsageForm {
  py_regular_args,              // name(args)
  py_regular_qualified_args,    // filestem.name(args)
  py_regular_noargs,            // name()
  py_regular_qualified_noargs,  // filestem.name()
  py_method_instance_args,      // class_name.name(args)
  py_method_class_args,         // ClassName.name(args)
  py_method_instance_noargs,    // class_name.name()
  py_method_class_noargs,       // ClassName.name()
  py_ctor_args,                 // ClassName(args)
  py_ctor_assign_args,          // class_name = ClassName(args)
  py_ctor_noargs,               // ClassName()
  py_ctor_assign_noargs,        // class_name = ClassName()
  java_instance_call,           // className.name(args)
  java_static_call,             // ClassName.name(args)
  java_typed_decl,              // TypeName typeName = className.name(args)
  java_ctor_assign,             // ClassName className = new ClassName(args)
  java_ctor_new,                // new ClassName(args)
  java_inner_call,              // outerInstance.innerInstance.name(args)
};

std::string_view to_string(UsageForm form);
UsageForm usage_form_from_string(std::string_view name);

struct UsageExample {
  std::string text;
  UsageForm form = UsageForm::py_regular_args;

  bool operator==(const UsageExample&) const = default;
};

// Heuristic call-site forms for `record`, deduplicated by text (first form
// wins). Returns an empty list for kinds that do not match the language.
std::vector<UsageExample> synth_usage_examples(const ApiRecord& record);

// "RingBuffer" -> "ring_buffer", "HTTPServer" -> "http_server".
std::string snake_case(std::string_view name);
// Lowercases the first letter only: "RingBuffer" -> "ringBuffer".
std::string camel_case(std::string_view name);

// True for java return types that get a typed-declaration usage example.
bool is_complex_java_type(std::string_view type);

}  // namespace apiinfer
